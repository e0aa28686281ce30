#![no_main]

use libfuzzer_sys::fuzz_target;
use quadfree::LatticeBox;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(b) = text.parse::<LatticeBox>() {
        assert!(b.x_min() <= b.x_max() && b.y_min() <= b.y_max());
        assert_eq!(b.to_string().parse::<LatticeBox>().unwrap(), b);
    }
});
