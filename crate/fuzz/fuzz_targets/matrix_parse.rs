#![no_main]

use libfuzzer_sys::fuzz_target;
use quadfree::GLMatrix;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = text.parse::<GLMatrix>() {
        assert!(m.det() == 1 || m.det() == -1);
        assert_eq!(m.to_string().parse::<GLMatrix>().unwrap(), m);
    }
});
