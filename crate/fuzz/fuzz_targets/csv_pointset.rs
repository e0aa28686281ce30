#![no_main]

use libfuzzer_sys::fuzz_target;
use quadfree::PointSet;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(set) = PointSet::from_csv(text) {
        let again = PointSet::from_csv(&set.to_csv()).expect("own output parses");
        assert_eq!(again, set);
    }
});
