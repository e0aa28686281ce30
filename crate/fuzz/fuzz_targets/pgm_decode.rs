#![no_main]

use libfuzzer_sys::fuzz_target;
use quadfree::PointSet;

fuzz_target!(|data: &[u8]| {
    // Keep allocations bounded: the raster must be present in the input.
    if let Ok((set, window)) = PointSet::from_pgm(data, (-3, 5)) {
        assert!(set.iter().all(|&p| window.contains(p)));
        let (back, w2) = PointSet::from_pgm(&set.to_pgm(&window), (-3, 5)).expect("own output parses");
        assert_eq!(w2, window);
        assert_eq!(back, set);
    }
});
