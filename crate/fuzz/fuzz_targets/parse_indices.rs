#![no_main]

use libfuzzer_sys::fuzz_target;
use twistflag::parse::parse_indices;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(indices) = parse_indices(text) {
            assert!(indices[0] >= 1);
            assert!(indices.windows(2).all(|w| w[0] < w[1]));
        }
    }
});
