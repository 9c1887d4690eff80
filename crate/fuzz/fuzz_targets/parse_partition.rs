#![no_main]

use libfuzzer_sys::fuzz_target;
use twistflag::parse::parse_partition;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(lambda) = parse_partition(text) {
            assert!(lambda.parts().windows(2).all(|w| w[0] >= w[1]));
        }
    }
});
