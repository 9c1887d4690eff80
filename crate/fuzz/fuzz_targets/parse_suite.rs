#![no_main]

use libfuzzer_sys::fuzz_target;
use twistflag::verify::Suite;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(suites) = Suite::parse_selection(text) {
            assert!(!suites.is_empty());
            for suite in suites {
                assert_eq!(suite.label().parse::<Suite>().ok(), Some(suite));
            }
        }
    }
});
