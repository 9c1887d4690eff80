#![no_main]

use libfuzzer_sys::fuzz_target;
use twistflag::parse::parse_base;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if text.len() > 4096 {
            return;
        }
        if let Ok(base) = parse_base(text) {
            // Every accepted base either has ranks starting at 1 or is symbolic.
            if let Some(profile) = base.profile().expect("accepted bases have profiles") {
                assert_eq!(profile.rank(0), 1u32.into());
            }
            assert_eq!(parse_base(&base.to_string()).ok(), Some(base));
        }
    }
});
