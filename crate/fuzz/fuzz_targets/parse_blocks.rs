#![no_main]

use libfuzzer_sys::fuzz_target;
use twistflag::parse::parse_blocks;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(blocks) = parse_blocks(text) {
            assert!(!blocks.is_empty());
            assert!(blocks.iter().all(|b| b.max_parts() >= 1 && b.max_part() >= 1));
        }
    }
});
