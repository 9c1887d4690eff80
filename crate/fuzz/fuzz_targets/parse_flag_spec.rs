#![no_main]

use libfuzzer_sys::fuzz_target;
use twistflag::chowrank::flag_bundle_coefficients;
use twistflag::parse::parse_flag_spec;

fuzz_target!(|data: &[u8]| {
    let Some((&degree, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    // Small degrees keep the coefficient computation cheap.
    let degree = u32::from(degree % 24);
    if let Ok(spec) = parse_flag_spec(degree, text) {
        assert!(*spec.indices().last().unwrap() <= degree);
        let coeffs = flag_bundle_coefficients(&spec);
        assert_eq!(coeffs.fiber_dimension() as u64, spec.dimension());
    }
});
