#![no_main]
use libfuzzer_sys::fuzz_target;
use std::str;
use superosc::io::parse_state;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = str::from_utf8(data) else { return };
    if let Ok(psi) = parse_state(text) {
        assert!((psi.inner(&psi).re - 1.0).abs() <= 1e-12);
    }
});
