#![no_main]
use libfuzzer_sys::fuzz_target;
use std::str;
use superosc::io::parse_spectral_density;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = str::from_utf8(data) else { return };
    if let Ok(d) = parse_spectral_density(text) {
        let total: f64 = d.weights().iter().sum();
        assert!((total - 1.0).abs() <= 1e-12);
    }
});
