#![no_main]
use libfuzzer_sys::fuzz_target;
use std::str;
use superosc::io::parse_bandlimited;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = str::from_utf8(data) else { return };
    if let Ok(f) = parse_bandlimited(text) {
        let (lo, hi) = f.support();
        assert!(lo < hi);
        let _ = f.l1_norm();
    }
});
