#![no_main]
use libfuzzer_sys::fuzz_target;
use std::str;
use superosc::io::parse_observable;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = str::from_utf8(data) else { return };
    if let Ok(a) = parse_observable(text) {
        let _ = a.eigenspaces();
    }
});
