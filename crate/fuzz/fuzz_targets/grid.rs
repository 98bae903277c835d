#![no_main]
use libfuzzer_sys::fuzz_target;
use std::str;
use superosc::io::Grid;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = str::from_utf8(data) else { return };
    if let Ok(grid) = text.parse::<Grid>() {
        assert!(grid.start <= grid.stop && grid.count >= 1);
        // Walking a huge grid is slow, not wrong; a prefix is enough.
        for x in grid.points().take(1024) {
            assert!(x.is_finite());
        }
    }
});
