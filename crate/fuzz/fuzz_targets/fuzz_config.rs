#![no_main]
//! Config ingestion must never panic: arbitrary TOML either resolves to a
//! validated configuration or fails with a structured error.

use libfuzzer_sys::fuzz_target;
use lozenge_cli::config::{resolve, ConfigFile};

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = toml::from_str::<ConfigFile>(input) else {
        return;
    };
    if let Ok(cfg) = resolve(file) {
        // resolved configs are internally valid
        assert!(cfg.group.rank() >= 1);
        assert!(cfg.tolerance.0 > 0.0);
        assert!(cfg.group.projected_count(cfg.depth) <= cfg.cap);
        for g in cfg.group.generators() {
            let [a, b, c, d] = g.matrix();
            assert!((a * d - b * c - 1.0).abs() < 1e-9);
        }
    }
});
