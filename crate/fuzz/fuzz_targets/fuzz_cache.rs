#![no_main]
//! The enumeration-cache decoder takes untrusted file bytes; it must never
//! panic, and anything it accepts must consist of valid normalized elements.

use libfuzzer_sys::fuzz_target;
use lozenge::GroupSpec;
use lozenge_cli::cache::parse_cache;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let group = GroupSpec::modular_torus();
    if let Some(elements) = parse_cache(text, &group, 2) {
        for e in &elements {
            let [a, b, c, d] = e.matrix();
            assert!((a * d - b * c - 1.0).abs() < 1e-9 + 1e-15);
        }
    }
});
