#![no_main]
//! Generator-word parsing must never panic, and accepted words must be
//! freely reduced, evaluable, and stable under render/re-parse.

use libfuzzer_sys::fuzz_target;
use lozenge::{mobius::word_string, GroupSpec};

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    let group = GroupSpec::modular_torus();
    match group.parse_word(input) {
        Err(_) => {}
        Ok(word) => {
            // freely reduced: no adjacent cancellation survives parsing
            for pair in word.windows(2) {
                assert_ne!(pair[0], -pair[1], "unreduced word from `{input}`");
            }
            // every letter names an actual generator
            for &g in &word {
                assert!(g != 0 && g.unsigned_abs() as usize <= group.rank());
            }
            // evaluation succeeds and the rendering re-parses to the same word
            let element = group.element_of(&word).expect("accepted word evaluates");
            let _ = element.classify();
            if !word.is_empty() {
                let reparsed = group.parse_word(&word_string(&word)).unwrap();
                assert_eq!(reparsed, word);
            }
        }
    }
});
