//! The text parser must never panic, and every accepted ideal must
//! round-trip through the canonical serializer.

#![no_main]

use libfuzzer_sys::fuzz_target;
use vnum_core::parse::{ideal_from_text, ideal_to_text};

fuzz_target!(|data: &[u8]| {
    let Some((&first, rest)) = data.split_first() else {
        return;
    };
    let n = (first % 8) as usize + 1;
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    if let Ok(ideal) = ideal_from_text(text, n) {
        let canonical = ideal_to_text(&ideal);
        let reparsed = ideal_from_text(&canonical, n).expect("canonical text reparses");
        assert_eq!(reparsed, ideal, "round-trip through {canonical:?}");
    }
});
