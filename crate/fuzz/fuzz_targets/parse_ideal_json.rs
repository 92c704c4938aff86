//! The JSON parser must never panic, and every accepted ideal must
//! round-trip through the canonical JSON serializer.

#![no_main]

use libfuzzer_sys::fuzz_target;
use vnum_core::parse::{ideal_from_json, ideal_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(ideal) = ideal_from_json(text) {
        let canonical = ideal_to_json(&ideal);
        let reparsed = ideal_from_json(&canonical).expect("canonical JSON reparses");
        assert_eq!(reparsed, ideal, "round-trip through {canonical:?}");
    }
});
