//! The prime-list parser must never panic; accepted primes stay in range.

#![no_main]

use libfuzzer_sys::fuzz_target;
use vnum_core::parse::prime_from_text;

fuzz_target!(|data: &[u8]| {
    let Some((&first, rest)) = data.split_first() else {
        return;
    };
    let n = (first % 8) as usize + 1;
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    if let Ok(prime) = prime_from_text(text, n) {
        assert!(!prime.support().is_empty());
        assert!(prime.support().iter().all(|&v| v < n));
    }
});
