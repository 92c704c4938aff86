//! The instance-JSON parser must never panic, and every accepted instance
//! must round-trip through its canonical serialization.

#![no_main]

use libfuzzer_sys::fuzz_target;
use vnum_core::ip::IpInstance;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(inst) = IpInstance::from_json(text) {
        let canonical = inst.to_json();
        let reparsed = IpInstance::from_json(&canonical).expect("canonical JSON reparses");
        assert_eq!(reparsed, inst, "round-trip through {canonical:?}");
    }
});
