use std::sync::OnceLock;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use vnum_core::filtration::Window;

static START: OnceLock<Instant> = OnceLock::new();

/// Marks the start of the run; call once at process entry.
pub fn mark_start() {
    START.get_or_init(Instant::now);
}

/// Canonical run record. Reruns with equal inputs and flags produce
/// byte-identical JSON apart from `wallTimeMs`.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<Window>,
    pub warnings: Vec<String>,
    #[serde(rename = "wallTimeMs")]
    pub wall_time_ms: u128,
}

impl RunReport {
    pub fn new(
        command: &str,
        inputs: Value,
        outputs: Value,
        window: Option<Window>,
        warnings: Vec<String>,
    ) -> RunReport {
        RunReport {
            command: command.to_string(),
            inputs,
            outputs,
            window,
            warnings,
            wall_time_ms: START.get_or_init(Instant::now).elapsed().as_millis(),
        }
    }

    /// Prints the report: full JSON, or the human-readable body plus any
    /// warnings on stderr.
    pub fn emit(&self, as_json: bool, text_body: impl FnOnce(&RunReport)) {
        if as_json {
            println!("{}", serde_json::to_string_pretty(self).unwrap());
        } else {
            text_body(self);
            for w in &self.warnings {
                eprintln!("warning: {w}");
            }
        }
    }
}
