use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

/// Envelope for every JSON document the CLI prints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputDocument<P> {
    pub schema_version: String,
    pub command: String,
    /// Threefold degree, del Pezzo degree for `roots`, 0 for `check --all`.
    pub degree: i64,
    pub payload: P,
}

impl<P: Serialize> OutputDocument<P> {
    pub fn new(command: &str, degree: i64, payload: P) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_owned(),
            command: command.to_owned(),
            degree,
            payload,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("payloads are plain data");
        s.push('\n');
        s
    }
}
