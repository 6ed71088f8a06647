use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// What a command produced, before formatting.
pub struct Outcome {
    pub command: &'static str,
    /// Bytes the result depends on (input files or normalized arguments).
    pub digest_input: Vec<u8>,
    pub results: Value,
    pub text: String,
    pub warnings: Vec<String>,
    pub exit_code: u8,
}

pub struct RunReport {
    value: Value,
}

impl RunReport {
    pub fn new(echo: String, outcome: &Outcome) -> Self {
        let digest = Sha256::digest(&outcome.digest_input);
        let value = json!({
            "command": outcome.command,
            "invocation": echo,
            "inputs_digest": format!("sha256:{digest:x}"),
            "results": outcome.results,
            "warnings": outcome.warnings,
        });
        Self { value }
    }

    /// Keys are emitted in sorted order, so identical inputs give identical bytes.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.value).expect("report serializes")
    }

    pub fn to_text(&self, outcome: &Outcome) -> String {
        let mut out = outcome.text.clone();
        for w in &outcome.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }
}
