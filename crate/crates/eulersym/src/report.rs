//! Machine-readable decision reports. Serialization is deterministic for
//! a fixed input, so reports can be diffed byte-for-byte across runs.

use serde::Serialize;

use crate::variety::CIVerdict;

/// Versioned report wrapping a verdict with provenance. The `schema`
/// field gates consumers; human text output is unversioned.
#[derive(Clone, Debug, Serialize)]
pub struct DecisionReport {
    pub schema: u32,
    pub tool_version: &'static str,
    pub input_hash: String,
    pub order: &'static str,
    pub verdict: CIVerdict,
}

impl DecisionReport {
    pub fn new(input_text: &str, verdict: CIVerdict) -> DecisionReport {
        DecisionReport {
            schema: 1,
            tool_version: env!("CARGO_PKG_VERSION"),
            input_hash: format!("fnv1a64:{:016x}", fnv1a64(input_text.as_bytes())),
            order: "degrevlex",
            verdict,
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }
}

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}
