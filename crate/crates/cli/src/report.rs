use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    PassVacuous,
    Fail,
    Error,
}

impl Verdict {
    pub fn is_success(self) -> bool {
        matches!(self, Verdict::Pass | Verdict::PassVacuous)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::PassVacuous => "pass_vacuous",
            Verdict::Fail => "fail",
            Verdict::Error => "error",
        }
    }
}

/// One verification outcome. Numbers are decimal strings; `lhs` and `rhs`
/// carry enough digits to round-trip at the working precision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub params: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    pub abs_err: String,
    pub rel_err: String,
    pub tol: String,
    pub tail_bound: String,
    pub verdict: Verdict,
    pub terms_used: u64,
    pub precision_bits: u32,
    pub runtime_ms: u64,
    /// Error text, or extra diagnostics from multi-part identities.
    pub message: String,
}
