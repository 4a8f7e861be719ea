//! Machine-readable report shapes.
//!
//! The JSON forms are byte-stable for identical inputs: fixed field
//! order, exact rational strings, and no timing or timestamps (elapsed
//! time is shown in the human-readable text output only).

use momentcert::generators::DecompositionReport;
use momentcert::VerificationReport;
use serde::Serialize;

#[derive(Serialize)]
pub struct JsonExtreme {
    pub extreme: bool,
    pub rank_b: usize,
}

#[derive(Serialize)]
pub struct JsonReport {
    pub valid: bool,
    pub value: String,
    pub psd: bool,
    pub rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block_ranks: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extreme: Option<JsonExtreme>,
}

impl From<&VerificationReport> for JsonReport {
    fn from(r: &VerificationReport) -> Self {
        JsonReport {
            valid: r.valid,
            value: r.value.to_string(),
            psd: r.psd,
            rank: r.rank,
            block_ranks: r.block_ranks.clone(),
            extreme: r.extreme.as_ref().map(|e| JsonExtreme {
                extreme: e.extreme,
                rank_b: e.rank_b,
            }),
        }
    }
}

#[derive(Serialize)]
pub struct JsonEndpoint {
    pub psd: bool,
    pub rank: usize,
    pub value: String,
}

#[derive(Serialize)]
pub struct JsonDecomposition {
    pub passed: bool,
    pub identity_ok: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub residuals: Vec<(String, String)>,
    pub endpoints: Vec<JsonEndpoint>,
    pub expected_ranks: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

impl From<&DecompositionReport> for JsonDecomposition {
    fn from(r: &DecompositionReport) -> Self {
        JsonDecomposition {
            passed: r.passed,
            identity_ok: r.identity_ok,
            residuals: r
                .residuals
                .iter()
                .map(|(name, v)| (name.to_string(), v.to_string()))
                .collect(),
            endpoints: r
                .endpoints
                .iter()
                .map(|e| JsonEndpoint {
                    psd: e.psd,
                    rank: e.rank,
                    value: e.value.to_string(),
                })
                .collect(),
            expected_ranks: r.expected_ranks.clone(),
            failures: r.failures.clone(),
        }
    }
}

pub fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report serializes");
    out.push('\n');
    out
}
