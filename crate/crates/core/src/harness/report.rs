use serde::Serialize;
use serde_json::Value;

/// Outcome of one verification check. `passed` holds exactly when
/// `residual ≤ tolerance`; a NaN residual never passes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check_name: String,
    pub inputs: Value,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Filled in on failure with whatever locates the discrepancy.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckReport {
    pub fn new(check_name: impl Into<String>, inputs: Value, residual: f64, tolerance: f64) -> Self {
        CheckReport {
            check_name: check_name.into(),
            inputs,
            residual,
            tolerance,
            passed: residual <= tolerance,
            witness: None,
        }
    }

    /// Attaches a witness, computed only if the check failed.
    pub fn with_witness(mut self, witness: impl FnOnce() -> Value) -> Self {
        if !self.passed {
            self.witness = Some(witness());
        }
        self
    }

    /// A check that could not be carried out; it counts as a failure.
    pub fn errored(check_name: impl Into<String>, inputs: Value, tolerance: f64, err: &crate::error::Error) -> Self {
        CheckReport {
            check_name: check_name.into(),
            inputs,
            residual: f64::INFINITY,
            tolerance,
            passed: false,
            witness: Some(serde_json::json!({ "error": err.to_string() })),
        }
    }
}
