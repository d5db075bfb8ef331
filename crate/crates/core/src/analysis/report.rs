use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Which certificate produced a [`CheckReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    SensePreserving,
    NotSensePreserving,
    Convex,
    DerivativeVanishes,
    RzDirection,
    DirectionConvexity,
    NoCertificate,
    BoundaryExtrema,
    MonomialTheorem,
    OutOfTheoremRange,
    Counterexample,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("criterion serializes");
        f.write_str(s.as_str().unwrap_or_default())
    }
}

/// Outcome of a grid certificate. `witness` is the sample attaining
/// `extremal_value`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub passed: bool,
    pub extremal_value: f64,
    pub witness: Complex64,
    pub samples_checked: usize,
    pub criterion: Criterion,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metrics: BTreeMap<String, f64>,
}

impl CheckReport {
    pub fn new(
        criterion: Criterion,
        passed: bool,
        extremal_value: f64,
        witness: Complex64,
        samples_checked: usize,
    ) -> Self {
        Self {
            passed,
            extremal_value,
            witness,
            samples_checked,
            criterion,
            metrics: BTreeMap::new(),
        }
    }

    pub fn with_metric(mut self, key: &str, value: f64) -> Self {
        self.metrics.insert(key.to_owned(), value);
        self
    }

    pub fn metric(&self, key: &str) -> Option<f64> {
        self.metrics.get(key).copied()
    }
}
