//! Verification reports shared by every check.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// One named quantity of a check. Gating residuals carry a tolerance and
/// pass when `value <= tolerance`; informational ones carry none.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub label: String,
    pub value: f64,
    pub tolerance: Option<f64>,
}

impl Residual {
    pub fn passes(&self) -> bool {
        match self.tolerance {
            // NaN never passes.
            Some(tol) => self.value <= tol,
            None => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub residuals: Vec<Residual>,
    /// Headline tolerance of the check.
    pub tolerance: f64,
    pub passed: bool,
    pub meta: BTreeMap<String, String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, tolerance: f64) -> Self {
        CheckReport {
            name: name.into(),
            residuals: Vec::new(),
            tolerance,
            passed: true,
            meta: BTreeMap::new(),
        }
    }

    /// Adds a residual gated by the headline tolerance.
    pub fn gate(&mut self, label: impl Into<String>, value: f64) -> &mut Self {
        let tol = self.tolerance;
        self.gate_with(label, value, tol)
    }

    pub fn gate_with(&mut self, label: impl Into<String>, value: f64, tol: f64) -> &mut Self {
        let r = Residual {
            label: label.into(),
            value,
            tolerance: Some(tol),
        };
        self.passed &= r.passes();
        self.residuals.push(r);
        self
    }

    pub fn info(&mut self, label: impl Into<String>, value: f64) -> &mut Self {
        self.residuals.push(Residual {
            label: label.into(),
            value,
            tolerance: None,
        });
        self
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.meta.insert(key.into(), value.to_string());
        self
    }

    /// Forces failure regardless of residuals, e.g. for an aborted search.
    pub fn fail(&mut self, reason: impl Into<String>) -> &mut Self {
        self.passed = false;
        self.meta.insert("failure".into(), reason.into());
        self
    }

    pub fn residual(&self, label: &str) -> Option<f64> {
        self.residuals
            .iter()
            .find(|r| r.label == label)
            .map(|r| r.value)
    }

    /// Largest gating residual.
    pub fn worst(&self) -> f64 {
        self.residuals
            .iter()
            .filter(|r| r.tolerance.is_some())
            .map(|r| r.value)
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passed_tracks_every_gate() {
        let mut r = CheckReport::new("x", 1e-8);
        r.gate("a", 1e-9).info("b", 5.0);
        assert!(r.passed);
        r.gate_with("c", 0.5, 0.1);
        assert!(!r.passed);
        assert_eq!(r.worst(), 0.5);
    }

    #[test]
    fn nan_fails() {
        let mut r = CheckReport::new("x", 1.0);
        r.gate("a", f64::NAN);
        assert!(!r.passed);
    }
}
