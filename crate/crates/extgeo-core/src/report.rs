//! Residual reports produced by the verification suites.

use serde::Serialize;

use crate::fields::Point;

/// Per-identity verification result: the largest residual observed over
/// all evaluated cases, the point where it occurred, and the tolerance
/// the identity is held to.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub worst_point: Vec<f64>,
    pub pass: bool,
}

/// A named collection of identity reports.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub entries: Vec<IdentityReport>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, entries: Vec<IdentityReport>) -> Self {
        let pass = entries.iter().all(|e| e.pass);
        Self {
            suite: suite.into(),
            pass,
            entries,
        }
    }

    /// Entries that exceeded their tolerance.
    pub fn failures(&self) -> impl Iterator<Item = &IdentityReport> {
        self.entries.iter().filter(|e| !e.pass)
    }

    /// Largest residual across all entries.
    pub fn max_residual(&self) -> f64 {
        self.entries
            .iter()
            .fold(0.0f64, |m, e| m.max(e.max_residual))
    }

    pub fn entry(&self, identity: &str) -> Option<&IdentityReport> {
        self.entries.iter().find(|e| e.identity == identity)
    }
}

/// Accumulates the worst residual for one identity while a suite runs.
pub struct ResidualTracker {
    identity: String,
    tolerance: f64,
    max_residual: f64,
    worst_point: Vec<f64>,
}

impl ResidualTracker {
    pub fn new(identity: impl Into<String>, tolerance: f64) -> Self {
        Self {
            identity: identity.into(),
            tolerance,
            max_residual: 0.0,
            worst_point: Vec::new(),
        }
    }

    pub fn update(&mut self, residual: f64, point: &Point) {
        if residual > self.max_residual || self.worst_point.is_empty() {
            self.max_residual = residual;
            self.worst_point = point.coords().to_vec();
        }
    }

    pub fn max_residual(&self) -> f64 {
        self.max_residual
    }

    pub fn finish(self) -> IdentityReport {
        IdentityReport {
            pass: self.max_residual <= self.tolerance,
            identity: self.identity,
            max_residual: self.max_residual,
            tolerance: self.tolerance,
            worst_point: self.worst_point,
        }
    }
}
