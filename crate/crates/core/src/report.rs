//! Machine-readable check results.

use serde::Serialize;

use crate::numerics::C64;

/// Highest rank covered by independently checked reference values.
pub const VERIFIED_RANK_LIMIT: usize = 7;

/// Note attached to identity checks run beyond [`VERIFIED_RANK_LIMIT`].
pub const EXTRAPOLATION_NOTE: &str = "beyond paper-verified range";

/// One residual compared against a threshold.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub n: usize,
    pub mu: Option<[f64; 2]>,
    pub lambda: Option<[f64; 2]>,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
    pub tag: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl IdentityCheck {
    pub fn new(identity: impl Into<String>, tag: impl Into<String>, n: usize, residual: f64, threshold: f64) -> Self {
        Self {
            identity: identity.into(),
            n,
            mu: None,
            lambda: None,
            residual,
            threshold,
            pass: residual.is_finite() && residual <= threshold,
            tag: tag.into(),
            note: (n > VERIFIED_RANK_LIMIT).then(|| EXTRAPOLATION_NOTE.to_string()),
        }
    }

    pub fn with_mu(mut self, mu: C64) -> Self {
        self.mu = Some([mu.re, mu.im]);
        self
    }

    pub fn with_lambda(mut self, lambda: C64) -> Self {
        self.lambda = Some([lambda.re, lambda.im]);
        self
    }

    /// Marks a check whose pass condition is `residual > threshold`.
    pub fn expect_above(mut self) -> Self {
        self.pass = self.residual.is_finite() && self.residual > self.threshold;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        let note = note.into();
        self.note = Some(match self.note.take() {
            Some(old) => format!("{old}; {note}"),
            None => note,
        });
        self
    }
}

/// Every check passed.
pub fn all_pass(checks: &[IdentityCheck]) -> bool {
    checks.iter().all(|c| c.pass)
}
