//! The regime split of the limit theorems.

use serde::Serialize;

use super::config::ExperimentKind;
use crate::error::{AdrcmError, Result};

/// Relative tolerance for landing exactly on a regime boundary.
const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// Outside every limit theorem.
    Refused(String),
    /// Zero-mean stable limit for centred sums.
    Centered,
    /// Stable subordinator for uncentred sums.
    Subordinator,
    /// `γ = 1/ℓ`: point-process and maxima results hold, the sum is
    /// excluded.
    PpOnly,
}

impl Regime {
    pub fn label(&self) -> &'static str {
        match self {
            Regime::Refused(_) => "refused",
            Regime::Centered => "centered",
            Regime::Subordinator => "subordinator",
            Regime::PpOnly => "pp_only",
        }
    }
}

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= BOUNDARY_TOL * b.abs()
}

pub fn tree_regime(ell: usize, gamma: f64) -> Regime {
    let l = ell as f64;
    let lower = 1.0 / (2.0 * l);
    let upper = 1.0 / l;
    if !(gamma > 0.0 && gamma < 1.0) {
        Regime::Refused(format!("gamma = {gamma} outside (0, 1)"))
    } else if gamma <= lower || near(gamma, lower) {
        Regime::Refused(format!(
            "gamma = {gamma} <= 1/(2*ell) = {lower}: Gaussian regime, no heavy-tailed limit"
        ))
    } else if near(gamma, upper) {
        Regime::PpOnly
    } else if gamma < upper {
        Regime::Centered
    } else {
        // gamma > 1/ell forces ell > 1 because gamma < 1
        Regime::Subordinator
    }
}

pub fn clique_regime(gamma: f64) -> Regime {
    if gamma > 0.5 && gamma < 1.0 && !near(gamma, 0.5) {
        Regime::Centered
    } else {
        Regime::Refused(format!("clique limit theorems need gamma in (1/2, 1), got {gamma}"))
    }
}

/// Gate for experiment `kind`: returns the regime, or a regime error when
/// the experiment is not covered.
pub fn gate(kind: ExperimentKind, regime: &Regime) -> Result<()> {
    if !kind.is_limit() {
        return Ok(());
    }
    match regime {
        Regime::Refused(why) => Err(AdrcmError::Regime(why.clone())),
        Regime::PpOnly if matches!(kind, ExperimentKind::StableSum) => Err(AdrcmError::Regime(
            "gamma = 1/ell is the boundary case the stable limit theorem does not address".into(),
        )),
        _ => Ok(()),
    }
}
