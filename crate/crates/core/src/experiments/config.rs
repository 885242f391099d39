//! Experiment configuration and its flat `key = value` text form.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::analytics::ScalingMethod;
use crate::error::{AdrcmError, Result};
use crate::model::Params;
use crate::treespec::{parse_tree, TreeSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    DegreeCheck,
    MuScan,
    NuScan,
    PpConvergence,
    Maxima,
    StableSum,
    CliquePp,
    CliqueMaxima,
    CliqueStable,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 9] = [
        ExperimentKind::DegreeCheck,
        ExperimentKind::MuScan,
        ExperimentKind::NuScan,
        ExperimentKind::PpConvergence,
        ExperimentKind::Maxima,
        ExperimentKind::StableSum,
        ExperimentKind::CliquePp,
        ExperimentKind::CliqueMaxima,
        ExperimentKind::CliqueStable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::DegreeCheck => "degree_check",
            ExperimentKind::MuScan => "mu_scan",
            ExperimentKind::NuScan => "nu_scan",
            ExperimentKind::PpConvergence => "pp_convergence",
            ExperimentKind::Maxima => "maxima",
            ExperimentKind::StableSum => "stable_sum",
            ExperimentKind::CliquePp => "clique_pp",
            ExperimentKind::CliqueMaxima => "clique_maxima",
            ExperimentKind::CliqueStable => "clique_stable",
        }
    }

    pub fn uses_tree(self) -> bool {
        matches!(
            self,
            ExperimentKind::MuScan | ExperimentKind::PpConvergence | ExperimentKind::Maxima | ExperimentKind::StableSum
        )
    }

    pub fn uses_clique(self) -> bool {
        matches!(
            self,
            ExperimentKind::NuScan | ExperimentKind::CliquePp | ExperimentKind::CliqueMaxima | ExperimentKind::CliqueStable
        )
    }

    /// Kinds that simulate a window and verify a limit theorem.
    pub fn is_limit(self) -> bool {
        !matches!(self, ExperimentKind::DegreeCheck | ExperimentKind::MuScan | ExperimentKind::NuScan)
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = AdrcmError;
    fn from_str(s: &str) -> Result<Self> {
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| AdrcmError::Config(format!("unknown experiment kind {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryMode {
    /// Exact sampling of everything that can reach a core root.
    ExactMargin,
    /// Periodic window; approximate.
    Torus,
}

impl FromStr for BoundaryMode {
    type Err = AdrcmError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact_margin" => Ok(BoundaryMode::ExactMargin),
            "torus" => Ok(BoundaryMode::Torus),
            _ => Err(AdrcmError::Config(format!("unknown boundary mode {s:?} (exact_margin | torus)"))),
        }
    }
}

pub const DEFAULT_THRESHOLDS: [f64; 5] = [0.5, 1.0, 2.0, 4.0, 8.0];

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub params: Params,
    pub tree: Option<TreeSpec>,
    pub m: Option<usize>,
    pub n: u64,
    pub reps: usize,
    pub seed: u64,
    pub thresholds: Vec<f64>,
    pub boundary_mode: BoundaryMode,
    pub u_grid: Vec<f64>,
    /// How `a_n` / `b_n` are obtained.
    pub scaling: ScalingMethod,
    /// Palm replications behind a Monte Carlo scaling constant.
    pub scaling_reps: usize,
    /// Hill order statistics; `None` uses the default rule.
    pub hill_k: Option<usize>,
    /// Allowed distance of the Hill estimate from the target index.
    pub hill_tolerance: Option<f64>,
}

impl ExperimentConfig {
    pub fn new(kind: ExperimentKind, params: Params, seed: u64) -> Self {
        ExperimentConfig {
            kind,
            params,
            tree: None,
            m: None,
            n: 1000,
            reps: 100,
            seed,
            thresholds: DEFAULT_THRESHOLDS.to_vec(),
            boundary_mode: BoundaryMode::ExactMargin,
            u_grid: vec![1e-1, 1e-2, 1e-3, 1e-4],
            scaling: ScalingMethod::PalmMc,
            scaling_reps: 4000,
            hill_k: None,
            hill_tolerance: None,
        }
    }

    pub fn with_tree(mut self, tree: TreeSpec) -> Self {
        self.tree = Some(tree);
        self
    }

    pub fn with_m(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }

    /// Checks everything except the regime split.
    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(AdrcmError::Config("reps must be >= 1".into()));
        }
        if self.n < 10 {
            return Err(AdrcmError::Config(format!("n must be >= 10, got {}", self.n)));
        }
        if self.kind.uses_tree() && self.tree.is_none() {
            return Err(AdrcmError::Config(format!("{} needs a tree", self.kind)));
        }
        if self.kind.uses_clique() && !matches!(self.m, Some(m) if m >= 2) {
            return Err(AdrcmError::Config(format!("{} needs m >= 2", self.kind)));
        }
        if self.thresholds.is_empty()
            || self.thresholds.iter().any(|&y| !(y > 0.0))
            || self.thresholds.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(AdrcmError::Config("thresholds must be positive and strictly ascending".into()));
        }
        if matches!(self.kind, ExperimentKind::MuScan | ExperimentKind::NuScan) {
            if self.u_grid.is_empty() {
                return Err(AdrcmError::Config("u_grid must be non-empty".into()));
            }
            if let Some(u) = self.u_grid.iter().find(|&&u| !(u > 0.0 && u < 1.0)) {
                return Err(AdrcmError::Config(format!("u_grid values must lie in (0, 1), got {u}")));
            }
            if self.boundary_mode == BoundaryMode::Torus {
                return Err(AdrcmError::Config("scan experiments require boundary_mode = exact_margin".into()));
            }
        }
        if self.scaling_reps == 0 {
            return Err(AdrcmError::Config("scaling_reps must be >= 1".into()));
        }
        Ok(())
    }

    /// Parses the flat `key = value` format. Blank lines and `#` comments
    /// are ignored; unknown keys are rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| AdrcmError::Config(format!("line {}: expected key = value", lineno + 1)))?;
            pairs.push((k.trim().to_string(), v.trim().to_string()));
        }
        Self::from_pairs(&pairs)
    }

    pub fn from_pairs(pairs: &[(String, String)]) -> Result<Self> {
        let get = |key: &str| pairs.iter().rev().find(|(k, _)| k == key).map(|(_, v)| v.as_str());
        let kind: ExperimentKind = get("kind")
            .ok_or_else(|| AdrcmError::Config("missing key: kind".into()))?
            .parse()?;
        let beta = num::<f64>(get("beta").ok_or_else(|| AdrcmError::Config("missing key: beta".into()))?, "beta")?;
        let gamma = num::<f64>(get("gamma").ok_or_else(|| AdrcmError::Config("missing key: gamma".into()))?, "gamma")?;
        let seed = num::<u64>(get("seed").ok_or_else(|| AdrcmError::Config("missing key: seed".into()))?, "seed")?;
        let mut cfg = ExperimentConfig::new(kind, Params::new(beta, gamma)?, seed);
        for (k, v) in pairs {
            match k.as_str() {
                "kind" | "beta" | "gamma" | "seed" => {}
                "tree" => cfg.tree = Some(parse_tree(v)?),
                "m" => cfg.m = Some(num(v, "m")?),
                "n" => cfg.n = num(v, "n")?,
                "reps" => cfg.reps = num(v, "reps")?,
                "thresholds" => cfg.thresholds = list(v, "thresholds")?,
                "boundary_mode" => cfg.boundary_mode = v.parse()?,
                "u_grid" => cfg.u_grid = list(v, "u_grid")?,
                "scaling" => cfg.scaling = v.parse()?,
                "scaling_reps" => cfg.scaling_reps = num(v, "scaling_reps")?,
                "hill_k" => cfg.hill_k = Some(num(v, "hill_k")?),
                "hill_tolerance" => cfg.hill_tolerance = Some(num(v, "hill_tolerance")?),
                other => return Err(AdrcmError::Config(format!("unknown key {other:?}"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn num<T: FromStr>(v: &str, key: &str) -> Result<T> {
    v.parse()
        .map_err(|_| AdrcmError::Config(format!("{key}: cannot parse {v:?}")))
}

fn list(v: &str, key: &str) -> Result<Vec<f64>> {
    v.split(',').map(|s| num(s.trim(), key)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_full_config() {
        let text = "\
# pp run
kind = pp_convergence
beta = 0.5
gamma = 0.8
tree = (())
n = 5000
reps = 20
seed = 7
thresholds = 1, 2, 4
boundary_mode = torus
scaling = exact
";
        let cfg = ExperimentConfig::parse(text).unwrap();
        assert_eq!(cfg.kind, ExperimentKind::PpConvergence);
        assert_eq!(cfg.n, 5000);
        assert_eq!(cfg.thresholds, vec![1.0, 2.0, 4.0]);
        assert_eq!(cfg.boundary_mode, BoundaryMode::Torus);
        assert_eq!(cfg.scaling, ScalingMethod::Exact);
        assert_eq!(cfg.tree.unwrap().edge_count(), 1);
    }

    #[test]
    fn parse_errors() {
        let base = "kind = degree_check\nbeta = 0.5\ngamma = 0.75\nseed = 1\n";
        assert!(ExperimentConfig::parse(base).is_ok());
        assert!(ExperimentConfig::parse(&format!("{base}colour = red\n")).is_err());
        assert!(ExperimentConfig::parse(&format!("{base}n = 5\n")).is_err());
        assert!(ExperimentConfig::parse(&format!("{base}reps = 0\n")).is_err());
        assert!(ExperimentConfig::parse(&format!("{base}thresholds = 2, 1\n")).is_err());
        assert!(ExperimentConfig::parse("kind = degree_check\nbeta = 0.5\ngamma = 0.75\n").is_err());
        let err = ExperimentConfig::parse("kind = degree_check\nbeta = 0.5\ngamma = 1.2\nseed = 1\n").unwrap_err();
        assert_eq!(err.to_string(), "gamma must be < 1");
        assert!(ExperimentConfig::parse("kind = maxima\nbeta = 0.5\ngamma = 0.8\nseed = 1\n").is_err());
        assert!(ExperimentConfig::parse("kind = nu_scan\nbeta = 0.5\ngamma = 0.8\nseed = 1\nm = 3\nu_grid = 0.1, 0\n").is_err());
    }
}
