//! Reproducible replication experiments.
//!
//! Each replication draws its own random stream from `(seed, rep)`, and
//! results are collected in replication order, so a run is bit-identical
//! whatever the size of the thread pool (wall-clock times aside).

mod config;
mod regime;
mod report;

pub use config::{BoundaryMode, ExperimentConfig, ExperimentKind, DEFAULT_THRESHOLDS};
pub use regime::{clique_regime, gate, tree_regime, Regime};
pub use report::{emit_plot_data, write_replications_csv, write_summary_json};

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::analytics::{
    clique_constant_m3, clique_scaling, estimate_mu, estimate_nu, mu_chain2_exact, mu_star_exact, tree_scaling,
    EstimateWithError, Scaling, TailLaw,
};
use crate::counting::{CliqueCounter, CountGuards, TreeCounter};
use crate::error::{AdrcmError, Result};
use crate::model::{build_graph, sample_point_process, AdrcmGraph, ReachSampler, SimWindow};
use crate::rng::{stream, tag, SimRng};
use crate::stats::{
    default_hill_k, exceedance_counts, hill_estimator, ks_test, mean_variance, ols_slope, poisson_dispersion,
    quantile, DispersionReport, GofReport, TailIndexEstimate,
};
use crate::treespec::analyze_shape;

/// Uncovered out-neighbour mass allowed in the degree check.
const OUT_TOLERANCE: f64 = 1e-9;

/// Quantile levels of the stable-sum table.
pub const QUANTILE_LEVELS: [f64; 11] = [0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95, 0.99, 0.995, 0.999];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplicationResult {
    pub rep: usize,
    pub roots: usize,
    pub sum: f64,
    pub max: f64,
    /// Exceedances of the scaled counts, one per threshold.
    pub exceedances: Vec<u64>,
    /// Out-degrees of core vertices (degree check only).
    #[serde(skip)]
    pub degrees: Vec<u64>,
    #[serde(skip)]
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub target: f64,
    /// Human-readable acceptance rule, e.g. `|value - target| <= 0.04`.
    pub tolerance: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdStat {
    pub y: f64,
    pub mean: f64,
    pub variance: f64,
    pub dispersion: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub target: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub u: f64,
    pub estimate: EstimateWithError,
    pub oracle: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeReport {
    pub target_mean: f64,
    pub dispersion: DispersionReport,
    /// Upper bound on the expected number of missed out-neighbours.
    pub truncation_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub kind: ExperimentKind,
    pub version: &'static str,
    pub seed: u64,
    pub beta: f64,
    pub gamma: f64,
    pub pattern: String,
    pub n: u64,
    pub reps: usize,
    pub boundary_mode: BoundaryMode,
    pub approximate_boundary: bool,
    pub regime: Option<String>,
    pub tail_index_target: Option<f64>,
    pub scaling: Option<Scaling>,
    pub thresholds: Vec<f64>,
    pub exceedances: Vec<ThresholdStat>,
    pub ks: Option<GofReport>,
    pub hill: Option<TailIndexEstimate>,
    pub center: Option<f64>,
    pub quantiles: Vec<(f64, f64)>,
    pub degree: Option<DegreeReport>,
    pub scan: Vec<ScanRow>,
    pub slope: Option<f64>,
    pub slope_target: Option<f64>,
    pub degenerate: Option<String>,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub replications: Vec<ReplicationResult>,
    /// Per-replication scaled statistic used for plotting (scaled maxima,
    /// or scaled centred sums).
    #[serde(skip)]
    pub scaled: Vec<f64>,
}

impl Summary {
    fn new(cfg: &ExperimentConfig) -> Self {
        Summary {
            kind: cfg.kind,
            version: env!("CARGO_PKG_VERSION"),
            seed: cfg.seed,
            beta: cfg.params.beta(),
            gamma: cfg.params.gamma(),
            pattern: pattern_label(cfg),
            n: cfg.n,
            reps: cfg.reps,
            boundary_mode: cfg.boundary_mode,
            approximate_boundary: cfg.boundary_mode == BoundaryMode::Torus,
            regime: None,
            tail_index_target: None,
            scaling: None,
            thresholds: cfg.thresholds.clone(),
            exceedances: Vec::new(),
            ks: None,
            hill: None,
            center: None,
            quantiles: Vec::new(),
            degree: None,
            scan: Vec::new(),
            slope: None,
            slope_target: None,
            degenerate: None,
            checks: Vec::new(),
            replications: Vec::new(),
            scaled: Vec::new(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn check(&mut self, name: &str, value: f64, target: f64, tolerance: String, pass: bool) {
        self.checks.push(Check {
            name: name.into(),
            value,
            target,
            tolerance,
            pass,
        });
    }
}

fn pattern_label(cfg: &ExperimentConfig) -> String {
    if let Some(t) = &cfg.tree {
        t.to_string()
    } else if let Some(m) = cfg.m {
        format!("m={m}")
    } else {
        String::new()
    }
}

/// Runs any experiment kind.
pub fn run(cfg: &ExperimentConfig) -> Result<Summary> {
    cfg.validate()?;
    match cfg.kind {
        ExperimentKind::DegreeCheck => run_degree_check(cfg),
        ExperimentKind::MuScan | ExperimentKind::NuScan => run_scan(cfg),
        ExperimentKind::PpConvergence | ExperimentKind::CliquePp => run_pp_convergence(cfg),
        ExperimentKind::Maxima | ExperimentKind::CliqueMaxima => run_maxima(cfg),
        ExperimentKind::StableSum | ExperimentKind::CliqueStable => run_stable_sum(cfg),
    }
}

/// Regime of a limit experiment, after the spider and regime gates.
pub fn regime_of(cfg: &ExperimentConfig) -> Result<(Regime, TailLaw)> {
    let g = cfg.params.gamma();
    let (regime, law) = if cfg.kind.uses_clique() {
        (clique_regime(g), TailLaw::clique(g))
    } else {
        let tree = cfg.tree.as_ref().ok_or_else(|| AdrcmError::Config("tree required".into()))?;
        let shape = analyze_shape(tree);
        if cfg.kind.is_limit() && !shape.is_spider {
            return Err(AdrcmError::Regime(
                "limit theorems are established for spider trees only".into(),
            ));
        }
        (tree_regime(shape.ell, g), TailLaw::tree(shape.ell, g))
    };
    gate(cfg.kind, &regime)?;
    Ok((regime, law))
}

fn scaling_of(cfg: &ExperimentConfig) -> Result<Scaling> {
    let seed = crate::rng::stream_seed(cfg.seed, tag::SCALING);
    if cfg.kind.uses_clique() {
        clique_scaling(cfg.n, cfg.m.unwrap_or(3), cfg.params, cfg.scaling, cfg.scaling_reps, seed)
    } else {
        let tree = cfg.tree.as_ref().expect("validated");
        tree_scaling(cfg.n, tree, cfg.params, cfg.scaling, cfg.scaling_reps, seed)
    }
}

/// Samples one replication's graph: the window `[0, n]` plus everything
/// reachable from it up to `depth` in-hops (exact mode), or the torus.
fn sample_graph(cfg: &ExperimentConfig, depth: usize, rng: &mut SimRng) -> Result<AdrcmGraph> {
    let n = cfg.n as f64;
    match cfg.boundary_mode {
        BoundaryMode::ExactMargin => {
            let mut s = ReachSampler::with_core(cfg.params, 0.0, n, rng);
            let core = s.points().to_vec();
            s.expand_in(&core, depth, rng)?;
            s.into_graph()
        }
        BoundaryMode::Torus => {
            let w = SimWindow::torus(0.0, n)?;
            let pts = sample_point_process(&w, rng);
            build_graph(pts, cfg.params, &w)
        }
    }
}

/// Counts at every core root of one replication.
fn replicate_counts(cfg: &ExperimentConfig, rep: usize) -> Result<(Vec<f64>, f64)> {
    let t0 = Instant::now();
    let mut rng = stream(cfg.seed, tag::EXPERIMENT, rep as u64);
    let guards = CountGuards::default();
    let counts = if let Some(tree) = cfg.tree.as_ref().filter(|_| cfg.kind.uses_tree()) {
        let g = sample_graph(cfg, tree.depth(), &mut rng)?;
        let mut c = TreeCounter::new(&g, tree, &guards)?;
        g.core_indices().iter().map(|&i| c.count_at(i) as f64).collect()
    } else {
        let g = sample_graph(cfg, 1, &mut rng)?;
        let mut c = CliqueCounter::new(&g, cfg.m.unwrap_or(3), &guards)?;
        g.core_indices().iter().map(|&i| c.count_at(i) as f64).collect()
    };
    Ok((counts, t0.elapsed().as_secs_f64() * 1e3))
}

fn run_replications(cfg: &ExperimentConfig, scale: f64) -> Result<Vec<ReplicationResult>> {
    (0..cfg.reps)
        .into_par_iter()
        .map(|rep| {
            let (counts, wall_ms) = replicate_counts(cfg, rep)?;
            let sum = counts.iter().sum();
            let max = counts.iter().copied().fold(0.0, f64::max);
            Ok(ReplicationResult {
                rep,
                roots: counts.len(),
                sum,
                max,
                exceedances: exceedance_counts(&counts, scale, &cfg.thresholds),
                degrees: Vec::new(),
                wall_ms,
            })
        })
        .collect()
}

/// Pooled out-degrees of core vertices against `2β/(1−γ)`.
pub fn run_degree_check(cfg: &ExperimentConfig) -> Result<Summary> {
    cfg.validate()?;
    let mut summary = Summary::new(cfg);
    let n = cfg.n as f64;
    let results: Vec<(ReplicationResult, f64)> = (0..cfg.reps)
        .into_par_iter()
        .map(|rep| {
            let t0 = Instant::now();
            let mut rng = stream(cfg.seed, tag::EXPERIMENT, rep as u64);
            let (g, bound) = match cfg.boundary_mode {
                BoundaryMode::ExactMargin => {
                    let mut s = ReachSampler::with_core(cfg.params, 0.0, n, &mut rng);
                    let core = s.points().to_vec();
                    let bound = s.cover_out_neighborhoods(&core, OUT_TOLERANCE, &mut rng);
                    (s.into_graph()?, bound)
                }
                BoundaryMode::Torus => (sample_graph(cfg, 1, &mut rng)?, 0.0),
            };
            let degrees: Vec<u64> = g.core_indices().iter().map(|&i| g.out_degree(i) as u64).collect();
            let sum = degrees.iter().sum::<u64>() as f64;
            let max = degrees.iter().copied().max().unwrap_or(0) as f64;
            Ok((
                ReplicationResult {
                    rep,
                    roots: degrees.len(),
                    sum,
                    max,
                    exceedances: Vec::new(),
                    degrees,
                    wall_ms: t0.elapsed().as_secs_f64() * 1e3,
                },
                bound,
            ))
        })
        .collect::<Result<_>>()?;
    let bound = results.iter().map(|r| r.1).fold(0.0, f64::max);
    let reps: Vec<ReplicationResult> = results.into_iter().map(|r| r.0).collect();
    let pooled: Vec<u64> = reps.iter().flat_map(|r| r.degrees.iter().copied()).collect();
    let target = cfg.params.mean_out_degree();
    match poisson_dispersion(&pooled) {
        Ok(d) => {
            let rel = (d.mean - target).abs() / target;
            summary.check("mean_out_degree", d.mean, target, "relative error <= 0.01".into(), rel <= 0.01);
            summary.check(
                "dispersion_index",
                d.index,
                1.0,
                "0.95 <= index <= 1.05".into(),
                (0.95..=1.05).contains(&d.index),
            );
            summary.degree = Some(DegreeReport {
                target_mean: target,
                dispersion: d,
                truncation_bound: bound,
            });
        }
        Err(e) => summary.degenerate = Some(e.to_string()),
    }
    summary.replications = reps;
    Ok(summary)
}

/// Exceedance means of the scaled counts against the limit intensity.
pub fn run_pp_convergence(cfg: &ExperimentConfig) -> Result<Summary> {
    cfg.validate()?;
    let (regime, law) = regime_of(cfg)?;
    let mut summary = Summary::new(cfg);
    summary.regime = Some(regime.label().into());
    summary.tail_index_target = Some(law.alpha);
    let scaling = scaling_of(cfg)?;
    summary.scaling = Some(scaling);
    let reps = run_replications(cfg, scaling.value)?;
    let r = reps.len() as f64;
    for (t, &y) in cfg.thresholds.iter().enumerate() {
        let xs: Vec<f64> = reps.iter().map(|rep| rep.exceedances[t] as f64).collect();
        let (mean, variance) = mean_variance(&xs);
        let half = 1.96 * (variance / r).sqrt();
        let target = law.intensity_above(y);
        let dispersion = if mean > 0.0 { variance / mean } else { f64::NAN };
        summary.exceedances.push(ThresholdStat {
            y,
            mean,
            variance,
            dispersion,
            ci_low: mean - half,
            ci_high: mean + half,
            target,
        });
        summary.check(
            &format!("exceedance_mean_y{y}"),
            mean,
            target,
            format!("target within mean ± {half:.4} (95% CI)"),
            (mean - target).abs() <= half,
        );
        if y == 1.0 {
            summary.check(
                "dispersion_y1",
                dispersion,
                1.0,
                "0.8 <= index <= 1.2".into(),
                (0.8..=1.2).contains(&dispersion),
            );
        }
    }
    summary.replications = reps;
    Ok(summary)
}

/// Scaled maxima against the Fréchet law.
pub fn run_maxima(cfg: &ExperimentConfig) -> Result<Summary> {
    cfg.validate()?;
    let (regime, law) = regime_of(cfg)?;
    let mut summary = Summary::new(cfg);
    summary.regime = Some(regime.label().into());
    summary.tail_index_target = Some(law.alpha);
    let scaling = scaling_of(cfg)?;
    summary.scaling = Some(scaling);
    let reps = run_replications(cfg, scaling.value)?;
    let maxima: Vec<f64> = reps.iter().map(|r| r.max / scaling.value).collect();
    if maxima.iter().all(|&x| x == 0.0) {
        summary.degenerate = Some("all replications have zero counts".into());
    } else if maxima.len() < 10 {
        summary.degenerate = Some(format!("KS test needs at least 10 replications, got {}", maxima.len()));
    } else {
        let ks = ks_test(&maxima, |y| law.cdf(y))?;
        summary.check("ks_frechet", ks.p_value, 0.01, "p_value > 0.01".into(), ks.p_value > 0.01);
        summary.ks = Some(ks);
    }
    summary.scaled = maxima;
    summary.replications = reps;
    Ok(summary)
}

/// Hill index of the positive tail of the scaled sums.
pub fn run_stable_sum(cfg: &ExperimentConfig) -> Result<Summary> {
    cfg.validate()?;
    let (regime, law) = regime_of(cfg)?;
    let mut summary = Summary::new(cfg);
    summary.regime = Some(regime.label().into());
    summary.tail_index_target = Some(law.alpha);
    let scaling = scaling_of(cfg)?;
    summary.scaling = Some(scaling);
    let reps = run_replications(cfg, scaling.value)?;
    let sums: Vec<f64> = reps.iter().map(|r| r.sum).collect();
    let center = if regime == Regime::Centered {
        mean_variance(&sums).0
    } else {
        0.0
    };
    summary.center = Some(center);
    let scaled: Vec<f64> = sums.iter().map(|s| (s - center) / scaling.value).collect();
    let mut sorted = scaled.clone();
    sorted.sort_unstable_by(f64::total_cmp);
    summary.quantiles = QUANTILE_LEVELS.iter().map(|&p| (p, quantile(&sorted, p))).collect();
    let positive: Vec<f64> = scaled.iter().copied().filter(|&x| x > 0.0).collect();
    let k = cfg.hill_k.unwrap_or_else(|| default_hill_k(positive.len()));
    let tolerance = cfg
        .hill_tolerance
        .unwrap_or(if cfg.kind.uses_clique() { 0.30 } else { 0.25 });
    match hill_estimator(&positive, k) {
        Ok(h) => {
            summary.check(
                "hill_tail_index",
                h.alpha_hat,
                law.alpha,
                format!("|alpha_hat - target| <= {tolerance}"),
                (h.alpha_hat - law.alpha).abs() <= tolerance,
            );
            summary.hill = Some(h);
        }
        Err(e) => summary.degenerate = Some(e.to_string()),
    }
    summary.scaled = scaled;
    summary.replications = reps;
    Ok(summary)
}

/// Palm estimates over a `u` grid and the recovered power exponent.
pub fn run_scan(cfg: &ExperimentConfig) -> Result<Summary> {
    cfg.validate()?;
    let mut summary = Summary::new(cfg);
    let p = cfg.params;
    let g = p.gamma();
    let (log_power, target) = if cfg.kind == ExperimentKind::MuScan {
        let tree = cfg.tree.as_ref().expect("validated");
        let shape = analyze_shape(tree);
        let star = (shape.depth == 1).then_some(shape.ell);
        let chain2 = shape.ell == 1 && shape.depth == 2;
        for &u in &cfg.u_grid {
            let estimate = estimate_mu(u, tree, p, cfg.reps, cfg.seed)?;
            let oracle = match (star, chain2) {
                (Some(l), _) => Some(mu_star_exact(u, l, &p)),
                (_, true) => Some(mu_chain2_exact(u, &p)),
                _ => None,
            };
            summary.scan.push(ScanRow { u, estimate, oracle });
        }
        (shape.m, shape.ell as f64 * g)
    } else {
        let m = cfg.m.expect("validated");
        for &u in &cfg.u_grid {
            let estimate = estimate_nu(u, m, p, cfg.reps, cfg.seed)?;
            let oracle = (m == 2).then(|| mu_star_exact(u, 1, &p));
            summary.scan.push(ScanRow { u, estimate, oracle });
        }
        if m == 3 {
            summary.check(
                "clique_constant_m3",
                clique_constant_m3(&p),
                clique_constant_m3(&p),
                "closed form".into(),
                true,
            );
        }
        (0, g)
    };
    let xs: Vec<f64> = summary.scan.iter().map(|r| (1.0 / r.u).ln()).collect();
    let ys: Vec<f64> = summary
        .scan
        .iter()
        .map(|r| (r.estimate.value / (1.0 / r.u).ln().powi(log_power as i32)).ln())
        .collect();
    summary.slope_target = Some(target);
    if ys.iter().all(|y| y.is_finite()) {
        summary.slope = ols_slope(&xs, &ys);
    }
    match summary.slope {
        Some(s) => summary.check(
            "exponent_slope",
            s,
            target,
            "|slope - target| <= 0.05".into(),
            (s - target).abs() <= 0.05,
        ),
        None => summary.degenerate = Some("slope undefined: need two grid points with positive estimates".into()),
    }
    Ok(summary)
}
