//! Expectations, constants and scaling sequences.
//!
//! `μ(u)` and `ν(u)` are estimated with the Palm (Mecke) construction: a
//! deterministic root `(0, u)` is planted into the Poisson process, the
//! process is sampled exactly on the region that can reach it, and the
//! rooted count is evaluated. Closed forms are provided where the integrals
//! can be done by hand.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counting::{count_cliques_among, CliqueCounter, CountGuards, TreeCounter};
use crate::error::{AdrcmError, Result};
use crate::model::{Params, ReachSampler, Vertex};
use crate::rng::{stream, tag};
use crate::treespec::{analyze_shape, TreeSpec};

/// Out-neighbourhood tail tolerance used by the Palm clique constant.
const OUT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateWithError {
    pub value: f64,
    pub std_error: f64,
    pub reps: usize,
}

impl EstimateWithError {
    pub fn from_samples(xs: &[f64]) -> Self {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let se = if xs.len() > 1 {
            (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0) / n).sqrt()
        } else {
            0.0
        };
        EstimateWithError {
            value: mean,
            std_error: se,
            reps: xs.len(),
        }
    }

    /// Difference in units of the combined standard error.
    pub fn z_against(&self, target: f64) -> f64 {
        (self.value - target) / self.std_error
    }
}

fn check_reps(reps: usize) -> Result<()> {
    if reps == 0 {
        return Err(AdrcmError::ParamDomain("reps must be >= 1".into()));
    }
    Ok(())
}

fn check_u(u: f64) -> Result<()> {
    if !(u > 0.0 && u <= 1.0) {
        return Err(AdrcmError::ParamDomain(format!("u must lie in (0, 1], got {u}")));
    }
    Ok(())
}

/// `λ(u) = (2β/γ) u^{−γ} (1 − u^γ)`, the mean in-degree of a vertex of
/// mark `u`.
pub fn lambda(u: f64, params: &Params) -> f64 {
    params.mean_in_degree(u)
}

/// `μ(u)` for the star with `leaves` leaves: the in-degree is Poisson, so
/// its falling factorial moments are powers of `λ(u)`.
pub fn mu_star_exact(u: f64, leaves: usize, params: &Params) -> f64 {
    lambda(u, params).powi(leaves as i32)
}

/// Exact `μ(u)` for the two-edge chain,
/// `(4β²/γ) u^{−γ} [log(1/u) − (1 − u^γ)/γ]`.
pub fn mu_chain2_exact(u: f64, params: &Params) -> f64 {
    let (b, g) = (params.beta(), params.gamma());
    4.0 * b * b / g * u.powf(-g) * ((1.0 / u).ln() - (1.0 - u.powf(g)) / g)
}

/// `(2β)^d / (γ (d−1)!) · u^{−γ} (log 1/u)^{d−1}`.
pub fn mu_chain_asymptotic(u: f64, d: usize, params: &Params) -> f64 {
    let (b, g) = (params.beta(), params.gamma());
    let fact: f64 = (1..d).map(|i| i as f64).product();
    (2.0 * b).powi(d as i32) / (g * fact) * u.powf(-g) * (1.0 / u).ln().powi(d as i32 - 1)
}

/// `C_{β,γ}` at `m = 3`: `4β²/(γ(1−γ))`.
pub fn clique_constant_m3(params: &Params) -> f64 {
    let (b, g) = (params.beta(), params.gamma());
    4.0 * b * b / (g * (1.0 - g))
}

/// One Palm replication of `D_in` at a planted root `(0, u)`.
pub fn planted_tree_count<R: Rng + ?Sized>(u: f64, tree: &TreeSpec, params: Params, rng: &mut R) -> Result<u128> {
    let root = Vertex { pos: 0.0, mark: u };
    let mut s = ReachSampler::planted(params, root);
    s.expand_in(&[root], tree.depth(), rng)?;
    let g = s.into_graph()?;
    let r = g.index_of(&root)?;
    Ok(TreeCounter::new(&g, tree, &CountGuards::default())?.count_at(r))
}

/// One Palm replication of `C_in` at a planted root `(0, u)`.
pub fn planted_clique_count<R: Rng + ?Sized>(u: f64, m: usize, params: Params, rng: &mut R) -> Result<u128> {
    let root = Vertex { pos: 0.0, mark: u };
    let mut s = ReachSampler::planted(params, root);
    s.expand_in(&[root], 1, rng)?;
    let g = s.into_graph()?;
    let r = g.index_of(&root)?;
    Ok(CliqueCounter::new(&g, m, &CountGuards::default())?.count_at(r))
}

fn parallel_estimate(
    reps: usize,
    seed: u64,
    op: u64,
    f: impl Fn(&mut crate::rng::SimRng) -> Result<f64> + Sync,
) -> Result<EstimateWithError> {
    check_reps(reps)?;
    let xs = (0..reps as u64)
        .into_par_iter()
        .map(|i| f(&mut stream(seed, op, i)))
        .collect::<Result<Vec<f64>>>()?;
    Ok(EstimateWithError::from_samples(&xs))
}

/// Palm estimate of `μ(u) = E[D_in(0, u)]`.
pub fn estimate_mu(u: f64, tree: &TreeSpec, params: Params, reps: usize, seed: u64) -> Result<EstimateWithError> {
    check_u(u)?;
    parallel_estimate(reps, seed, tag::MU, |rng| {
        planted_tree_count(u, tree, params, rng).map(|c| c as f64)
    })
}

/// Palm estimate of `ν(u) = E[C_in(0, u)]`; `m = 2` is the single-edge
/// tree.
pub fn estimate_nu(u: f64, m: usize, params: Params, reps: usize, seed: u64) -> Result<EstimateWithError> {
    check_u(u)?;
    if m < 2 {
        return Err(AdrcmError::ParamDomain(format!("clique order must be >= 2, got {m}")));
    }
    if m == 2 {
        return estimate_mu(u, &TreeSpec::single_edge(), params, reps, seed);
    }
    let limit = CountGuards::default().max_clique_order;
    if m > limit {
        return Err(AdrcmError::SizeGuard { what: "clique order", got: m, limit });
    }
    parallel_estimate(reps, seed, tag::NU, |rng| {
        planted_clique_count(u, m, params, rng).map(|c| c as f64)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CliqueMethod {
    BoxMc,
    PalmMc,
}

impl std::str::FromStr for CliqueMethod {
    type Err = AdrcmError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "box_mc" => Ok(CliqueMethod::BoxMc),
            "palm_mc" => Ok(CliqueMethod::PalmMc),
            _ => Err(AdrcmError::Config(format!("unknown clique method {s:?} (box_mc | palm_mc)"))),
        }
    }
}

const BOX_CHUNK: usize = 4096;

/// `C_{β,γ}` by Monte Carlo.
///
/// `box_mc` integrates the defining `(2m−4)`-dimensional integral. Marks
/// are drawn from the density `(1−γ) w^{−γ}` and positions uniformly on
/// `|z| ≤ β w^{−γ}`, so every sample carries the same weight
/// `(2β/(1−γ))^{m−2}` and only the pairwise indicator varies.
///
/// `palm_mc` plants `(0, 1)` and counts ordered `(m−2)`-tuples of its
/// out-neighbours that are pairwise adjacent.
pub fn clique_constant(m: usize, params: Params, method: CliqueMethod, reps: usize, seed: u64) -> Result<EstimateWithError> {
    if m < 3 {
        return Err(AdrcmError::ParamDomain(format!("clique constant needs m >= 3, got {m}")));
    }
    check_reps(reps)?;
    let (b, g) = (params.beta(), params.gamma());
    let lead = 2.0 * b / g;
    let k = m - 2;
    match method {
        CliqueMethod::BoxMc => {
            let weight = lead * (2.0 * b / (1.0 - g)).powi(k as i32);
            let chunks = reps.div_ceil(BOX_CHUNK);
            let hits: Vec<u64> = (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let mut rng = stream(seed, tag::CLIQUE_BOX, c as u64);
                    let len = BOX_CHUNK.min(reps - c * BOX_CHUNK);
                    let mut w = vec![0.0; k];
                    let mut z = vec![0.0; k];
                    let mut hits = 0u64;
                    for _ in 0..len {
                        for i in 0..k {
                            w[i] = (1.0 - rng.random::<f64>()).powf(1.0 / (1.0 - g));
                            z[i] = b * w[i].powf(-g) * (2.0 * rng.random::<f64>() - 1.0);
                        }
                        let ok = (0..k).all(|i| {
                            (i + 1..k).all(|j| (z[i] - z[j]).abs() <= params.radius_between(w[i], w[j]))
                        });
                        hits += ok as u64;
                    }
                    hits
                })
                .collect();
            let hits: u64 = hits.iter().sum();
            let p = hits as f64 / reps as f64;
            let se = if reps > 1 {
                (p * (1.0 - p) / (reps - 1) as f64).sqrt()
            } else {
                0.0
            };
            Ok(EstimateWithError {
                value: weight * p,
                std_error: weight * se,
                reps,
            })
        }
        CliqueMethod::PalmMc => {
            let fact: f64 = (1..=k).map(|i| i as f64).product();
            parallel_estimate(reps, seed, tag::CLIQUE_PALM, |rng| {
                let root = Vertex { pos: 0.0, mark: 1.0 };
                let mut s = ReachSampler::planted(params, root);
                s.cover_out_neighborhoods(&[root], OUT_TOLERANCE, rng);
                let gr = s.into_graph()?;
                let r = gr.index_of(&root)?;
                let outs = gr.out_neighbor_ids(r);
                Ok(lead * fact * count_cliques_among(&gr, &outs, k) as f64)
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalingMethod {
    /// Palm Monte Carlo at `u = 1/n`.
    PalmMc,
    /// Leading-order asymptotic form.
    Asymptotic,
    /// Closed form, available for stars and the two-edge chain.
    Exact,
}

impl std::str::FromStr for ScalingMethod {
    type Err = AdrcmError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "palm_mc" => Ok(ScalingMethod::PalmMc),
            "asymptotic" => Ok(ScalingMethod::Asymptotic),
            "exact" => Ok(ScalingMethod::Exact),
            _ => Err(AdrcmError::Config(format!(
                "unknown scaling method {s:?} (palm_mc | asymptotic | exact)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Scaling {
    pub value: f64,
    /// Zero for closed forms.
    pub std_error: f64,
    pub method: ScalingMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingConstants {
    pub n: u64,
    pub a_n: f64,
    pub b_n: f64,
    pub method: ScalingMethod,
}

fn check_n(n: u64) -> Result<()> {
    if n < 2 {
        return Err(AdrcmError::ParamDomain(format!("n must be >= 2, got {n}")));
    }
    Ok(())
}

fn star_leaves(tree: &TreeSpec) -> Option<usize> {
    let s = analyze_shape(tree);
    (s.depth == 1).then_some(s.ell)
}

fn chain_length(tree: &TreeSpec) -> Option<usize> {
    let s = analyze_shape(tree);
    (s.ell == 1).then_some(s.depth)
}

/// `a_n = μ(1/n)`.
pub fn tree_scaling(n: u64, tree: &TreeSpec, params: Params, method: ScalingMethod, reps: usize, seed: u64) -> Result<Scaling> {
    check_n(n)?;
    let u = 1.0 / n as f64;
    let shape = analyze_shape(tree);
    let exact = |value| Scaling { value, std_error: 0.0, method };
    match method {
        ScalingMethod::PalmMc => {
            let e = estimate_mu(u, tree, params, reps, seed)?;
            Ok(Scaling { value: e.value, std_error: e.std_error, method })
        }
        ScalingMethod::Exact => {
            if let Some(l) = star_leaves(tree) {
                Ok(exact(mu_star_exact(u, l, &params)))
            } else if chain_length(tree) == Some(2) {
                Ok(exact(mu_chain2_exact(u, &params)))
            } else {
                Err(AdrcmError::Config("exact scaling is available only for stars and the 2-chain".into()))
            }
        }
        ScalingMethod::Asymptotic => {
            if !shape.is_spider {
                return Err(AdrcmError::Config(
                    "asymptotic scaling refused: the constant is unknown for non-spider trees".into(),
                ));
            }
            let form = |u: f64| u.powf(-(shape.ell as f64) * params.gamma()) * (1.0 / u).ln().powi(shape.m as i32);
            let c = if let Some(l) = star_leaves(tree) {
                (2.0 * params.beta() / params.gamma()).powi(l as i32)
            } else if let Some(d) = chain_length(tree) {
                let fact: f64 = (1..d).map(|i| i as f64).product();
                (2.0 * params.beta()).powi(d as i32) / (params.gamma() * fact)
            } else {
                // calibrate the constant with one Palm run at a moderate u
                let u0 = 0.01f64.max(u);
                estimate_mu(u0, tree, params, reps, seed)?.value / form(u0)
            };
            Ok(exact(c * form(u)))
        }
    }
}

/// `b_n = ν(1/n)`.
pub fn clique_scaling(n: u64, m: usize, params: Params, method: ScalingMethod, reps: usize, seed: u64) -> Result<Scaling> {
    check_n(n)?;
    if m < 3 {
        return tree_scaling(n, &TreeSpec::single_edge(), params, method, reps, seed);
    }
    match method {
        ScalingMethod::PalmMc => {
            let e = estimate_nu(1.0 / n as f64, m, params, reps, seed)?;
            Ok(Scaling { value: e.value, std_error: e.std_error, method })
        }
        ScalingMethod::Asymptotic => {
            // ordered tuples: (m−1) orderings of the distinguished member
            let c = if m == 3 {
                clique_constant_m3(&params)
            } else {
                clique_constant(m, params, CliqueMethod::BoxMc, reps.max(100_000), seed)?.value
            };
            Ok(Scaling {
                value: (m - 1) as f64 * c * (n as f64).powf(params.gamma()),
                std_error: 0.0,
                method,
            })
        }
        ScalingMethod::Exact => Err(AdrcmError::Config("no closed form for clique scaling".into())),
    }
}

pub fn scaling_constants(
    n: u64,
    tree: &TreeSpec,
    m: usize,
    params: Params,
    method: ScalingMethod,
    reps: usize,
    seed: u64,
) -> Result<ScalingConstants> {
    let clique_method = if method == ScalingMethod::Exact { ScalingMethod::PalmMc } else { method };
    Ok(ScalingConstants {
        n,
        a_n: tree_scaling(n, tree, params, method, reps, seed)?.value,
        b_n: clique_scaling(n, m, params, clique_method, reps, seed)?.value,
        method,
    })
}

/// Limit law of scaled counts: `κ((y, ∞]) = y^{−alpha}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailLaw {
    /// Tail index, `1/(ℓγ)` for trees and `1/γ` for cliques.
    pub alpha: f64,
}

impl TailLaw {
    pub fn tree(ell: usize, gamma: f64) -> Self {
        TailLaw { alpha: 1.0 / (ell as f64 * gamma) }
    }

    pub fn clique(gamma: f64) -> Self {
        TailLaw { alpha: 1.0 / gamma }
    }

    /// Mean number of limit points above `y`.
    pub fn intensity_above(&self, y: f64) -> f64 {
        y.powf(-self.alpha)
    }

    pub fn cdf(&self, y: f64) -> f64 {
        frechet_cdf(y, 1.0 / self.alpha).expect("alpha > 0")
    }
}

/// Fréchet distribution function `exp(−y^{−1/alpha})`, where `alpha` is
/// the exponent `ℓγ` (or `γ`), the reciprocal of the tail index.
pub fn frechet_cdf(y: f64, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(AdrcmError::ParamDomain(format!("alpha must be > 0, got {alpha}")));
    }
    if y <= 0.0 {
        return Ok(0.0);
    }
    Ok((-y.powf(-1.0 / alpha)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::ols_slope;
    use approx::assert_relative_eq;

    fn p(b: f64, g: f64) -> Params {
        Params::new(b, g).unwrap()
    }

    /// `λ` by midpoint quadrature of the in-neighbourhood area.
    fn lambda_quadrature(u: f64, params: &Params) -> f64 {
        let steps = 200_000;
        let h = (1.0 - u) / steps as f64;
        (0..steps)
            .map(|i| 2.0 * params.radius(u, u + (i as f64 + 0.5) * h) * h)
            .sum()
    }

    #[test]
    fn lambda_matches_quadrature() {
        for &(b, g, u) in &[(0.5, 0.5, 0.1), (1.0, 0.8, 0.3), (0.25, 0.3, 0.01)] {
            let params = p(b, g);
            assert_relative_eq!(lambda(u, &params), lambda_quadrature(u, &params), max_relative = 1e-6);
        }
        assert_eq!(lambda(1.0, &p(0.5, 0.5)), 0.0);
    }

    #[test]
    fn chain2_matches_nested_quadrature() {
        // ∫_u^1 2 r(u,v) λ(v) dv
        let params = p(0.5, 0.6);
        let u = 0.01;
        let steps = 400_000;
        let h = (1.0 - u) / steps as f64;
        let q: f64 = (0..steps)
            .map(|i| {
                let v = u + (i as f64 + 0.5) * h;
                2.0 * params.radius(u, v) * lambda(v, &params) * h
            })
            .sum();
        assert_relative_eq!(mu_chain2_exact(u, &params), q, max_relative = 1e-5);
    }

    #[test]
    fn chain_asymptotic_values() {
        let params = p(0.5, 0.5);
        assert_relative_eq!(mu_chain_asymptotic(0.01, 1, &params), 20.0, max_relative = 1e-12);
        let u = (-1.0f64).exp();
        assert_relative_eq!(
            mu_chain_asymptotic(u, 2, &params),
            mu_chain_asymptotic(u, 1, &params) * 2.0 * 0.5,
            max_relative = 1e-12
        );
        // ratio of exact to asymptotic tends to one
        let r1 = mu_chain2_exact(1e-3, &params) / mu_chain_asymptotic(1e-3, 2, &params);
        let r2 = mu_chain2_exact(1e-12, &params) / mu_chain_asymptotic(1e-12, 2, &params);
        assert!(r1 < r2 && r2 < 1.0 && r2 > 0.9);
    }

    #[test]
    fn frechet_values() {
        assert_relative_eq!(frechet_cdf(1.0, 0.7).unwrap(), (-1.0f64).exp());
        assert_relative_eq!(frechet_cdf(2.0, 0.8).unwrap(), 0.6567, epsilon = 1e-4);
        assert_eq!(frechet_cdf(-1.0, 0.8).unwrap(), 0.0);
        assert!(frechet_cdf(1e12, 0.8).unwrap() > 0.999_99);
        assert!(frechet_cdf(1.0, 0.0).is_err());
        let law = TailLaw::tree(1, 0.8);
        assert_relative_eq!(law.alpha, 1.25);
        assert_relative_eq!(law.cdf(2.0), frechet_cdf(2.0, 0.8).unwrap());
    }

    #[test]
    fn single_edge_palm_matches_lambda() {
        let params = p(0.5, 0.6);
        for &u in &[0.3, 0.05] {
            let e = estimate_mu(u, &TreeSpec::single_edge(), params, 2000, 11).unwrap();
            assert!(e.z_against(lambda(u, &params)).abs() < 3.0, "{u}: {e:?}");
        }
        let e = estimate_mu(1.0, &TreeSpec::single_edge(), params, 50, 1).unwrap();
        assert_eq!(e.value, 0.0);
        assert!(estimate_mu(0.0, &TreeSpec::single_edge(), params, 5, 1).is_err());
        assert!(estimate_mu(0.5, &TreeSpec::single_edge(), params, 0, 1).is_err());
    }

    #[test]
    fn chain2_palm_matches_exact() {
        let params = p(0.5, 0.6);
        let e = estimate_mu(0.05, &TreeSpec::chain(2).unwrap(), params, 3000, 5).unwrap();
        assert!(e.z_against(mu_chain2_exact(0.05, &params)).abs() < 3.0, "{e:?}");
    }

    #[test]
    fn nu_m2_delegates() {
        let params = p(0.5, 0.6);
        let a = estimate_nu(0.1, 2, params, 100, 3).unwrap();
        let b = estimate_mu(0.1, &TreeSpec::single_edge(), params, 100, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(estimate_nu(1.0, 3, params, 10, 3).unwrap().value, 0.0);
    }

    #[test]
    fn estimates_are_deterministic() {
        let params = p(0.5, 0.6);
        let t = TreeSpec::star(2).unwrap();
        assert_eq!(
            estimate_mu(0.1, &t, params, 64, 9).unwrap(),
            estimate_mu(0.1, &t, params, 64, 9).unwrap()
        );
    }

    #[test]
    fn std_error_halves_with_four_times_reps() {
        let params = p(0.5, 0.6);
        let t = TreeSpec::single_edge();
        let a = estimate_mu(0.1, &t, params, 1000, 21).unwrap();
        let b = estimate_mu(0.1, &t, params, 4000, 22).unwrap();
        let ratio = a.std_error / b.std_error;
        assert!((ratio - 2.0).abs() < 0.4, "{ratio}");
    }

    #[test]
    fn star_oracle_is_decreasing_and_palm_orders() {
        let params = p(0.5, 0.6);
        let us: Vec<f64> = (1..100).map(|i| i as f64 / 100.0).collect();
        assert!(us.windows(2).all(|w| mu_star_exact(w[0], 2, &params) > mu_star_exact(w[1], 2, &params)));
        let t = TreeSpec::star(2).unwrap();
        let a = estimate_mu(0.02, &t, params, 500, 1).unwrap();
        let b = estimate_mu(0.2, &t, params, 500, 2).unwrap();
        assert!(a.value - b.value > 3.0 * (a.std_error.hypot(b.std_error)));
    }

    #[test]
    fn single_edge_exponent_recovery() {
        let params = p(0.5, 0.6);
        let us = [1e-1, 1e-2, 1e-3, 1e-4];
        let xs: Vec<f64> = us.iter().map(|u: &f64| (1.0 / u).ln()).collect();
        let t = TreeSpec::single_edge();
        let ys: Vec<f64> = us
            .iter()
            .map(|&u| estimate_mu(u, &t, params, 400, 4).unwrap().value.ln())
            .collect();
        let slope = ols_slope(&xs, &ys).unwrap();
        assert!((slope - 0.6).abs() < 0.05, "{slope}");
    }

    #[test]
    fn clique_constant_m3_box_and_palm() {
        let params = p(0.5, 0.75);
        let target = clique_constant_m3(&params);
        assert_relative_eq!(target, 16.0 / 3.0, max_relative = 1e-12);
        let b = clique_constant(3, params, CliqueMethod::BoxMc, 1000, 1).unwrap();
        assert_relative_eq!(b.value, target, max_relative = 1e-12);
        let pm = clique_constant(3, params, CliqueMethod::PalmMc, 4000, 1).unwrap();
        assert!(pm.z_against(target).abs() < 3.0, "{pm:?}");
    }

    #[test]
    fn clique_constant_m4_methods_agree_and_scale_with_beta() {
        let params = p(0.5, 0.75);
        let b = clique_constant(4, params, CliqueMethod::BoxMc, 200_000, 2).unwrap();
        let pm = clique_constant(4, params, CliqueMethod::PalmMc, 4000, 2).unwrap();
        assert!((b.value - pm.value).abs() < 3.0 * b.std_error.hypot(pm.std_error), "{b:?} {pm:?}");
        let half = clique_constant(4, p(0.25, 0.75), CliqueMethod::BoxMc, 200_000, 3).unwrap();
        let ratio = b.value / half.value;
        // β^{m−1} = β³: halving β divides by 8
        assert!((ratio - 8.0).abs() < 0.4, "{ratio}");
        assert!(clique_constant(2, params, CliqueMethod::BoxMc, 10, 1).is_err());
    }

    #[test]
    fn scaling_examples() {
        let params = p(0.5, 0.8);
        let e = TreeSpec::single_edge();
        let a = tree_scaling(100, &e, params, ScalingMethod::Exact, 1, 0).unwrap();
        let expect = (2.0 * 0.5 / 0.8) * 100f64.powf(0.8) * (1.0 - 100f64.powf(-0.8));
        assert_relative_eq!(a.value, expect, max_relative = 1e-12);
        let asym = tree_scaling(100, &e, params, ScalingMethod::Asymptotic, 1, 0).unwrap();
        assert_relative_eq!(asym.value, (2.0 * 0.5 / 0.8) * 100f64.powf(0.8), max_relative = 1e-12);
        let s = scaling_constants(2, &e, 3, params, ScalingMethod::PalmMc, 50, 0).unwrap();
        assert!(s.a_n > 0.0 && s.b_n > 0.0);
        let non_spider = crate::treespec::parse_tree("((()()))").unwrap();
        assert!(tree_scaling(100, &non_spider, params, ScalingMethod::Asymptotic, 10, 0).is_err());
        assert!(tree_scaling(1, &e, params, ScalingMethod::Exact, 1, 0).is_err());
    }

    #[test]
    fn clique_asymptotic_scaling_counts_orderings() {
        let params = p(0.5, 0.75);
        let s = clique_scaling(100, 3, params, ScalingMethod::Asymptotic, 1, 0).unwrap();
        assert_relative_eq!(s.value, 2.0 * 16.0 / 3.0 * 100f64.powf(0.75), max_relative = 1e-12);
    }
}
