use adrcm::analytics::ScalingMethod;
use adrcm::experiments::{gate, run, tree_regime, ExperimentConfig, ExperimentKind, Regime};
use adrcm::stats::quantile;
use adrcm::{Params, TreeSpec};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    /// Every (ell, gamma) pair lands in exactly one regime, matching the
    /// case split written with products.
    #[test]
    fn regime_split_is_total(ell in 1usize..10, gamma in 0.001f64..0.999) {
        let r = tree_regime(ell, gamma);
        let lg = ell as f64 * gamma;
        let expected = if 2.0 * lg <= 1.0 {
            "refused"
        } else if lg < 1.0 {
            "centered"
        } else if lg > 1.0 {
            "subordinator"
        } else {
            "pp_only"
        };
        prop_assert_eq!(r.label(), expected);
        let limit_ok = gate(ExperimentKind::PpConvergence, &r).is_ok();
        prop_assert_eq!(limit_ok, !matches!(r, Regime::Refused(_)));
    }
}

#[test]
fn centred_sums_do_not_drift_with_n() {
    // single edge, gamma = 0.8 < 1: centred regime
    let mut medians = Vec::new();
    for n in [1000u64, 2000, 5000] {
        let mut cfg = ExperimentConfig::new(ExperimentKind::StableSum, Params::new(0.5, 0.8).unwrap(), 10)
            .with_tree(TreeSpec::single_edge());
        cfg.n = n;
        cfg.reps = 300;
        cfg.scaling = ScalingMethod::Exact;
        let s = run(&cfg).unwrap();
        let mut xs = s.scaled.clone();
        xs.sort_by(f64::total_cmp);
        medians.push(quantile(&xs, 0.5));
    }
    // right-skewed limit: median sits below the mean but must not move with n
    assert!(medians.iter().all(|&m| m < 0.0), "{medians:?}");
    let lo = medians.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = medians.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    assert!(hi - lo < 1.0, "{medians:?}");
}

#[test]
fn subordinator_sums_are_uncentred() {
    let mut cfg = ExperimentConfig::new(ExperimentKind::StableSum, Params::new(0.5, 0.6).unwrap(), 4)
        .with_tree(TreeSpec::star(2).unwrap());
    cfg.n = 200;
    cfg.reps = 40;
    cfg.scaling = ScalingMethod::Exact;
    let s = run(&cfg).unwrap();
    assert_eq!(s.regime.as_deref(), Some("subordinator"));
    assert_eq!(s.center, Some(0.0));
    assert!(s.scaled.iter().all(|&x| x >= 0.0));
    assert!((s.tail_index_target.unwrap() - 1.0 / 1.2).abs() < 1e-12);
}

#[test]
fn torus_mode_is_flagged() {
    let mut cfg = ExperimentConfig::new(ExperimentKind::CliqueMaxima, Params::new(0.5, 0.75).unwrap(), 1).with_m(3);
    cfg.n = 300;
    cfg.reps = 12;
    cfg.boundary_mode = adrcm::experiments::BoundaryMode::Torus;
    cfg.scaling_reps = 200;
    let s = run(&cfg).unwrap();
    assert!(s.approximate_boundary);
    assert!(s.ks.is_some());
}
