//! Runs the limit-theorem experiments at desk scale and prints each check.
//!
//! cargo run --release --example limit_theorems -- [reps] [n]

use std::time::Instant;

use adrcm::analytics::ScalingMethod;
use adrcm::experiments::{run, ExperimentConfig, ExperimentKind};
use adrcm::{Params, TreeSpec};

fn main() -> adrcm::Result<()> {
    let mut args = std::env::args().skip(1);
    let reps: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(200);
    let n: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(5000);
    let edge = Params::new(0.5, 0.8)?;
    let clique = Params::new(0.5, 0.75)?;
    let configs = [
        ExperimentConfig::new(ExperimentKind::DegreeCheck, clique, 7),
        ExperimentConfig::new(ExperimentKind::PpConvergence, edge, 7).with_tree(TreeSpec::single_edge()),
        ExperimentConfig::new(ExperimentKind::Maxima, edge, 7).with_tree(TreeSpec::single_edge()),
        ExperimentConfig::new(ExperimentKind::StableSum, edge, 7).with_tree(TreeSpec::single_edge()),
        ExperimentConfig::new(ExperimentKind::CliquePp, clique, 7).with_m(3),
        ExperimentConfig::new(ExperimentKind::CliqueStable, clique, 7).with_m(3),
    ];
    for mut cfg in configs {
        cfg.reps = reps;
        cfg.n = n;
        if cfg.kind.uses_tree() {
            cfg.scaling = ScalingMethod::Exact;
        }
        let t0 = Instant::now();
        let s = run(&cfg)?;
        println!("{} ({:.1} s)", cfg.kind, t0.elapsed().as_secs_f64());
        if let Some(sc) = s.scaling {
            println!("  scaling {:.4} ± {:.4} ({:?})", sc.value, sc.std_error, sc.method);
        }
        for c in &s.checks {
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            println!("  {verdict} {}: {:.4} vs {:.4} [{}]", c.name, c.value, c.target, c.tolerance);
        }
        if let Some(d) = &s.degenerate {
            println!("  degenerate: {d}");
        }
    }
    Ok(())
}
