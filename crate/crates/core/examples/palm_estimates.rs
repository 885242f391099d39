//! Palm Monte Carlo estimates of μ(u) and ν(u) next to their closed forms.
//!
//! cargo run --release --example palm_estimates -- [reps]

use std::time::Instant;

use adrcm::analytics::{
    clique_constant_m3, estimate_mu, estimate_nu, lambda, mu_chain2_exact, mu_chain_asymptotic,
};
use adrcm::{Params, TreeSpec};

fn main() -> adrcm::Result<()> {
    let reps: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2000);
    let p = Params::new(0.5, 0.6)?;
    println!("u\ttree\testimate\tse\texact\tms");
    for &u in &[1e-1, 1e-2, 1e-3, 1e-4] {
        for (name, tree, exact) in [
            ("edge", TreeSpec::single_edge(), lambda(u, &p)),
            ("star2", TreeSpec::star(2)?, lambda(u, &p).powi(2)),
            ("chain2", TreeSpec::chain(2)?, mu_chain2_exact(u, &p)),
        ] {
            let t0 = Instant::now();
            let e = estimate_mu(u, &tree, p, reps, 1)?;
            println!(
                "{u:e}\t{name}\t{:.4}\t{:.4}\t{exact:.4}\t{}",
                e.value,
                e.std_error,
                t0.elapsed().as_millis()
            );
        }
        println!(
            "\tchain2 asymptotic {:.4}",
            mu_chain_asymptotic(u, 2, &p)
        );
    }
    let q = Params::new(0.5, 0.75)?;
    for &u in &[1e-2, 1e-3] {
        let t0 = Instant::now();
        let e = estimate_nu(u, 3, q, reps, 1)?;
        println!(
            "nu m=3 u={u:e}: {:.3} ± {:.3}, / (C u^-γ) = {:.3}, {} ms",
            e.value,
            e.std_error,
            e.value / (clique_constant_m3(&q) * u.powf(-0.75)),
            t0.elapsed().as_millis()
        );
    }
    Ok(())
}
