//! The statistical toolkit on synthetic data with known answers: Hill on
//! Pareto samples, KS against the true and a wrong law, Poisson dispersion.
//!
//! cargo run --release --example stats_diagnostics -- [n]

use adrcm::rng::stream;
use adrcm::stats::{default_hill_k, hill_estimator, ks_test, poisson_dispersion};
use rand::Rng;
use rand_distr::{Distribution, Poisson};

fn main() -> adrcm::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5000);
    let mut rng = stream(42, 0, 0);
    for alpha in [0.8, 1.25, 2.0] {
        let xs: Vec<f64> = (0..n).map(|_| rng.random::<f64>().max(f64::MIN_POSITIVE).powf(-1.0 / alpha)).collect();
        let h = hill_estimator(&xs, default_hill_k(n))?;
        println!(
            "pareto alpha={alpha}: hill {:.3} [{:.3}, {:.3}] k={}",
            h.alpha_hat, h.ci_low, h.ci_high, h.k_used
        );
    }
    let xs: Vec<f64> = (0..n).map(|_| rng.random::<f64>().powf(-1.0 / 1.25)).collect();
    let right = ks_test(&xs, |x| if x < 1.0 { 0.0 } else { 1.0 - x.powf(-1.25) })?;
    let wrong = ks_test(&xs, |x| if x < 1.0 { 0.0 } else { 1.0 - x.powf(-1.5) })?;
    println!("ks true law:  D={:.4} p={:.3}", right.statistic, right.p_value);
    println!("ks wrong law: D={:.4} p={:.3e}", wrong.statistic, wrong.p_value);
    let pois = Poisson::new(3.0).expect("positive mean");
    let counts: Vec<u64> = (0..n).map(|_| pois.sample(&mut rng) as u64).collect();
    let d = poisson_dispersion(&counts)?;
    println!("poisson(3): mean {:.3} index {:.3} p={:.3}", d.mean, d.index, d.gof.p_value);
    // a mixture is overdispersed
    let mixed: Vec<u64> = counts.iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c } else { 2 * c }).collect();
    let d = poisson_dispersion(&mixed)?;
    println!("mixture:    mean {:.3} index {:.3} p={:.3e}", d.mean, d.index, d.gof.p_value);
    Ok(())
}
