//! Clique constant by both Monte Carlo methods, against the m = 3 closed form.
//!
//! cargo run --release --example clique_constant -- [reps]

use std::time::Instant;

use adrcm::analytics::{clique_constant, clique_constant_m3, CliqueMethod};
use adrcm::Params;

fn main() -> adrcm::Result<()> {
    let reps: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200_000);
    let p = Params::new(0.5, 0.75)?;
    println!("m\tmethod\testimate\tse\tclosed_form\tms");
    for m in 3..=5 {
        for method in [CliqueMethod::BoxMc, CliqueMethod::PalmMc] {
            let t0 = Instant::now();
            let e = clique_constant(m, p, method, reps, 5)?;
            let exact = if m == 3 { format!("{:.4}", clique_constant_m3(&p)) } else { "-".into() };
            println!(
                "{m}\t{method:?}\t{:.4}\t{:.4}\t{exact}\t{}",
                e.value,
                e.std_error,
                t0.elapsed().as_millis()
            );
        }
    }
    Ok(())
}
