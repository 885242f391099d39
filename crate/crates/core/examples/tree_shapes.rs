//! Parses tree patterns and prints their shape quantities and regime.
//!
//! cargo run --example tree_shapes -- [gamma] [pattern...]

use adrcm::experiments::tree_regime;
use adrcm::treespec::{analyze_shape, expectation_exponents, parse_tree};

fn main() -> adrcm::Result<()> {
    let mut args = std::env::args().skip(1);
    let gamma: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0.4);
    let mut patterns: Vec<String> = args.collect();
    if patterns.is_empty() {
        patterns = ["(())", "(()())", "((()))", "spider:2,2,1,0", "r(a(b()c())d(e(f()))g())"]
            .map(String::from)
            .to_vec();
    }
    println!("pattern\tcanonical\tnodes\tl\tm\tdepth\tspider\tu-exponent\tlog-power\tregime");
    for text in &patterns {
        let tree = parse_tree(text)?;
        let s = analyze_shape(&tree);
        let (exp, logp) = expectation_exponents(&s, gamma)?;
        println!(
            "{text}\t{}\t{}\t{}\t{}\t{}\t{}\t{exp:.2}\t{logp}\t{}",
            tree.canonical(),
            tree.node_count(),
            s.ell,
            s.m,
            s.depth,
            s.is_spider,
            tree_regime(s.ell, gamma).label()
        );
    }
    Ok(())
}
