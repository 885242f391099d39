//! Counts tree embeddings and clique tuples at the oldest vertices of a
//! small window and compares with the brute-force oracles.
//!
//! cargo run --release --example count_patterns -- [n] [seed]

use adrcm::counting::{
    brute_force_clique_tuples_with, brute_force_tree_embeddings_with, CliqueCounter, CountGuards, TreeCounter,
};
use adrcm::model::{build_graph, sample_point_process};
use adrcm::rng::{stream, tag::SIMULATE};
use adrcm::treespec::parse_tree;
use adrcm::{Params, SimWindow};

fn main() -> adrcm::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(40.0);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);
    let p = Params::new(0.6, 0.7)?;
    let w = SimWindow::new(0.0, n, 0.0)?;
    let g = build_graph(sample_point_process(&w, &mut stream(seed, SIMULATE, 0)), p, &w)?;
    let tree = parse_tree("(()(()))")?;
    let guards = CountGuards::default();
    let mut trees = TreeCounter::new(&g, &tree, &guards)?;
    let mut cliques = CliqueCounter::new(&g, 3, &guards)?;

    let mut order: Vec<usize> = (0..g.len()).collect();
    order.sort_by(|&a, &b| g.vertex(a).mark.total_cmp(&g.vertex(b).mark));
    println!("mark\tin_deg\ttree\ttree_oracle\ttriangles\ttriangle_oracle");
    // the oracles enumerate every ordered tuple, so allow the whole graph
    let brute = CountGuards { max_brute_vertices: g.len(), ..guards };
    for &i in order.iter().take(8) {
        let v = g.vertex(i);
        let tree_oracle = brute_force_tree_embeddings_with(&g, &tree, &v, &brute)?;
        let clique_oracle = brute_force_clique_tuples_with(&g, 3, &v, &brute)?;
        println!(
            "{:.3e}\t{}\t{}\t{tree_oracle}\t{}\t{clique_oracle}",
            v.mark,
            g.in_degree(i),
            trees.count_at(i),
            cliques.count_at(i)
        );
    }
    Ok(())
}
