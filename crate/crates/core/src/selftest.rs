//! Quick oracle and closed-form suite behind `adrcm selftest`.

use rand::Rng;
use serde::Serialize;

use crate::analytics::{clique_constant, clique_constant_m3, estimate_mu, frechet_cdf, lambda, mu_chain2_exact, CliqueMethod};
use crate::counting::{
    brute_force_clique_tuples, brute_force_tree_embeddings, count_clique_tuples, count_tree_embeddings,
};
use crate::model::{build_graph, connects, edge_direction, Params, SimWindow, Vertex};
use crate::rng::stream;
use crate::treespec::TreeSpec;

#[derive(Debug, Clone, Serialize)]
pub struct SelfTestResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn random_instance(rng: &mut impl Rng, size: usize, width: f64) -> (Vec<Vertex>, Params) {
    let beta = 0.1 + 0.9 * rng.random::<f64>();
    let gamma = 0.2 + 0.7 * rng.random::<f64>();
    let vs = (0..size)
        .map(|_| Vertex {
            pos: width * rng.random::<f64>(),
            mark: 1.0 - rng.random::<f64>(),
        })
        .collect();
    (vs, Params::new(beta, gamma).expect("valid"))
}

fn random_tree(rng: &mut impl Rng, edges: usize) -> TreeSpec {
    let mut parent = vec![None];
    for i in 1..=edges {
        parent.push(Some(rng.random_range(0..i)));
    }
    TreeSpec::from_parents(parent).expect("valid tree")
}

fn index_oracle(instances: u64) -> SelfTestResult {
    let w = SimWindow::new(-1e9, 1e9, 0.0).expect("window");
    for k in 0..instances {
        let mut rng = stream(101, 0, k);
        let (vs, p) = random_instance(&mut rng, 120, 40.0);
        let g = build_graph(vs, p, &w).expect("graph");
        for i in 0..g.len() {
            let brute: Vec<usize> = (0..g.len())
                .filter(|&j| {
                    j != i
                        && connects(&g.vertex(i), &g.vertex(j), &p)
                        && edge_direction(&g.vertex(j), &g.vertex(i)).map(|(f, _)| f == g.vertex(j)).unwrap_or(false)
                })
                .collect();
            if brute != g.in_neighbor_ids(i) {
                return SelfTestResult {
                    name: "index_oracle",
                    pass: false,
                    detail: format!("instance {k}, vertex {i}"),
                };
            }
        }
    }
    SelfTestResult {
        name: "index_oracle",
        pass: true,
        detail: format!("{instances} instances"),
    }
}

fn counting_oracle(instances: u64) -> SelfTestResult {
    let w = SimWindow::new(-1e9, 1e9, 0.0).expect("window");
    for k in 0..instances {
        let mut rng = stream(102, 0, k);
        let size = rng.random_range(2..=12);
        let (vs, p) = random_instance(&mut rng, size, 3.0);
        let g = build_graph(vs, p, &w).expect("graph");
        let root = g.vertex(rng.random_range(0..g.len()));
        let edges = rng.random_range(1..=4);
        let tree = random_tree(&mut rng, edges);
        let m = rng.random_range(2..=5);
        let t_fast = count_tree_embeddings(&g, &tree, &root).map(|c| c.value);
        let t_slow = brute_force_tree_embeddings(&g, &tree, &root);
        let c_fast = count_clique_tuples(&g, m, &root).map(|c| c.value);
        let c_slow = brute_force_clique_tuples(&g, m, &root);
        if t_fast.ok() != t_slow.ok() || c_fast.ok() != c_slow.ok() {
            return SelfTestResult {
                name: "counting_oracle",
                pass: false,
                detail: format!("instance {k}: tree {tree}, m = {m}"),
            };
        }
    }
    SelfTestResult {
        name: "counting_oracle",
        pass: true,
        detail: format!("{instances} instances"),
    }
}

fn palm_closed_forms() -> Vec<SelfTestResult> {
    let p = Params::new(0.5, 0.6).expect("valid");
    let mut out = Vec::new();
    for (name, tree, u, exact) in [
        ("palm_single_edge", TreeSpec::single_edge(), 0.05, lambda(0.05, &p)),
        ("palm_star2", TreeSpec::star(2).expect("star"), 0.1, lambda(0.1, &p).powi(2)),
        ("palm_chain2", TreeSpec::chain(2).expect("chain"), 0.05, mu_chain2_exact(0.05, &p)),
    ] {
        let r = estimate_mu(u, &tree, p, 1000, 103).map(|e| (e.value, e.z_against(exact)));
        out.push(match r {
            Ok((value, z)) => SelfTestResult {
                name,
                pass: z.abs() < 4.0,
                detail: format!("estimate {value:.4} vs exact {exact:.4} (z = {z:.2})"),
            },
            Err(e) => SelfTestResult {
                name,
                pass: false,
                detail: e.to_string(),
            },
        });
    }
    out
}

fn constants() -> Vec<SelfTestResult> {
    let p = Params::new(0.5, 0.75).expect("valid");
    let c = clique_constant_m3(&p);
    let boxed = clique_constant(3, p, CliqueMethod::BoxMc, 1000, 104).map(|e| e.value).unwrap_or(f64::NAN);
    let f = frechet_cdf(2.0, 0.8).unwrap_or(f64::NAN);
    vec![
        SelfTestResult {
            name: "clique_constant_m3",
            pass: (boxed - 16.0 / 3.0).abs() < 1e-9 && (c - 16.0 / 3.0).abs() < 1e-12,
            detail: format!("box_mc {boxed:.6}, closed form {c:.6}"),
        },
        SelfTestResult {
            name: "frechet_cdf",
            pass: (f - 0.6567).abs() < 1e-4,
            detail: format!("F(2; 0.8) = {f:.4}"),
        },
    ]
}

pub fn run_all() -> Vec<SelfTestResult> {
    let mut out = vec![index_oracle(20), counting_oracle(300)];
    out.extend(palm_closed_forms());
    out.extend(constants());
    out
}
