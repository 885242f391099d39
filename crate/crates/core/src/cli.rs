//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on validation errors (bad flags, parameters
//! outside their domain, refused regimes), 2 on runtime failures.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::analytics::{
    clique_constant, clique_constant_m3, estimate_mu, estimate_nu, lambda, mu_chain2_exact, mu_star_exact,
    scaling_constants, CliqueMethod, ScalingMethod,
};
use crate::counting::{CliqueCounter, CountGuards, TreeCounter};
use crate::error::{AdrcmError, Result};
use crate::experiments::{self, BoundaryMode, ExperimentConfig};
use crate::model::{build_graph, sample_point_process, AdrcmGraph, Params, ReachSampler, SimWindow};
use crate::rng::{stream, tag};
use crate::selftest;
use crate::treespec::{analyze_shape, parse_tree, TreeSpec};

#[derive(Debug, Parser)]
#[command(name = "adrcm", version, about = "Age-dependent random connection model laboratory")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: f64,
}

impl ModelArgs {
    fn params(&self) -> Result<Params> {
        Params::new(self.beta, self.gamma)
    }
}

#[derive(Debug, Args)]
pub struct TreeArgs {
    /// Tree in the parenthesis DSL, e.g. "(()())" or "spider:2,1".
    #[arg(long)]
    pub tree: Option<String>,
    /// File holding the tree DSL.
    #[arg(long)]
    pub tree_file: Option<PathBuf>,
}

impl TreeArgs {
    fn tree(&self) -> Result<Option<TreeSpec>> {
        match (&self.tree, &self.tree_file) {
            (Some(_), Some(_)) => Err(AdrcmError::Config("use either --tree or --tree-file".into())),
            (Some(t), None) => parse_tree(t).map(Some),
            (None, Some(path)) => parse_tree(&std::fs::read_to_string(path)?).map(Some),
            (None, None) => Ok(None),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a window and write its vertices with degrees as CSV.
    Simulate {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: f64,
        /// Extra sampled strip on each side of [0, n].
        #[arg(long, default_value_t = 0.0)]
        margin: f64,
        #[arg(long)]
        torus: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count tree embeddings or clique tuples at every root of a window.
    Count {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        tree: TreeArgs,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: f64,
        #[arg(long, default_value = "exact_margin")]
        boundary_mode: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Palm estimate of mu(u) for a tree.
    Mu {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        tree: TreeArgs,
        #[arg(long)]
        u: f64,
        #[arg(long, default_value_t = 1000)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Palm estimate of nu(u) for cliques of order m.
    Nu {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        u: f64,
        #[arg(long, default_value_t = 1000)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo estimate of the clique constant.
    Constant {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "box_mc")]
        method: String,
        #[arg(long, default_value_t = 100_000)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scaling constants a_n and b_n.
    Scaling {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        tree: TreeArgs,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "palm_mc")]
        method: String,
        #[arg(long, default_value_t = 2000)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a replication experiment and print its JSON summary.
    Experiment(ExperimentArgs),
    /// Run the built-in oracle and closed-form checks.
    Selftest,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Flat key = value configuration file; flags override its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub tree: Option<String>,
    #[arg(long)]
    pub tree_file: Option<PathBuf>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub reps: Option<usize>,
    /// Comma-separated ascending thresholds.
    #[arg(long)]
    pub thresholds: Option<String>,
    #[arg(long)]
    pub boundary_mode: Option<String>,
    /// Comma-separated u values for scans.
    #[arg(long)]
    pub u_grid: Option<String>,
    #[arg(long)]
    pub scaling: Option<String>,
    #[arg(long)]
    pub scaling_reps: Option<usize>,
    #[arg(long)]
    pub hill_k: Option<usize>,
    /// JSON summary destination (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Per-replication CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Tidy plot-data CSV.
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

impl ExperimentArgs {
    fn config(&self) -> Result<ExperimentConfig> {
        let mut pairs: Vec<(String, String)> = Vec::new();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let (k, v) = line
                    .split_once('=')
                    .ok_or_else(|| AdrcmError::Config(format!("config line {}: expected key = value", lineno + 1)))?;
                pairs.push((k.trim().into(), v.trim().into()));
            }
        }
        let mut set = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                pairs.push((k.into(), v));
            }
        };
        set("seed", Some(self.seed.to_string()));
        set("kind", self.kind.clone());
        set("beta", self.beta.map(|x| x.to_string()));
        set("gamma", self.gamma.map(|x| x.to_string()));
        set("tree", self.tree.clone());
        if let Some(path) = &self.tree_file {
            set("tree", Some(std::fs::read_to_string(path)?.trim().to_string()));
        }
        set("m", self.m.map(|x| x.to_string()));
        set("n", self.n.map(|x| x.to_string()));
        set("reps", self.reps.map(|x| x.to_string()));
        set("thresholds", self.thresholds.clone());
        set("boundary_mode", self.boundary_mode.clone());
        set("u_grid", self.u_grid.clone());
        set("scaling", self.scaling.clone());
        set("scaling_reps", self.scaling_reps.map(|x| x.to_string()));
        set("hill_k", self.hill_k.map(|x| x.to_string()));
        ExperimentConfig::from_pairs(&pairs)
    }
}

fn sink<'a>(out: &Option<PathBuf>, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>> {
    Ok(match out {
        Some(path) => Box::new(std::fs::File::create(path)?),
        None => Box::new(stdout),
    })
}

fn emit_json(value: &serde_json::Value, out: &Option<PathBuf>, stdout: &mut dyn Write) -> Result<()> {
    let mut w = sink(out, stdout)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    Ok(())
}

fn sample_window(params: Params, n: f64, mode: BoundaryMode, depth: usize, seed: u64) -> Result<AdrcmGraph> {
    let mut rng = stream(seed, tag::SIMULATE, 0);
    match mode {
        BoundaryMode::ExactMargin => {
            if !(n > 0.0) {
                return Err(AdrcmError::ParamDomain(format!("n must be > 0, got {n}")));
            }
            let mut s = ReachSampler::with_core(params, 0.0, n, &mut rng);
            let core = s.points().to_vec();
            s.expand_in(&core, depth, &mut rng)?;
            s.into_graph()
        }
        BoundaryMode::Torus => {
            let w = SimWindow::torus(0.0, n)?;
            build_graph(sample_point_process(&w, &mut rng), params, &w)
        }
    }
}

/// Executes a parsed command, writing results to `stdout` unless an
/// `--out` path is given.
pub fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<bool> {
    match cli.command {
        Command::Simulate { model, n, margin, torus, seed, out } => {
            let params = model.params()?;
            let w = if torus { SimWindow::torus(0.0, n)? } else { SimWindow::new(0.0, n, margin)? };
            let pts = sample_point_process(&w, &mut stream(seed, tag::SIMULATE, 0));
            let g = build_graph(pts, params, &w)?;
            let mut csv = csv::Writer::from_writer(sink(&out, stdout)?);
            csv.write_record(["pos", "mark", "core", "in_degree", "out_degree"])?;
            let (lo, hi) = g.core();
            for i in 0..g.len() {
                let v = g.vertex(i);
                let core = v.pos >= lo && v.pos <= hi;
                csv.write_record([
                    v.pos.to_string(),
                    v.mark.to_string(),
                    (core as u8).to_string(),
                    g.in_degree(i).to_string(),
                    g.out_degree(i).to_string(),
                ])?;
            }
            csv.flush()?;
            Ok(true)
        }
        Command::Count { model, tree, m, n, boundary_mode, seed, out } => {
            let params = model.params()?;
            let mode: BoundaryMode = boundary_mode.parse()?;
            let tree = tree.tree()?;
            let guards = CountGuards::default();
            let results = match (tree, m) {
                (Some(t), None) => {
                    let g = sample_window(params, n, mode, t.depth(), seed)?;
                    let mut c = TreeCounter::new(&g, &t, &guards)?;
                    g.core_indices().iter().map(|&i| c.result_at(i)).collect::<Vec<_>>()
                }
                (None, Some(m)) => {
                    let g = sample_window(params, n, mode, 1, seed)?;
                    let mut c = CliqueCounter::new(&g, m, &guards)?;
                    g.core_indices().iter().map(|&i| c.result_at(i)).collect::<Vec<_>>()
                }
                _ => return Err(AdrcmError::Config("give exactly one of --tree/--tree-file and --m".into())),
            };
            let mut csv = csv::Writer::from_writer(sink(&out, stdout)?);
            csv.write_record(["pos", "mark", "value", "truncated"])?;
            for r in results {
                csv.write_record([
                    r.root.pos.to_string(),
                    r.root.mark.to_string(),
                    r.value.to_string(),
                    r.truncated.to_string(),
                ])?;
            }
            csv.flush()?;
            Ok(true)
        }
        Command::Mu { model, tree, u, reps, seed, out } => {
            let params = model.params()?;
            let tree = tree.tree()?.ok_or_else(|| AdrcmError::Config("--tree or --tree-file required".into()))?;
            let e = estimate_mu(u, &tree, params, reps, seed)?;
            let shape = analyze_shape(&tree);
            let oracle = if shape.depth == 1 {
                Some(mu_star_exact(u, shape.ell, &params))
            } else if shape.ell == 1 && shape.depth == 2 {
                Some(mu_chain2_exact(u, &params))
            } else {
                None
            };
            emit_json(&json!({ "u": u, "tree": tree.to_string(), "estimate": e, "oracle": oracle, "seed": seed }), &out, stdout)?;
            Ok(true)
        }
        Command::Nu { model, m, u, reps, seed, out } => {
            let params = model.params()?;
            let e = estimate_nu(u, m, params, reps, seed)?;
            let oracle = (m == 2).then(|| lambda(u, &params));
            let constant = (m == 3).then(|| clique_constant_m3(&params));
            emit_json(
                &json!({ "u": u, "m": m, "estimate": e, "oracle": oracle, "clique_constant": constant, "seed": seed }),
                &out,
                stdout,
            )?;
            Ok(true)
        }
        Command::Constant { model, m, method, reps, seed, out } => {
            let params = model.params()?;
            let method: CliqueMethod = method.parse()?;
            let e = clique_constant(m, params, method, reps, seed)?;
            let closed = (m == 3).then(|| clique_constant_m3(&params));
            emit_json(
                &json!({ "m": m, "method": method, "estimate": e, "closed_form": closed, "seed": seed }),
                &out,
                stdout,
            )?;
            Ok(true)
        }
        Command::Scaling { model, tree, m, n, method, reps, seed, out } => {
            let params = model.params()?;
            let tree = tree.tree()?.unwrap_or_else(TreeSpec::single_edge);
            let method: ScalingMethod = method.parse()?;
            let s = scaling_constants(n, &tree, m, params, method, reps, seed)?;
            emit_json(&json!({ "tree": tree.to_string(), "m": m, "scaling": s, "seed": seed }), &out, stdout)?;
            Ok(true)
        }
        Command::Experiment(args) => {
            let cfg = args.config()?;
            let summary = experiments::run(&cfg)?;
            if let Some(path) = &args.csv {
                experiments::write_replications_csv(&summary, path)?;
            }
            if let Some(path) = &args.plot {
                experiments::emit_plot_data(&summary, path)?;
            }
            match &args.out {
                Some(path) => experiments::write_summary_json(&summary, path)?,
                None => {
                    serde_json::to_writer_pretty(&mut *stdout, &summary)?;
                    writeln!(stdout)?;
                }
            }
            Ok(true)
        }
        Command::Selftest => {
            let results = selftest::run_all();
            let mut ok = true;
            for r in &results {
                writeln!(stdout, "{} {}: {}", if r.pass { "PASS" } else { "FAIL" }, r.name, r.detail)?;
                ok &= r.pass;
            }
            Ok(ok)
        }
    }
}

/// Sizes the global thread pool from `ADRCM_THREADS` (0 or unset: one
/// thread per core).
pub fn configure_threads() -> Result<()> {
    let threads = match std::env::var("ADRCM_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| AdrcmError::Config(format!("ADRCM_THREADS must be a non-negative integer, got {v:?}")))?,
        Err(_) => 0,
    };
    // a pool that already exists (e.g. in tests) is left as is
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

/// Full entry point: parses `args`, runs, prints diagnostics to stderr and
/// returns the exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let line: Vec<&str> = text
                    .lines()
                    .take_while(|l| !l.starts_with("Usage:"))
                    .map(str::trim)
                    .filter(|l| !l.is_empty())
                    .collect();
                let _ = writeln!(stderr, "{}", line.join(" "));
            }
            return code;
        }
    };
    let result = configure_threads().and_then(|_| execute(cli, stdout));
    match result {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_validation() {
                1
            } else {
                2
            }
        }
    }
}
