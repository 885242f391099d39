//! Simulation and verification toolkit for the age-dependent random
//! connection model (ADRCM).
//!
//! Vertices are points `(pos, mark)` of a unit-intensity Poisson process on
//! `ℝ × (0, 1]`. Two vertices with marks `u ≤ v` are joined when
//! `|x − y| ≤ β u^{−γ} v^{γ−1}`, and the edge points from the younger vertex
//! (larger mark) to the older one (smaller mark).
//!
//! The crate is organised around the statistics that drive the limit
//! theory of the model:
//!
//! - [`model`]: parameters, vertices, point-process sampling and the
//!   mark-banded directed graph.
//! - [`treespec`]: rooted tree patterns, their text form and shape
//!   quantities (leaves, path lengths, spider classification).
//! - [`counting`]: rooted injective tree embeddings and clique tuples, plus
//!   brute-force oracles.
//! - [`analytics`]: Palm Monte Carlo estimators of `μ(u)` and `ν(u)`,
//!   closed forms, the clique constant and scaling sequences.
//! - [`stats`]: Hill estimator, Kolmogorov–Smirnov test, Poisson
//!   dispersion test, exceedance counts.
//! - [`experiments`]: reproducible replication experiments with CSV and
//!   JSON reports.
//! - [`cli`]: the command-line front end used by the `adrcm` binary.
//!
//! See the crate's `examples/` directory for one runnable program per
//! capability.

pub mod analytics;
pub mod cli;
pub mod counting;
pub mod error;
pub mod experiments;
pub mod model;
pub mod rng;
pub mod selftest;
pub mod stats;
pub mod treespec;

pub use error::{AdrcmError, Result};
pub use model::{AdrcmGraph, Params, SimWindow, Vertex};
pub use treespec::{TreeShape, TreeSpec};
