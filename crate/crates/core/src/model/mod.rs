//! The ADRCM itself: parameters, the edge rule, point-process sampling and
//! the directed graph built on a sample.

mod graph;
mod index;
mod params;
mod reach;
mod window;

pub use graph::{build_graph, AdrcmGraph};
pub use params::{connects, edge_direction, validate_params, Params, Vertex};
pub use reach::ReachSampler;
pub use window::{sample_point_process, Boundary, SimWindow};

pub(crate) use index::{Direction, MarkBands};
pub(crate) use window::poisson_count;
