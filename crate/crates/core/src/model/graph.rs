use serde::Serialize;

use super::index::{Direction, MarkBands};
use super::{Boundary, Params, SimWindow, Vertex};
use crate::error::{AdrcmError, Result};

/// Directed ADRCM graph on a fixed vertex set.
///
/// Vertices are stored sorted by `(pos, mark)`; all queries take or return
/// indices into that order. The graph is immutable after construction.
#[derive(Debug, Clone)]
pub struct AdrcmGraph {
    vertices: Vec<Vertex>,
    params: Params,
    boundary: Boundary,
    core: (f64, f64),
    core_indices: Vec<usize>,
    bands: MarkBands,
    truncation_bound: f64,
    complete_depth: Option<usize>,
}

/// Lightweight description of a graph for reports.
#[derive(Debug, Clone, Serialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub core_vertices: usize,
    pub periodic: bool,
    pub truncation_bound: f64,
}

/// Builds the graph for a window. Duplicate `(pos, mark)` pairs are rejected.
pub fn build_graph(vertices: Vec<Vertex>, params: Params, window: &SimWindow) -> Result<AdrcmGraph> {
    AdrcmGraph::from_parts(
        vertices,
        params,
        window.boundary(),
        (window.core_lo, window.core_hi),
        0.0,
    )
}

impl AdrcmGraph {
    /// `truncation_bound` bounds the expected number of relevant vertices
    /// the sampler may have left out (0 for exact constructions).
    pub fn from_parts(
        mut vertices: Vec<Vertex>,
        params: Params,
        boundary: Boundary,
        core: (f64, f64),
        truncation_bound: f64,
    ) -> Result<Self> {
        for v in &vertices {
            v.validate()?;
        }
        if let Boundary::Periodic { lo, len } = boundary {
            if let Some(v) = vertices.iter().find(|v| v.pos < lo || v.pos >= lo + len) {
                return Err(AdrcmError::ParamDomain(format!(
                    "position {} outside periodic window [{lo}, {})",
                    v.pos,
                    lo + len
                )));
            }
        }
        vertices.sort_unstable_by(|a, b| a.pos_cmp(b));
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(AdrcmError::DuplicateVertex {
                pos: w[0].pos,
                mark: w[0].mark,
            });
        }
        let start = vertices.partition_point(|v| v.pos < core.0);
        let end = vertices.partition_point(|v| v.pos <= core.1);
        let core_indices = (start..end).collect();
        let bands = MarkBands::build(&vertices);
        Ok(AdrcmGraph {
            vertices,
            params,
            boundary,
            core,
            core_indices,
            bands,
            truncation_bound,
            complete_depth: None,
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Vertex {
        self.vertices[i]
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn core(&self) -> (f64, f64) {
        self.core
    }

    /// Indices of vertices with position in the observation window.
    pub fn core_indices(&self) -> &[usize] {
        &self.core_indices
    }

    pub fn truncation_bound(&self) -> f64 {
        self.truncation_bound
    }

    /// Depth up to which the in-neighbourhoods of core vertices are known
    /// to be complete, i.e. every rooted tree of at most this depth at a
    /// core root is fully contained in the graph. `None` when the graph was
    /// built from an arbitrary point set.
    pub fn complete_depth(&self) -> Option<usize> {
        self.complete_depth
    }

    pub(crate) fn set_complete_depth(&mut self, depth: Option<usize>) {
        self.complete_depth = depth;
    }

    pub fn stats(&self) -> GraphStats {
        GraphStats {
            vertices: self.len(),
            core_vertices: self.core_indices.len(),
            periodic: matches!(self.boundary, Boundary::Periodic { .. }),
            truncation_bound: self.truncation_bound,
        }
    }

    pub fn index_of(&self, v: &Vertex) -> Result<usize> {
        let i = self.vertices.partition_point(|w| w.pos_cmp(v).is_lt());
        if i < self.vertices.len() && self.vertices[i] == *v {
            Ok(i)
        } else {
            Err(AdrcmError::VertexNotFound {
                pos: v.pos,
                mark: v.mark,
            })
        }
    }

    /// Undirected edge test under the graph's metric.
    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let a = &self.vertices[i];
        let b = &self.vertices[j];
        self.boundary.distance(a.pos, b.pos) <= self.params.radius_between(a.mark, b.mark)
    }

    /// Directed edge test `i → j`.
    #[inline]
    pub fn points_to(&self, i: usize, j: usize) -> bool {
        i != j && self.vertices[j].rank_cmp(&self.vertices[i]).is_lt() && self.adjacent(i, j)
    }

    /// Appends the indices of all `w` with `w → i` to `out`, in index order.
    pub fn in_neighbor_ids_into(&self, i: usize, out: &mut Vec<usize>) {
        let start = out.len();
        let v = self.vertices[i];
        self.bands
            .for_each_candidate(v.pos, v.mark, Direction::In, &self.params, &self.boundary, |j| {
                if self.points_to(j, i) {
                    out.push(j);
                }
            });
        out[start..].sort_unstable();
    }

    pub fn in_neighbor_ids(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        self.in_neighbor_ids_into(i, &mut out);
        out
    }

    pub fn out_neighbor_ids(&self, i: usize) -> Vec<usize> {
        let v = self.vertices[i];
        let mut out = Vec::new();
        self.bands
            .for_each_candidate(v.pos, v.mark, Direction::Out, &self.params, &self.boundary, |j| {
                if self.points_to(i, j) {
                    out.push(j);
                }
            });
        out.sort_unstable();
        out
    }

    pub fn in_degree(&self, i: usize) -> usize {
        let v = self.vertices[i];
        let mut d = 0;
        self.bands
            .for_each_candidate(v.pos, v.mark, Direction::In, &self.params, &self.boundary, |j| {
                if self.points_to(j, i) {
                    d += 1;
                }
            });
        d
    }

    pub fn out_degree(&self, i: usize) -> usize {
        let v = self.vertices[i];
        let mut d = 0;
        self.bands
            .for_each_candidate(v.pos, v.mark, Direction::Out, &self.params, &self.boundary, |j| {
                if self.points_to(i, j) {
                    d += 1;
                }
            });
        d
    }

    /// All `w` with an edge `w → v`.
    pub fn in_neighbors(&self, v: &Vertex) -> Result<Vec<Vertex>> {
        let i = self.index_of(v)?;
        Ok(self.in_neighbor_ids(i).into_iter().map(|j| self.vertices[j]).collect())
    }

    /// All `w` with an edge `v → w`.
    pub fn out_neighbors(&self, v: &Vertex) -> Result<Vec<Vertex>> {
        let i = self.index_of(v)?;
        Ok(self.out_neighbor_ids(i).into_iter().map(|j| self.vertices[j]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{connects, edge_direction, sample_point_process};
    use crate::rng::stream;
    use rand::Rng;

    fn v(pos: f64, mark: f64) -> Vertex {
        Vertex::new(pos, mark).unwrap()
    }

    fn open(vs: Vec<Vertex>, p: Params) -> AdrcmGraph {
        let w = SimWindow::new(-1e9, 1e9, 0.0).unwrap();
        build_graph(vs, p, &w).unwrap()
    }

    #[test]
    fn empty_graph() {
        let g = open(vec![], Params::new(0.5, 0.5).unwrap());
        assert!(g.is_empty());
        assert!(g.core_indices().is_empty());
        assert!(g.in_neighbors(&v(0.0, 0.5)).is_err());
    }

    #[test]
    fn duplicates_rejected() {
        let p = Params::new(0.5, 0.5).unwrap();
        let w = SimWindow::new(0.0, 1.0, 0.0).unwrap();
        let err = build_graph(vec![v(0.2, 0.3), v(0.2, 0.3)], p, &w).unwrap_err();
        assert!(matches!(err, AdrcmError::DuplicateVertex { .. }));
    }

    #[test]
    fn three_mutual_vertices() {
        let p = Params::new(1.0, 0.5).unwrap();
        let g = open(vec![v(0.0, 0.1), v(0.5, 0.6), v(-0.5, 0.9)], p);
        assert_eq!(g.in_neighbors(&v(0.0, 0.1)).unwrap().len(), 2);
        assert_eq!(g.out_neighbors(&v(0.5, 0.6)).unwrap(), vec![v(0.0, 0.1)]);
    }

    #[test]
    fn isolated_and_star() {
        let p = Params::new(0.5, 0.5).unwrap();
        let hub = v(0.0, 0.05);
        let g = open(
            vec![hub, v(0.3, 0.9), v(-0.4, 0.8), v(1.0, 0.7), v(500.0, 0.9)],
            p,
        );
        assert_eq!(g.in_neighbors(&hub).unwrap().len(), 3);
        assert!(g.in_neighbors(&v(500.0, 0.9)).unwrap().is_empty());
        assert!(g.out_neighbors(&v(500.0, 0.9)).unwrap().is_empty());
    }

    #[test]
    fn tie_on_marks_points_to_smaller_position() {
        let p = Params::new(1.0, 0.5).unwrap();
        let g = open(vec![v(0.0, 0.5), v(1.0, 0.5)], p);
        assert_eq!(g.in_neighbors(&v(0.0, 0.5)).unwrap(), vec![v(1.0, 0.5)]);
        assert!(g.in_neighbors(&v(1.0, 0.5)).unwrap().is_empty());
    }

    fn brute_in(g: &AdrcmGraph, i: usize) -> Vec<usize> {
        let p = g.params();
        let target = g.vertex(i);
        (0..g.len())
            .filter(|&j| j != i)
            .filter(|&j| {
                let w = g.vertex(j);
                connects(&w, &target, p) && edge_direction(&w, &target).unwrap().1 == target
            })
            .collect()
    }

    #[test]
    fn index_matches_pairwise_oracle() {
        for inst in 0..120u64 {
            let mut rng = stream(2024, 5, inst);
            let beta = rng.random_range(0.1..1.0);
            let gamma = rng.random_range(0.2..0.9);
            let p = Params::new(beta, gamma).unwrap();
            let w = SimWindow::new(0.0, rng.random_range(20.0..150.0), 0.0).unwrap();
            let mut pts = sample_point_process(&w, &mut rng);
            pts.truncate(200);
            let g = build_graph(pts, p, &w).unwrap();
            for i in 0..g.len() {
                let expect_in = brute_in(&g, i);
                assert_eq!(g.in_neighbor_ids(i), expect_in, "instance {inst} vertex {i}");
                assert_eq!(g.in_degree(i), expect_in.len());
                let expect_out: Vec<usize> =
                    (0..g.len()).filter(|&j| brute_in(&g, j).contains(&i)).collect();
                assert_eq!(g.out_neighbor_ids(i), expect_out);
            }
        }
    }

    #[test]
    fn periodic_graph_matches_wrapped_oracle() {
        let p = Params::new(0.7, 0.6).unwrap();
        let w = SimWindow::torus(0.0, 60.0).unwrap();
        for inst in 0..20u64 {
            let pts = sample_point_process(&w, &mut stream(11, 6, inst));
            let g = build_graph(pts, p, &w).unwrap();
            for i in 0..g.len() {
                let expect: Vec<usize> = (0..g.len()).filter(|&j| g.points_to(j, i)).collect();
                assert_eq!(g.in_neighbor_ids(i), expect);
            }
        }
    }
}
