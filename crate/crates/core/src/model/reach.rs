//! Exact-reach sampling.
//!
//! Statistics are summed over roots in the observation window, but the
//! partners of a root live anywhere on the line. A fixed margin cannot be
//! exact: a vertex of mark `u` receives edges from up to `β/u` away, and
//! its out-neighbours can be arbitrarily far. Instead the sampler keeps,
//! for every dyadic mark band, the position interval already sampled, and
//! extends it on demand to cover the neighbourhoods of the vertices that
//! matter. Extending a band's interval samples the Poisson process on the
//! newly covered strip only, so the union is still an exact sample of the
//! process on the covered set.

use rand::Rng;

use super::{index::band_of, poisson_count, AdrcmGraph, Boundary, Params, Vertex};
use crate::error::Result;

/// Deepest band ever created; marks below `2^{-MAX_BAND}` are far beyond
/// f64 uniform resolution.
const MAX_BAND: usize = 1000;

#[inline]
fn band_bounds(k: usize) -> (f64, f64) {
    let hi = 0.5f64.powi(k as i32);
    (0.5 * hi, hi)
}

#[derive(Debug, Clone)]
pub struct ReachSampler {
    params: Params,
    core: (f64, f64),
    /// Sampled interval per band; bands past the end use `default_cover`.
    cover: Vec<Option<(f64, f64)>>,
    default_cover: Option<(f64, f64)>,
    points: Vec<Vertex>,
    truncation_bound: f64,
    complete_depth: Option<usize>,
}

impl ReachSampler {
    /// Starts from a full sample of the core window `[lo, hi] × (0, 1]`.
    pub fn with_core<R: Rng + ?Sized>(params: Params, lo: f64, hi: f64, rng: &mut R) -> Self {
        let count = poisson_count(hi - lo, rng);
        let points = (0..count)
            .map(|_| Vertex {
                pos: lo + (hi - lo) * rng.random::<f64>(),
                mark: 1.0 - rng.random::<f64>(),
            })
            .collect();
        ReachSampler {
            params,
            core: (lo, hi),
            cover: Vec::new(),
            default_cover: Some((lo, hi)),
            points,
            truncation_bound: 0.0,
            complete_depth: None,
        }
    }

    /// Palm setting: nothing sampled yet, one deterministic vertex.
    pub fn planted(params: Params, root: Vertex) -> Self {
        ReachSampler {
            params,
            core: (root.pos, root.pos),
            cover: Vec::new(),
            default_cover: None,
            points: vec![root],
            truncation_bound: 0.0,
            complete_depth: None,
        }
    }

    pub fn points(&self) -> &[Vertex] {
        &self.points
    }

    /// Ensures band `k` is sampled on `[a, b]`.
    fn cover<R: Rng + ?Sized>(&mut self, k: usize, a: f64, b: f64, rng: &mut R) {
        if self.cover.len() <= k {
            self.cover.resize(k + 1, self.default_cover);
        }
        let (lo, hi) = band_bounds(k);
        let height = hi - lo;
        let mut strip = |x0: f64, x1: f64, points: &mut Vec<Vertex>| {
            let count = poisson_count((x1 - x0) * height, rng);
            points.extend((0..count).map(|_| Vertex {
                pos: x0 + (x1 - x0) * rng.random::<f64>(),
                mark: hi - height * rng.random::<f64>(),
            }));
        };
        match self.cover[k] {
            None => {
                strip(a, b, &mut self.points);
                self.cover[k] = Some((a, b));
            }
            Some((c, d)) => {
                if a < c {
                    strip(a, c, &mut self.points);
                }
                if b > d {
                    strip(d, b, &mut self.points);
                }
                self.cover[k] = Some((a.min(c), b.max(d)));
            }
        }
    }

    fn cover_all<R: Rng + ?Sized>(&mut self, need: Vec<Option<(f64, f64)>>, rng: &mut R) {
        for (k, span) in need.into_iter().enumerate() {
            if let Some((a, b)) = span {
                self.cover(k, a, b, rng);
            }
        }
    }

    /// Samples every region that can hold an in-neighbour of one of
    /// `active`.
    pub fn cover_in_neighborhoods<R: Rng + ?Sized>(&mut self, active: &[Vertex], rng: &mut R) {
        let mut need: Vec<Option<(f64, f64)>> = Vec::new();
        for v in active {
            let top = band_of(v.mark).min(MAX_BAND);
            if need.len() <= top {
                need.resize(top + 1, None);
            }
            for (k, slot) in need.iter_mut().enumerate().take(top + 1) {
                let (lo, _) = band_bounds(k);
                let r = self.params.radius(v.mark, lo.max(v.mark));
                widen(slot, v.pos - r, v.pos + r);
            }
        }
        self.cover_all(need, rng);
    }

    /// Samples every region that can hold an out-neighbour of one of
    /// `active`, down to the mark band where the expected number of
    /// vertices still uncovered falls below `tolerance`. Returns that
    /// bound.
    pub fn cover_out_neighborhoods<R: Rng + ?Sized>(
        &mut self,
        active: &[Vertex],
        tolerance: f64,
        rng: &mut R,
    ) -> f64 {
        let Some(v_min) = active.iter().map(|v| v.mark).min_by(f64::total_cmp) else {
            return 0.0;
        };
        let g = self.params.gamma();
        let scale = 2.0 * self.params.beta() * v_min.powf(g - 1.0) / (1.0 - 0.5f64.powf(1.0 - g));
        // Expected uncovered mass below band `last`:
        // scale · 2^{−(last+2)(1−γ)}.
        let tail = |last: usize| scale * 0.5f64.powf((last as f64 + 2.0) * (1.0 - g));
        let mut last = band_of(v_min);
        while last < MAX_BAND && tail(last) > tolerance {
            last += 1;
        }
        let mut need: Vec<Option<(f64, f64)>> = vec![None; last + 1];
        for v in active {
            for (k, slot) in need.iter_mut().enumerate().skip(band_of(v.mark)) {
                let (lo, _) = band_bounds(k);
                let r = self.params.radius(lo.min(v.mark), v.mark);
                widen(slot, v.pos - r, v.pos + r);
            }
        }
        self.cover_all(need, rng);
        let bound = tail(last);
        self.truncation_bound += bound;
        bound
    }

    /// Grows the sample until it contains every vertex reachable from the
    /// `seeds` by directed paths of length at most `depth` travelled
    /// against the edge direction (i.e. all possible images of a rooted
    /// tree of that depth).
    pub fn expand_in<R: Rng + ?Sized>(
        &mut self,
        seeds: &[Vertex],
        depth: usize,
        rng: &mut R,
    ) -> Result<()> {
        self.complete_depth = Some(self.complete_depth.map_or(depth, |d| d.max(depth)));
        let mut active: Vec<Vertex> = seeds.to_vec();
        for level in 0..depth {
            if active.is_empty() {
                break;
            }
            self.cover_in_neighborhoods(&active, rng);
            if level + 1 == depth {
                break;
            }
            let g = self.snapshot()?;
            let mut next = Vec::new();
            for v in &active {
                let i = g.index_of(v)?;
                g.in_neighbor_ids_into(i, &mut next);
            }
            next.sort_unstable();
            next.dedup();
            active = next.into_iter().map(|j| g.vertex(j)).collect();
        }
        Ok(())
    }

    fn snapshot(&self) -> Result<AdrcmGraph> {
        AdrcmGraph::from_parts(
            self.points.clone(),
            self.params,
            Boundary::Open,
            self.core,
            self.truncation_bound,
        )
    }

    pub fn into_graph(self) -> Result<AdrcmGraph> {
        let mut g = AdrcmGraph::from_parts(
            self.points,
            self.params,
            Boundary::Open,
            self.core,
            self.truncation_bound,
        )?;
        g.set_complete_depth(self.complete_depth);
        Ok(g)
    }
}

fn widen(slot: &mut Option<(f64, f64)>, a: f64, b: f64) {
    *slot = Some(match *slot {
        None => (a, b),
        Some((c, d)) => (a.min(c), b.max(d)),
    });
}
