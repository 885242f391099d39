//! Mark-banded sorted-array index.
//!
//! Vertices are split into dyadic mark bands `(2^{−k−1}, 2^{−k}]`, each kept
//! sorted by position. Within a band the connection radius of a query
//! vertex varies by at most a factor `2^{1−γ}`, so a single range search
//! with the band's worst-case radius returns a candidate set that is a
//! tight superset of the true neighbours.

use super::{Boundary, Params, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Direction {
    /// Candidates with mark at least the query's (potential tails of edges
    /// into the query vertex).
    In,
    /// Candidates with mark at most the query's.
    Out,
    Any,
}

#[derive(Debug, Clone)]
struct Band {
    min_mark: f64,
    max_mark: f64,
    ids: Vec<u32>,
    pos: Vec<f64>,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct MarkBands {
    bands: Vec<Band>,
}

/// Slack on range-search radii so rounding in `powf` can never drop a
/// neighbour the exact test would accept.
const RADIUS_SLACK: f64 = 1e-9;

pub(crate) fn band_of(mark: f64) -> usize {
    let k = (-mark.log2()).floor();
    if k <= 0.0 {
        0
    } else {
        k as usize
    }
}

impl MarkBands {
    /// `vertices` must be sorted by position.
    pub(crate) fn build(vertices: &[Vertex]) -> Self {
        let mut slots: Vec<Option<Band>> = Vec::new();
        for (i, v) in vertices.iter().enumerate() {
            let k = band_of(v.mark);
            if slots.len() <= k {
                slots.resize_with(k + 1, || None);
            }
            let band = slots[k].get_or_insert_with(|| Band {
                min_mark: v.mark,
                max_mark: v.mark,
                ids: Vec::new(),
                pos: Vec::new(),
            });
            band.min_mark = band.min_mark.min(v.mark);
            band.max_mark = band.max_mark.max(v.mark);
            band.ids.push(i as u32);
            band.pos.push(v.pos);
        }
        MarkBands {
            bands: slots.into_iter().flatten().collect(),
        }
    }

    /// Calls `visit` with every vertex id that may be a neighbour of a
    /// vertex at `(x, mark)` in the given direction. The caller applies the
    /// exact edge test.
    pub(crate) fn for_each_candidate(
        &self,
        x: f64,
        mark: f64,
        dir: Direction,
        params: &Params,
        boundary: &Boundary,
        mut visit: impl FnMut(usize),
    ) {
        for band in &self.bands {
            let reach = match dir {
                Direction::In => {
                    if band.max_mark < mark {
                        continue;
                    }
                    params.radius(mark, band.min_mark.max(mark))
                }
                Direction::Out => {
                    if band.min_mark > mark {
                        continue;
                    }
                    params.radius(band.min_mark, mark)
                }
                Direction::Any => params.radius_between(mark, band.min_mark),
            };
            let reach = reach * (1.0 + RADIUS_SLACK);
            for (a, b) in boundary.segments(x, reach).into_iter().flatten() {
                let start = band.pos.partition_point(|&p| p < a);
                let end = band.pos.partition_point(|&p| p <= b);
                for &id in &band.ids[start..end] {
                    visit(id as usize);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn band_boundaries() {
        assert_eq!(band_of(1.0), 0);
        assert_eq!(band_of(0.75), 0);
        assert_eq!(band_of(0.5), 1);
        assert_eq!(band_of(0.3), 1);
        assert_eq!(band_of(0.25), 2);
        assert_eq!(band_of(1e-300), 996);
    }
}
