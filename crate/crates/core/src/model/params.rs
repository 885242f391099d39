use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{AdrcmError, Result};

/// Edge-density scale `beta` and mark exponent `gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    beta: f64,
    gamma: f64,
}

impl Params {
    /// Validates `beta > 0` and `0 < gamma < 1`.
    ///
    /// `gamma >= 1` is the degenerate regime where every vertex has
    /// infinite degree, so it is rejected rather than simulated.
    pub fn new(beta: f64, gamma: f64) -> Result<Self> {
        if !beta.is_finite() || !gamma.is_finite() {
            return Err(AdrcmError::ParamDomain(
                "beta and gamma must be finite".into(),
            ));
        }
        if beta <= 0.0 {
            return Err(AdrcmError::ParamDomain("beta must be > 0".into()));
        }
        if gamma <= 0.0 {
            return Err(AdrcmError::ParamDomain("gamma must be > 0".into()));
        }
        if gamma >= 1.0 {
            return Err(AdrcmError::ParamDomain("gamma must be < 1".into()));
        }
        Ok(Params { beta, gamma })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Connection radius `β u^{−γ} v^{γ−1}` for marks `u ≤ v`.
    #[inline]
    pub fn radius(&self, u: f64, v: f64) -> f64 {
        debug_assert!(u <= v);
        self.beta * u.powf(-self.gamma) * v.powf(self.gamma - 1.0)
    }

    /// Connection radius for two marks in either order.
    #[inline]
    pub fn radius_between(&self, a: f64, b: f64) -> f64 {
        if a <= b {
            self.radius(a, b)
        } else {
            self.radius(b, a)
        }
    }

    /// Expected out-degree of any vertex, `2β/(1−γ)`.
    pub fn mean_out_degree(&self) -> f64 {
        2.0 * self.beta / (1.0 - self.gamma)
    }

    /// Expected in-degree of a vertex with mark `u`:
    /// `λ(u) = (2β/γ) u^{−γ} (1 − u^γ)`.
    pub fn mean_in_degree(&self, u: f64) -> f64 {
        2.0 * self.beta / self.gamma * u.powf(-self.gamma) * (1.0 - u.powf(self.gamma))
    }
}

pub fn validate_params(beta: f64, gamma: f64) -> Result<Params> {
    Params::new(beta, gamma)
}

/// A marked point: spatial coordinate `pos` and mark (birth time) in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub pos: f64,
    pub mark: f64,
}

impl Vertex {
    pub fn new(pos: f64, mark: f64) -> Result<Self> {
        let v = Vertex { pos, mark };
        v.validate()?;
        Ok(v)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if !self.pos.is_finite() {
            return Err(AdrcmError::ParamDomain(format!(
                "vertex position must be finite, got {}",
                self.pos
            )));
        }
        if !(self.mark > 0.0 && self.mark <= 1.0) {
            return Err(AdrcmError::ParamDomain(format!(
                "vertex mark must lie in (0, 1], got {}",
                self.mark
            )));
        }
        Ok(())
    }

    /// Total order by `(mark, pos)`. Edges always point from the greater
    /// vertex to the lesser one under this order.
    #[inline]
    pub fn rank_cmp(&self, other: &Vertex) -> Ordering {
        self.mark
            .total_cmp(&other.mark)
            .then(self.pos.total_cmp(&other.pos))
    }

    /// Order used for graph storage: by position, then mark.
    #[inline]
    pub(crate) fn pos_cmp(&self, other: &Vertex) -> Ordering {
        self.pos
            .total_cmp(&other.pos)
            .then(self.mark.total_cmp(&other.mark))
    }
}

/// Undirected ADRCM edge rule on the real line.
#[inline]
pub fn connects(a: &Vertex, b: &Vertex, params: &Params) -> bool {
    (a.pos - b.pos).abs() <= params.radius_between(a.mark, b.mark)
}

/// Orients a pair as `(from, to)`: the head is the vertex with the smaller
/// mark, and equal marks send the edge towards the smaller position.
///
/// Identical vertices have no orientation and are reported as duplicates.
pub fn edge_direction(a: &Vertex, b: &Vertex) -> Result<(Vertex, Vertex)> {
    match a.rank_cmp(b) {
        Ordering::Greater => Ok((*a, *b)),
        Ordering::Less => Ok((*b, *a)),
        Ordering::Equal => Err(AdrcmError::DuplicateVertex {
            pos: a.pos,
            mark: a.mark,
        }),
    }
}
