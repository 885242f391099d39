use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use super::Vertex;
use crate::error::{AdrcmError, Result};

/// Observation window `[core_lo, core_hi]` plus a sampling margin on each
/// side. A periodic window identifies the two ends of the core and has no
/// margin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimWindow {
    pub core_lo: f64,
    pub core_hi: f64,
    pub margin: f64,
    pub periodic: bool,
}

impl SimWindow {
    pub fn new(core_lo: f64, core_hi: f64, margin: f64) -> Result<Self> {
        if !(core_lo.is_finite() && core_hi.is_finite() && margin.is_finite()) {
            return Err(AdrcmError::ParamDomain("window bounds must be finite".into()));
        }
        if core_hi < core_lo {
            return Err(AdrcmError::ParamDomain(format!(
                "window core_hi ({core_hi}) must be >= core_lo ({core_lo})"
            )));
        }
        if margin < 0.0 {
            return Err(AdrcmError::ParamDomain("window margin must be >= 0".into()));
        }
        Ok(SimWindow {
            core_lo,
            core_hi,
            margin,
            periodic: false,
        })
    }

    /// Circle of circumference `core_hi − core_lo`.
    pub fn torus(core_lo: f64, core_hi: f64) -> Result<Self> {
        let mut w = Self::new(core_lo, core_hi, 0.0)?;
        if core_hi <= core_lo {
            return Err(AdrcmError::ParamDomain("torus window must have positive length".into()));
        }
        w.periodic = true;
        Ok(w)
    }

    /// Length `n` of the observation window.
    pub fn n(&self) -> f64 {
        self.core_hi - self.core_lo
    }

    pub fn region(&self) -> (f64, f64) {
        (self.core_lo - self.margin, self.core_hi + self.margin)
    }

    pub fn boundary(&self) -> Boundary {
        if self.periodic {
            Boundary::Periodic {
                lo: self.core_lo,
                len: self.n(),
            }
        } else {
            Boundary::Open
        }
    }
}

/// Metric used for the edge rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Boundary {
    Open,
    /// Positions live in `[lo, lo + len)` with wrap-around distance.
    Periodic { lo: f64, len: f64 },
}

impl Boundary {
    #[inline]
    pub fn distance(&self, x: f64, y: f64) -> f64 {
        match *self {
            Boundary::Open => (x - y).abs(),
            Boundary::Periodic { len, .. } => {
                let d = (x - y).abs() % len;
                d.min(len - d)
            }
        }
    }

    /// Position intervals (at most two) holding every point within `r` of
    /// `x`.
    pub(crate) fn segments(&self, x: f64, r: f64) -> [Option<(f64, f64)>; 2] {
        match *self {
            Boundary::Open => [Some((x - r, x + r)), None],
            Boundary::Periodic { lo, len } => {
                let hi = lo + len;
                if 2.0 * r >= len {
                    return [Some((lo, hi)), None];
                }
                let a = x - r;
                let b = x + r;
                if a < lo {
                    [Some((lo, b)), Some((a + len, hi))]
                } else if b >= hi {
                    [Some((a, hi)), Some((lo, b - len))]
                } else {
                    [Some((a, b)), None]
                }
            }
        }
    }
}

/// Draws a Poisson count with the given mean; a non-positive mean yields 0.
pub(crate) fn poisson_count<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> usize {
    if mean <= 0.0 {
        return 0;
    }
    let dist = Poisson::new(mean).expect("finite positive Poisson mean");
    dist.sample(rng) as usize
}

/// Unit-intensity Poisson process on the window's full region times `(0, 1]`.
///
/// Positions and marks are independent and uniform. For a periodic window
/// the region is the core itself.
pub fn sample_point_process<R: Rng + ?Sized>(window: &SimWindow, rng: &mut R) -> Vec<Vertex> {
    let (lo, hi) = window.region();
    let width = hi - lo;
    let count = poisson_count(width, rng);
    (0..count)
        .map(|_| {
            let mut pos = lo + width * rng.random::<f64>();
            if window.periodic && pos >= hi {
                pos = lo;
            }
            let mark = 1.0 - rng.random::<f64>();
            Vertex { pos, mark }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    #[test]
    fn zero_width_region_is_empty() {
        let w = SimWindow::new(3.0, 3.0, 0.0).unwrap();
        let mut rng = stream(1, 0, 0);
        assert!(sample_point_process(&w, &mut rng).is_empty());
    }

    #[test]
    fn window_validation() {
        assert!(SimWindow::new(0.0, 10.0, -1.0).is_err());
        assert!(SimWindow::new(10.0, 0.0, 1.0).is_err());
        assert!(SimWindow::torus(0.0, 0.0).is_err());
    }

    #[test]
    fn fixed_seed_is_deterministic() {
        let w = SimWindow::new(0.0, 50.0, 5.0).unwrap();
        let a = sample_point_process(&w, &mut stream(9, 1, 2));
        let b = sample_point_process(&w, &mut stream(9, 1, 2));
        assert_eq!(a, b);
        assert!(a.iter().all(|v| v.mark > 0.0 && v.mark <= 1.0));
        assert!(a.iter().all(|v| v.pos >= -5.0 && v.pos <= 55.0));
    }

    #[test]
    fn count_mean_matches_width() {
        // Poisson(1000): sample mean of 10^4 draws has standard error
        // sqrt(1000 / 10^4) ≈ 0.316.
        let w = SimWindow::new(0.0, 1000.0, 0.0).unwrap();
        let draws = 10_000;
        let mut rng = stream(42, 0, 0);
        let total: usize = (0..draws)
            .map(|_| poisson_count(w.n(), &mut rng))
            .sum();
        let mean = total as f64 / draws as f64;
        let se = (1000.0f64 / draws as f64).sqrt();
        assert!((mean - 1000.0).abs() < 3.0 * se, "mean {mean}");
    }

    #[test]
    fn periodic_segments_wrap() {
        let b = Boundary::Periodic { lo: 0.0, len: 10.0 };
        assert!((b.distance(0.5, 9.5) - 1.0).abs() < 1e-12);
        let s = b.segments(0.5, 1.0);
        assert_eq!(s[0], Some((0.0, 1.5)));
        assert_eq!(s[1], Some((9.5, 10.0)));
        assert_eq!(b.segments(5.0, 6.0), [Some((0.0, 10.0)), None]);
    }
}
