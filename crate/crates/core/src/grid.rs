//! Geometric sampling grids on the positive half-line.

use serde::Serialize;

/// Specification of a geometric sampling grid on (0, ∞).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub t_min: f64,
    pub t_max: f64,
    pub points_per_decade: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            t_min: 1e-4,
            t_max: 1e4,
            points_per_decade: 64,
        }
    }
}

impl GridSpec {
    pub fn new(t_min: f64, t_max: f64, points_per_decade: usize) -> Self {
        assert!(t_min > 0.0 && t_max > t_min && points_per_decade > 0);
        GridSpec {
            t_min,
            t_max,
            points_per_decade,
        }
    }

    /// Restrict the grid to a profile's domain, keeping the density.
    pub fn clipped(&self, lo: f64, hi: f64) -> GridSpec {
        let t_min = self.t_min.max(lo);
        let t_max = self.t_max.min(hi).max(t_min * 1.0001);
        GridSpec {
            t_min,
            t_max,
            points_per_decade: self.points_per_decade,
        }
    }

    pub fn decades(&self) -> f64 {
        (self.t_max / self.t_min).log10()
    }

    /// The plain geometric grid, ascending, endpoints included.
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.decades() * self.points_per_decade as f64).ceil() as usize).max(1);
        let ratio = (self.t_max / self.t_min).powf(1.0 / n as f64);
        let mut out = Vec::with_capacity(n + 1);
        let mut t = self.t_min;
        for _ in 0..n {
            out.push(t);
            t *= ratio;
        }
        out.push(self.t_max);
        out
    }

    /// Geometric grid densified near each breakpoint (one-sided clusters on
    /// both sides, never the breakpoint itself).
    pub fn points_refined(&self, breakpoints: &[f64]) -> Vec<f64> {
        let mut pts = self.points();
        for &b in breakpoints {
            if b <= 0.0 {
                continue;
            }
            for k in 1..=8 {
                let eps = 10f64.powi(-(k as i32));
                for s in [1.0 - eps, 1.0 + eps] {
                    let t = b * s;
                    if t >= self.t_min && t <= self.t_max {
                        pts.push(t);
                    }
                }
            }
        }
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pts.dedup();
        pts
    }
}

/// Short description of a grid, embedded in JSON reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSummary {
    pub t_min: f64,
    pub t_max: f64,
    pub points: usize,
}

impl GridSummary {
    pub fn of(points: &[f64]) -> Self {
        GridSummary {
            t_min: points.first().copied().unwrap_or(f64::NAN),
            t_max: points.last().copied().unwrap_or(f64::NAN),
            points: points.len(),
        }
    }
}
