//! Discrete measures and the truncated-power mixtures they generate.

use super::kernel::{re, DerivativeJump, Kernel};
use crate::error::{Error, Result};
use crate::special::{factorial, falling_factorial};
use num_complex::Complex64;
use serde::Serialize;

/// A finite positive measure Σ w_k δ_{u_k} on [0, ∞).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscreteMeasure {
    atoms: Vec<(f64, f64)>,
}

impl DiscreteMeasure {
    /// Atoms are (u_k, w_k) pairs with u_k ≥ 0, w_k > 0; duplicates rejected.
    pub fn new(mut atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Parameter("measure needs at least one atom".into()));
        }
        for &(u, w) in &atoms {
            if !u.is_finite() || u < 0.0 {
                return Err(Error::Parameter(format!("atom position {u} not in [0, inf)")));
            }
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::Parameter(format!("atom weight {w} not positive")));
            }
        }
        atoms.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        if atoms.windows(2).any(|p| p[0].0 == p[1].0) {
            return Err(Error::Parameter("duplicate atom positions".into()));
        }
        Ok(DiscreteMeasure { atoms })
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|&(_, w)| w).sum()
    }
}

/// Σ_k w_k (1 − t·u_k)^m_+ — an m-monotone function by construction.
#[derive(Debug)]
pub(crate) struct WilliamsonMix {
    pub measure: DiscreteMeasure,
    pub m: u32,
}

impl WilliamsonMix {
    /// Breakpoints 1/u_k for the strictly positive atom positions.
    fn cuts(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .measure
            .atoms()
            .iter()
            .filter(|&&(u, _)| u > 0.0)
            .map(|&(u, _)| 1.0 / u)
            .collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }
}

impl Kernel for WilliamsonMix {
    fn max_order(&self) -> u32 {
        self.m + 1
    }

    fn derivative(&self, nu: u32, t: f64) -> Complex64 {
        if nu > self.m {
            return re(0.0); // piecewise polynomial of degree m
        }
        let mut acc = 0.0;
        for &(u, w) in self.measure.atoms() {
            if u == 0.0 {
                if nu == 0 {
                    acc += w;
                }
                continue;
            }
            let base = 1.0 - t * u;
            if base <= 0.0 {
                continue; // right-sided: zero from the breakpoint on
            }
            let coeff = falling_factorial(self.m as f64, nu) * (-u).powi(nu as i32);
            acc += w * coeff * base.powi((self.m - nu) as i32);
        }
        re(acc)
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.cuts()
    }

    fn derivative_jumps(&self, m: u32) -> Vec<DerivativeJump> {
        if m != self.m {
            return Vec::new();
        }
        let mf = factorial(self.m);
        self.measure
            .atoms()
            .iter()
            .filter(|&&(u, _)| u > 0.0)
            .map(|&(u, w)| {
                let left = w * mf * (-u).powi(self.m as i32);
                (1.0 / u, -left)
            })
            .collect()
    }

    fn variation_order_limit(&self) -> u32 {
        self.m
    }

    fn description(&self) -> String {
        format!(
            "williamson(m={}, atoms={:?})",
            self.m,
            self.measure.atoms()
        )
    }
}
