//! Tabulated profiles with local-polynomial derivative estimates.

use super::kernel::Kernel;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Finite-difference order of accuracy reported for tabulated data.
pub const TABULATED_FD_ORDER: u32 = 4;

const MAX_TAB_ORDER: u32 = 4;

/// Samples (t_k, f(t_k)) on a strictly increasing grid with t_0 > 0.
///
/// Derivatives come from differentiating the local Lagrange polynomial through
/// the ν+4 nearest samples, i.e. 4th-order central differences in the
/// interior degrading to one-sided stencils at the edges.
#[derive(Debug)]
pub(crate) struct Tabulated {
    ts: Vec<f64>,
    vals: Vec<Complex64>,
    complex: bool,
}

impl Tabulated {
    pub fn new(ts: Vec<f64>, vals: Vec<Complex64>) -> Result<Self> {
        if ts.len() != vals.len() {
            return Err(Error::Parameter("grid/value length mismatch".into()));
        }
        if ts.len() < 8 {
            return Err(Error::Parameter(
                "tabulated profile needs at least 8 samples".into(),
            ));
        }
        if ts[0] <= 0.0 {
            return Err(Error::Domain("tabulated grid must start at t > 0".into()));
        }
        if ts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parameter("grid must be strictly increasing".into()));
        }
        if vals.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Parameter("non-finite sample value".into()));
        }
        let complex = vals.iter().any(|v| v.im != 0.0);
        Ok(Tabulated { ts, vals, complex })
    }

    /// Window of `width` indices centered (as well as possible) on t.
    fn window(&self, t: f64, width: usize) -> (usize, usize) {
        let n = self.ts.len();
        let width = width.min(n);
        let pos = self.ts.partition_point(|&x| x < t);
        let half = width / 2;
        let start = pos.saturating_sub(half).min(n - width);
        (start, start + width)
    }

    /// ν-th derivative of the local interpolating polynomial at t.
    fn local_derivative(&self, nu: u32, t: f64) -> Complex64 {
        let width = (nu as usize + 4).min(self.ts.len());
        let (lo, hi) = self.window(t, width);
        let w = hi - lo;
        // scale offsets for conditioning
        let scale = (self.ts[hi - 1] - self.ts[lo]).max(f64::MIN_POSITIVE);
        // Solve the Vandermonde system in the shifted/scaled basis ((x−t)/scale)^i.
        let mut a = vec![vec![0.0f64; w]; w];
        for (r, idx) in (lo..hi).enumerate() {
            let dx = (self.ts[idx] - t) / scale;
            let mut p = 1.0;
            for c in 0..w {
                a[r][c] = p;
                p *= dx;
            }
        }
        let mut rhs_re: Vec<f64> = (lo..hi).map(|i| self.vals[i].re).collect();
        let mut rhs_im: Vec<f64> = (lo..hi).map(|i| self.vals[i].im).collect();
        if !solve_inplace(&mut a, &mut rhs_re, &mut rhs_im) {
            return Complex64::new(f64::NAN, f64::NAN);
        }
        // ν-th derivative at t = ν! · coef_ν / scale^ν
        let mut fact = 1.0;
        for i in 1..=nu {
            fact *= i as f64;
        }
        let k = nu as usize;
        if k >= w {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::new(rhs_re[k], rhs_im[k]) * fact / scale.powi(nu as i32)
    }
}

/// Gaussian elimination with partial pivoting on a square system with two RHS.
fn solve_inplace(a: &mut [Vec<f64>], rhs_re: &mut [f64], rhs_im: &mut [f64]) -> bool {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        if a[piv][col].abs() < 1e-300 {
            return false;
        }
        a.swap(col, piv);
        rhs_re.swap(col, piv);
        rhs_im.swap(col, piv);
        for row in (col + 1)..n {
            let f = a[row][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for c in col..n {
                a[row][c] -= f * a[col][c];
            }
            rhs_re[row] -= f * rhs_re[col];
            rhs_im[row] -= f * rhs_im[col];
        }
    }
    for col in (0..n).rev() {
        rhs_re[col] /= a[col][col];
        rhs_im[col] /= a[col][col];
        for row in 0..col {
            rhs_re[row] -= a[row][col] * rhs_re[col];
            rhs_im[row] -= a[row][col] * rhs_im[col];
        }
    }
    true
}

impl Kernel for Tabulated {
    fn max_order(&self) -> u32 {
        MAX_TAB_ORDER
    }

    fn is_complex(&self) -> bool {
        self.complex
    }

    fn derivative(&self, nu: u32, t: f64) -> Complex64 {
        self.local_derivative(nu, t)
    }

    fn domain(&self) -> (f64, f64) {
        (self.ts[0], *self.ts.last().unwrap())
    }

    fn description(&self) -> String {
        format!(
            "tabulated({} samples on [{:.4}, {:.4}])",
            self.ts.len(),
            self.ts[0],
            self.ts.last().unwrap()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn tab_of(f: impl Fn(f64) -> f64, n: usize) -> Tabulated {
        let ts: Vec<f64> = (0..n).map(|k| 0.1 + 4.9 * k as f64 / (n - 1) as f64).collect();
        let vals = ts.iter().map(|&t| Complex64::new(f(t), 0.0)).collect();
        Tabulated::new(ts, vals).unwrap()
    }

    #[test]
    fn interpolates_and_differentiates_smooth_data() {
        let tab = tab_of(|t| (-t).exp(), 400);
        for &t in &[0.3, 1.0, 2.5, 4.8] {
            assert_relative_eq!(tab.derivative(0, t).re, (-t).exp(), max_relative = 1e-9);
            assert_relative_eq!(tab.derivative(1, t).re, -(-t).exp(), max_relative = 1e-6);
            assert_relative_eq!(tab.derivative(2, t).re, (-t).exp(), max_relative = 1e-4);
        }
    }

    #[test]
    fn edge_derivative_is_one_sided() {
        let tab = tab_of(|t| t * t, 50);
        assert_relative_eq!(tab.derivative(1, 0.1).re, 0.2, max_relative = 1e-8);
        assert_relative_eq!(tab.derivative(1, 5.0).re, 10.0, max_relative = 1e-8);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(Tabulated::new(vec![1.0; 10], vec![Complex64::new(0.0, 0.0); 10]).is_err());
        let ts: Vec<f64> = (0..10).map(|k| k as f64).collect(); // starts at 0
        assert!(Tabulated::new(ts, vec![Complex64::new(0.0, 0.0); 10]).is_err());
    }
}
