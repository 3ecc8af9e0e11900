//! Power-law reparametrization t ↦ f(t^α) with Faà di Bruno derivatives.

use super::kernel::Kernel;
use super::Profile;
use crate::special::{binomial, falling_factorial};
use num_complex::Complex64;

/// f(t^α), α ∈ (0, 1).
///
/// Since g(t) = t^α has g^{(j)}(t) = α(α−1)···(α−j+1) t^{α−j}, the Bell
/// polynomials in Faà di Bruno's formula collapse to constants times a single
/// power of t:
///   (f∘g)^{(n)}(t) = Σ_k C(n,k) t^{kα−n} f^{(k)}(t^α),
/// with C(n,k) = B_{n,k}(α↓1, α↓2, …) precomputed by the Bell recurrence.
#[derive(Debug)]
pub(crate) struct PowerCompose {
    pub inner: Profile,
    pub alpha: f64,
    /// bell[n][k] = B_{n,k} evaluated at x_j = falling_factorial(α, j).
    bell: Vec<Vec<f64>>,
}

impl PowerCompose {
    pub fn new(inner: Profile, alpha: f64, max_order: u32) -> Self {
        let n_max = max_order as usize;
        let x: Vec<f64> = (0..=n_max)
            .map(|j| falling_factorial(alpha, j as u32))
            .collect();
        let mut bell = vec![vec![0.0; n_max + 1]; n_max + 1];
        bell[0][0] = 1.0;
        for n in 1..=n_max {
            for k in 1..=n {
                let mut acc = 0.0;
                for j in 1..=(n - k + 1) {
                    acc += binomial((n - 1) as u32, (j - 1) as u32) * x[j] * bell[n - j][k - 1];
                }
                bell[n][k] = acc;
            }
        }
        PowerCompose { inner, alpha, bell }
    }
}

impl Kernel for PowerCompose {
    fn max_order(&self) -> u32 {
        (self.bell.len() - 1) as u32
    }

    fn derivative(&self, nu: u32, t: f64) -> Complex64 {
        let s = t.powf(self.alpha);
        if nu == 0 {
            return self.inner.derivative_unchecked(0, s);
        }
        let n = nu as usize;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 1..=n {
            let c = self.bell[n][k];
            if c == 0.0 {
                continue;
            }
            let power = t.powf(k as f64 * self.alpha - n as f64);
            acc += self.inner.derivative_unchecked(k as u32, s) * c * power;
        }
        acc
    }

    fn is_complex(&self) -> bool {
        self.inner.is_complex()
    }

    fn domain(&self) -> (f64, f64) {
        let (lo, hi) = self.inner.domain();
        (
            lo.powf(1.0 / self.alpha),
            if hi.is_finite() {
                hi.powf(1.0 / self.alpha)
            } else {
                f64::INFINITY
            },
        )
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.inner
            .breakpoints()
            .iter()
            .map(|&b| b.powf(1.0 / self.alpha))
            .collect()
    }

    fn description(&self) -> String {
        format!("({})(t^{})", self.inner.description(), self.alpha)
    }
}
