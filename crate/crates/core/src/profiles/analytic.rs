//! Closed-form profile families with exact derivatives.

use super::kernel::{re, DerivativeJump, Kernel};
use crate::special::{factorial, falling_factorial};
use num_complex::Complex64;
use std::collections::HashMap;

/// Highest derivative order precomputed for the term-expansion families.
pub(crate) const ANALYTIC_MAX_ORDER: u32 = 12;

/// e^{-λt}.
#[derive(Debug)]
pub(crate) struct ExpDecay {
    pub lambda: f64,
}

impl Kernel for ExpDecay {
    fn max_order(&self) -> u32 {
        64
    }

    fn derivative(&self, nu: u32, t: f64) -> Complex64 {
        let sign = if nu % 2 == 0 { 1.0 } else { -1.0 };
        re(sign * self.lambda.powi(nu as i32) * (-self.lambda * t).exp())
    }

    fn description(&self) -> String {
        format!("exp(-{}t)", self.lambda)
    }
}

/// (1 − tu)^m_+, the truncated-power kernel of the Williamson representation.
#[derive(Debug)]
pub(crate) struct TruncPower {
    pub m: u32,
    pub u: f64,
}

impl TruncPower {
    fn breakpoint(&self) -> f64 {
        1.0 / self.u
    }
}

impl Kernel for TruncPower {
    fn max_order(&self) -> u32 {
        self.m + 1
    }

    fn derivative(&self, nu: u32, t: f64) -> Complex64 {
        if nu > self.m || t >= self.breakpoint() {
            // right-sided limit at the breakpoint; identically 0 past it, and
            // the (m+1)-th derivative vanishes a.e.
            return re(0.0);
        }
        let base = 1.0 - t * self.u;
        let coeff = falling_factorial(self.m as f64, nu) * (-self.u).powi(nu as i32);
        re(coeff * base.powi((self.m - nu) as i32))
    }

    fn breakpoints(&self) -> Vec<f64> {
        vec![self.breakpoint()]
    }

    fn derivative_jumps(&self, m: u32) -> Vec<DerivativeJump> {
        if m == self.m {
            // f^{(m)} = m!(−u)^m left of the breakpoint, 0 right of it
            let left = factorial(self.m) * (-self.u).powi(self.m as i32);
            vec![(self.breakpoint(), -left)]
        } else {
            Vec::new()
        }
    }

    fn variation_order_limit(&self) -> u32 {
        self.m
    }

    fn description(&self) -> String {
        format!("(1-{}t)_+^{}", self.u, self.m)
    }
}

/// Term c · t^{γ+n+jα} · (1+t^α)^{−β−k}; the set is closed under d/dt.
#[derive(Debug, Clone, Copy)]
struct PowTerm {
    c: f64,
    n: i64,
    j: i64,
    k: u32,
}

/// t^γ / (1 + t^α)^β with exact derivatives via a closed term expansion.
#[derive(Debug)]
pub(crate) struct RationalDecay {
    pub gamma: f64,
    pub alpha: f64,
    pub beta: f64,
    /// terms[ν] represents f^{(ν)}.
    terms: Vec<Vec<PowTerm>>,
}

impl RationalDecay {
    pub fn new(gamma: f64, alpha: f64, beta: f64) -> Self {
        let mut terms: Vec<Vec<PowTerm>> = vec![vec![PowTerm {
            c: 1.0,
            n: 0,
            j: 0,
            k: 0,
        }]];
        for _ in 0..ANALYTIC_MAX_ORDER {
            let cur = terms.last().unwrap();
            let mut next: HashMap<(i64, i64, u32), f64> = HashMap::new();
            for term in cur {
                let e = gamma + term.n as f64 + term.j as f64 * alpha;
                if e != 0.0 {
                    *next.entry((term.n - 1, term.j, term.k)).or_insert(0.0) += term.c * e;
                }
                let c2 = -term.c * alpha * (beta + term.k as f64);
                if c2 != 0.0 {
                    *next.entry((term.n - 1, term.j + 1, term.k + 1)).or_insert(0.0) += c2;
                }
            }
            terms.push(
                next.into_iter()
                    .filter(|&(_, c)| c != 0.0)
                    .map(|((n, j, k), c)| PowTerm { c, n, j, k })
                    .collect(),
            );
        }
        RationalDecay {
            gamma,
            alpha,
            beta,
            terms,
        }
    }
}

impl Kernel for RationalDecay {
    fn max_order(&self) -> u32 {
        ANALYTIC_MAX_ORDER
    }

    fn derivative(&self, nu: u32, t: f64) -> Complex64 {
        let ln_t = t.ln();
        let base = 1.0 + t.powf(self.alpha);
        let ln_base = base.ln();
        let mut acc = 0.0;
        for term in &self.terms[nu as usize] {
            let e = self.gamma + term.n as f64 + term.j as f64 * self.alpha;
            let expo = e * ln_t - (self.beta + term.k as f64) * ln_base;
            acc += term.c * expo.exp();
        }
        re(acc)
    }

    fn description(&self) -> String {
        format!(
            "t^{}/(1+t^{})^{}",
            self.gamma, self.alpha, self.beta
        )
    }
}

/// Term c · t^{n+jα} · (1+t)^{−β−k} · e^{it^α} with complex c.
#[derive(Debug, Clone, Copy)]
struct ChirpTerm {
    c: Complex64,
    n: i64,
    j: i64,
    k: u32,
}

/// e^{it^α} / (1+t)^β, the oscillating complex family.
#[derive(Debug)]
pub(crate) struct ChirpDecay {
    pub alpha: f64,
    pub beta: f64,
    terms: Vec<Vec<ChirpTerm>>,
}

impl ChirpDecay {
    pub fn new(alpha: f64, beta: f64) -> Self {
        let i = Complex64::new(0.0, 1.0);
        let mut terms: Vec<Vec<ChirpTerm>> = vec![vec![ChirpTerm {
            c: Complex64::new(1.0, 0.0),
            n: 0,
            j: 0,
            k: 0,
        }]];
        for _ in 0..ANALYTIC_MAX_ORDER {
            let cur = terms.last().unwrap();
            let mut next: HashMap<(i64, i64, u32), Complex64> = HashMap::new();
            let zero = Complex64::new(0.0, 0.0);
            for term in cur {
                let e = term.n as f64 + term.j as f64 * alpha;
                if e != 0.0 {
                    *next.entry((term.n - 1, term.j, term.k)).or_insert(zero) += term.c * e;
                }
                *next.entry((term.n, term.j, term.k + 1)).or_insert(zero) +=
                    -term.c * (beta + term.k as f64);
                if alpha != 0.0 {
                    *next.entry((term.n - 1, term.j + 1, term.k)).or_insert(zero) +=
                        term.c * i * alpha;
                }
            }
            terms.push(
                next.into_iter()
                    .filter(|&(_, c)| c.norm_sqr() != 0.0)
                    .map(|((n, j, k), c)| ChirpTerm { c, n, j, k })
                    .collect(),
            );
        }
        ChirpDecay {
            alpha,
            beta,
            terms,
        }
    }
}

impl Kernel for ChirpDecay {
    fn max_order(&self) -> u32 {
        ANALYTIC_MAX_ORDER
    }

    fn is_complex(&self) -> bool {
        true
    }

    fn derivative(&self, nu: u32, t: f64) -> Complex64 {
        let ln_t = t.ln();
        let ln_base = (1.0 + t).ln();
        let phase = Complex64::from_polar(1.0, t.powf(self.alpha));
        let mut acc = Complex64::new(0.0, 0.0);
        for term in &self.terms[nu as usize] {
            let e = term.n as f64 + term.j as f64 * self.alpha;
            let magnitude = (e * ln_t - (self.beta + term.k as f64) * ln_base).exp();
            acc += term.c * magnitude;
        }
        acc * phase
    }

    fn description(&self) -> String {
        format!("exp(it^{})/(1+t)^{}", self.alpha, self.beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exp_decay_derivatives() {
        let k = ExpDecay { lambda: 1.0 };
        assert_relative_eq!(k.derivative(0, 0.5).re, (-0.5f64).exp(), max_relative = 1e-14);
        assert_relative_eq!(k.derivative(2, 1.0).re, (-1.0f64).exp(), max_relative = 1e-14);
        assert_relative_eq!(k.derivative(3, 1.0).re, -(-1.0f64).exp(), max_relative = 1e-14);
    }

    #[test]
    fn trunc_power_support_and_jump() {
        let k = TruncPower { m: 2, u: 1.0 };
        assert_relative_eq!(k.derivative(0, 0.5).re, 0.25, max_relative = 1e-14);
        assert_eq!(k.derivative(1, 2.0).re, 0.0);
        assert_eq!(k.derivative(0, 1.0).re, 0.0); // right-sided at the breakpoint
        let jumps = k.derivative_jumps(2);
        assert_eq!(jumps.len(), 1);
        assert_relative_eq!(jumps[0].0, 1.0);
        assert_relative_eq!(jumps[0].1, -2.0); // f'' = 2 left of t=1, 0 right
    }

    #[test]
    fn rational_decay_first_derivative() {
        // f = 1/(1+t): f' = -1/(1+t)^2, f'(1) = -1/4
        let k = RationalDecay::new(0.0, 1.0, 1.0);
        assert_relative_eq!(k.derivative(1, 1.0).re, -0.25, max_relative = 1e-13);
        // f'' = 2/(1+t)^3
        assert_relative_eq!(k.derivative(2, 1.0).re, 0.25, max_relative = 1e-13);
    }

    #[test]
    fn rational_decay_vs_central_difference() {
        let k = RationalDecay::new(0.5, 1.5, 2.0);
        let h = 1e-5;
        for &t in &[0.3, 1.0, 2.7] {
            for nu in 1..=3u32 {
                // central difference of f^{(nu-1)}
                let fd = (k.derivative(nu - 1, t + h).re - k.derivative(nu - 1, t - h).re)
                    / (2.0 * h);
                assert_relative_eq!(k.derivative(nu, t).re, fd, max_relative = 1e-7);
            }
        }
    }

    #[test]
    fn chirp_decay_value_and_first_derivative() {
        let k = ChirpDecay::new(1.0, 1.0);
        // f(t) = e^{it}/(1+t)
        let t = 2.0f64;
        let expect = Complex64::from_polar(1.0 / 3.0, 2.0);
        let got = k.derivative(0, t);
        assert_relative_eq!(got.re, expect.re, max_relative = 1e-13);
        assert_relative_eq!(got.im, expect.im, max_relative = 1e-13);
        // f' = (i/(1+t) - 1/(1+t)^2) e^{it}
        let expect1 = (Complex64::new(0.0, 1.0 / 3.0) - Complex64::new(1.0 / 9.0, 0.0))
            * Complex64::from_polar(1.0, 2.0);
        let got1 = k.derivative(1, t);
        assert_relative_eq!(got1.re, expect1.re, max_relative = 1e-12);
        assert_relative_eq!(got1.im, expect1.im, max_relative = 1e-12);
    }

    #[test]
    fn chirp_decay_vs_central_difference() {
        let k = ChirpDecay::new(0.6, 1.2);
        let h = 1e-5;
        for &t in &[0.5, 1.5, 4.0] {
            for nu in 1..=3u32 {
                let fd = (k.derivative(nu - 1, t + h) - k.derivative(nu - 1, t - h)) / (2.0 * h);
                let an = k.derivative(nu, t);
                assert_relative_eq!(an.re, fd.re, max_relative = 1e-6, epsilon = 1e-9);
                assert_relative_eq!(an.im, fd.im, max_relative = 1e-6, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn chirp_alpha_zero_is_constant_phase() {
        let k = ChirpDecay::new(0.0, 2.0);
        let t = 3.0f64;
        let expect = Complex64::from_polar((1.0 + t).powf(-2.0), 1.0);
        let got = k.derivative(0, t);
        assert_relative_eq!(got.re, expect.re, max_relative = 1e-13);
        assert_relative_eq!(got.im, expect.im, max_relative = 1e-13);
    }
}
