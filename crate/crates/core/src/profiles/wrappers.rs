//! Derived kernels: component extraction, differences, rescaling, smooth
//! tail windows, and Steklov means.

use super::kernel::{re, DerivativeJump, Kernel};
use super::Profile;
use crate::quad::{integrate_with_breakpoints, QuadratureSpec};
use crate::special::binomial;
use num_complex::Complex64;

#[derive(Debug)]
pub(crate) struct RealPart {
    pub inner: Profile,
}

impl Kernel for RealPart {
    fn max_order(&self) -> u32 {
        self.inner.max_derivative_order()
    }
    fn derivative(&self, nu: u32, t: f64) -> Complex64 {
        re(self.inner.derivative_unchecked(nu, t).re)
    }
    fn domain(&self) -> (f64, f64) {
        self.inner.domain()
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.inner.breakpoints()
    }
    fn derivative_jumps(&self, m: u32) -> Vec<DerivativeJump> {
        self.inner.derivative_jumps(m)
    }
    fn variation_order_limit(&self) -> u32 {
        self.inner.variation_order_limit()
    }
    fn description(&self) -> String {
        format!("Re[{}]", self.inner.description())
    }
}

#[derive(Debug)]
pub(crate) struct ImagPart {
    pub inner: Profile,
}

impl Kernel for ImagPart {
    fn max_order(&self) -> u32 {
        self.inner.max_derivative_order()
    }
    fn derivative(&self, nu: u32, t: f64) -> Complex64 {
        re(self.inner.derivative_unchecked(nu, t).im)
    }
    fn domain(&self) -> (f64, f64) {
        self.inner.domain()
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.inner.breakpoints()
    }
    fn variation_order_limit(&self) -> u32 {
        self.inner.variation_order_limit()
    }
    fn description(&self) -> String {
        format!("Im[{}]", self.inner.description())
    }
}

/// a − b, used by the decomposition (f₂ = f₁ − f).
#[derive(Debug)]
pub(crate) struct Difference {
    pub a: Profile,
    pub b: Profile,
}

impl Kernel for Difference {
    fn max_order(&self) -> u32 {
        self.a.max_derivative_order().min(self.b.max_derivative_order())
    }
    fn is_complex(&self) -> bool {
        self.a.is_complex() || self.b.is_complex()
    }
    fn derivative(&self, nu: u32, t: f64) -> Complex64 {
        self.a.derivative_unchecked(nu, t) - self.b.derivative_unchecked(nu, t)
    }
    fn domain(&self) -> (f64, f64) {
        let (a0, a1) = self.a.domain();
        let (b0, b1) = self.b.domain();
        (a0.max(b0), a1.min(b1))
    }
    fn breakpoints(&self) -> Vec<f64> {
        let mut v = self.a.breakpoints();
        v.extend(self.b.breakpoints());
        v.sort_by(|x, y| x.partial_cmp(y).unwrap());
        v.dedup();
        v
    }
    fn derivative_jumps(&self, m: u32) -> Vec<DerivativeJump> {
        merge_jumps(self.a.derivative_jumps(m), self.b.derivative_jumps(m))
    }
    fn variation_order_limit(&self) -> u32 {
        self.a.variation_order_limit().min(self.b.variation_order_limit())
    }
    fn description(&self) -> String {
        format!("({}) - ({})", self.a.description(), self.b.description())
    }
}

/// Signed jump difference a_jumps − b_jumps, merging coincident positions.
fn merge_jumps(a: Vec<DerivativeJump>, b: Vec<DerivativeJump>) -> Vec<DerivativeJump> {
    let mut out: Vec<DerivativeJump> = a;
    for (pos, jump) in b {
        if let Some(entry) = out.iter_mut().find(|(p, _)| (*p - pos).abs() <= 1e-12 * pos.abs()) {
            entry.1 -= jump;
        } else {
            out.push((pos, -jump));
        }
    }
    out.retain(|&(_, j)| j != 0.0);
    out.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    out
}

/// c·f(t).
#[derive(Debug)]
pub(crate) struct AmplitudeScale {
    pub inner: Profile,
    pub c: f64,
}

impl Kernel for AmplitudeScale {
    fn max_order(&self) -> u32 {
        self.inner.max_derivative_order()
    }
    fn is_complex(&self) -> bool {
        self.inner.is_complex()
    }
    fn derivative(&self, nu: u32, t: f64) -> Complex64 {
        self.inner.derivative_unchecked(nu, t) * self.c
    }
    fn domain(&self) -> (f64, f64) {
        self.inner.domain()
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.inner.breakpoints()
    }
    fn derivative_jumps(&self, m: u32) -> Vec<DerivativeJump> {
        self.inner
            .derivative_jumps(m)
            .into_iter()
            .map(|(p, j)| (p, j * self.c))
            .collect()
    }
    fn variation_order_limit(&self) -> u32 {
        self.inner.variation_order_limit()
    }
    fn description(&self) -> String {
        format!("{}·({})", self.c, self.inner.description())
    }
}

/// t ↦ f(λt).
#[derive(Debug)]
pub(crate) struct Scale {
    pub inner: Profile,
    pub lambda: f64,
}

impl Kernel for Scale {
    fn max_order(&self) -> u32 {
        self.inner.max_derivative_order()
    }
    fn is_complex(&self) -> bool {
        self.inner.is_complex()
    }
    fn derivative(&self, nu: u32, t: f64) -> Complex64 {
        self.inner.derivative_unchecked(nu, self.lambda * t) * self.lambda.powi(nu as i32)
    }
    fn domain(&self) -> (f64, f64) {
        let (lo, hi) = self.inner.domain();
        (lo / self.lambda, hi / self.lambda)
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.inner.breakpoints().iter().map(|b| b / self.lambda).collect()
    }
    fn description(&self) -> String {
        format!("({})({}t)", self.inner.description(), self.lambda)
    }
}

/// Degree-11 smoothstep: 0 on (−∞, 0], 1 on [1, ∞), C⁵ on ℝ.
const SMOOTHSTEP_C5: [f64; 12] = [
    0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 462.0, -1980.0, 3465.0, -3080.0, 1386.0, -252.0,
];

fn smoothstep_deriv(s: f64, k: u32) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    if s >= 1.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    let mut acc = 0.0;
    for (pow, &c) in SMOOTHSTEP_C5.iter().enumerate() {
        if c == 0.0 || (pow as u32) < k {
            continue;
        }
        let mut coef = c;
        for i in 0..k {
            coef *= (pow as u32 - i) as f64;
        }
        acc += coef * s.powi((pow as u32 - k) as i32);
    }
    acc
}

/// w(t)·f(t) with w a C⁵ smoothstep rising on [a, b]: isolates the tail of f.
#[derive(Debug)]
pub(crate) struct WindowedTail {
    pub inner: Profile,
    pub a: f64,
    pub b: f64,
}

impl Kernel for WindowedTail {
    fn max_order(&self) -> u32 {
        self.inner.max_derivative_order().min(5)
    }
    fn is_complex(&self) -> bool {
        self.inner.is_complex()
    }
    fn derivative(&self, nu: u32, t: f64) -> Complex64 {
        let width = self.b - self.a;
        let s = (t - self.a) / width;
        if s <= 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if s >= 1.0 {
            return self.inner.derivative_unchecked(nu, t);
        }
        // Leibniz rule on w(t)·f(t)
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..=nu {
            let w_k = smoothstep_deriv(s, k) / width.powi(k as i32);
            if w_k == 0.0 {
                continue;
            }
            acc += self.inner.derivative_unchecked(nu - k, t) * binomial(nu, k) * w_k;
        }
        acc
    }
    fn domain(&self) -> (f64, f64) {
        self.inner.domain()
    }
    fn breakpoints(&self) -> Vec<f64> {
        let mut v = self.inner.breakpoints();
        v.push(self.a);
        v.push(self.b);
        v.sort_by(|x, y| x.partial_cmp(y).unwrap());
        v.dedup();
        v
    }
    fn description(&self) -> String {
        format!(
            "window[{},{}]·({})",
            self.a,
            self.b,
            self.inner.description()
        )
    }
}

/// Double Steklov mean f_{2,h}(t) = h^{−2} ∫₀ʰ∫₀ʰ f(t+u₁+u₂) du₁du₂.
///
/// Values and first derivatives integrate the triangular convolution weight;
/// orders ν ≥ 2 use the exact second-difference identity
/// f_{2,h}^{(ν)}(t) = [f^{(ν−2)}(t+2h) − 2 f^{(ν−2)}(t+h) + f^{(ν−2)}(t)] / h².
#[derive(Debug)]
pub(crate) struct Steklov {
    pub inner: Profile,
    pub h: f64,
}

impl Steklov {
    fn averaged(&self, nu: u32, t: f64) -> Complex64 {
        let h = self.h;
        let spec = QuadratureSpec::with_tol(1e-12);
        let mut cuts: Vec<f64> = vec![h];
        for b in self.inner.breakpoints() {
            let s = b - t;
            if s > 0.0 && s < 2.0 * h {
                cuts.push(s);
            }
        }
        let weight = |s: f64| if s <= h { s } else { 2.0 * h - s };
        let re_part = integrate_with_breakpoints(
            &|s: f64| weight(s) * self.inner.derivative_unchecked(nu, t + s).re,
            0.0,
            2.0 * h,
            &cuts,
            &spec,
        )
        .0;
        let im_part = if self.inner.is_complex() {
            integrate_with_breakpoints(
                &|s: f64| weight(s) * self.inner.derivative_unchecked(nu, t + s).im,
                0.0,
                2.0 * h,
                &cuts,
                &spec,
            )
            .0
        } else {
            0.0
        };
        Complex64::new(re_part, im_part) / (h * h)
    }
}

impl Kernel for Steklov {
    fn max_order(&self) -> u32 {
        self.inner.max_derivative_order().saturating_add(2).min(16)
    }
    fn is_complex(&self) -> bool {
        self.inner.is_complex()
    }
    fn derivative(&self, nu: u32, t: f64) -> Complex64 {
        if nu <= 1 && nu + 1 > self.inner.max_derivative_order() {
            // rough inner profile: always possible via the averaged form
            return self.averaged(nu, t);
        }
        if nu < 2 {
            return self.averaged(nu, t);
        }
        let k = nu - 2;
        let h = self.h;
        (self.inner.derivative_unchecked(k, t + 2.0 * h)
            - self.inner.derivative_unchecked(k, t + h) * 2.0
            + self.inner.derivative_unchecked(k, t))
            / (h * h)
    }
    fn domain(&self) -> (f64, f64) {
        let (lo, hi) = self.inner.domain();
        (lo, if hi.is_finite() { hi - 2.0 * self.h } else { hi })
    }
    fn breakpoints(&self) -> Vec<f64> {
        let mut v = Vec::new();
        for b in self.inner.breakpoints() {
            v.push(b - 2.0 * self.h);
            v.push(b - self.h);
            v.push(b);
        }
        v.retain(|&x| x > 0.0);
        v.sort_by(|x, y| x.partial_cmp(y).unwrap());
        v.dedup();
        v
    }
    fn description(&self) -> String {
        format!("steklov(h={}, {})", self.h, self.inner.description())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::Profile;
    use approx::assert_relative_eq;

    #[test]
    fn smoothstep_endpoints_and_smoothness() {
        assert_eq!(smoothstep_deriv(0.0, 0), 0.0);
        assert_eq!(smoothstep_deriv(1.0, 0), 1.0);
        assert_relative_eq!(smoothstep_deriv(0.5, 0), 0.5, max_relative = 1e-12);
        for k in 1..=5u32 {
            assert!(smoothstep_deriv(1e-9, k).abs() < 1e-3);
            assert!(smoothstep_deriv(1.0 - 1e-9, k).abs() < 1e-3);
        }
    }

    #[test]
    fn steklov_of_exp_is_scaled_exp() {
        // f_{2,h} for e^{-t} equals e^{-t}((1-e^{-h})/h)^2
        let p = Profile::exp_decay(1.0).unwrap();
        let s = p.steklov_smooth(0.25).unwrap();
        let factor = ((1.0 - (-0.25f64).exp()) / 0.25).powi(2);
        for &t in &[0.1, 1.0, 3.0] {
            assert_relative_eq!(
                s.eval_derivative(0, t).unwrap().re,
                (-t).exp() * factor,
                max_relative = 1e-9
            );
        }
    }

    #[test]
    fn steklov_second_derivative_is_second_difference() {
        let p = Profile::trunc_power(1, 1.0).unwrap(); // (1-t)_+, only C^0
        let h = 0.125;
        let s = p.steklov_smooth(h).unwrap();
        let t = 0.9;
        let f = |x: f64| p.eval_derivative(0, x).unwrap().re;
        let expect = (f(t + 2.0 * h) - 2.0 * f(t + h) + f(t)) / (h * h);
        assert_relative_eq!(s.eval_derivative(2, t).unwrap().re, expect, max_relative = 1e-12);
    }

    #[test]
    fn window_vanishes_left_and_passes_right() {
        let p = Profile::example2(0.5, 1.0).unwrap();
        let w = p.windowed_tail(1.0, 2.0).unwrap();
        assert_eq!(w.eval_derivative(0, 0.5).unwrap().norm(), 0.0);
        let inside = w.eval_derivative(0, 3.0).unwrap();
        let raw = p.eval_derivative(0, 3.0).unwrap();
        assert_relative_eq!(inside.re, raw.re, max_relative = 1e-14);
        assert_relative_eq!(inside.im, raw.im, max_relative = 1e-14);
    }

    #[test]
    fn window_derivatives_match_finite_differences_in_transition() {
        let p = Profile::exp_decay(0.5).unwrap();
        let w = p.windowed_tail(1.0, 2.0).unwrap();
        let h = 1e-5;
        for &t in &[1.2, 1.5, 1.8] {
            for nu in 1..=3u32 {
                let fd = (w.eval_derivative(nu - 1, t + h).unwrap().re
                    - w.eval_derivative(nu - 1, t - h).unwrap().re)
                    / (2.0 * h);
                assert_relative_eq!(
                    w.eval_derivative(nu, t).unwrap().re,
                    fd,
                    max_relative = 1e-4,
                    epsilon = 1e-8
                );
            }
        }
    }
}
