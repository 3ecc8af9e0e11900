//! Internal evaluation trait behind [`super::Profile`].

use num_complex::Complex64;
use std::fmt;

/// A jump of the m-th derivative: (position, signed jump f^{(m)}(t+) − f^{(m)}(t−)).
pub type DerivativeJump = (f64, f64);

/// Evaluation backend for a 1-D radial profile on (0, ∞).
///
/// The wrapper guarantees `t > 0` inside the kernel's domain and
/// `nu <= max_order()` before calling `derivative`. Kernels answer derivative
/// queries at breakpoints with the right-sided limit.
pub(crate) trait Kernel: fmt::Debug + Send + Sync {
    /// Highest derivative order answered (pointwise a.e. for piecewise families).
    fn max_order(&self) -> u32;

    fn is_complex(&self) -> bool {
        false
    }

    /// ν-th derivative at t (ν = 0 is the value itself).
    fn derivative(&self, nu: u32, t: f64) -> Complex64;

    /// Interval on which evaluation is defined; (0, ∞) unless tabulated.
    fn domain(&self) -> (f64, f64) {
        (0.0, f64::INFINITY)
    }

    /// Points where some derivative is discontinuous.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }

    /// Signed jumps of f^{(m)} at the breakpoints (empty when f^{(m)} is continuous).
    fn derivative_jumps(&self, _m: u32) -> Vec<DerivativeJump> {
        Vec::new()
    }

    /// Largest m for which df^{(m)} is (absolutely continuous part) + (known atoms).
    /// Beyond this order the Stieltjes measure picks up singular parts and the
    /// V_m machinery must refuse.
    fn variation_order_limit(&self) -> u32 {
        self.max_order().saturating_sub(1)
    }

    /// Human-readable descriptor used in reports.
    fn description(&self) -> String;
}

/// Shared helper: real scalar as complex.
pub(crate) fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}
