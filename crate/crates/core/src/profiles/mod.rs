//! 1-D radial profiles f₀ on (0, ∞) with derivative evaluation.
//!
//! A [`Profile`] is an immutable handle to an evaluation kernel. Closed-form
//! families answer derivative queries exactly; tabulated data falls back to
//! local polynomial differentiation (4th order). Complex-valued profiles are
//! handled through their real and imaginary parts, which are profiles again.

mod analytic;
mod compose;
pub(crate) mod kernel;
mod tabulated;
mod williamson;
mod wrappers;

pub use tabulated::TABULATED_FD_ORDER;
pub use williamson::DiscreteMeasure;

use crate::error::{Error, Result};
use crate::special::binomial;
use kernel::Kernel;
use num_complex::Complex64;
use std::path::Path;
use std::sync::Arc;

/// Immutable scalar profile on ℝ₊ with derivative access.
#[derive(Clone, Debug)]
pub struct Profile {
    kernel: Arc<dyn Kernel>,
}

impl Profile {
    fn from_kernel(kernel: impl Kernel + 'static) -> Self {
        Profile {
            kernel: Arc::new(kernel),
        }
    }

    /// e^{-λt}, λ > 0 (completely monotone).
    pub fn exp_decay(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::Parameter(format!("lambda must be positive, got {lambda}")));
        }
        Ok(Self::from_kernel(analytic::ExpDecay { lambda }))
    }

    /// (1 − tu)^m_+, m ≥ 1, u > 0.
    pub fn trunc_power(m: u32, u: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Parameter("truncated power needs m >= 1".into()));
        }
        if !(u > 0.0) || !u.is_finite() {
            return Err(Error::Parameter(format!("u must be positive, got {u}")));
        }
        Ok(Self::from_kernel(analytic::TruncPower { m, u }))
    }

    /// t^γ / (1 + t^α)^β with γ ≥ 0, α > 0, β > 0.
    pub fn example1(gamma: f64, alpha: f64, beta: f64) -> Result<Self> {
        if !(gamma >= 0.0 && alpha > 0.0 && beta > 0.0) {
            return Err(Error::Parameter(format!(
                "example1 needs gamma >= 0, alpha > 0, beta > 0 (got {gamma}, {alpha}, {beta})"
            )));
        }
        Ok(Self::from_kernel(analytic::RationalDecay::new(gamma, alpha, beta)))
    }

    /// e^{it^α} / (1 + t)^β with α ≥ 0, β > 0 (complex-valued).
    pub fn example2(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha >= 0.0 && beta > 0.0) {
            return Err(Error::Parameter(format!(
                "example2 needs alpha >= 0, beta > 0 (got {alpha}, {beta})"
            )));
        }
        Ok(Self::from_kernel(analytic::ChirpDecay::new(alpha, beta)))
    }

    /// Σ_k w_k (1 − t·u_k)^m_+ — guaranteed m-monotone by construction.
    pub fn williamson_synthesize(measure: &DiscreteMeasure, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::Parameter("williamson mixture needs m >= 1".into()));
        }
        Ok(Self::from_kernel(williamson::WilliamsonMix {
            measure: measure.clone(),
            m,
        }))
    }

    /// Profile from explicit samples (strictly increasing t > 0).
    pub fn tabulated(ts: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        Ok(Self::from_kernel(tabulated::Tabulated::new(ts, values)?))
    }

    /// Load a tabulated profile from CSV with header `t,re[,im]`.
    pub fn from_csv(path: &Path) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_path(path)
            .map_err(|e| Error::Io(e.to_string()))?;
        let headers = rdr.headers().map_err(|e| Error::Parse(e.to_string()))?.clone();
        let col = |name: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(name));
        let t_col = col("t").ok_or_else(|| Error::Parse("missing column 't'".into()))?;
        let re_col = col("re").ok_or_else(|| Error::Parse("missing column 're'".into()))?;
        let im_col = col("im");
        let mut ts = Vec::new();
        let mut vals = Vec::new();
        for record in rdr.records() {
            let record = record.map_err(|e| Error::Parse(e.to_string()))?;
            let parse = |idx: usize| -> Result<f64> {
                record
                    .get(idx)
                    .ok_or_else(|| Error::Parse("short row".into()))?
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("bad number: {e}")))
            };
            ts.push(parse(t_col)?);
            let re = parse(re_col)?;
            let im = match im_col {
                Some(idx) => parse(idx)?,
                None => 0.0,
            };
            vals.push(Complex64::new(re, im));
        }
        Self::tabulated(ts, vals)
    }

    /// t ↦ f(t^α) for α ∈ (0, 1); the class of m-monotone functions is closed
    /// under this reparametrization.
    pub fn compose_power(&self, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Parameter(format!(
                "power composition needs alpha in (0,1), got {alpha}"
            )));
        }
        let max_order = self.max_derivative_order().min(12);
        Ok(Self::from_kernel(compose::PowerCompose::new(
            self.clone(),
            alpha,
            max_order,
        )))
    }

    /// Real part as a real profile.
    pub fn re(&self) -> Self {
        if !self.is_complex() {
            return self.clone();
        }
        Self::from_kernel(wrappers::RealPart { inner: self.clone() })
    }

    /// Imaginary part as a real profile.
    pub fn im(&self) -> Self {
        Self::from_kernel(wrappers::ImagPart { inner: self.clone() })
    }

    /// Pointwise difference self − other.
    pub fn difference(&self, other: &Profile) -> Self {
        Self::from_kernel(wrappers::Difference {
            a: self.clone(),
            b: other.clone(),
        })
    }

    /// c·f(t) for a real constant c ≠ 0.
    pub fn amplitude_scaled(&self, c: f64) -> Result<Self> {
        if c == 0.0 || !c.is_finite() {
            return Err(Error::Parameter(format!(
                "amplitude factor must be finite and nonzero, got {c}"
            )));
        }
        Ok(Self::from_kernel(wrappers::AmplitudeScale {
            inner: self.clone(),
            c,
        }))
    }

    /// t ↦ f(λt), λ > 0.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::Parameter(format!("scale must be positive, got {lambda}")));
        }
        Ok(Self::from_kernel(wrappers::Scale {
            inner: self.clone(),
            lambda,
        }))
    }

    /// w(t)·f(t) with a C⁵ smoothstep window rising on [a, b]: zero near the
    /// origin, the unmodified profile from b on.
    pub fn windowed_tail(&self, a: f64, b: f64) -> Result<Self> {
        if !(a >= 0.0 && b > a) {
            return Err(Error::Parameter(format!("window needs 0 <= a < b, got [{a}, {b}]")));
        }
        Ok(Self::from_kernel(wrappers::WindowedTail {
            inner: self.clone(),
            a,
            b,
        }))
    }

    /// Double Steklov mean f_{2,h}; smooths while controlling the V₁ norm.
    pub fn steklov_smooth(&self, h: f64) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::Parameter(format!("steklov step must be positive, got {h}")));
        }
        Ok(Self::from_kernel(wrappers::Steklov {
            inner: self.clone(),
            h,
        }))
    }

    /// f^{(ν)}(t); exact for the closed-form families.
    pub fn eval_derivative(&self, nu: u32, t: f64) -> Result<Complex64> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!("profile domain is (0, inf), got t = {t}")));
        }
        let (lo, hi) = self.domain();
        if t < lo || t > hi {
            return Err(Error::Domain(format!(
                "t = {t} outside the tabulated domain [{lo}, {hi}]"
            )));
        }
        if nu > self.max_derivative_order() {
            return Err(Error::Capability(format!(
                "derivative order {nu} exceeds supported order {}",
                self.max_derivative_order()
            )));
        }
        Ok(self.kernel.derivative(nu, t))
    }

    /// f(t).
    pub fn value(&self, t: f64) -> Result<Complex64> {
        self.eval_derivative(0, t)
    }

    /// Central-difference estimate of f^{(ν)}(t): the independent oracle for
    /// the analytic derivatives. O(h²) for smooth profiles.
    ///
    /// Errors when the stencil leaves (0, ∞) (or the tabulated domain) or
    /// straddles a breakpoint of a piecewise family.
    pub fn finite_difference_derivative(&self, nu: u32, t: f64, h: f64) -> Result<Complex64> {
        if !(h > 0.0) {
            return Err(Error::Parameter("step h must be positive".into()));
        }
        let half_span = nu as f64 * h / 2.0;
        let (lo_node, hi_node) = (t - half_span, t + half_span);
        let (lo, hi) = self.domain();
        if lo_node <= lo.max(0.0) || hi_node > hi {
            return Err(Error::Domain(format!(
                "stencil [{lo_node}, {hi_node}] leaves the domain"
            )));
        }
        for b in self.breakpoints() {
            if lo_node < b && b < hi_node {
                return Err(Error::Domain(format!(
                    "stencil [{lo_node}, {hi_node}] crosses the breakpoint at {b}"
                )));
            }
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..=nu {
            let sign = if (nu - k) % 2 == 0 { 1.0 } else { -1.0 };
            let node = t + (k as f64 - nu as f64 / 2.0) * h;
            acc += self.kernel.derivative(0, node) * sign * binomial(nu, k);
        }
        Ok(acc / h.powi(nu as i32))
    }

    pub fn max_derivative_order(&self) -> u32 {
        self.kernel.max_order()
    }

    pub fn is_complex(&self) -> bool {
        self.kernel.is_complex()
    }

    /// Interval on which evaluation is defined; (0, ∞) except for tabulated data.
    pub fn domain(&self) -> (f64, f64) {
        self.kernel.domain()
    }

    /// Points where some derivative jumps (truncated-power breakpoints 1/u_k).
    pub fn breakpoints(&self) -> Vec<f64> {
        self.kernel.breakpoints()
    }

    pub fn description(&self) -> String {
        self.kernel.description()
    }

    pub(crate) fn derivative_unchecked(&self, nu: u32, t: f64) -> Complex64 {
        self.kernel.derivative(nu, t)
    }

    /// Wrap a kernel defined in a sibling module (decomposition output).
    pub(crate) fn from_kernel_crate(kernel: impl Kernel + 'static) -> Self {
        Self::from_kernel(kernel)
    }

    pub(crate) fn derivative_jumps(&self, m: u32) -> Vec<(f64, f64)> {
        self.kernel.derivative_jumps(m)
    }

    pub(crate) fn variation_order_limit(&self) -> u32 {
        self.kernel.variation_order_limit()
    }
}
