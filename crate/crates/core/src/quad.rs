//! Adaptive Gauss–Kronrod quadrature with improper-integral tail handling.
//!
//! Improper integrals over (a, ∞) are computed on [a, T] with T doubled until
//! the running chunk contribution drops below tolerance; when the doubling
//! budget runs out the integrand's log-log tail slope decides between
//! convergence, divergence, and an inconclusive verdict.

use crate::fitting::loglog_fit;
use serde::Serialize;

/// Tolerances and budgets for the quadrature engine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    /// Absolute tolerance for finite integrals and tail cutoff.
    pub abs_tol: f64,
    /// Relative tolerance (against the running total).
    pub rel_tol: f64,
    /// Maximum bisection depth per panel.
    pub max_depth: u32,
    /// First upper limit for improper integrals.
    pub tail_start: f64,
    /// Number of times the upper limit may double.
    pub max_doublings: u32,
    /// Margin around the critical slope −1 in the tail classification.
    pub slope_margin: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abs_tol: 1e-8,
            rel_tol: 1e-8,
            max_depth: 48,
            tail_start: 1.0,
            max_doublings: 40,
            slope_margin: 0.15,
        }
    }
}

impl QuadratureSpec {
    pub fn with_tol(tol: f64) -> Self {
        QuadratureSpec {
            abs_tol: tol,
            rel_tol: tol,
            ..Default::default()
        }
    }
}

/// How the infinite tail of an improper integral was classified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum TailVerdict {
    /// Chunk contributions fell below tolerance, or the tail slope is safely < −1.
    Converged,
    /// Fitted log-log slope of the integrand is ≥ −1 + margin over the last decades.
    Divergent { slope: f64 },
    /// Neither criterion fired within budget.
    Inconclusive { slope: Option<f64> },
}

impl TailVerdict {
    pub fn is_convergent(&self) -> bool {
        matches!(self, TailVerdict::Converged)
    }
}

/// Result of an improper integration.
#[derive(Debug, Clone, Serialize)]
pub struct ImproperResult {
    /// Value of the truncated integral (∞ when divergent).
    pub value: f64,
    pub abs_error: f64,
    /// Where integration actually stopped.
    pub upper_limit: f64,
    pub tail: TailVerdict,
    /// Truncated values at successive doubling cutoffs (cutoff, integral so far).
    pub truncated: Vec<(f64, f64)>,
}

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule
// (QUADPACK dqk15 constants).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// One G7–K15 panel: returns (kronrod value, error estimate).
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut res_g = WG[3] * fc;
    let mut res_k = WGK[7] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let f1 = f(c - x);
        let f2 = f(c + x);
        res_k += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    (res_k * h, ((res_k - res_g) * h).abs())
}

/// Panel-evaluation budget guarding against pathological refinement (a GK15
/// panel costs 15 integrand evaluations).
const PANEL_BUDGET: u64 = 400_000;

fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    rel_tol: f64,
    depth: u32,
    max_depth: u32,
    budget: &std::cell::Cell<u64>,
) -> (f64, f64) {
    let (v, e) = gk15(f, a, b);
    budget.set(budget.get().saturating_sub(1));
    // the panel-local relative stop keeps noise-floored error estimates (from
    // integrands that are themselves quadratures) from forcing full-depth splits
    if e <= tol
        || e <= rel_tol * v.abs()
        || depth >= max_depth
        || budget.get() == 0
        || (b - a) < f64::EPSILON * a.abs().max(1.0)
    {
        return (v, e);
    }
    let m = 0.5 * (a + b);
    let (vl, el) = adapt(f, a, m, 0.5 * tol, rel_tol, depth + 1, max_depth, budget);
    let (vr, er) = adapt(f, m, b, 0.5 * tol, rel_tol, depth + 1, max_depth, budget);
    (vl + vr, el + er)
}

/// Adaptive integral of `f` over the finite interval [a, b].
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, spec: &QuadratureSpec) -> (f64, f64) {
    integrate_with_breakpoints(f, a, b, &[], spec)
}

/// Adaptive integral with an initial partition at the supplied breakpoints.
pub fn integrate_with_breakpoints<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    spec: &QuadratureSpec,
) -> (f64, f64) {
    if !(b > a) {
        return (0.0, 0.0);
    }
    let mut cuts = vec![a];
    for &bp in breakpoints {
        if bp > a && bp < b {
            cuts.push(bp);
        }
    }
    cuts.push(b);
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup();
    let panels = cuts.len() - 1;
    let tol_per = spec.abs_tol / panels as f64;
    let budget = std::cell::Cell::new(PANEL_BUDGET);
    let mut value = 0.0;
    let mut err = 0.0;
    for w in cuts.windows(2) {
        let (v, e) = adapt(f, w[0], w[1], tol_per, spec.rel_tol, 0, spec.max_depth, &budget);
        value += v;
        err += e;
    }
    (value, err)
}

/// Sample |f| geometrically over [t_lo, t_hi] and fit the log-log slope.
fn tail_slope<F: Fn(f64) -> f64>(f: &F, t_lo: f64, t_hi: f64) -> Option<f64> {
    let n = 48;
    let ratio = (t_hi / t_lo).powf(1.0 / (n - 1) as f64);
    let mut ts = Vec::with_capacity(n);
    let mut vs = Vec::with_capacity(n);
    let mut t = t_lo;
    for _ in 0..n {
        ts.push(t);
        vs.push(f(t).abs());
        t *= ratio;
    }
    loglog_fit(&ts, &vs, 1e-300).map(|fit| fit.slope)
}

/// Adaptive integral of `f` over (a, ∞) with tail classification.
pub fn integrate_improper<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    breakpoints: &[f64],
    spec: &QuadratureSpec,
) -> ImproperResult {
    let mut value = 0.0;
    let mut err = 0.0;
    let mut truncated = Vec::new();

    // head panel (may contain an integrable endpoint singularity at a)
    let first = spec.tail_start.max(a * 2.0).max(a + 1e-12);
    let (v, e) = integrate_with_breakpoints(f, a, first, breakpoints, spec);
    value += v;
    err += e;
    truncated.push((first, value));

    let mut lo = first;
    let mut chunks: Vec<f64> = Vec::new();
    let mut small_streak = 0u32;
    for _ in 0..spec.max_doublings {
        let hi = lo * 2.0;
        let (v, e) = integrate_with_breakpoints(f, lo, hi, breakpoints, spec);
        value += v;
        err += e;
        chunks.push(v.abs());
        truncated.push((hi, value));
        let tol = spec.abs_tol.max(spec.rel_tol * value.abs());
        if v.abs() < 0.25 * tol {
            small_streak += 1;
            if small_streak >= 2 {
                // geometric residual bound from the measured chunk decay
                let tail_bound = if chunks.len() >= 2 {
                    let r = (chunks[chunks.len() - 1] / chunks[chunks.len() - 2].max(1e-300)).min(0.9);
                    chunks[chunks.len() - 1] * r / (1.0 - r)
                } else {
                    v.abs()
                };
                return ImproperResult {
                    value,
                    abs_error: err + tail_bound,
                    upper_limit: hi,
                    tail: TailVerdict::Converged,
                    truncated,
                };
            }
        } else {
            small_streak = 0;
        }
        lo = hi;
        // Geometric tail extrapolation: power-law chunks decay with a stable
        // ratio r = 2^{1-q}; once the model locks on, sum the remainder in
        // closed form instead of doubling toward machine-scale cutoffs.
        let k = chunks.len();
        if k >= 4 && chunks[k - 1] > 0.0 {
            let r1 = chunks[k - 1] / chunks[k - 2].max(1e-300);
            let r2 = chunks[k - 2] / chunks[k - 3].max(1e-300);
            if r1 > 0.0 && r1 < 0.95 && r2 > 0.0 && (r1 - r2).abs() <= 0.2 * r1 {
                let tail_est = chunks[k - 1] * r1 / (1.0 - r1);
                let model_err = ((r1 - r2).abs() / r1).max(1e-3);
                if tail_est * model_err <= tol {
                    value += tail_est * if v >= 0.0 { 1.0 } else { -1.0 };
                    return ImproperResult {
                        value,
                        abs_error: err + tail_est * model_err * 4.0,
                        upper_limit: hi,
                        tail: TailVerdict::Converged,
                        truncated,
                    };
                }
            }
        }
        // early exit for clearly growing chunk sequences
        if k >= 4 && chunks[k - 1] >= chunks[k - 2] && chunks[k - 2] >= chunks[k - 3] && chunks[k - 1] > tol {
            break;
        }
    }

    // budget exhausted (or growth detected): classify by the integrand's slope
    // over the last two decades before the cutoff
    let upper = lo;
    let slope = tail_slope(f, (upper / 100.0).max(a), upper);
    match slope {
        None => {
            // tail identically zero below floor: converged (compact support)
            ImproperResult {
                value,
                abs_error: err,
                upper_limit: upper,
                tail: TailVerdict::Converged,
                truncated,
            }
        }
        Some(s) if s >= -1.0 + spec.slope_margin => ImproperResult {
            value: f64::INFINITY,
            abs_error: f64::INFINITY,
            upper_limit: upper,
            tail: TailVerdict::Divergent { slope: s },
            truncated,
        },
        Some(s) if s <= -1.0 - spec.slope_margin => {
            // power-law extrapolation of the remaining tail
            let phi = f(upper).abs();
            let tail_est = phi * upper / (-1.0 - s);
            ImproperResult {
                value,
                abs_error: err + tail_est,
                upper_limit: upper,
                tail: TailVerdict::Converged,
                truncated,
            }
        }
        Some(s) => ImproperResult {
            value,
            abs_error: f64::NAN,
            upper_limit: upper,
            tail: TailVerdict::Inconclusive { slope: Some(s) },
            truncated,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gk15_exact_for_low_degree() {
        let (v, _) = gk15(&|x: f64| x * x * x + 2.0 * x, 0.0, 2.0);
        assert_relative_eq!(v, 8.0, max_relative = 1e-14);
    }

    #[test]
    fn finite_integral_of_exp() {
        let spec = QuadratureSpec::default();
        let (v, e) = integrate(&|x: f64| (-x).exp(), 0.0, 30.0, &spec);
        assert_relative_eq!(v, 1.0, max_relative = 1e-10);
        assert!(e < 1e-7);
    }

    #[test]
    fn endpoint_singularity() {
        // ∫_0^1 t^{-1/2} dt = 2
        let spec = QuadratureSpec::default();
        let (v, _) = integrate(&|x: f64| x.powf(-0.5), 0.0, 1.0, &spec);
        assert_relative_eq!(v, 2.0, max_relative = 1e-7);
    }

    #[test]
    fn improper_gamma_two() {
        // ∫_0^∞ t e^{-t} dt = 1
        let spec = QuadratureSpec::default();
        let r = integrate_improper(&|t: f64| t * (-t).exp(), 0.0, &[], &spec);
        assert!(r.tail.is_convergent());
        assert_relative_eq!(r.value, 1.0, max_relative = 1e-9);
    }

    #[test]
    fn improper_power_tail_converges() {
        // ∫_1^∞ t^{-3} dt = 1/2 (after the head [0,1] contributes 0)
        let spec = QuadratureSpec::default();
        let r = integrate_improper(&|t: f64| if t < 1.0 { 0.0 } else { t.powi(-3) }, 0.0, &[1.0], &spec);
        assert!(r.tail.is_convergent());
        assert_relative_eq!(r.value, 0.5, max_relative = 1e-6);
    }

    #[test]
    fn improper_divergent_is_flagged() {
        // integrand ~ 1/t: slope −1, divergent (margin puts −1 ≥ −1 + 0.15 false...
        // use t^{-0.8} which is safely above the margin)
        let spec = QuadratureSpec::default();
        let r = integrate_improper(&|t: f64| (1.0 + t).powf(-0.8), 0.0, &[], &spec);
        assert!(matches!(r.tail, TailVerdict::Divergent { .. }));
        assert!(r.value.is_infinite());
    }

    #[test]
    fn compact_support_converges_exactly() {
        let spec = QuadratureSpec::default();
        let r = integrate_improper(&|t: f64| if t < 1.0 { 1.0 - t } else { 0.0 }, 0.0, &[1.0], &spec);
        assert!(r.tail.is_convergent());
        assert_relative_eq!(r.value, 0.5, max_relative = 1e-10);
    }

    #[test]
    fn breakpoints_partition_kinks() {
        let spec = QuadratureSpec::default();
        let f = |t: f64| if t < 1.0 { 1.0 } else { 0.0 };
        let (v, _) = integrate_with_breakpoints(&f, 0.0, 2.0, &[1.0], &spec);
        assert_relative_eq!(v, 1.0, max_relative = 1e-9);
    }
}
