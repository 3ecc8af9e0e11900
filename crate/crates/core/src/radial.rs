//! Mixed derivatives of f₀(|x|_{p,d}), the derivative-ratio bound, and the
//! weighted-integral reduction to one dimension.
//!
//! The mixed-derivative coefficient table obeys
//!   γ(d+1, ν) = (ν − dp)·γ(d, ν) + γ(d, ν−1),   γ(1, 1) = 1,
//! which follows from ∂r/∂x_j = x_j^{p−1} r^{1−p}; it is certified against a
//! tensor finite-difference oracle rather than trusted.
//!
//! The reduction constants shipped here are
//!   C(d, p, α) = 2^d Γ^d(α/p) / (p^{d−1} Γ(dα/p))      (finite p)
//!   C(d, ∞, α) = 2^d d α^{1−d}
//! with the weight t^{dα−1} in both cases; they are validated against the
//! brute-force orthant quadrature below.

use crate::error::{Error, Result};
use crate::profiles::Profile;
use crate::quad::{integrate_improper, integrate_with_breakpoints, QuadratureSpec};
use crate::special::gamma;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// The p-norm |x|_{p,d}; p = ∞ is the max norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PNorm {
    pub p: f64,
    pub d: u32,
}

impl PNorm {
    pub fn new(p: f64, d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::Parameter("dimension must be >= 1".into()));
        }
        if !(p > 0.0) {
            return Err(Error::Parameter(format!("p must be in (0, inf], got {p}")));
        }
        Ok(PNorm { p, d })
    }

    pub fn is_sup(&self) -> bool {
        self.p.is_infinite()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.d as usize);
        if self.is_sup() {
            x.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()))
        } else {
            x.iter()
                .map(|&v| v.abs().powf(self.p))
                .sum::<f64>()
                .powf(1.0 / self.p)
        }
    }
}

/// Coefficients γ(d, p, ν) of the mixed-derivative expansion.
#[derive(Debug, Clone, Serialize)]
pub struct CoefficientTable {
    pub d: u32,
    pub p: f64,
    /// gamma[ν−1] = γ(d, p, ν) for ν = 1…d.
    pub gamma: Vec<f64>,
}

impl CoefficientTable {
    pub fn coefficient(&self, nu: u32) -> f64 {
        if nu == 0 || nu > self.d {
            0.0
        } else {
            self.gamma[(nu - 1) as usize]
        }
    }
}

/// Build the coefficient table by the recurrence from γ(1,1) = 1.
pub fn gamma_coefficients(d: u32, p: f64) -> Result<CoefficientTable> {
    if d == 0 || d > 8 {
        return Err(Error::Parameter(format!("dimension must be in 1..=8, got {d}")));
    }
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::Parameter(format!("p must be finite positive, got {p}")));
    }
    let mut cur = vec![1.0f64];
    for k in 1..d {
        let mut next = vec![0.0f64; (k + 1) as usize];
        for nu in 1..=(k + 1) as usize {
            let from_same = if nu <= cur.len() {
                (nu as f64 - k as f64 * p) * cur[nu - 1]
            } else {
                0.0
            };
            let from_lower = if nu >= 2 { cur[nu - 2] } else { 0.0 };
            next[nu - 1] = from_same + from_lower;
        }
        cur = next;
    }
    Ok(CoefficientTable { d, p, gamma: cur })
}

/// Guard band around the coordinate hyperplanes where fractional powers of
/// x_j degenerate.
const HYPERPLANE_BAND: f64 = 1e-8;

fn check_point(pn: &PNorm, x: &[f64], need_band: bool) -> Result<f64> {
    if x.len() != pn.d as usize {
        return Err(Error::Parameter(format!(
            "point has {} coordinates, norm expects {}",
            x.len(),
            pn.d
        )));
    }
    if x.iter().any(|&v| v <= 0.0) {
        return Err(Error::Domain(
            "mixed derivatives live on the open positive orthant".into(),
        ));
    }
    let r = pn.eval(x);
    if need_band {
        let band = HYPERPLANE_BAND * r;
        if x.iter().any(|&v| v < band) {
            return Err(Error::Domain(format!(
                "coordinate within the hyperplane guard band {band:.3e} for fractional p"
            )));
        }
    }
    Ok(r)
}

/// ∂^ν f₀(|x|_{p,d}) / ∂x₁…∂x_ν for 1 ≤ ν ≤ d (ν = d is the full mixed
/// derivative of the expansion). Finite p only.
pub fn mixed_partial(pr: &Profile, pn: &PNorm, x: &[f64], nu: u32) -> Result<Complex64> {
    if pn.is_sup() {
        return Err(Error::Capability(
            "p = inf mixed derivatives are not defined by the expansion; \
             use the finite-difference stencil or the membership routing"
                .into(),
        ));
    }
    if nu == 0 || nu > pn.d {
        return Err(Error::Parameter(format!("need 1 <= nu <= d, got {nu}")));
    }
    let fractional = pn.p < 1.0 || pn.p.fract() != 0.0;
    let r = check_point(pn, x, fractional)?;
    if nu > pr.max_derivative_order() {
        return Err(Error::Capability(format!(
            "mixed partial of order {nu} needs unsupported profile derivatives"
        )));
    }
    let table = gamma_coefficients(nu, pn.p)?;
    let prefactor: f64 = x[..nu as usize]
        .iter()
        .map(|&v| v.powf(pn.p - 1.0))
        .product();
    let mut acc = Complex64::new(0.0, 0.0);
    for s in 1..=nu {
        let c = table.coefficient(s);
        if c == 0.0 {
            continue;
        }
        let power = r.powf(s as f64 - nu as f64 * pn.p);
        acc += pr.eval_derivative(s, r)? * c * power;
    }
    Ok(acc * prefactor)
}

/// The full mixed derivative ∂^d f₀(|x|_{p,d}) / ∂x₁…∂x_d.
pub fn mixed_derivative(pr: &Profile, pn: &PNorm, x: &[f64]) -> Result<Complex64> {
    mixed_partial(pr, pn, x, pn.d)
}

/// Tensor central-difference oracle for the mixed derivative; O(h²).
/// Supports p = ∞ (where the classical mixed partial vanishes off the
/// diagonal).
pub fn mixed_derivative_fd(pr: &Profile, pn: &PNorm, x: &[f64], h: f64) -> Result<Complex64> {
    if x.len() != pn.d as usize {
        return Err(Error::Parameter("dimension mismatch".into()));
    }
    if !(h > 0.0) {
        return Err(Error::Parameter("step must be positive".into()));
    }
    if x.iter().any(|&v| v <= h / 2.0) {
        return Err(Error::Domain(
            "stencil leaves the open positive orthant".into(),
        ));
    }
    let d = pn.d as usize;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut corner = vec![0.0f64; d];
    for mask in 0u32..(1 << d) {
        let mut sign = 1.0;
        for j in 0..d {
            if mask & (1 << j) != 0 {
                corner[j] = x[j] + h / 2.0;
            } else {
                corner[j] = x[j] - h / 2.0;
                sign = -sign;
            }
        }
        let r = pn.eval(&corner);
        acc += pr.eval_derivative(0, r)? * sign;
    }
    Ok(acc / h.powi(d as i32))
}

/// Report of the eq.-(5)-style ratio sweep.
#[derive(Debug, Clone, Serialize)]
pub struct BoundCheckReport {
    pub nu: u32,
    pub p: f64,
    pub d: u32,
    /// max over samples of |∂^ν f₀| / max_s r^{s−ν}|f₀^{(s)}(r)|.
    pub gamma0: f64,
    pub samples_used: u32,
    pub samples_skipped: u32,
}

/// Estimate the constant γ₀(ν, p) bounding the mixed partial by the scaled
/// radial derivatives, sampling random points across scales (p ≥ 1).
pub fn derivative_bound_check(
    pr: &Profile,
    pn: &PNorm,
    nu: u32,
    samples: u32,
    seed: u64,
) -> Result<BoundCheckReport> {
    if pn.p < 1.0 {
        return Err(Error::Parameter("the ratio bound needs p >= 1".into()));
    }
    if pn.is_sup() {
        return Err(Error::Capability("p = inf is routed through membership".into()));
    }
    if nu == 0 || nu > pn.d {
        return Err(Error::Parameter("need 1 <= nu <= d".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gamma0 = 0.0f64;
    let mut used = 0u32;
    let mut skipped = 0u32;
    let d = pn.d as usize;
    let mut x = vec![0.0f64; d];
    for _ in 0..samples {
        // log-uniform radius across six decades, uniform direction profile
        let scale = 10f64.powf(rng.random_range(-3.0..3.0));
        for xi in x.iter_mut() {
            *xi = scale * rng.random_range(0.05..1.0f64);
        }
        let r = pn.eval(&x);
        let numerator = match mixed_partial(pr, pn, &x, nu) {
            Ok(v) => v.norm(),
            Err(_) => {
                skipped += 1;
                continue;
            }
        };
        let mut denom = 0.0f64;
        for s in 1..=nu {
            let scale_term = r.powi(s as i32 - nu as i32) * pr.eval_derivative(s, r)?.norm();
            denom = denom.max(scale_term);
        }
        if denom == 0.0 {
            skipped += 1;
            continue;
        }
        gamma0 = gamma0.max(numerator / denom);
        used += 1;
    }
    Ok(BoundCheckReport {
        nu,
        p: pn.p,
        d: pn.d,
        gamma0,
        samples_used: used,
        samples_skipped: skipped,
    })
}

/// The validated reduction constant C(d, p, α).
pub fn lemma4_constant(d: u32, p: f64, alpha: f64) -> f64 {
    let df = d as f64;
    if p.is_infinite() {
        2f64.powi(d as i32) * df * alpha.powf(1.0 - df)
    } else {
        2f64.powi(d as i32) * gamma(alpha / p).powi(d as i32)
            / (p.powi(d as i32 - 1) * gamma(df * alpha / p))
    }
}

/// C(d, p, α) · ∫₀^∞ t^{dα−1} g(t) dt, the 1-D reduction of the weighted
/// orthant integral. Errors when the 1-D integral is not absolutely
/// convergent.
pub fn weighted_integral_reduction(
    g: &Profile,
    pn: &PNorm,
    alpha: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::Parameter("alpha must be positive".into()));
    }
    if g.is_complex() {
        return Err(Error::Parameter(
            "reduction integrates real profiles; split complex ones".into(),
        ));
    }
    let exponent = pn.d as f64 * alpha - 1.0;
    let (dom_lo, dom_hi) = g.domain();
    let integrand = |t: f64| {
        if t <= dom_lo || t >= dom_hi {
            0.0
        } else {
            t.powf(exponent) * g.derivative_unchecked(0, t).re
        }
    };
    let r = integrate_improper(&integrand, dom_lo.max(0.0), &g.breakpoints(), quad);
    if !r.tail.is_convergent() {
        return Err(Error::Divergent(
            "the 1-D weighted integral does not converge".into(),
        ));
    }
    Ok(lemma4_constant(pn.d, pn.p, alpha) * r.value)
}

/// Result of the direct orthant quadrature.
#[derive(Debug, Clone, Serialize)]
pub struct BruteforceResult {
    pub value: f64,
    pub error_estimate: f64,
    pub inconclusive: bool,
    pub method: &'static str,
}

/// ∫_{ℝ^d} g(|x|_p) Π |x_j|^{α−1} dx computed directly: 2^d times the
/// positive-orthant integral by iterated adaptive quadrature (d ≤ 3), or
/// quasi-Monte-Carlo with an exponential importance map (d ∈ {4, 5}).
pub fn weighted_integral_bruteforce(
    g: &Profile,
    pn: &PNorm,
    alpha: f64,
    quad: &QuadratureSpec,
) -> Result<BruteforceResult> {
    if !(alpha > 0.0) {
        return Err(Error::Parameter("alpha must be positive".into()));
    }
    if g.is_complex() {
        return Err(Error::Parameter("brute force integrates real profiles".into()));
    }
    if pn.d > 5 {
        return Err(Error::Capability("brute force capped at d = 5".into()));
    }

    // truncation: coordinates are bounded by |x|_p, so the 1-D reduction's
    // own truncation point bounds the cube
    let exponent = pn.d as f64 * alpha - 1.0;
    let (dom_lo, dom_hi) = g.domain();
    let one_d = |t: f64| {
        if t <= dom_lo || t >= dom_hi {
            0.0
        } else {
            t.powf(exponent) * g.derivative_unchecked(0, t).re.abs()
        }
    };
    let probe = integrate_improper(&one_d, dom_lo.max(0.0), &g.breakpoints(), quad);
    if !probe.tail.is_convergent() {
        return Ok(BruteforceResult {
            value: f64::NAN,
            error_estimate: f64::NAN,
            inconclusive: true,
            method: "truncation-probe",
        });
    }
    let cube = probe.upper_limit;

    if pn.d <= 3 {
        let coarse = iterated_orthant(g, pn, alpha, cube, quad.abs_tol.max(1e-9) * 10.0)?;
        let fine = iterated_orthant(g, pn, alpha, cube, quad.abs_tol.max(1e-9))?;
        let scale = 2f64.powi(pn.d as i32);
        let err = (fine - coarse).abs() * scale;
        Ok(BruteforceResult {
            value: scale * fine,
            error_estimate: err,
            inconclusive: !err.is_finite() || err > 0.05 * (scale * fine).abs().max(1e-30),
            method: "iterated-adaptive",
        })
    } else {
        qmc_orthant(g, pn, alpha, cube)
    }
}

/// Iterated adaptive quadrature over (0, cube]^d with per-level tolerances.
fn iterated_orthant(g: &Profile, pn: &PNorm, alpha: f64, cube: f64, tol: f64) -> Result<f64> {
    let d = pn.d as usize;
    let spec_outer = QuadratureSpec::with_tol(tol);
    let weight = |v: f64| v.powf(alpha - 1.0);
    let (dom_lo, dom_hi) = g.domain();
    let g_at = move |r: f64| {
        if r <= dom_lo || r >= dom_hi {
            0.0
        } else {
            g.derivative_unchecked(0, r).re
        }
    };
    let value = match d {
        1 => {
            integrate_with_breakpoints(
                &|x: f64| weight(x) * g_at(pn.eval(&[x])),
                0.0,
                cube,
                &g.breakpoints(),
                &spec_outer,
            )
            .0
        }
        2 => {
            // pointwise inner error integrates against the outer weight, so a
            // fixed small floor is cheaper than tol/width and just as accurate
            let inner_spec = QuadratureSpec::with_tol((tol * 1e-2).max(1e-12));
            integrate_with_breakpoints(
                &|x1: f64| {
                    weight(x1)
                        * integrate_with_breakpoints(
                            &|x2: f64| weight(x2) * g_at(pn.eval(&[x1, x2])),
                            0.0,
                            cube,
                            &[x1],
                            &inner_spec,
                        )
                        .0
                },
                0.0,
                cube,
                &[],
                &spec_outer,
            )
            .0
        }
        3 => {
            let mid_spec = QuadratureSpec::with_tol((tol * 1e-2).max(1e-11));
            let inner_spec = QuadratureSpec::with_tol((tol * 1e-4).max(1e-12));
            integrate_with_breakpoints(
                &|x1: f64| {
                    weight(x1)
                        * integrate_with_breakpoints(
                            &|x2: f64| {
                                weight(x2)
                                    * integrate_with_breakpoints(
                                        &|x3: f64| weight(x3) * g_at(pn.eval(&[x1, x2, x3])),
                                        0.0,
                                        cube,
                                        &[x1, x2],
                                        &inner_spec,
                                    )
                                    .0
                            },
                            0.0,
                            cube,
                            &[x1],
                            &mid_spec,
                        )
                        .0
                },
                0.0,
                cube,
                &[],
                &spec_outer,
            )
            .0
        }
        _ => unreachable!(),
    };
    Ok(value)
}

/// Halton-sequence QMC with a per-axis exponential importance map.
fn qmc_orthant(g: &Profile, pn: &PNorm, alpha: f64, cube: f64) -> Result<BruteforceResult> {
    const PRIMES: [u32; 5] = [2, 3, 5, 7, 11];
    let d = pn.d as usize;
    let rate = 3.0 / cube; // importance density λe^{-λx} per axis
    let n: u64 = 1 << 17;
    let (dom_lo, dom_hi) = g.domain();
    let mut block_sums = vec![0.0f64; 16];
    let mut x = vec![0.0f64; d];
    for k in 0..n {
        for j in 0..d {
            let u = halton(k + 1, PRIMES[j]);
            x[j] = -(1.0 - u).ln() / rate;
        }
        let r = pn.eval(&x);
        let mut f = if r <= dom_lo || r >= dom_hi {
            0.0
        } else {
            g.derivative_unchecked(0, r).re
        };
        for &xj in &x {
            // integrand weight over importance density
            f *= xj.powf(alpha - 1.0) / (rate * (-rate * xj).exp());
        }
        block_sums[(k % 16) as usize] += f;
    }
    let means: Vec<f64> = block_sums.iter().map(|s| s * 16.0 / n as f64).collect();
    let mean = means.iter().sum::<f64>() / 16.0;
    let var = means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / 15.0;
    let stderr = (var / 16.0).sqrt();
    let scale = 2f64.powi(pn.d as i32);
    Ok(BruteforceResult {
        value: scale * mean,
        error_estimate: scale * stderr * 3.0,
        inconclusive: stderr > 0.02 * mean.abs().max(1e-30),
        method: "qmc-halton",
    })
}

fn halton(mut index: u64, base: u32) -> f64 {
    let b = base as f64;
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= b;
        r += f * (index % base as u64) as f64;
        index /= base as u64;
    }
    r
}

/// Relative deviation between the reduction and the brute force, the headline
/// number of the `reduce-integral` CLI report.
pub fn reduction_vs_bruteforce(
    g: &Profile,
    pn: &PNorm,
    alpha: f64,
    quad: &QuadratureSpec,
) -> Result<(f64, BruteforceResult, f64)> {
    let reduced = weighted_integral_reduction(g, pn, alpha, quad)?;
    let brute = weighted_integral_bruteforce(g, pn, alpha, quad)?;
    let rel = (reduced - brute.value).abs() / brute.value.abs().max(1e-300);
    Ok((reduced, brute, rel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn quad() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn gamma_table_base_and_p2() {
        let t = gamma_coefficients(1, 2.0).unwrap();
        assert_eq!(t.gamma, vec![1.0]);
        let t = gamma_coefficients(2, 2.0).unwrap();
        assert_eq!(t.gamma, vec![-1.0, 1.0]);
        let t = gamma_coefficients(3, 2.0).unwrap();
        assert_eq!(t.gamma, vec![3.0, -3.0, 1.0]);
    }

    #[test]
    fn gamma_table_p1_collapses() {
        // at p = 1 the norm is x₁+…+x_d on the orthant: only the top
        // coefficient survives and the mixed derivative is f₀^{(d)}(Σx)
        for d in 2..=4u32 {
            let t = gamma_coefficients(d, 1.0).unwrap();
            for nu in 1..d {
                assert_relative_eq!(t.coefficient(nu), 0.0);
            }
            assert_relative_eq!(t.coefficient(d), 1.0);
        }
    }

    #[test]
    fn mixed_derivative_closed_form_d2_p2() {
        // xy(r^{-2}f'' − r^{-3}f') at x = y = 1, f = e^{-t}
        let pr = Profile::exp_decay(1.0).unwrap();
        let pn = PNorm::new(2.0, 2).unwrap();
        let r = 2f64.sqrt();
        let expect = (-r).exp() * (1.0 / (r * r) + 1.0 / (r * r * r));
        let got = mixed_derivative(&pr, &pn, &[1.0, 1.0]).unwrap().re;
        assert_relative_eq!(got, expect, max_relative = 1e-12);
    }

    #[test]
    fn mixed_derivative_p1_is_plain_derivative() {
        let pr = Profile::exp_decay(1.0).unwrap();
        let pn = PNorm::new(1.0, 2).unwrap();
        let got = mixed_derivative(&pr, &pn, &[0.7, 1.1]).unwrap().re;
        assert_relative_eq!(got, pr.eval_derivative(2, 1.8).unwrap().re, max_relative = 1e-12);
    }

    #[test]
    fn mixed_derivative_matches_fd_oracle() {
        let pr = Profile::example1(0.0, 1.0, 2.0).unwrap();
        for &p in &[0.5f64, 1.0, 1.5, 2.0, 3.0] {
            let pn = PNorm::new(p, 2).unwrap();
            let x = [0.9, 1.3];
            let an = mixed_derivative(&pr, &pn, &x).unwrap().re;
            let fd = mixed_derivative_fd(&pr, &pn, &x, 1e-4).unwrap().re;
            assert_relative_eq!(an, fd, max_relative = 1e-4, epsilon = 1e-12);
        }
    }

    #[test]
    fn fd_oracle_at_sup_norm_vanishes_off_diagonal() {
        let pr = Profile::exp_decay(1.0).unwrap();
        let pn = PNorm::new(f64::INFINITY, 2).unwrap();
        let v = mixed_derivative_fd(&pr, &pn, &[1.0, 2.0], 1e-3).unwrap().re;
        assert!(v.abs() < 1e-12, "got {v}");
        assert!(mixed_derivative(&pr, &pn, &[1.0, 2.0]).is_err());
    }

    #[test]
    fn homogeneity_identity() {
        // mixed_derivative(f(λ·), x) = λ^d · mixed_derivative(f, λx)
        let pr = Profile::example1(0.0, 2.0, 1.0).unwrap();
        let lam = 2.7;
        let scaled = pr.scaled(lam).unwrap();
        let pn = PNorm::new(1.5, 2).unwrap();
        let x = [0.8, 1.7];
        let lx = [lam * 0.8, lam * 1.7];
        let lhs = mixed_derivative(&scaled, &pn, &x).unwrap().re;
        let rhs = lam.powi(2) * mixed_derivative(&pr, &pn, &lx).unwrap().re;
        assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
    }

    #[test]
    fn bound_check_d1_is_at_most_one() {
        let pr = Profile::exp_decay(1.0).unwrap();
        let pn = PNorm::new(1.7, 1).unwrap();
        let r = derivative_bound_check(&pr, &pn, 1, 200, 7).unwrap();
        assert!(r.gamma0 <= 1.0 + 1e-9, "gamma0 = {}", r.gamma0);
    }

    #[test]
    fn bound_check_p2_d2_is_at_most_two() {
        // term-wise: |γ(1)| + |γ(2)| = 2 for the d = 2, p = 2 table
        let pr = Profile::exp_decay(1.0).unwrap();
        let pn = PNorm::new(2.0, 2).unwrap();
        let r = derivative_bound_check(&pr, &pn, 2, 300, 11).unwrap();
        assert!(r.gamma0 <= 2.0 + 1e-9, "gamma0 = {}", r.gamma0);
        assert!(r.samples_used > 250);
    }

    #[test]
    fn lemma4_constants_known_values() {
        // d=2, p=1: 2²Γ²(1)/ (1·Γ(2)) = 4
        assert_relative_eq!(lemma4_constant(2, 1.0, 1.0), 4.0, max_relative = 1e-12);
        // d=2, p=2: 4π/(2·1) = 2π
        assert_relative_eq!(lemma4_constant(2, 2.0, 1.0), 2.0 * PI, max_relative = 1e-12);
        // d=3, p=2: 8π^{3/2}/(4·Γ(3/2)) = 4π
        assert_relative_eq!(lemma4_constant(3, 2.0, 1.0), 4.0 * PI, max_relative = 1e-12);
        // p=∞: 2^d·d·α^{1−d}
        assert_relative_eq!(lemma4_constant(2, f64::INFINITY, 1.0), 8.0, max_relative = 1e-12);
        assert_relative_eq!(lemma4_constant(3, f64::INFINITY, 2.0), 6.0, max_relative = 1e-12);
    }

    #[test]
    fn lemma4_constant_p_to_infinity_limit() {
        for d in 2..=3u32 {
            for &alpha in &[1.0, 2.0] {
                let limit = lemma4_constant(d, f64::INFINITY, alpha);
                for &p in &[1e3, 1e6] {
                    let c = lemma4_constant(d, p, alpha);
                    assert!(
                        (c - limit).abs() <= 0.01 * limit,
                        "d={d} p={p} alpha={alpha}: {c} vs {limit}"
                    );
                }
            }
        }
    }

    #[test]
    fn reduction_values_for_exponential() {
        let g = Profile::exp_decay(1.0).unwrap();
        // d=2, p=1, α=1: 4·∫ t e^{-t} = 4
        let v = weighted_integral_reduction(&g, &PNorm::new(1.0, 2).unwrap(), 1.0, &quad()).unwrap();
        assert_relative_eq!(v, 4.0, max_relative = 1e-7);
        // d=2, p=2, α=1: 2π
        let v = weighted_integral_reduction(&g, &PNorm::new(2.0, 2).unwrap(), 1.0, &quad()).unwrap();
        assert_relative_eq!(v, 2.0 * PI, max_relative = 1e-7);
        // d=3, p=2, α=1: 4π·∫t²e^{-t} = 8π
        let v = weighted_integral_reduction(&g, &PNorm::new(2.0, 3).unwrap(), 1.0, &quad()).unwrap();
        assert_relative_eq!(v, 8.0 * PI, max_relative = 1e-7);
        // d=2, p=2, α=2: 2·∫t³e^{-t} = 12
        let v = weighted_integral_reduction(&g, &PNorm::new(2.0, 2).unwrap(), 2.0, &quad()).unwrap();
        assert_relative_eq!(v, 12.0, max_relative = 1e-7);
        // d=2, p=∞, α=1: 8·∫ t e^{-t} = 8
        let v = weighted_integral_reduction(&g, &PNorm::new(f64::INFINITY, 2).unwrap(), 1.0, &quad())
            .unwrap();
        assert_relative_eq!(v, 8.0, max_relative = 1e-7);
    }

    #[test]
    fn bruteforce_agrees_d2() {
        let g = Profile::exp_decay(1.0).unwrap();
        for &p in &[1.0, 2.0, f64::INFINITY] {
            let pn = PNorm::new(p, 2).unwrap();
            let reduced = weighted_integral_reduction(&g, &pn, 1.0, &quad()).unwrap();
            let brute = weighted_integral_bruteforce(&g, &pn, 1.0, &quad()).unwrap();
            assert!(!brute.inconclusive);
            assert_relative_eq!(brute.value, reduced, max_relative = 1e-4);
        }
    }

    #[test]
    fn divergent_reduction_rejected() {
        // α too large for β: t^{dα−1}·t^{-αβ...}, pick g = 1/(1+t): ∫ t·(1+t)^{-1} diverges
        let g = Profile::example1(0.0, 1.0, 1.0).unwrap();
        let r = weighted_integral_reduction(&g, &PNorm::new(2.0, 2).unwrap(), 1.0, &quad());
        assert!(matches!(r, Err(Error::Divergent(_))));
    }

    #[test]
    fn gk15_vector_sanity() {
        // unrelated micro-check that the shared gk15 import stays exercised here
        let (v, _) = gk15(&|x: f64| x, 0.0, 1.0);
        assert_relative_eq!(v, 0.5, max_relative = 1e-14);
    }
}
