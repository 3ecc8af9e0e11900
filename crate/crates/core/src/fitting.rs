//! Least-squares line fits used by the tail-classification logic.

/// Result of an ordinary least-squares line fit y = slope·x + intercept.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Fit a line through (xs, ys). Returns None with fewer than two distinct points.
pub fn line_fit(xs: &[f64], ys: &[f64]) -> Option<LineFit> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    if n < 2 {
        return None;
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for i in 0..n {
        let dx = xs[i] - mx;
        let dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 {
        1.0 // exactly constant data: the flat line is a perfect fit
    } else {
        (sxy * sxy) / (sxx * syy)
    };
    Some(LineFit {
        slope,
        intercept: my - slope * mx,
        r_squared,
    })
}

/// Fit log|v| against log t, dropping samples with |v| below `floor`.
///
/// Returns None when fewer than two usable samples remain (e.g. the tail is
/// identically zero, which callers treat as the strongest possible decay).
pub fn loglog_fit(ts: &[f64], vals: &[f64], floor: f64) -> Option<LineFit> {
    let mut xs = Vec::with_capacity(ts.len());
    let mut ys = Vec::with_capacity(ts.len());
    for (&t, &v) in ts.iter().zip(vals) {
        let a = v.abs();
        if t > 0.0 && a > floor && a.is_finite() {
            xs.push(t.ln());
            ys.push(a.ln());
        }
    }
    line_fit(&xs, &ys)
}
