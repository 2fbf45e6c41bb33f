//! Richardson-type extrapolation to zero mesh size.

use serde::Serialize;

/// Polynomial extrapolation of `(x_i, y_i)` to `x = 0` (Neville's scheme).
/// With `x = h²` this is repeated Richardson extrapolation for arbitrary
/// refinement ratios.
pub fn neville_at_zero(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    assert!(!xs.is_empty());
    let mut p = ys.to_vec();
    let n = xs.len();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (xs[i + m] * p[i] - xs[i] * p[i + 1]) / (xs[i + m] - xs[i]);
        }
    }
    p[0]
}

/// Convergence summary from three solutions on meshes `h`, `h/ratio`, `h/ratio²`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Richardson {
    /// Observed order `log(|e₁₂| / |e₂₃|) / log(ratio)`; `None` if the
    /// differences vanish or change sign.
    pub order: Option<f64>,
    /// Extrapolated value assuming the nominal order.
    pub extrapolated: f64,
    /// `|extrapolated − finest|`.
    pub error_estimate: f64,
}

pub fn richardson3(coarse: f64, medium: f64, fine: f64, ratio: f64, nominal_order: f64) -> Richardson {
    let e12 = coarse - medium;
    let e23 = medium - fine;
    let order = if e12 != 0.0 && e23 != 0.0 && e12.signum() == e23.signum() {
        Some((e12 / e23).ln() / ratio.ln())
    } else {
        None
    };
    let factor = ratio.powf(nominal_order);
    let extrapolated = fine + (fine - medium) / (factor - 1.0);
    Richardson { order, extrapolated, error_estimate: (extrapolated - fine).abs() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn removes_quadratic_and_quartic_terms() {
        let f = |h: f64| 3.0 + 2.0 * h * h - 5.0 * h.powi(4);
        let hs = [0.1, 0.07, 0.03];
        let xs: Vec<f64> = hs.iter().map(|h| h * h).collect();
        let ys: Vec<f64> = hs.iter().map(|&h| f(h)).collect();
        assert!((neville_at_zero(&xs, &ys) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn observed_order_of_second_order_sequence() {
        let f = |h: f64| 1.0 + 0.5 * h * h;
        let r = richardson3(f(0.4), f(0.2), f(0.1), 2.0, 2.0);
        assert!((r.order.unwrap() - 2.0).abs() < 1e-10);
        assert!((r.extrapolated - 1.0).abs() < 1e-12);
    }
}
