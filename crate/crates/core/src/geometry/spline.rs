//! Interpolating cubic splines on a strictly increasing knot vector.

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EndCondition {
    /// Zero second derivative.
    Natural,
    /// Prescribed first derivative at both ends.
    Clamped(f64, f64),
    /// Values, slopes and curvatures wrap around; first and last value must agree.
    Periodic,
}

#[derive(Debug, Clone)]
pub struct CubicSpline {
    knots: Vec<f64>,
    values: Vec<f64>,
    /// Second derivatives at the knots.
    moments: Vec<f64>,
}

/// Solves a tridiagonal system (Thomas algorithm, no pivoting).
fn thomas(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = if n > 1 { sup[0] / diag[0] } else { 0.0 };
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let m = diag[i] - sub[i] * c[i - 1];
        c[i] = if i + 1 < n { sup[i] / m } else { 0.0 };
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / m;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

impl CubicSpline {
    pub fn new(knots: &[f64], values: &[f64], end: EndCondition) -> Result<Self> {
        let n = knots.len();
        if n != values.len() || n < 4 {
            return Err(invalid("spline needs at least four (knot, value) pairs"));
        }
        if knots.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(invalid("spline knots must be strictly increasing"));
        }
        let h: Vec<f64> = knots.windows(2).map(|w| w[1] - w[0]).collect();
        let slope: Vec<f64> = values.windows(2).zip(&h).map(|(w, hi)| (w[1] - w[0]) / hi).collect();
        let moments = match end {
            EndCondition::Natural | EndCondition::Clamped(..) => {
                let mut sub = vec![0.0; n];
                let mut diag = vec![0.0; n];
                let mut sup = vec![0.0; n];
                let mut rhs = vec![0.0; n];
                for i in 1..n - 1 {
                    sub[i] = h[i - 1];
                    diag[i] = 2.0 * (h[i - 1] + h[i]);
                    sup[i] = h[i];
                    rhs[i] = 6.0 * (slope[i] - slope[i - 1]);
                }
                match end {
                    EndCondition::Natural => {
                        diag[0] = 1.0;
                        diag[n - 1] = 1.0;
                    }
                    EndCondition::Clamped(d0, d1) => {
                        diag[0] = 2.0 * h[0];
                        sup[0] = h[0];
                        rhs[0] = 6.0 * (slope[0] - d0);
                        sub[n - 1] = h[n - 2];
                        diag[n - 1] = 2.0 * h[n - 2];
                        rhs[n - 1] = 6.0 * (d1 - slope[n - 2]);
                    }
                    EndCondition::Periodic => unreachable!(),
                }
                thomas(&sub, &diag, &sup, &rhs)
            }
            EndCondition::Periodic => {
                if (values[0] - values[n - 1]).abs() > 1e-12 * values[0].abs().max(1.0) {
                    return Err(invalid("periodic spline needs equal end values"));
                }
                // unknowns M_0..M_{m-1} with M_m = M_0, m = n − 1 intervals
                let m = n - 1;
                let hh = |i: usize| h[i % m];
                let ss = |i: usize| slope[i % m];
                let mut sub = vec![0.0; m];
                let mut diag = vec![0.0; m];
                let mut sup = vec![0.0; m];
                let mut rhs = vec![0.0; m];
                for i in 0..m {
                    let prev = (i + m - 1) % m;
                    sub[i] = hh(prev);
                    diag[i] = 2.0 * (hh(prev) + hh(i));
                    sup[i] = hh(i);
                    rhs[i] = 6.0 * (ss(i) - ss(prev));
                }
                // cyclic corners: A[0][m-1] = sub[0], A[m-1][0] = sup[m-1]
                let alpha = sup[m - 1];
                let beta = sub[0];
                let gamma = -diag[0];
                let mut d2 = diag.clone();
                d2[0] -= gamma;
                d2[m - 1] -= alpha * beta / gamma;
                let mut sub2 = sub.clone();
                sub2[0] = 0.0;
                let mut sup2 = sup.clone();
                sup2[m - 1] = 0.0;
                let x = thomas(&sub2, &d2, &sup2, &rhs);
                let mut u = vec![0.0; m];
                u[0] = gamma;
                u[m - 1] = alpha;
                let z = thomas(&sub2, &d2, &sup2, &u);
                let fact = (x[0] + beta * x[m - 1] / gamma) / (1.0 + z[0] + beta * z[m - 1] / gamma);
                let mut mom: Vec<f64> = x.iter().zip(&z).map(|(a, b)| a - fact * b).collect();
                mom.push(mom[0]);
                mom
            }
        };
        Ok(CubicSpline { knots: knots.to_vec(), values: values.to_vec(), moments })
    }

    fn interval(&self, x: f64) -> usize {
        let n = self.knots.len();
        match self.knots.binary_search_by(|k| k.total_cmp(&x)) {
            Ok(i) => i.min(n - 2),
            Err(i) => i.saturating_sub(1).min(n - 2),
        }
    }

    /// Value and first two derivatives at `x`.
    pub fn eval(&self, x: f64) -> (f64, f64, f64) {
        let i = self.interval(x);
        let (x0, x1) = (self.knots[i], self.knots[i + 1]);
        let h = x1 - x0;
        let (m0, m1) = (self.moments[i], self.moments[i + 1]);
        let (y0, y1) = (self.values[i], self.values[i + 1]);
        let a = (x1 - x) / h;
        let b = (x - x0) / h;
        let v = a * y0 + b * y1 + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0;
        let d = (y1 - y0) / h + (-(3.0 * a * a - 1.0) * m0 + (3.0 * b * b - 1.0) * m1) * h / 6.0;
        let dd = a * m0 + b * m1;
        (v, d, dd)
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }
}
