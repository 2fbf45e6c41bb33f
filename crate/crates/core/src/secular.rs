//! Closed-form radial solutions in three dimensions.
//!
//! With `φ = u/r` the radial equation becomes `u″ = −λu`, so the solution
//! regular at the centre (or satisfying `φ′(R₁) = 0` on a shell) is
//! `u(r) = R₁ C(r − R₁) + S(r − R₁)` with `C, S` the cosine/sine-type
//! fundamental pair (`cosh`/`sinh` for λ < 0, polynomial for λ = 0). The
//! boundary condition at the outer radius then gives a scalar equation in λ.

use crate::boundary::BoundaryParameter;
use crate::error::{invalid, Error, Result};
use crate::radial::RadialProblem;
use crate::roots::brent;

/// `(C(d), S(d))` with `C″ = −λC, S″ = −λS`, `C(0) = 1, C′(0) = 0, S(0) = 0, S′(0) = 1`.
fn fundamental_pair(lambda: f64, d: f64) -> (f64, f64) {
    if lambda == 0.0 {
        return (1.0, d);
    }
    let k = lambda.abs().sqrt();
    if lambda > 0.0 {
        ((k * d).cos(), (k * d).sin() / k)
    } else {
        ((k * d).cosh(), (k * d).sinh() / k)
    }
}

/// Normalised boundary residual of the exact `n = 3` radial solution at
/// trial eigenvalue `lambda`. Zero exactly at the radial eigenvalues.
pub fn secular_residual_n3(problem: impl Into<RadialProblem>, lambda: f64) -> Result<f64> {
    let problem = problem.into();
    if problem.dimension() != 3 {
        return Err(Error::UnsupportedDimension(problem.dimension()));
    }
    problem.validate()?;
    let (r1, r2) = problem.interval();
    let (c, s) = fundamental_pair(lambda, r2 - r1);
    let u = r1 * c + s;
    // C′ = −λS, S′ = C
    let du = -lambda * r1 * s + c;
    Ok(match problem.alpha() {
        BoundaryParameter::Dirichlet => u / (u.abs() + r2 * du.abs()),
        BoundaryParameter::Finite(alpha) => {
            // r²(φ′ + αφ) = r u′ + (αr − 1) u
            let value = r2 * du + (alpha * r2 - 1.0) * u;
            value / (r2 * du.abs() + (1.0 + alpha.abs() * r2) * u.abs())
        }
    })
}

/// Smallest root of [`secular_residual_n3`]: upward scan from a safe lower
/// bound to the first sign change, then Brent refinement.
pub fn secular_root_n3(problem: impl Into<RadialProblem>) -> Result<f64> {
    let problem = problem.into();
    if problem.dimension() != 3 {
        return Err(Error::UnsupportedDimension(problem.dimension()));
    }
    problem.validate()?;
    let (r1, r2) = problem.interval();
    let width = r2 - r1;
    let a = problem.alpha().alpha().unwrap_or(0.0).abs();
    let kmax = 2.0 * (a + 1.0 / r2 + 1.0 / width);
    let lo = -kmax * kmax;
    // radial eigenvalue spacing is at least of order (π/width)²
    let step = ((std::f64::consts::PI / width).powi(2) / 40.0).min(-lo / 400.0);
    let f = |l: f64| secular_residual_n3(problem, l).expect("validated");
    let mut x0 = lo;
    let mut f0 = f(x0);
    if f0 == 0.0 {
        return Ok(x0);
    }
    for _ in 0..200_000 {
        let x1 = x0 + step;
        let f1 = f(x1);
        if f1 == 0.0 {
            return Ok(x1);
        }
        if f1.signum() != f0.signum() {
            let scale = x0.abs().max(x1.abs()).max(1.0 / (r2 * r2));
            return brent(f, x0, x1, 1e-15 * scale, 300);
        }
        x0 = x1;
        f0 = f1;
    }
    Err(invalid("no sign change of the secular residual found"))
}

/// The exact `n = 3` radial solution `φ = u/r` for the inner radius `r1`
/// (`0` for the ball) at eigenvalue `lambda`, with its derivative, at `r`.
/// Unnormalised: `φ(r1) = 1` on a shell, `φ(0) = 1` on the ball.
pub fn radial_mode_n3(r1: f64, lambda: f64, r: f64) -> (f64, f64) {
    if r1 == 0.0 && r < 1e-4 / lambda.abs().sqrt().max(1.0) {
        // sin(kr)/(kr) and its derivative by series
        return (1.0 - lambda * r * r / 6.0, -lambda * r / 3.0);
    }
    let (c, s) = fundamental_pair(lambda, r - r1);
    let u = r1 * c + s;
    let du = -lambda * r1 * s + c;
    let scale = if r1 > 0.0 { r1 } else { 1.0 };
    (u / (r * scale), (du * r - u) / (r * r * scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::{RadialBallProblem, RadialShellProblem};
    use std::f64::consts::PI;

    #[test]
    fn neumann_zero_is_a_root() {
        let r = secular_residual_n3(RadialBallProblem::new(3, 1.0, 0.0), 0.0).unwrap();
        assert_eq!(r, 0.0);
        let r = secular_residual_n3(RadialShellProblem::new(3, 0.5, 1.0, 0.0), 0.0).unwrap();
        assert!(r.abs() < 1e-15);
    }

    #[test]
    fn dirichlet_root_is_pi_squared() {
        let p = RadialBallProblem::new(3, 1.0, BoundaryParameter::Dirichlet);
        assert!(secular_residual_n3(p, PI * PI).unwrap().abs() < 1e-12);
        assert!((secular_root_n3(p).unwrap() - PI * PI).abs() < 1e-12);
    }

    #[test]
    fn other_dimensions_rejected() {
        let p = RadialBallProblem::new(2, 1.0, -1.0);
        assert_eq!(secular_residual_n3(p, 0.0), Err(Error::UnsupportedDimension(2)));
    }

    #[test]
    fn mode_solves_radial_equation() {
        let lambda = -2.5;
        for r1 in [0.0, 0.4] {
            let r = 0.9;
            let d = 1e-4;
            let f = |x: f64| radial_mode_n3(r1, lambda, x);
            let (_, d1) = f(r);
            let num = (f(r + d).0 - f(r - d).0) / (2.0 * d);
            assert!((num - d1).abs() < 1e-7);
            // φ″ + (2/r)φ′ = −λφ
            let dd = (f(r + d).0 - 2.0 * f(r).0 + f(r - d).0) / (d * d);
            assert!((dd + 2.0 / r * d1 + lambda * f(r).0).abs() < 1e-5);
        }
        assert!(radial_mode_n3(0.4, lambda, 0.4).1.abs() < 1e-14);
    }
}
