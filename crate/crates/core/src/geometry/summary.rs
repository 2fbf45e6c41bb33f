use std::f64::consts::PI;

use serde::Serialize;

use super::distance::BoundaryDistance;
use super::profile::{RevolutionProfile, Topology};
use crate::error::{Error, Result};
use crate::quadrature::integrate;
use crate::roots::scan_min;

pub const DEFAULT_QUAD_TOL: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convexity {
    Convex,
    Axiconvex,
    Neither,
}

/// Integral and extremal quantities of an axisymmetric domain.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GeometrySummary {
    pub area: f64,
    pub volume: f64,
    /// `m = ∫ M dS` with `M` the averaged mean curvature.
    pub total_mean_curvature: f64,
    /// `∫ K dS`, equal to `2πχ` by Gauss–Bonnet.
    pub total_gaussian_curvature: f64,
    /// Infimum of `M = (κ₁ + κ₂)/2` over the boundary.
    pub eta_bar: f64,
    /// Infimum of `κ₁ + κ₂` (the un-halved convention), `2·eta_bar`.
    pub eta_bar_sum: f64,
    /// Parameter where the mean curvature is smallest.
    pub eta_bar_at: f64,
    pub inner_radius: f64,
    /// A point of the meridian plane realising the inner radius.
    pub incenter: [f64; 2],
    pub euler_characteristic: i32,
    pub convexity: Convexity,
    pub topology: Topology,
    /// Largest quadrature error estimate among the integrals.
    pub quadrature_error: f64,
}

fn integrate_over(profile: &RevolutionProfile, f: impl Fn(f64) -> f64, tol: f64) -> Result<(f64, f64)> {
    let bps = profile.breakpoints();
    let mut total = 0.0;
    let mut err = 0.0;
    for w in bps.windows(2) {
        let r = integrate(&f, w[0], w[1], tol * 1e-3, tol)?;
        total += r.value;
        err += r.error;
    }
    Ok((total, err))
}

/// `2π s |c′|`, the surface measure per unit parameter.
fn surface_density(profile: &RevolutionProfile, u: f64) -> f64 {
    let j = profile.jet(u);
    2.0 * PI * j.point[0] * j.speed()
}

pub fn area(profile: &RevolutionProfile, tol: f64) -> Result<f64> {
    Ok(integrate_over(profile, |u| surface_density(profile, u), tol)?.0)
}

pub fn volume(profile: &RevolutionProfile, tol: f64) -> Result<f64> {
    Ok(integrate_over(
        profile,
        |u| {
            let j = profile.jet(u);
            PI * j.point[0] * j.point[0] * j.d1[1]
        },
        tol,
    )?
    .0)
}

/// Convexity of the body of revolution, read off the meridian curve:
/// convex when the counter-clockwise meridian never turns clockwise,
/// axiconvex when the meridian climbs monotonically from pole to pole so
/// every horizontal slice is a disk.
pub fn classify_convexity(profile: &RevolutionProfile) -> Convexity {
    if profile.topology() == Topology::TorusLike {
        return Convexity::Neither;
    }
    let samples = 4000;
    let mut min_curv = f64::INFINITY;
    let mut max_curv: f64 = 0.0;
    let mut min_rise = f64::INFINITY;
    for i in 0..=samples {
        let u = i as f64 / samples as f64;
        let j = profile.jet(u);
        let (k, _) = profile.principal_curvatures(u);
        min_curv = min_curv.min(k);
        max_curv = max_curv.max(k.abs());
        if i > 0 && i < samples {
            min_rise = min_rise.min(j.d1[1] / j.speed());
        }
    }
    if min_curv >= -1e-9 * max_curv {
        Convexity::Convex
    } else if min_rise > 0.0 {
        Convexity::Axiconvex
    } else {
        Convexity::Neither
    }
}

/// Largest inscribed ball: maximises the signed distance over the meridian
/// region by a coarse grid search followed by a compass search.
pub fn inner_radius(profile: &RevolutionProfile) -> Result<(f64, [f64; 2])> {
    let dist = BoundaryDistance::new(profile);
    let b = profile.bounding_box();
    let n = 48;
    let mut best = ([0.0, 0.0], f64::NEG_INFINITY);
    for i in 0..=n {
        for j in 0..=n {
            let p = [b[0] + (b[1] - b[0]) * i as f64 / n as f64, b[2] + (b[3] - b[2]) * j as f64 / n as f64];
            let d = dist.signed_distance(p);
            if d > best.1 {
                best = (p, d);
            }
        }
    }
    if best.1 <= 0.0 {
        return Err(Error::DegenerateProfile("no interior point found".into()));
    }
    let mut step = ((b[1] - b[0]).max(b[3] - b[2])) / n as f64;
    let s_min = if profile.topology() == Topology::SphereLike { 0.0 } else { f64::NEG_INFINITY };
    while step > 1e-13 * (b[1] - b[0]).max(b[3] - b[2]) {
        let mut improved = false;
        const D: f64 = std::f64::consts::FRAC_1_SQRT_2;
        for (ds, dz) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (D, D), (-D, D), (D, -D), (-D, -D)] {
            let p = [(best.0[0] + ds * step).max(s_min), best.0[1] + dz * step];
            let d = dist.signed_distance(p);
            if d > best.1 {
                best = (p, d);
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok((best.1, best.0))
}

/// Smallest mean curvature: dense parameter scan plus golden-section
/// refinement. Returns `(η̄, u*)`.
pub fn min_mean_curvature(profile: &RevolutionProfile) -> (f64, f64) {
    let (u, m) = scan_min(|u| profile.curvatures(u).0, 0.0, 1.0, 4001, 1e-13);
    (m, u)
}

pub fn summarize(profile: &RevolutionProfile, quad_tol: f64) -> Result<GeometrySummary> {
    let tol = quad_tol.max(1e-14);
    let (area, e1) = integrate_over(profile, |u| surface_density(profile, u), tol)?;
    let (volume, e2) = integrate_over(
        profile,
        |u| {
            let j = profile.jet(u);
            PI * j.point[0] * j.point[0] * j.d1[1]
        },
        tol,
    )?;
    // M dS = π (κ_m s |c′| + z′) du, which avoids dividing by s near the axis
    let (mean, e3) = integrate_over(
        profile,
        |u| {
            let j = profile.jet(u);
            let (k_mer, _) = profile.principal_curvatures(u);
            PI * (k_mer * j.point[0] * j.speed() + j.d1[1])
        },
        tol,
    )?;
    // K dS = κ_m κ_p 2π s |c′| du = 2π κ_m z′ du, smooth up to the axis
    let (gauss, e4) = integrate_over(
        profile,
        |u| {
            let j = profile.jet(u);
            let (k_mer, _) = profile.principal_curvatures(u);
            2.0 * PI * k_mer * j.d1[1]
        },
        tol,
    )?;
    if !(area > 0.0 && volume > 0.0) {
        return Err(Error::DegenerateProfile(format!("area {area}, volume {volume}")));
    }
    let (eta_bar, eta_bar_at) = min_mean_curvature(profile);
    let (inner, incenter) = inner_radius(profile)?;
    Ok(GeometrySummary {
        area,
        volume,
        total_mean_curvature: mean,
        total_gaussian_curvature: gauss,
        eta_bar,
        eta_bar_sum: 2.0 * eta_bar,
        eta_bar_at,
        inner_radius: inner,
        incenter,
        euler_characteristic: profile.topology().euler_characteristic(),
        convexity: classify_convexity(profile),
        topology: profile.topology(),
        quadrature_error: e1.max(e2).max(e3).max(e4),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_sphere_summary() {
        let s = summarize(&RevolutionProfile::sphere(1.0).unwrap(), DEFAULT_QUAD_TOL).unwrap();
        assert!((s.area - 4.0 * PI).abs() < 1e-12);
        assert!((s.volume - 4.0 * PI / 3.0).abs() < 1e-12);
        assert!((s.total_mean_curvature - 4.0 * PI).abs() < 1e-12);
        assert!((s.eta_bar - 1.0).abs() < 1e-12);
        assert!((s.inner_radius - 1.0).abs() < 1e-10);
        assert_eq!(s.euler_characteristic, 2);
        assert_eq!(s.convexity, Convexity::Convex);
    }

    #[test]
    fn torus_is_neither_convex_nor_axiconvex() {
        let s = summarize(&RevolutionProfile::torus(1.0, 0.3).unwrap(), DEFAULT_QUAD_TOL).unwrap();
        assert_eq!(s.convexity, Convexity::Neither);
        assert!((s.inner_radius - 0.3).abs() < 1e-10);
        assert!(s.total_gaussian_curvature.abs() < 1e-10);
    }

    #[test]
    fn peanut_is_axiconvex_but_not_convex() {
        // a sphere pinched at the equator: monotone in z, with a waist
        let pts: Vec<[f64; 2]> = (0..=80)
            .map(|i| {
                let th = PI * i as f64 / 80.0;
                let z = -th.cos();
                let s = th.sin() * (1.0 - 0.4 * (0.5 * PI * z).cos().powi(2));
                [s, z]
            })
            .collect();
        let p = RevolutionProfile::sampled(&pts, Topology::SphereLike).unwrap();
        assert_eq!(classify_convexity(&p), Convexity::Axiconvex);
    }
}
