//! Reduction of a domain to the spherical shell with the same boundary area
//! and volume, and the resulting chain of eigenvalue bounds
//! `λ₁(Ω) ≤ μ₁(A_{R₁,R₂}) ≤ λ₁(B_{R₂})`.
//!
//! The map `t ↦ r(t)` sends the distance to the boundary to the radius in the
//! shell at which the enclosed shell volume equals the volume of
//! `{x ∈ Ω : dist(x, ∂Ω) > t}`. Functions of `r` pulled back along it are
//! admissible test functions on `Ω`, and `|r′| ≤ 1` is what makes their
//! quotients no larger than on the shell.

use std::f64::consts::PI;

use serde::Serialize;

use crate::axisym::{default_mesh_size, solve_domain};
use crate::boundary::BoundaryParameter;
use crate::error::{invalid, Error, Result};
use crate::geometry::checks::{mean_condition_for, unit_sphere_area, MeanConditionReport};
use crate::geometry::{summarize, Convexity, GeometrySummary, ParallelProfile, RevolutionProfile, Topology};
use crate::quadrature::integrate;
use crate::radial::{self, RadialBallProblem, RadialProblem, RadialShellProblem};
use crate::roots::bisect;
use crate::secular::radial_mode_n3;

/// Relative size below which an isoperimetric deficit is treated as zero.
pub const ISOPERIMETRIC_SNAP: f64 = 1e-13;

/// Shell `A_{R₁,R₂}` with the boundary area and volume of a domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedShell {
    pub dimension: usize,
    pub r1: f64,
    pub r2: f64,
}

impl ReducedShell {
    pub fn volume(&self) -> f64 {
        let n = self.dimension as i32;
        unit_sphere_area(self.dimension) / n as f64 * (self.r2.powi(n) - self.r1.powi(n))
    }

    /// Area of the outer sphere.
    pub fn outer_area(&self) -> f64 {
        unit_sphere_area(self.dimension) * self.r2.powi(self.dimension as i32 - 1)
    }

    /// Neumann at `R₁`, the given condition at `R₂`; the ball when `R₁ = 0`.
    pub fn radial_problem(&self, alpha: BoundaryParameter) -> RadialProblem {
        if self.r1 > 0.0 {
            RadialShellProblem::new(self.dimension, self.r1, self.r2, alpha).into()
        } else {
            RadialBallProblem::new(self.dimension, self.r2, alpha).into()
        }
    }
}

fn check_area_volume(area: f64, volume: f64) -> Result<()> {
    if !(area > 0.0 && volume > 0.0 && area.is_finite() && volume.is_finite()) {
        return Err(invalid(format!("area and volume must be positive, got {area}, {volume}")));
    }
    Ok(())
}

/// Three-dimensional shell radii:
/// `R₁ = ∛(A^{3/2} − 6√π V)/(2√π)`, `R₂ = √(A/4π)`.
pub fn shell_radii_3d(area: f64, volume: f64) -> Result<ReducedShell> {
    check_area_volume(area, volume)?;
    let a32 = area * area.sqrt();
    let mut deficit = a32 - 6.0 * PI.sqrt() * volume;
    if deficit.abs() <= ISOPERIMETRIC_SNAP * a32 {
        deficit = 0.0;
    }
    if deficit < 0.0 {
        return Err(Error::Isoperimetric { deficit });
    }
    Ok(ReducedShell { dimension: 3, r1: deficit.cbrt() / (2.0 * PI.sqrt()), r2: (area / (4.0 * PI)).sqrt() })
}

/// Shell radii in `ℝⁿ`: `|S^{n−1}| R₂^{n−1} = area` and
/// `|S^{n−1}| (R₂ⁿ − R₁ⁿ)/n = volume`.
pub fn shell_radii_nd(n: usize, area: f64, volume: f64) -> Result<ReducedShell> {
    if n < 2 {
        return Err(Error::UnsupportedDimension(n));
    }
    check_area_volume(area, volume)?;
    let sigma = unit_sphere_area(n);
    let r2 = (area / sigma).powf(1.0 / (n as f64 - 1.0));
    let outer = r2.powi(n as i32);
    let mut deficit = outer - n as f64 * volume / sigma;
    if deficit.abs() <= ISOPERIMETRIC_SNAP * outer {
        deficit = 0.0;
    }
    if deficit < 0.0 {
        return Err(Error::Isoperimetric { deficit });
    }
    let r1 = if n == 3 { deficit.cbrt() } else { deficit.powf(1.0 / n as f64) };
    Ok(ReducedShell { dimension: n, r1, r2 })
}

/// Default allowance on `max |r′|` for sampled parallel profiles.
pub const CERTIFICATE_TOL: f64 = 1e-3;

/// Samples of `r(t)` and `r′(t)` on the parallel-profile grid.
#[derive(Debug, Clone, Serialize)]
pub struct RtMap {
    pub shell: ReducedShell,
    pub t_grid: Vec<f64>,
    pub r: Vec<f64>,
    /// `NaN` on the degenerate tail where `r` reaches zero.
    pub rprime: Vec<f64>,
    pub max_abs_rprime: f64,
    pub argmax_t: f64,
    /// First `t` at which the denominator of `r′` vanishes.
    pub degenerate_from: Option<f64>,
    pub tolerance: f64,
    pub holds: bool,
}

/// `r(t)ⁿ = R₁ⁿ + n W(t)/|S^{n−1}|` with `W(t)` the volume at distance more
/// than `t` from the boundary, and `r′(t) = −Area(∂Ω_t)/(|S^{n−1}| r^{n−1})`.
pub fn r_of_t(pp: &ParallelProfile, n: usize) -> Result<RtMap> {
    if pp.dimension != n {
        return Err(invalid(format!("parallel profile is {}-dimensional, asked for n = {n}", pp.dimension)));
    }
    let shell = shell_radii_nd(n, pp.area, pp.volume)?;
    let sigma = unit_sphere_area(n);
    let base = shell.r1.powi(n as i32);
    let r: Vec<f64> = pp
        .inner_volume_at
        .iter()
        .map(|&w| {
            let x = base + n as f64 * w / sigma;
            if n == 3 {
                x.cbrt()
            } else {
                x.powf(1.0 / n as f64)
            }
        })
        .collect();
    let mut rprime = Vec::with_capacity(r.len());
    let mut degenerate_from = None;
    let mut worst = (0.0, 0.0);
    for ((&t, &ri), &a) in pp.t_grid.iter().zip(&r).zip(&pp.area_at) {
        let den = sigma * ri.powi(n as i32 - 1);
        if den <= 1e-12 * pp.area {
            degenerate_from.get_or_insert(t);
            rprime.push(f64::NAN);
            continue;
        }
        let rp = -a / den;
        if rp.abs() > worst.0 {
            worst = (rp.abs(), t);
        }
        rprime.push(rp);
    }
    let tolerance = if pp.area_error > 0.0 { CERTIFICATE_TOL } else { 1e-12 };
    Ok(RtMap {
        shell,
        t_grid: pp.t_grid.clone(),
        r,
        rprime,
        max_abs_rprime: worst.0,
        argmax_t: worst.1,
        degenerate_from,
        tolerance,
        holds: worst.0 <= 1.0 + tolerance,
    })
}

/// Quotient of the pulled-back function `u = ψ(r(dist(·, ∂Ω)))` on `Ω`,
/// using `|∇ dist| = 1`: `(∫ψ′² r′² A_t dt + α ψ(R₂)² Area) / ∫ψ² A_t dt`
/// by the trapezoidal rule on the profile grid.
pub fn transported_quotient(
    rt: &RtMap,
    pp: &ParallelProfile,
    alpha: f64,
    psi: impl Fn(f64) -> (f64, f64),
) -> Result<f64> {
    let mut num = 0.0;
    let mut den = 0.0;
    let vals: Vec<(f64, f64)> = rt
        .r
        .iter()
        .zip(&rt.rprime)
        .zip(&pp.area_at)
        .map(|((&r, &rp), &a)| {
            if rp.is_nan() {
                return (0.0, 0.0);
            }
            let (p, dp) = psi(r);
            (dp * dp * rp * rp * a, p * p * a)
        })
        .collect();
    for i in 1..vals.len() {
        let dt = pp.t_grid[i] - pp.t_grid[i - 1];
        num += 0.5 * dt * (vals[i].0 + vals[i - 1].0);
        den += 0.5 * dt * (vals[i].1 + vals[i - 1].1);
    }
    if !(den > 0.0) {
        return Err(invalid("transported test function vanishes"));
    }
    num += alpha * psi(rt.shell.r2).0.powi(2) * pp.area;
    Ok(num / den)
}

/// Quotient of the radial function `ψ` on the shell (Neumann inside).
pub fn shell_quotient(shell: &ReducedShell, alpha: f64, psi: impl Fn(f64) -> (f64, f64)) -> Result<f64> {
    let m = shell.dimension as i32 - 1;
    let (a, b) = (shell.r1, shell.r2);
    let num = integrate(|r| psi(r).1.powi(2) * r.powi(m), a, b, 1e-14, 1e-11)?.value;
    let den = integrate(|r| psi(r).0.powi(2) * r.powi(m), a, b, 1e-14, 1e-11)?.value;
    if !(den > 0.0) {
        return Err(invalid("radial test function vanishes"));
    }
    Ok((num + alpha * psi(b).0.powi(2) * b.powi(m)) / den)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TransportCheck {
    pub trial: &'static str,
    pub transported: f64,
    pub shell: f64,
    pub tolerance: f64,
    pub holds: bool,
}

/// Compares transported and shell quotients for a few radial test functions:
/// the constant, `r²`, and for `n = 3` the first shell eigenfunction (whose
/// shell quotient is `μ₁`).
pub fn variational_spot_check(rt: &RtMap, pp: &ParallelProfile, alpha: f64) -> Result<Vec<TransportCheck>> {
    let shell = rt.shell;
    let scale = 1.0 / (shell.r2 * shell.r2) + alpha.abs() / shell.r2;
    let tolerance = 2e-3 * scale;
    let mut out = Vec::new();
    let mut run = |trial: &'static str, psi: &dyn Fn(f64) -> (f64, f64)| -> Result<()> {
        let transported = transported_quotient(rt, pp, alpha, psi)?;
        let on_shell = shell_quotient(&shell, alpha, psi)?;
        out.push(TransportCheck { trial, transported, shell: on_shell, tolerance, holds: transported <= on_shell + tolerance });
        Ok(())
    };
    run("constant", &|_| (1.0, 0.0))?;
    run("r^2", &|r| (r * r, 2.0 * r))?;
    if shell.dimension == 3 {
        let mu = radial::solve(&shell.radial_problem(BoundaryParameter::Finite(alpha)), radial::DEFAULT_TOL)?.eigenvalue;
        let r1 = shell.r1;
        run("eigenfunction", &|r| radial_mode_n3(r1, mu, r))?;
    }
    Ok(out)
}

/// Hypothesis under which the chain is asserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Admissibility {
    ConvexSphereLike,
    AxiconvexSphereLike,
    MeanCurvature,
    Inadmissible,
}

impl Admissibility {
    pub fn is_admissible(self) -> bool {
        self != Admissibility::Inadmissible
    }
}

/// Sphere-like convex/axiconvex profiles first, then the mean-curvature
/// condition with the averaged `η̄`.
pub fn admissibility(summary: &GeometrySummary) -> Result<(Admissibility, MeanConditionReport)> {
    let mean = mean_condition_for(summary.eta_bar, summary.area, 3)?;
    let route = match (summary.topology, summary.convexity) {
        (Topology::SphereLike, Convexity::Convex) => Admissibility::ConvexSphereLike,
        (Topology::SphereLike, Convexity::Axiconvex) => Admissibility::AxiconvexSphereLike,
        _ if mean.holds => Admissibility::MeanCurvature,
        _ => Admissibility::Inadmissible,
    };
    Ok((route, mean))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainOptions {
    /// Relative tolerance of the radial eigenvalues.
    pub tol: f64,
    /// Coarse mesh size for the direct solve; `None` picks a default from
    /// the inner radius.
    pub mesh_size: Option<f64>,
    /// Skip the direct solve on the domain itself.
    pub skip_direct: bool,
    pub quad_tol: f64,
}

impl Default for ChainOptions {
    fn default() -> Self {
        ChainOptions { tol: 1e-10, mesh_size: None, skip_direct: false, quad_tol: 1e-11 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundChainReport {
    pub alpha: BoundaryParameter,
    pub area: f64,
    pub volume: f64,
    pub eta_bar: f64,
    pub eta_bar_sum: f64,
    pub convexity: Convexity,
    pub shell: ReducedShell,
    pub lambda1_direct: Option<f64>,
    /// Extrapolation error estimate of the direct value.
    pub direct_error: Option<f64>,
    pub direct_order: Option<f64>,
    pub mu1_shell: f64,
    pub lambda1_ball: f64,
    /// `μ₁(shell) − λ₁(Ω)`.
    pub margin_direct: Option<f64>,
    /// `λ₁(B_{R₂}) − μ₁(shell)`.
    pub margin_shell: f64,
    pub tol_direct: Option<f64>,
    pub tol_shell: f64,
    pub admissibility: Admissibility,
    pub mean_condition: MeanConditionReport,
    pub asserted_direct: bool,
    pub asserted_shell: bool,
    /// Every asserted margin is within its tolerance.
    pub holds: bool,
}

/// Computes `λ₁(Ω)`, `μ₁(A_{R₁,R₂})` and `λ₁(B_{R₂})` and checks the chain.
/// The first inequality is asserted for every boundary parameter, the second
/// only for `α ≤ 0`, and neither when the profile is inadmissible.
pub fn bound_chain(profile: &RevolutionProfile, alpha: BoundaryParameter, opts: &ChainOptions) -> Result<BoundChainReport> {
    alpha.validate()?;
    let summary = summarize(profile, opts.quad_tol)?;
    chain_from_summary(profile, &summary, alpha, opts)
}

pub fn chain_from_summary(
    profile: &RevolutionProfile,
    summary: &GeometrySummary,
    alpha: BoundaryParameter,
    opts: &ChainOptions,
) -> Result<BoundChainReport> {
    let shell = shell_radii_3d(summary.area, summary.volume)?;
    let (route, mean) = admissibility(summary)?;
    let tol = opts.tol.min(radial::DEFAULT_TOL);
    let (radial_pair, direct) = rayon::join(
        || -> Result<(f64, f64)> {
            let mu1 = radial::solve(&shell.radial_problem(alpha), tol)?.eigenvalue;
            let ball = radial::solve_ball(&RadialBallProblem::new(3, shell.r2, alpha), tol)?.eigenvalue;
            Ok((mu1, ball))
        },
        || -> Result<Option<_>> {
            if opts.skip_direct {
                return Ok(None);
            }
            let h = match opts.mesh_size {
                Some(h) => h,
                None => default_mesh_size(profile)?,
            };
            Ok(Some(solve_domain(profile, alpha, h)?))
        },
    );
    let (mu1, lambda_ball) = radial_pair?;
    let direct = direct?;
    let scale = 1.0 / (shell.r2 * shell.r2);
    let tol_shell = (1e-9f64).max(10.0 * tol * lambda_ball.abs().max(scale));
    let margin_shell = lambda_ball - mu1;
    let margin_direct = direct.as_ref().map(|d| mu1 - d.extrapolated);
    let tol_direct = direct.as_ref().map(|d| d.error_estimate + tol_shell);
    let admissible = route.is_admissible();
    let asserted_direct = admissible && direct.is_some();
    let asserted_shell = admissible && alpha.is_nonpositive();
    let mut holds = true;
    if asserted_direct {
        holds &= margin_direct.unwrap() >= -tol_direct.unwrap();
    }
    if asserted_shell {
        holds &= margin_shell >= -tol_shell;
    }
    Ok(BoundChainReport {
        alpha,
        area: summary.area,
        volume: summary.volume,
        eta_bar: summary.eta_bar,
        eta_bar_sum: summary.eta_bar_sum,
        convexity: summary.convexity,
        shell,
        lambda1_direct: direct.as_ref().map(|d| d.extrapolated),
        direct_error: direct.as_ref().map(|d| d.error_estimate),
        direct_order: direct.as_ref().and_then(|d| d.order),
        mu1_shell: mu1,
        lambda1_ball: lambda_ball,
        margin_direct,
        margin_shell,
        tol_direct,
        tol_shell,
        admissibility: route,
        mean_condition: mean,
        asserted_direct,
        asserted_shell,
        holds,
    })
}

/// Both sides of a scalar shape condition `lhs ≥ rhs`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConditionReport {
    pub m: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl ConditionReport {
    fn new(m: f64, lhs: f64, rhs: f64) -> Self {
        ConditionReport { m, lhs, rhs, holds: lhs >= rhs }
    }
}

/// `arcsin(x)/x`, by its series near zero.
fn asin_ratio(x: f64) -> f64 {
    if x < 1e-4 {
        let x2 = x * x;
        1.0 + x2 / 6.0 + 3.0 * x2 * x2 / 40.0
    } else {
        x.asin() / x
    }
}

/// Mean-curvature condition for the prolate spheroid with semi-axes `m` and
/// `1`: `m(1+m²)²(m + arcsin(√(1−m²))/√(1−m²)) ≥ 8m²`.
pub fn ellipsoid_condition(m: f64) -> Result<ConditionReport> {
    if !(m > 0.0 && m <= 1.0) {
        return Err(invalid(format!("spheroid aspect ratio must lie in (0, 1], got {m}")));
    }
    let x = ((1.0 - m) * (1.0 + m)).sqrt();
    let lhs = m * (1.0 + m * m).powi(2) * (m + asin_ratio(x));
    Ok(ConditionReport::new(m, lhs, 8.0 * m * m))
}

/// Mean-curvature condition for the torus with radii `1` and `m`, as
/// `(1−2m)²π ≥ (1−m)²m`. This is the form obtained when `η̄` is taken as
/// the infimum of `κ₁ + κ₂`.
pub fn torus_condition(m: f64) -> Result<ConditionReport> {
    check_torus_ratio(m)?;
    Ok(ConditionReport::new(m, (1.0 - 2.0 * m).powi(2) * PI, (1.0 - m).powi(2) * m))
}

/// Same condition with `η̄ = inf (κ₁ + κ₂)/2`: `(1−2m)²π ≥ 4(1−m)²m`.
pub fn torus_condition_averaged(m: f64) -> Result<ConditionReport> {
    check_torus_ratio(m)?;
    Ok(ConditionReport::new(m, (1.0 - 2.0 * m).powi(2) * PI, 4.0 * (1.0 - m).powi(2) * m))
}

fn check_torus_ratio(m: f64) -> Result<()> {
    if !(m > 0.0 && m < 0.5) {
        return Err(invalid(format!("torus radius ratio must lie in (0, 1/2), got {m}")));
    }
    Ok(())
}

fn threshold(f: impl Fn(f64) -> Result<ConditionReport>) -> Result<f64> {
    let g = |m: f64| f(m).map(|r| r.lhs - r.rhs).unwrap_or(f64::NAN);
    bisect(g, 1e-12, 0.5 - 1e-12, 1e-14, 200)
}

/// Ratio `m*` where [`torus_condition`] switches from holding to failing.
pub fn torus_threshold() -> Result<f64> {
    threshold(torus_condition)
}

pub fn torus_threshold_averaged() -> Result<f64> {
    threshold(torus_condition_averaged)
}

/// Maximal sub-intervals of `(0, 1]` on which [`ellipsoid_condition`] holds,
/// from `samples` equally spaced evaluations with bisection at sign changes.
pub fn ellipsoid_holding_set(samples: usize) -> Result<Vec<(f64, f64)>> {
    let samples = samples.max(2);
    let g = |m: f64| ellipsoid_condition(m).map(|r| r.lhs - r.rhs).unwrap_or(f64::NAN);
    let ms: Vec<f64> = (1..=samples).map(|i| i as f64 / samples as f64).collect();
    let mut out = Vec::new();
    let mut start: Option<f64> = None;
    let mut prev = (1e-9, g(1e-9));
    if prev.1 >= 0.0 {
        start = Some(0.0);
    }
    for &m in &ms {
        let v = g(m);
        if (v >= 0.0) != (prev.1 >= 0.0) {
            let root = bisect(g, prev.0, m, 1e-14, 200)?;
            match start.take() {
                Some(s) => out.push((s, root)),
                None => start = Some(root),
            }
        }
        prev = (m, v);
    }
    if let Some(s) = start {
        out.push((s, 1.0));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{parallel_profile, SamplingPlan};

    #[test]
    fn ball_data_gives_degenerate_shell() {
        let s = shell_radii_3d(4.0 * PI, 4.0 * PI / 3.0).unwrap();
        assert_eq!(s.r1, 0.0);
        assert!((s.r2 - 1.0).abs() < 1e-15);
        for n in [2, 3, 4, 5] {
            let sigma = unit_sphere_area(n);
            let s = shell_radii_nd(n, sigma, sigma / n as f64).unwrap();
            assert_eq!(s.r1, 0.0, "n = {n}");
            assert!((s.r2 - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn half_volume_example() {
        let s = shell_radii_3d(4.0 * PI, 2.0 * PI / 3.0).unwrap();
        let expected = (4.0 * PI.powf(1.5)).cbrt() / (2.0 * PI.sqrt());
        assert!((s.r1 - expected).abs() < 1e-14);
        assert!((s.volume() - 2.0 * PI / 3.0).abs() < 1e-13);
    }

    #[test]
    fn isoperimetric_violation_is_an_error() {
        assert!(matches!(shell_radii_3d(4.0 * PI, 2.0 * PI), Err(Error::Isoperimetric { .. })));
        assert!(matches!(shell_radii_nd(4, 1.0, 10.0), Err(Error::Isoperimetric { .. })));
    }

    #[test]
    fn more_volume_means_smaller_inner_radius() {
        let a = shell_radii_3d(10.0, 2.0).unwrap();
        let b = shell_radii_3d(10.0, 2.5).unwrap();
        assert!(b.r1 < a.r1);
    }

    #[test]
    fn ball_map_is_identity_shifted() {
        let pp = ParallelProfile::ball(3, 1.0, 101).unwrap();
        let rt = r_of_t(&pp, 3).unwrap();
        for (t, r) in rt.t_grid.iter().zip(&rt.r) {
            assert!((r - (1.0 - t)).abs() < 1e-14, "{t}: {r}");
        }
        assert_eq!(rt.degenerate_from, Some(1.0));
        assert!((rt.max_abs_rprime - 1.0).abs() < 1e-13);
        assert!(rt.holds);
    }

    #[test]
    fn spheroid_certificate_and_transport() {
        let p = RevolutionProfile::spheroid(0.8, 1.0).unwrap();
        let s = summarize(&p, 1e-11).unwrap();
        let pp = parallel_profile(&p, &s, 101, SamplingPlan::default()).unwrap();
        let rt = r_of_t(&pp, 3).unwrap();
        assert!(rt.holds, "{}", rt.max_abs_rprime);
        assert!((rt.r[0] - rt.shell.r2).abs() < 1e-12);
        assert!((rt.r[100] - rt.shell.r1).abs() < 1e-12);
        for c in variational_spot_check(&rt, &pp, -1.0).unwrap() {
            assert!(c.holds, "{c:?}");
        }
    }

    #[test]
    fn ellipsoid_condition_limits() {
        let one = ellipsoid_condition(1.0).unwrap();
        assert!((one.lhs - 8.0).abs() < 1e-12 && (one.rhs - 8.0).abs() < 1e-12);
        let near = ellipsoid_condition(1.0 - 1e-9).unwrap();
        assert!((near.lhs - 8.0).abs() < 1e-7);
        assert!(ellipsoid_condition(0.1).unwrap().holds);
        assert!(ellipsoid_condition(0.0).is_err());
        let set = ellipsoid_holding_set(400).unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(set[0].0, 0.0);
        assert_eq!(set[1].1, 1.0);
    }

    #[test]
    fn torus_thresholds() {
        let m = torus_threshold().unwrap();
        let r = torus_condition(m).unwrap();
        assert!((r.lhs - r.rhs).abs() < 1e-12);
        assert!(torus_condition(0.45).unwrap().holds == false);
        assert!(torus_condition(1e-6).unwrap().holds);
        let ma = torus_threshold_averaged().unwrap();
        assert!(ma < m);
    }

    #[test]
    fn sphere_chain_has_zero_margins() {
        let p = RevolutionProfile::sphere(1.0).unwrap();
        let r = bound_chain(&p, BoundaryParameter::Finite(-1.0), &ChainOptions::default()).unwrap();
        assert_eq!(r.shell.r1, 0.0);
        assert_eq!(r.margin_shell, 0.0);
        assert!(r.margin_direct.unwrap().abs() < 1e-4);
        assert!(r.holds);
        assert_eq!(r.admissibility, Admissibility::ConvexSphereLike);
    }
}
