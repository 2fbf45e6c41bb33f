//! Geometric inequalities used by the reduction: the Heintze–Karcher bound on
//! parallel-surface areas, the lower bound on total mean curvature, and the
//! mean-curvature condition for the `n`-dimensional route.

use std::f64::consts::PI;

use serde::Serialize;

use super::parallel::ParallelProfile;
use super::profile::Topology;
use super::summary::{Convexity, GeometrySummary};
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    NotApplicable,
}

/// Smallest slack of an inequality `lhs ≥ rhs` over the points checked.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MarginReport {
    pub margin: f64,
    /// Where the smallest slack occurs (a `t` value, or `0` for scalar checks).
    pub at: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
}

impl MarginReport {
    fn new(margin: f64, at: f64, tolerance: f64) -> Self {
        let verdict = if margin >= -tolerance { Verdict::Holds } else { Verdict::Violated };
        MarginReport { margin, at, tolerance, verdict }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// `Area(∂Ω_t) ≤ (1 − η̄t)₊^{n−1} Area(∂Ω)` on every level of the profile. The
/// tolerance is the profile's own area error estimate.
pub fn check_heintze_karcher(pp: &ParallelProfile, eta_bar: f64, area0: f64, n: usize) -> Result<MarginReport> {
    if n < 2 || !(area0 > 0.0) || !eta_bar.is_finite() {
        return Err(invalid(format!("bad Heintze–Karcher input (n = {n}, area = {area0}, eta = {eta_bar})")));
    }
    let mut worst = (f64::INFINITY, 0.0);
    for (&t, &a) in pp.t_grid.iter().zip(&pp.area_at) {
        let bound = (1.0 - eta_bar * t).max(0.0).powi(n as i32 - 1) * area0;
        let slack = bound - a;
        if slack < worst.0 {
            worst = (slack, t);
        }
    }
    Ok(MarginReport::new(worst.0, worst.1, pp.area_error + 1e-12 * area0))
}

/// `m ≥ 2√π √Area` for convex or axiconvex sphere-like surfaces.
pub fn check_total_mean_bound(summary: &GeometrySummary, tol: f64) -> MarginReport {
    let margin = summary.total_mean_curvature - 2.0 * PI.sqrt() * summary.area.sqrt();
    let applicable = summary.topology == Topology::SphereLike && summary.convexity != Convexity::Neither;
    let mut report = MarginReport::new(margin, 0.0, tol);
    if !applicable {
        report.verdict = Verdict::NotApplicable;
    }
    report
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct MeanConditionReport {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// `η̄^{n−1} ≥ nω_n / Area`, with `nω_n` the area of the unit sphere in `ℝⁿ`.
pub fn mean_condition(summary: &GeometrySummary, n: usize) -> Result<MeanConditionReport> {
    mean_condition_for(summary.eta_bar, summary.area, n)
}

pub fn mean_condition_for(eta_bar: f64, area: f64, n: usize) -> Result<MeanConditionReport> {
    if n < 2 || !(area > 0.0) {
        return Err(invalid(format!("bad mean-curvature condition input (n = {n}, area = {area})")));
    }
    let lhs = eta_bar.max(0.0).powi(n as i32 - 1);
    let rhs = unit_sphere_area(n) / area;
    Ok(MeanConditionReport { lhs, rhs, holds: eta_bar > 0.0 && lhs >= rhs })
}

/// Area of the unit sphere `S^{n−1} ⊂ ℝⁿ`, `2π^{n/2}/Γ(n/2)`.
pub fn unit_sphere_area(n: usize) -> f64 {
    let mut a = if n % 2 == 0 { 2.0 * PI } else { 2.0 };
    let mut k = if n % 2 == 0 { 2 } else { 1 };
    while k < n {
        a *= 2.0 * PI / k as f64;
        k += 2;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::parallel::{parallel_profile, SamplingPlan};
    use crate::geometry::profile::RevolutionProfile;
    use crate::geometry::summary::{summarize, DEFAULT_QUAD_TOL};

    #[test]
    fn sphere_areas() {
        assert!((unit_sphere_area(1) - 2.0).abs() < 1e-15);
        assert!((unit_sphere_area(3) - 4.0 * PI).abs() < 1e-14);
        assert!((unit_sphere_area(5) - 8.0 * PI * PI / 3.0).abs() < 1e-13);
    }

    #[test]
    fn unit_sphere_is_an_equality_case() {
        let p = RevolutionProfile::sphere(1.0).unwrap();
        let s = summarize(&p, DEFAULT_QUAD_TOL).unwrap();
        let pp = parallel_profile(&p, &s, 11, SamplingPlan::default()).unwrap();
        let hk = check_heintze_karcher(&pp, s.eta_bar, s.area, 3).unwrap();
        assert!(hk.margin.abs() < 1e-12);
        let tm = check_total_mean_bound(&s, 1e-10);
        assert!(tm.margin.abs() < 1e-10 && tm.holds());
        let mc = mean_condition(&s, 3).unwrap();
        assert!((mc.lhs - 1.0).abs() < 1e-10 && (mc.rhs - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spheroids_satisfy_total_mean_bound() {
        for a in [0.8, 0.2] {
            let s = summarize(&RevolutionProfile::spheroid(a, 1.0).unwrap(), DEFAULT_QUAD_TOL).unwrap();
            let r = check_total_mean_bound(&s, 1e-10);
            assert!(r.holds() && r.margin > 0.0, "a = {a}: {r:?}");
        }
    }

    #[test]
    fn torus_is_not_applicable_for_total_mean_bound() {
        let s = summarize(&RevolutionProfile::torus(1.0, 0.3).unwrap(), DEFAULT_QUAD_TOL).unwrap();
        assert_eq!(check_total_mean_bound(&s, 1e-10).verdict, Verdict::NotApplicable);
    }

    #[test]
    fn negative_eta_fails_mean_condition() {
        assert!(!mean_condition_for(-0.1, 10.0, 3).unwrap().holds);
    }
}
