//! Volumes and areas of the inner parallel sets `Ω_t = {x ∈ Ω : dist(x, ∂Ω) < t}`.
//!
//! The signed distance is evaluated on the nodes of a tensor grid over the
//! meridian region. Each grid square is split into two triangles on which the
//! distance is interpolated linearly; the superlevel sets `{ρ > t}` are then
//! clipped polygons whose `2πs`-weighted areas are integrated exactly, and the
//! level curves `{ρ = t}` give the parallel-surface areas. Two nested grids
//! are combined by Richardson extrapolation.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::distance::BoundaryDistance;
use super::checks::unit_sphere_area;
use super::profile::{Family, RevolutionProfile, Topology};
use super::summary::GeometrySummary;
use crate::error::{invalid, Error, Result};

/// Resolution and accuracy target of the grid sampling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingPlan {
    /// Cells along the longer side of the bounding box on the coarse grid.
    pub cells: usize,
    /// Refinement stops with an error once the coarse grid would exceed this.
    pub max_cells: usize,
    /// Target for the area error estimate, relative to the boundary area.
    pub tol: f64,
    /// Use closed forms for spheres and tori instead of sampling.
    pub closed_form: bool,
}

impl Default for SamplingPlan {
    fn default() -> Self {
        SamplingPlan { cells: 160, max_cells: 640, tol: 1e-3, closed_form: true }
    }
}

impl SamplingPlan {
    pub fn sampled() -> Self {
        SamplingPlan { closed_form: false, ..Self::default() }
    }

    pub fn with_cells(self, cells: usize) -> Self {
        SamplingPlan { cells, max_cells: self.max_cells.max(cells), ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ParallelMethod {
    ClosedForm,
    Sampled { cells: usize },
}

/// Parallel-set profile on a uniform grid `0 = t₀ < … < t_last = R`.
#[derive(Debug, Clone, Serialize)]
pub struct ParallelProfile {
    pub dimension: usize,
    pub t_grid: Vec<f64>,
    /// `Vol(Ω_t)`, the boundary layer of width `t`.
    pub volume_at: Vec<f64>,
    /// `Area(∂Ω_t)`, the area of the level surface at distance `t`.
    pub area_at: Vec<f64>,
    /// `Vol(Ω) − Vol(Ω_t)`, stored separately to avoid cancellation.
    pub inner_volume_at: Vec<f64>,
    pub volume: f64,
    pub area: f64,
    pub inner_radius: f64,
    pub volume_error: f64,
    pub area_error: f64,
    pub method: ParallelMethod,
}

fn uniform_grid(r: f64, n_t: usize) -> Vec<f64> {
    let mut t: Vec<f64> = (0..n_t).map(|i| r * i as f64 / (n_t - 1) as f64).collect();
    t[n_t - 1] = r;
    t
}

impl ParallelProfile {
    /// Closed-form profile of the `n`-ball of radius `radius`.
    pub fn ball(n: usize, radius: f64, n_t: usize) -> Result<Self> {
        if n < 2 || !(radius > 0.0) || n_t < 2 {
            return Err(invalid(format!("ball profile needs n ≥ 2, R > 0, n_t ≥ 2 (got {n}, {radius}, {n_t})")));
        }
        let sa = unit_sphere_area(n);
        let vol = sa / n as f64 * radius.powi(n as i32);
        let t_grid = uniform_grid(radius, n_t);
        let inner: Vec<f64> = t_grid.iter().map(|&t| sa / n as f64 * (radius - t).powi(n as i32)).collect();
        Ok(ParallelProfile {
            dimension: n,
            volume_at: inner.iter().map(|w| vol - w).collect(),
            area_at: t_grid.iter().map(|&t| sa * (radius - t).powi(n as i32 - 1)).collect(),
            inner_volume_at: inner,
            t_grid,
            volume: vol,
            area: sa * radius.powi(n as i32 - 1),
            inner_radius: radius,
            volume_error: 0.0,
            area_error: 0.0,
            method: ParallelMethod::ClosedForm,
        })
    }

    /// Solid torus with major radius `major` and tube radius `minor`.
    fn torus(major: f64, minor: f64, n_t: usize) -> Self {
        let t_grid = uniform_grid(minor, n_t);
        let inner: Vec<f64> = t_grid.iter().map(|&t| 2.0 * PI * PI * major * (minor - t).powi(2)).collect();
        let vol = 2.0 * PI * PI * major * minor * minor;
        ParallelProfile {
            dimension: 3,
            volume_at: inner.iter().map(|w| vol - w).collect(),
            area_at: t_grid.iter().map(|&t| 4.0 * PI * PI * major * (minor - t)).collect(),
            inner_volume_at: inner,
            t_grid,
            volume: vol,
            area: 4.0 * PI * PI * major * minor,
            inner_radius: minor,
            volume_error: 0.0,
            area_error: 0.0,
            method: ParallelMethod::ClosedForm,
        }
    }

    /// Linear interpolation of `(Vol(Ω_t), Area(∂Ω_t))`, for `t` in `[0, R]`.
    pub fn at(&self, t: f64) -> (f64, f64) {
        let t = t.clamp(0.0, self.inner_radius);
        let k = self.t_grid.partition_point(|&x| x < t).clamp(1, self.t_grid.len() - 1);
        let (t0, t1) = (self.t_grid[k - 1], self.t_grid[k]);
        let w = if t1 > t0 { (t - t0) / (t1 - t0) } else { 0.0 };
        let lerp = |v: &[f64]| v[k - 1] + w * (v[k] - v[k - 1]);
        (lerp(&self.volume_at), lerp(&self.area_at))
    }
}

/// Parallel-set profile of a body of revolution on `n_t` equally spaced levels.
pub fn parallel_profile(
    profile: &RevolutionProfile,
    summary: &GeometrySummary,
    n_t: usize,
    plan: SamplingPlan,
) -> Result<ParallelProfile> {
    if n_t < 2 {
        return Err(invalid(format!("need at least two levels, got {n_t}")));
    }
    if plan.cells < 8 || !(plan.tol > 0.0) {
        return Err(invalid(format!("bad sampling plan {plan:?}")));
    }
    if plan.closed_form {
        match profile.family() {
            Family::Sphere { radius } => return ParallelProfile::ball(3, radius, n_t),
            Family::Torus { major, minor } => return Ok(ParallelProfile::torus(major, minor, n_t)),
            _ => {}
        }
    }
    let dist = BoundaryDistance::new(profile);
    let t_grid = uniform_grid(summary.inner_radius, n_t);
    let mut cells = plan.cells;
    let mut coarse = LevelSums::sample(&dist, &t_grid, cells);
    loop {
        let fine = LevelSums::sample(&dist, &t_grid, 2 * cells);
        let area_error = coarse.area.iter().zip(&fine.area).map(|(c, f)| (f - c).abs()).fold(0.0, f64::max);
        let volume_error = coarse.inner.iter().zip(&fine.inner).map(|(c, f)| (f - c).abs()).fold(0.0, f64::max);
        if area_error <= plan.tol * summary.area {
            return Ok(assemble(summary, t_grid, &coarse, &fine, cells, area_error, volume_error));
        }
        if 2 * cells > plan.max_cells {
            return Err(Error::SamplingBudget { cells: 2 * cells, estimate: area_error / summary.area });
        }
        cells *= 2;
        coarse = fine;
    }
}

fn assemble(
    summary: &GeometrySummary,
    t_grid: Vec<f64>,
    coarse: &LevelSums,
    fine: &LevelSums,
    cells: usize,
    area_error: f64,
    volume_error: f64,
) -> ParallelProfile {
    let n = t_grid.len();
    let extrapolate = |c: &[f64], f: &[f64]| -> Vec<f64> {
        c.iter().zip(f).map(|(c, f)| ((4.0 * f - c) / 3.0).max(0.0)).collect()
    };
    let mut inner = extrapolate(&coarse.inner, &fine.inner);
    let mut area = extrapolate(&coarse.area, &fine.area);
    inner[0] = summary.volume;
    area[0] = summary.area;
    inner[n - 1] = 0.0;
    area[n - 1] = 0.0;
    // the sampled inner volume is a decreasing function of t; keep it so
    for i in 1..n {
        inner[i] = inner[i].min(inner[i - 1]);
    }
    ParallelProfile {
        dimension: 3,
        volume_at: inner.iter().map(|w| summary.volume - w).collect(),
        area_at: area,
        inner_volume_at: inner,
        t_grid,
        volume: summary.volume,
        area: summary.area,
        inner_radius: summary.inner_radius,
        volume_error,
        area_error,
        method: ParallelMethod::Sampled { cells: 2 * cells },
    }
}

/// Superlevel volumes and level-curve areas for one grid resolution.
struct LevelSums {
    inner: Vec<f64>,
    area: Vec<f64>,
}

impl LevelSums {
    fn sample(dist: &BoundaryDistance<'_>, t_grid: &[f64], cells: usize) -> Self {
        let profile = dist.profile();
        let b = profile.bounding_box();
        let h = (b[1] - b[0]).max(b[3] - b[2]) / cells as f64;
        let s0 = if profile.topology() == Topology::SphereLike { 0.0 } else { (b[0] - 2.0 * h).max(0.0) };
        let z0 = b[2] - 2.0 * h;
        let ns = ((b[1] + 2.0 * h - s0) / h).ceil() as usize;
        let nz = ((b[3] + 2.0 * h - z0) / h).ceil() as usize;
        let node = |i: usize, j: usize| [s0 + h * i as f64, z0 + h * j as f64];
        let rho: Vec<f64> = (0..(ns + 1) * (nz + 1))
            .into_par_iter()
            .map(|k| dist.signed_distance(node(k % (ns + 1), k / (ns + 1))))
            .collect();
        let nt = t_grid.len();
        let mut full = vec![0.0; nt + 1];
        let mut inner = vec![0.0; nt];
        let mut area = vec![0.0; nt];
        for j in 0..nz {
            for i in 0..ns {
                let k = j * (ns + 1) + i;
                let corners = [(k, node(i, j)), (k + 1, node(i + 1, j)), (k + ns + 2, node(i + 1, j + 1)), (k + ns + 1, node(i, j + 1))];
                for tri in [[0, 1, 2], [0, 2, 3]] {
                    let mut v = tri.map(|c| (rho[corners[c].0], corners[c].1));
                    if v.iter().all(|x| x.0 <= 0.0) {
                        continue;
                    }
                    v.sort_by(|a, b| a.0.total_cmp(&b.0));
                    let lo = t_grid.partition_point(|&t| t < v[0].0);
                    let whole = triangle_moment(v[0].1, v[1].1, v[2].1);
                    full[0] += whole;
                    full[lo] -= whole;
                    for (jt, &t) in t_grid.iter().enumerate().skip(lo) {
                        if t >= v[2].0 {
                            break;
                        }
                        let (w, a) = clip(&v, t);
                        inner[jt] += w;
                        area[jt] += a;
                    }
                }
            }
        }
        let mut acc = 0.0;
        for jt in 0..nt {
            acc += full[jt];
            inner[jt] += acc;
        }
        LevelSums { inner, area }
    }
}

/// `∫ 2πs dA` over a triangle.
fn triangle_moment(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    let area = 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])).abs();
    2.0 * PI * area * (a[0] + b[0] + c[0]) / 3.0
}

fn crossing(p: (f64, [f64; 2]), q: (f64, [f64; 2]), t: f64) -> [f64; 2] {
    let w = if q.0 > p.0 { (t - p.0) / (q.0 - p.0) } else { 0.5 };
    [p.1[0] + w * (q.1[0] - p.1[0]), p.1[1] + w * (q.1[1] - p.1[1])]
}

/// Clips a triangle with sorted nodal values `v₀ ≤ v₁ ≤ v₂` to `{ρ > t}`,
/// `v₀ ≤ t < v₂`. Returns the `2πs`-weighted area of the clipped part and the
/// `2πs`-weighted length of the level segment.
fn clip(v: &[(f64, [f64; 2]); 3], t: f64) -> (f64, f64) {
    let (p, q, moment) = if t < v[1].0 {
        let p = crossing(v[0], v[1], t);
        let q = crossing(v[0], v[2], t);
        (p, q, triangle_moment(p, v[1].1, v[2].1) + triangle_moment(p, v[2].1, q))
    } else {
        let p = crossing(v[1], v[2], t);
        let q = crossing(v[0], v[2], t);
        (p, q, triangle_moment(p, v[2].1, q))
    };
    let len = ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt();
    (moment, 2.0 * PI * len * 0.5 * (p[0] + q[0]))
}
