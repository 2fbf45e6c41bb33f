//! WebAssembly bindings for the demo page in `www/`.
//!
//! Each operation has a plain Rust function returning a serialisable value,
//! which is what the native tests exercise, and a `#[wasm_bindgen]` wrapper
//! that hands JSON to the page.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use robiniso::geometry::{check_heintze_karcher, parallel_profile, summarize, RevolutionProfile, SamplingPlan};
use robiniso::radial::{solve, RadialBallProblem, RadialProblem, RadialShellProblem, DEFAULT_TOL};
use robiniso::reduction::{
    ellipsoid_condition, r_of_t, torus_condition, torus_condition_averaged, torus_threshold, torus_threshold_averaged,
};
use robiniso::{BoundaryParameter, Result};

const LEVELS: usize = 81;

#[derive(Debug, Serialize)]
pub struct RadialView {
    pub eigenvalue: f64,
    pub error_estimate: f64,
    pub r: Vec<f64>,
    pub phi: Vec<f64>,
    /// `α|∂|/|Ω|`, the quotient of a constant; absent for Dirichlet.
    pub constant_bound: Option<f64>,
}

/// First radial eigenfunction on the ball (`inner = 0`) or the shell
/// `inner < r < outer`. `NaN` for `alpha` selects Dirichlet.
pub fn radial_view(n: usize, inner: f64, outer: f64, alpha: f64) -> Result<RadialView> {
    let alpha = if alpha.is_nan() { BoundaryParameter::Dirichlet } else { BoundaryParameter::Finite(alpha) };
    let problem: RadialProblem = if inner > 0.0 {
        RadialShellProblem::new(n, inner, outer, alpha).into()
    } else {
        RadialBallProblem::new(n, outer, alpha).into()
    };
    let pair = solve(&problem, DEFAULT_TOL)?;
    // thin the finest grid down to what a canvas can show
    let step = pair.grid.len().div_ceil(200).max(1);
    let keep = |v: &[f64]| -> Vec<f64> {
        let mut out: Vec<f64> = v.iter().step_by(step).copied().collect();
        if (v.len() - 1) % step != 0 {
            out.push(v[v.len() - 1]);
        }
        out
    };
    Ok(RadialView {
        eigenvalue: pair.eigenvalue,
        error_estimate: pair.error_estimate,
        r: keep(&pair.grid),
        phi: keep(&pair.profile),
        constant_bound: problem.constant_test_bound(),
    })
}

#[derive(Debug, Serialize)]
pub struct ReductionView {
    pub area: f64,
    pub volume: f64,
    pub eta_bar: f64,
    pub r1: f64,
    pub r2: f64,
    pub t: Vec<f64>,
    pub r: Vec<f64>,
    pub rprime: Vec<Option<f64>>,
    pub area_at: Vec<f64>,
    /// Heintze–Karcher bound on `area_at`.
    pub area_bound: Vec<f64>,
    pub max_abs_rprime: f64,
    pub certificate: bool,
    pub hk_margin: f64,
    pub hk_holds: bool,
}

/// Parallel-set profile and `r(t)` for a spheroid (`kind = "spheroid"`,
/// semi-axes `p`, `q`) or a torus (`kind = "torus"`, radii `p > q`).
pub fn reduction_view(kind: &str, p: f64, q: f64) -> Result<ReductionView> {
    let profile = match kind {
        "spheroid" => RevolutionProfile::spheroid(p, q)?,
        "torus" => RevolutionProfile::torus(p, q)?,
        other => return Err(robiniso::Error::InvalidInput(format!("unknown shape '{other}'"))),
    };
    let summary = summarize(&profile, 1e-10)?;
    let pp = parallel_profile(&profile, &summary, LEVELS, SamplingPlan::default())?;
    let rt = r_of_t(&pp, 3)?;
    let hk = check_heintze_karcher(&pp, summary.eta_bar, summary.area, 3)?;
    let area_bound = pp.t_grid.iter().map(|&t| (1.0 - summary.eta_bar * t).max(0.0).powi(2) * summary.area).collect();
    Ok(ReductionView {
        area: summary.area,
        volume: summary.volume,
        eta_bar: summary.eta_bar,
        r1: rt.shell.r1,
        r2: rt.shell.r2,
        rprime: rt.rprime.iter().map(|&v| v.is_finite().then_some(v)).collect(),
        t: rt.t_grid,
        r: rt.r,
        area_at: pp.area_at,
        area_bound,
        max_abs_rprime: rt.max_abs_rprime,
        certificate: rt.holds,
        hk_margin: hk.margin,
        hk_holds: hk.holds(),
    })
}

#[derive(Debug, Serialize)]
pub struct ConditionCurves {
    pub ellipsoid_m: Vec<f64>,
    /// `lhs − rhs` of the spheroid condition.
    pub ellipsoid_gap: Vec<f64>,
    pub torus_m: Vec<f64>,
    pub torus_gap: Vec<f64>,
    pub torus_gap_averaged: Vec<f64>,
    pub torus_threshold: f64,
    pub torus_threshold_averaged: f64,
}

pub fn condition_curves(samples: usize) -> Result<ConditionCurves> {
    let samples = samples.clamp(8, 2000);
    let mut out = ConditionCurves {
        ellipsoid_m: Vec::with_capacity(samples),
        ellipsoid_gap: Vec::with_capacity(samples),
        torus_m: Vec::with_capacity(samples),
        torus_gap: Vec::with_capacity(samples),
        torus_gap_averaged: Vec::with_capacity(samples),
        torus_threshold: torus_threshold()?,
        torus_threshold_averaged: torus_threshold_averaged()?,
    };
    for i in 1..=samples {
        let m = i as f64 / samples as f64;
        let e = ellipsoid_condition(m)?;
        out.ellipsoid_m.push(m);
        out.ellipsoid_gap.push(e.lhs - e.rhs);
        let m = 0.5 * i as f64 / (samples + 1) as f64;
        let (t, ta) = (torus_condition(m)?, torus_condition_averaged(m)?);
        out.torus_m.push(m);
        out.torus_gap.push(t.lhs - t.rhs);
        out.torus_gap_averaged.push(ta.lhs - ta.rhs);
    }
    Ok(out)
}

fn to_js<T: Serialize>(value: Result<T>) -> std::result::Result<String, JsError> {
    let value = value.map_err(|e| JsError::new(&e.to_string()))?;
    serde_json::to_string(&value).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn radial(n: usize, inner: f64, outer: f64, alpha: f64) -> std::result::Result<String, JsError> {
    to_js(radial_view(n, inner, outer, alpha))
}

#[wasm_bindgen]
pub fn reduction(kind: &str, p: f64, q: f64) -> std::result::Result<String, JsError> {
    to_js(reduction_view(kind, p, q))
}

#[wasm_bindgen]
pub fn conditions(samples: usize) -> std::result::Result<String, JsError> {
    to_js(condition_curves(samples))
}
