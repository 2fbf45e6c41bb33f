use std::f64::consts::PI;
use std::path::Path;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use rayon::prelude::*;

use robiniso::domain::{classify_spheroid, DomainSpec, SpheroidKind};
use robiniso::geometry::checks::{check_heintze_karcher, mean_condition_for};
use robiniso::geometry::{parallel_profile, summarize, Family, GeometrySummary, RevolutionProfile, SamplingPlan};
use robiniso::radial::{self, check_comparison, RadialBallProblem, RadialShellProblem};
use robiniso::reduction::{
    admissibility, chain_from_summary, ellipsoid_condition, ellipsoid_holding_set, r_of_t,
    torus_condition, torus_condition_averaged, torus_threshold, torus_threshold_averaged, BoundChainReport,
    ChainOptions,
};
use robiniso::secular::secular_root_n3;
use robiniso::BoundaryParameter;

use crate::report::{num, Cell, Report};
use crate::{Failure, Outcome};

const QUAD_TOL: f64 = 1e-11;

fn load_spec(path: &Path) -> Result<DomainSpec, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(DomainSpec::from_json(&text)?)
}

fn spec_meta(report: &mut Report, spec: &DomainSpec) {
    report.meta("family", format!("{:?}", spec.family).to_lowercase());
    for (k, v) in &spec.parameters {
        report.meta(&format!("parameter_{k}"), *v);
    }
    if let Some(samples) = &spec.samples {
        report.meta("samples", samples.len());
    }
    if let Some(kind) = spec.spheroid_kind() {
        report.meta("spheroid_kind", format!("{kind:?}").to_lowercase());
    }
}

fn alpha_text(a: BoundaryParameter) -> String {
    match a {
        BoundaryParameter::Finite(v) => num(v),
        BoundaryParameter::Dirichlet => "dirichlet".into(),
    }
}

fn ok(report: Report) -> Result<Outcome, Failure> {
    Ok(Outcome { report, violated: false })
}

pub fn eig_ball(n: usize, radius: f64, alpha: BoundaryParameter, tol: f64) -> Result<Outcome, Failure> {
    let problem = RadialBallProblem::new(n, radius, alpha);
    let r = radial::solve_ball(&problem, tol)?;
    let mut report = Report::new("eig-ball");
    report.meta("n", n).meta("radius", radius).meta("alpha", alpha_text(alpha)).tolerance("tol", tol);
    report.columns(&["lambda1", "error_estimate", "levels", "boundary_residual", "secular_root", "constant_test_bound"]);
    let secular = if n == 3 { Some(secular_root_n3(problem)?) } else { None };
    report.row(vec![
        r.eigenvalue.into(),
        r.error_estimate.into(),
        r.levels.into(),
        r.boundary_residual.into(),
        secular.into(),
        radial::RadialProblem::from(problem).constant_test_bound().into(),
    ]);
    ok(report)
}

pub fn eig_shell(n: usize, inner: f64, outer: f64, alpha: BoundaryParameter, tol: f64) -> Result<Outcome, Failure> {
    RadialShellProblem::new(n, inner, outer, alpha).validate()?;
    let v = check_comparison(n, inner, outer, alpha, tol)?;
    let mut report = Report::new("eig-shell");
    report
        .meta("n", n)
        .meta("inner", inner)
        .meta("outer", outer)
        .meta("alpha", alpha_text(alpha))
        .tolerance("tol", tol);
    report.columns(&["mu1", "lambda1_ball", "margin", "holds", "asserted"]);
    report.row(vec![v.mu1.into(), v.lambda1.into(), v.margin.into(), v.holds.into(), v.asserted.into()]);
    Ok(Outcome { report, violated: v.asserted && !v.holds })
}

fn summary_meta(report: &mut Report, s: &GeometrySummary) {
    report
        .meta("area", s.area)
        .meta("volume", s.volume)
        .meta("total_mean_curvature", s.total_mean_curvature)
        .meta("eta_bar", s.eta_bar)
        .meta("eta_bar_sum", s.eta_bar_sum)
        .meta("inner_radius", s.inner_radius)
        .meta("euler_characteristic", s.euler_characteristic)
        .meta("convexity", format!("{:?}", s.convexity).to_lowercase());
}

pub fn reduce(path: &Path, grid: usize, levels: usize) -> Result<Outcome, Failure> {
    let spec = load_spec(path)?;
    let profile = spec.profile()?;
    let s = summarize(&profile, QUAD_TOL)?;
    let plan = SamplingPlan::default().with_cells(grid);
    let pp = parallel_profile(&profile, &s, levels, plan)?;
    let rt = r_of_t(&pp, 3)?;
    let hk = check_heintze_karcher(&pp, s.eta_bar, s.area, 3)?;
    let (route, _) = admissibility(&s)?;
    let mut report = Report::new("reduce");
    spec_meta(&mut report, &spec);
    summary_meta(&mut report, &s);
    report
        .meta("r1", rt.shell.r1)
        .meta("r2", rt.shell.r2)
        .meta("admissibility", format!("{route:?}"))
        .meta("max_abs_rprime", rt.max_abs_rprime)
        .meta("max_abs_rprime_at", rt.argmax_t)
        .meta("rprime_certificate", rt.holds)
        .meta("heintze_karcher_margin", hk.margin)
        .meta("heintze_karcher_holds", hk.holds())
        .meta("parallel_method", format!("{:?}", pp.method))
        .meta("area_error", pp.area_error)
        .meta("volume_error", pp.volume_error)
        .tolerance("quad_tol", QUAD_TOL)
        .tolerance("sampling_tol", plan.tol)
        .tolerance("certificate_tol", rt.tolerance)
        .tolerance("heintze_karcher_tol", hk.tolerance);
    report.columns(&["t", "volume", "area", "inner_volume", "r", "rprime", "heintze_karcher_bound"]);
    for i in 0..pp.t_grid.len() {
        let t = pp.t_grid[i];
        let bound = (1.0 - s.eta_bar * t).max(0.0).powi(2) * s.area;
        let rp = if rt.rprime[i].is_nan() { Cell::Missing } else { rt.rprime[i].into() };
        report.row(vec![
            t.into(),
            pp.volume_at[i].into(),
            pp.area_at[i].into(),
            pp.inner_volume_at[i].into(),
            rt.r[i].into(),
            rp,
            bound.into(),
        ]);
    }
    let violated = !hk.holds() || (route.is_admissible() && !rt.holds);
    Ok(Outcome { report, violated })
}

const CHAIN_COLUMNS: [&str; 16] = [
    "alpha",
    "admissibility",
    "r1",
    "r2",
    "lambda1_direct",
    "direct_error",
    "direct_order",
    "mu1_shell",
    "lambda1_ball",
    "margin_direct",
    "tol_direct",
    "asserted_direct",
    "margin_shell",
    "tol_shell",
    "asserted_shell",
    "holds",
];

fn chain_cells(r: &BoundChainReport) -> Vec<Cell> {
    vec![
        alpha_text(r.alpha).into(),
        format!("{:?}", r.admissibility).into(),
        r.shell.r1.into(),
        r.shell.r2.into(),
        r.lambda1_direct.into(),
        r.direct_error.into(),
        r.direct_order.into(),
        r.mu1_shell.into(),
        r.lambda1_ball.into(),
        r.margin_direct.into(),
        r.tol_direct.into(),
        r.asserted_direct.into(),
        r.margin_shell.into(),
        r.tol_shell.into(),
        r.asserted_shell.into(),
        r.holds.into(),
    ]
}

fn chain_options(s: &GeometrySummary, grid: usize, tol: f64, no_direct: bool) -> Result<ChainOptions, Failure> {
    if grid < 4 {
        return Err(Failure::Usage(format!("--grid must be at least 4, got {grid}")));
    }
    Ok(ChainOptions { tol, mesh_size: Some(s.inner_radius / grid as f64), skip_direct: no_direct, quad_tol: QUAD_TOL })
}

pub fn chain(
    path: &Path,
    alpha: Option<BoundaryParameter>,
    grid: usize,
    tol: f64,
    no_direct: bool,
) -> Result<Outcome, Failure> {
    let spec = load_spec(path)?;
    let alpha = alpha
        .or(spec.alpha)
        .ok_or_else(|| Failure::Usage("no boundary parameter: pass --alpha or set \"alpha\" in the spec".into()))?;
    let profile = spec.profile()?;
    let s = summarize(&profile, QUAD_TOL)?;
    let opts = chain_options(&s, grid, tol, no_direct)?;
    let r = chain_from_summary(&profile, &s, alpha, &opts)?;
    let mut report = Report::new("chain");
    spec_meta(&mut report, &spec);
    summary_meta(&mut report, &s);
    report
        .meta("mesh_size", opts.mesh_size)
        .meta("mean_condition_lhs", r.mean_condition.lhs)
        .meta("mean_condition_rhs", r.mean_condition.rhs)
        .meta("informational_only", !r.admissibility.is_admissible())
        .tolerance("tol", tol)
        .tolerance("quad_tol", QUAD_TOL);
    report.columns(&CHAIN_COLUMNS);
    report.row(chain_cells(&r));
    Ok(Outcome { violated: !r.holds, report })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl Range {
    fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        (0..self.count).map(|i| self.start + (self.end - self.start) * i as f64 / (self.count - 1) as f64).collect()
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || format!("expected start:end:count, got '{s}'");
        if parts.len() != 3 {
            return Err(bad());
        }
        let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let end: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
        if count == 0 || !start.is_finite() || !end.is_finite() {
            return Err(bad());
        }
        Ok(Range { start, end, count })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepFamily {
    /// Prolate spheroids with semi-axes m, m, 1.
    Spheroid,
    /// Oblate spheroids with semi-axes 1, 1, m.
    Oblate,
    /// Tori with radii 1 and m.
    Torus,
    /// Shells m < |x| < 1 against the unit ball.
    Shell,
    /// The torus mean-curvature condition as a function of m.
    TorusCondition,
    /// The prolate-spheroid mean-curvature condition as a function of m.
    EllipsoidCondition,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    family: SweepFamily,
    /// Parameter values as start:end:count.
    #[arg(long, default_value = "0.1:0.9:9")]
    range: Range,
    /// Comma-separated boundary parameters.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',', default_value = "-1")]
    alpha: Vec<BoundaryParameter>,
    /// Comma-separated dimensions (shell sweeps only).
    #[arg(long, value_delimiter = ',', default_value = "3")]
    n: Vec<usize>,
    /// Coarse mesh cells across the inner radius for direct solves.
    #[arg(long, default_value_t = 12)]
    grid: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Skip direct solves on the domains.
    #[arg(long)]
    no_direct: bool,
}

fn sweep_profile(family: SweepFamily, m: f64) -> Result<RevolutionProfile, Failure> {
    Ok(match family {
        SweepFamily::Spheroid => RevolutionProfile::spheroid(m, 1.0)?,
        SweepFamily::Oblate => RevolutionProfile::spheroid(1.0, m)?,
        SweepFamily::Torus => RevolutionProfile::torus(1.0, m)?,
        _ => unreachable!("not a domain family"),
    })
}

pub fn sweep(args: &SweepArgs) -> Result<Outcome, Failure> {
    let ms = args.range.values();
    let mut report = Report::new("sweep");
    report
        .meta("family", format!("{:?}", args.family).to_lowercase())
        .meta("range", format!("{}:{}:{}", num(args.range.start), num(args.range.end), args.range.count));
    match args.family {
        SweepFamily::TorusCondition => {
            report
                .meta("threshold", torus_threshold()?)
                .meta("threshold_averaged", torus_threshold_averaged()?)
                .tolerance("threshold_tol", 1e-14);
            report.columns(&["m", "lhs", "rhs", "holds", "rhs_averaged", "holds_averaged"]);
            for &m in &ms {
                let a = torus_condition(m)?;
                let b = torus_condition_averaged(m)?;
                report.row(vec![m.into(), a.lhs.into(), a.rhs.into(), a.holds.into(), b.rhs.into(), b.holds.into()]);
            }
            ok(report)
        }
        SweepFamily::EllipsoidCondition => {
            let set = ellipsoid_holding_set(1000)?;
            let text: Vec<String> = set.iter().map(|(a, b)| format!("[{}, {}]", num(*a), num(*b))).collect();
            report.meta("holding_set", text.join(" ")).tolerance("threshold_tol", 1e-14);
            report.columns(&["m", "lhs", "rhs", "holds"]);
            for &m in &ms {
                let c = ellipsoid_condition(m)?;
                report.row(vec![m.into(), c.lhs.into(), c.rhs.into(), c.holds.into()]);
            }
            ok(report)
        }
        SweepFamily::Shell => {
            report.tolerance("tol", args.tol);
            report.columns(&["n", "ratio", "alpha", "mu1", "lambda1_ball", "margin", "holds", "asserted"]);
            let cells: Vec<(usize, f64, BoundaryParameter)> = args
                .n
                .iter()
                .flat_map(|&n| ms.iter().flat_map(move |&m| args.alpha.iter().map(move |&a| (n, m, a))))
                .collect();
            let results: Vec<_> =
                cells.par_iter().map(|&(n, m, a)| check_comparison(n, m, 1.0, a, args.tol)).collect();
            let mut violated = false;
            for (&(n, m, a), r) in cells.iter().zip(results) {
                let v = r?;
                violated |= v.asserted && !v.holds;
                report.row(vec![
                    n.into(),
                    m.into(),
                    alpha_text(a).into(),
                    v.mu1.into(),
                    v.lambda1.into(),
                    v.margin.into(),
                    v.holds.into(),
                    v.asserted.into(),
                ]);
            }
            Ok(Outcome { report, violated })
        }
        family => {
            report.tolerance("tol", args.tol).tolerance("quad_tol", QUAD_TOL).meta("grid", args.grid);
            let mut columns = vec!["m"];
            columns.extend_from_slice(&CHAIN_COLUMNS);
            report.columns(&columns);
            let summaries: Vec<Result<(RevolutionProfile, GeometrySummary), Failure>> = ms
                .par_iter()
                .map(|&m| {
                    let p = sweep_profile(family, m)?;
                    let s = summarize(&p, QUAD_TOL)?;
                    Ok((p, s))
                })
                .collect();
            let summaries: Vec<(RevolutionProfile, GeometrySummary)> = summaries.into_iter().collect::<Result<_, _>>()?;
            let cells: Vec<(usize, BoundaryParameter)> =
                (0..ms.len()).flat_map(|i| args.alpha.iter().map(move |&a| (i, a))).collect();
            let results: Vec<Result<BoundChainReport, Failure>> = cells
                .par_iter()
                .map(|&(i, a)| {
                    let (p, s) = &summaries[i];
                    let opts = chain_options(s, args.grid, args.tol, args.no_direct)?;
                    Ok(chain_from_summary(p, s, a, &opts)?)
                })
                .collect();
            let mut violated = false;
            for (&(i, _), r) in cells.iter().zip(results) {
                let r = r?;
                violated |= !r.holds;
                let mut row = vec![ms[i].into()];
                row.extend(chain_cells(&r));
                report.row(row);
            }
            Ok(Outcome { report, violated })
        }
    }
}

pub fn mean_check(path: &Path) -> Result<Outcome, Failure> {
    let spec = load_spec(path)?;
    let profile = spec.profile()?;
    let s = summarize(&profile, QUAD_TOL)?;
    let mut report = Report::new("mean-check");
    spec_meta(&mut report, &spec);
    summary_meta(&mut report, &s);
    report.tolerance("quad_tol", QUAD_TOL);
    let averaged = mean_condition_for(s.eta_bar, s.area, 3)?;
    let summed = mean_condition_for(s.eta_bar_sum, s.area, 3)?;
    match profile.family() {
        Family::Spheroid { a, c } if classify_spheroid(a, c) != SpheroidKind::Oblate => {
            let r = ellipsoid_condition(a / c)?;
            report.meta("closed_form_lhs", r.lhs).meta("closed_form_rhs", r.rhs).meta("closed_form_holds", r.holds);
        }
        Family::Torus { major, minor } if minor / major < 0.5 => {
            let r = torus_condition(minor / major)?;
            let q = torus_condition_averaged(minor / major)?;
            report
                .meta("closed_form_lhs", r.lhs)
                .meta("closed_form_rhs", r.rhs)
                .meta("closed_form_holds", r.holds)
                .meta("closed_form_averaged_rhs", q.rhs)
                .meta("closed_form_averaged_holds", q.holds);
        }
        _ => {}
    }
    report.columns(&["convention", "eta_bar", "lhs", "rhs", "holds", "adopted"]);
    report.row(vec!["averaged".into(), s.eta_bar.into(), averaged.lhs.into(), averaged.rhs.into(), averaged.holds.into(), true.into()]);
    report.row(vec!["sum".into(), s.eta_bar_sum.into(), summed.lhs.into(), summed.rhs.into(), summed.holds.into(), false.into()]);
    ok(report)
}

pub fn curvature(path: &Path, grid: usize) -> Result<Outcome, Failure> {
    if grid < 2 {
        return Err(Failure::Usage(format!("--grid must be at least 2, got {grid}")));
    }
    let spec = load_spec(path)?;
    let profile = spec.profile()?;
    let s = summarize(&profile, QUAD_TOL)?;
    let mut report = Report::new("curvature");
    spec_meta(&mut report, &spec);
    summary_meta(&mut report, &s);
    report
        .meta("eta_bar_at", s.eta_bar_at)
        .meta("gauss_bonnet_integral", s.total_gaussian_curvature)
        .meta("two_pi_chi", 2.0 * PI * s.euler_characteristic as f64)
        .tolerance("quad_tol", QUAD_TOL);
    report.columns(&["u", "s", "z", "kappa_meridian", "kappa_parallel", "mean", "gauss"]);
    for i in 0..=grid {
        let u = i as f64 / grid as f64;
        let p = profile.point(u);
        let (k1, k2) = profile.principal_curvatures(u);
        report.row(vec![u.into(), p[0].into(), p[1].into(), k1.into(), k2.into(), (0.5 * (k1 + k2)).into(), (k1 * k2).into()]);
    }
    ok(report)
}
