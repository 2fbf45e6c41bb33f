//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line for each
//! and exits non-zero if any fails. Expected values come from oracles written
//! here, independently of the library.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use robiniso::axisym::{default_mesh_size, solve_domain};
use robiniso::domain::DomainSpec;
use robiniso::geometry::{check_heintze_karcher, parallel_profile, summarize, ParallelProfile, RevolutionProfile, SamplingPlan};
use robiniso::radial::{check_comparison, solve, solve_ball, solve_shell, RadialBallProblem, RadialShellProblem};
use robiniso::reduction::{
    bound_chain, ellipsoid_condition, r_of_t, shell_radii_3d, shell_radii_nd, torus_condition, torus_condition_averaged,
    torus_threshold, torus_threshold_averaged, ChainOptions,
};
use robiniso::BoundaryParameter;

type Check = Result<String, String>;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// `kR coth(kR) = 1 − αR` by plain bisection, `λ = −k²`.
fn ball_root_n3(radius: f64, alpha: f64) -> f64 {
    if alpha == 0.0 {
        return 0.0;
    }
    let target = 1.0 - alpha * radius;
    let (mut lo, mut hi) = (1e-12, target);
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if mid / mid.tanh() > target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let k = 0.5 * (lo + hi) / radius;
    -k * k
}

fn unit_sphere_area(n: usize) -> f64 {
    // |S^{n−1}| by the recursion |S^{n+1}| = 2π/n |S^{n−1}|
    let mut a = if n % 2 == 0 { 2.0 * PI } else { 4.0 * PI };
    let mut k = if n % 2 == 0 { 2 } else { 3 };
    while k < n {
        a *= 2.0 * PI / k as f64;
        k += 2;
    }
    if n == 1 {
        2.0
    } else {
        a
    }
}

fn spec_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs")
}

fn radial_oracle() -> Check {
    let mut worst: f64 = 0.0;
    for i in 0..5 {
        let radius = 0.5 + 1.5 * i as f64 / 4.0;
        for j in 0..5 {
            let alpha = -5.0 + 5.0 * j as f64 / 4.0;
            let got = solve_ball(&RadialBallProblem::new(3, radius, alpha), 1e-9).map_err(|e| e.to_string())?.eigenvalue;
            let want = ball_root_n3(radius, alpha);
            let err = if want == 0.0 { got.abs() } else { rel(got, want) };
            if err > 1e-8 {
                return Err(format!("R={radius} α={alpha}: {got} vs {want}"));
            }
            worst = worst.max(err);
        }
        let got = solve_ball(&RadialBallProblem::new(3, radius, BoundaryParameter::Dirichlet), 1e-9)
            .map_err(|e| e.to_string())?
            .eigenvalue;
        let want = PI * PI / (radius * radius);
        if rel(got, want) > 1e-8 {
            return Err(format!("Dirichlet R={radius}: {got} vs {want}"));
        }
        worst = worst.max(rel(got, want));
    }
    Ok(format!("30 cases, max rel err {worst:.1e}"))
}

fn comparison_sweep() -> Check {
    let mut cases = Vec::new();
    for n in 2..=5usize {
        for k in 1..=9 {
            for &a in &[-5.0, -2.0, -1.0, -0.5, -0.1, 0.0] {
                cases.push((n, k as f64 / 10.0, a));
            }
        }
    }
    let results: Vec<_> = cases
        .par_iter()
        .map(|&(n, ratio, a)| check_comparison(n, ratio, 1.0, BoundaryParameter::Finite(a), 1e-9).map(|v| (n, ratio, a, v.margin)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let worst = results.iter().min_by(|x, y| x.3.total_cmp(&y.3)).unwrap();
    if worst.3 < -1e-9 {
        return Err(format!("n={} R1/R2={} α={}: margin {:.3e}", worst.0, worst.1, worst.2, worst.3));
    }
    Ok(format!("{} cases, min margin {:.3e}", results.len(), worst.3))
}

fn shell_limit() -> Check {
    let mu = solve_shell(&RadialShellProblem::new(3, 1e-3, 1.0, -1.0), 1e-9).map_err(|e| e.to_string())?.eigenvalue;
    let lambda = ball_root_n3(1.0, -1.0);
    let d = (mu - lambda).abs();
    if d > 1e-3 {
        return Err(format!("|μ₁ − λ₁| = {d:.3e}"));
    }
    Ok(format!("|μ₁ − λ₁| = {d:.3e}"))
}

fn scaling_law() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5ca1e);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let n = rng.gen_range(2..=5usize);
        let c = rng.gen_range(0.3..3.0);
        let radius = rng.gen_range(0.5..2.0);
        let alpha = BoundaryParameter::Finite(rng.gen_range(-5.0..0.0));
        let ratio = rng.gen_range(0.1..0.9);
        let err = |e: robiniso::Error| e.to_string();

        let big = solve_ball(&RadialBallProblem::new(n, c * radius, alpha), 1e-10).map_err(err)?.eigenvalue;
        let small = solve_ball(&RadialBallProblem::new(n, radius, alpha.scaled(c)), 1e-10).map_err(err)?.eigenvalue;
        let e_ball = rel(big, small / (c * c));

        let big = solve_shell(&RadialShellProblem::new(n, c * ratio * radius, c * radius, alpha), 1e-10).map_err(err)?.eigenvalue;
        let small =
            solve_shell(&RadialShellProblem::new(n, ratio * radius, radius, alpha.scaled(c)), 1e-10).map_err(err)?.eigenvalue;
        let e_shell = rel(big, small / (c * c));

        if e_ball > 1e-8 || e_shell > 1e-8 {
            return Err(format!("n={n} c={c:.4} R={radius:.4} {alpha:?}: ball {e_ball:.1e}, shell {e_shell:.1e}"));
        }
        worst = worst.max(e_ball).max(e_shell);
    }
    Ok(format!("20 triples, balls and shells, max rel err {worst:.1e}"))
}

fn radii_identities() -> Check {
    let mut rng = StdRng::seed_from_u64(0x2ad11);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let n = rng.gen_range(2..=5usize);
        let sigma = unit_sphere_area(n);
        let area = rng.gen_range(0.1..50.0);
        // the ball with this boundary area has the largest volume
        let r2 = (area / sigma).powf(1.0 / (n as f64 - 1.0));
        let volume = rng.gen_range(0.01..1.0) * sigma / n as f64 * r2.powi(n as i32);

        let mut shells = vec![shell_radii_nd(n, area, volume).map_err(|e| e.to_string())?];
        if n == 3 {
            shells.push(shell_radii_3d(area, volume).map_err(|e| e.to_string())?);
        }
        for s in shells {
            let ea = rel(sigma * s.r2.powi(n as i32 - 1), area);
            let ev = rel(sigma / n as f64 * (s.r2.powi(n as i32) - s.r1.powi(n as i32)), volume);
            if ea > 1e-10 || ev > 1e-10 {
                return Err(format!("n={n} A={area} V={volume}: area {ea:.1e}, volume {ev:.1e}"));
            }
            worst = worst.max(ea).max(ev);
        }
    }
    for n in 2..=5usize {
        for radius in [0.3f64, 1.0, 7.0] {
            let sigma = unit_sphere_area(n);
            let area = sigma * radius.powi(n as i32 - 1);
            let volume = sigma / n as f64 * radius.powi(n as i32);
            let s = shell_radii_nd(n, area, volume).map_err(|e| e.to_string())?;
            if s.r1 != 0.0 {
                return Err(format!("ball n={n} R={radius}: R₁ = {:e}", s.r1));
            }
        }
    }
    let s = shell_radii_3d(4.0 * PI, 4.0 * PI / 3.0).map_err(|e| e.to_string())?;
    if s.r1 != 0.0 {
        return Err(format!("unit ball: R₁ = {:e}", s.r1));
    }
    Ok(format!("50 pairs, max rel err {worst:.1e}, R₁ = 0 on balls"))
}

fn rprime_certificate() -> Check {
    let mut parts = Vec::new();
    let domains = [("sphere", 1.0), ("m=0.3", 0.3), ("m=0.5", 0.5), ("m=0.8", 0.8)];
    for (name, m) in domains {
        let profile = if m == 1.0 { RevolutionProfile::sphere(1.0) } else { RevolutionProfile::spheroid(m, 1.0) };
        let profile = profile.map_err(|e| e.to_string())?;
        let summary = summarize(&profile, 1e-11).map_err(|e| e.to_string())?;
        let pp = parallel_profile(&profile, &summary, 101, SamplingPlan::default()).map_err(|e| e.to_string())?;
        let rt = r_of_t(&pp, 3).map_err(|e| e.to_string())?;
        if rt.max_abs_rprime > 1.0 + 1e-3 {
            return Err(format!("{name}: max|r′| = {:.6}", rt.max_abs_rprime));
        }
        parts.push(format!("{name} {:.5}", rt.max_abs_rprime));
    }

    let sphere = RevolutionProfile::sphere(1.0).map_err(|e| e.to_string())?;
    let summary = summarize(&sphere, 1e-11).map_err(|e| e.to_string())?;
    let pp = parallel_profile(&sphere, &summary, 101, SamplingPlan::default()).map_err(|e| e.to_string())?;
    for pp in [pp, ParallelProfile::ball(3, 1.0, 101).map_err(|e| e.to_string())?] {
        let rt = r_of_t(&pp, 3).map_err(|e| e.to_string())?;
        let worst = rt.t_grid.iter().zip(&rt.r).map(|(t, r)| (r - (1.0 - t)).abs()).fold(0.0, f64::max);
        if worst > 1e-10 {
            return Err(format!("unit ball: |r(t) − (1 − t)| = {worst:.1e}"));
        }
    }
    Ok(format!("max|r′|: {}; ball r(t) = 1 − t", parts.join(", ")))
}

fn bound_chain_spheroids() -> Check {
    let cases = [(0.6, -0.5), (0.6, -1.0), (0.8, -0.5), (0.8, -1.0)];
    let reports: Vec<_> = cases
        .par_iter()
        .map(|&(m, a)| {
            let profile = RevolutionProfile::spheroid(m, 1.0)?;
            bound_chain(&profile, BoundaryParameter::Finite(a), &ChainOptions::default()).map(|r| (m, a, r))
        })
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    for (m, a, r) in reports {
        let lambda = r.lambda1_direct.ok_or("direct solve missing")?;
        let eps = r.direct_error.ok_or("error estimate missing")?;
        let direct = r.margin_direct.unwrap();
        if direct < -eps {
            return Err(format!("m={m} α={a}: λ₁(Ω) − μ₁ = {:.3e} > ε_h = {eps:.1e}", -direct));
        }
        if r.margin_shell < -1e-9 {
            return Err(format!("m={m} α={a}: μ₁ − λ₁(B) = {:.3e}", -r.margin_shell));
        }
        if eps > 1e-3 * lambda.abs() {
            return Err(format!("m={m} α={a}: ε_h = {eps:.1e} above 1e-3·|λ₁|"));
        }
        parts.push(format!("m={m} α={a} margins {direct:.3e}/{:.3e}", r.margin_shell));
    }
    Ok(parts.join(", "))
}

fn axisym_ball() -> Check {
    let ball = RevolutionProfile::sphere(1.0).map_err(|e| e.to_string())?;
    let h = default_mesh_size(&ball).map_err(|e| e.to_string())?;
    let alphas = [BoundaryParameter::Finite(0.0), BoundaryParameter::Finite(-1.0), BoundaryParameter::Dirichlet];
    let mut parts = Vec::new();
    for alpha in alphas {
        let want = solve(&RadialBallProblem::new(3, 1.0, alpha).into(), 1e-10).map_err(|e| e.to_string())?.eigenvalue;
        let got = solve_domain(&ball, alpha, h).map_err(|e| e.to_string())?;
        // relative to the natural scale 1/R² when the eigenvalue itself vanishes
        let err = (got.extrapolated - want).abs() / want.abs().max(1.0);
        if err > 1e-4 {
            return Err(format!("{alpha:?}: {} vs {want}", got.extrapolated));
        }
        let order = match got.order {
            Some(p) if (1.5..=2.5).contains(&p) => format!("{p:.2}"),
            Some(p) => return Err(format!("{alpha:?}: observed order {p:.2}")),
            // only the Neumann constant mode, which every mesh reproduces exactly
            None if want.abs() < 1e-12 && got.levels.iter().all(|l| l.eigenvalue.abs() < 1e-9) => "n/a (exact)".into(),
            None => return Err(format!("{alpha:?}: no observed order")),
        };
        parts.push(format!("{alpha:?} err {err:.1e} order {order}"));
    }
    Ok(parts.join(", "))
}

fn brute_force_root(g: impl Fn(f64) -> f64) -> f64 {
    // coarse scan for the first sign change, then a fine scan inside it
    let coarse = 1e-4;
    let mut m = coarse;
    while g(m + coarse) > 0.0 {
        m += coarse;
    }
    let fine = 1e-10;
    let steps = (coarse / fine) as usize;
    let k = (0..=steps).find(|&i| g(m + i as f64 * fine) <= 0.0).unwrap();
    m + (k as f64 - 0.5) * fine
}

fn condition_limits() -> Check {
    let err = |e: robiniso::Error| e.to_string();
    let near_one = ellipsoid_condition(1.0 - 1e-9).map_err(err)?;
    if (near_one.lhs - 8.0).abs() > 1e-6 || (near_one.rhs - 8.0).abs() > 1e-6 {
        return Err(format!("m → 1: {} vs {}", near_one.lhs, near_one.rhs));
    }
    if !ellipsoid_condition(0.1).map_err(err)?.holds {
        return Err("ellipsoid condition fails at m = 0.1".into());
    }
    for (name, cond) in [("torus", torus_condition as fn(f64) -> _), ("torus averaged", torus_condition_averaged)] {
        if !cond(1e-9).map_err(err)?.holds || cond(0.45).map_err(err)?.holds {
            return Err(format!("{name}: wrong limits"));
        }
    }
    let scan = brute_force_root(|m| (1.0 - 2.0 * m).powi(2) * PI - (1.0 - m).powi(2) * m);
    let scan_avg = brute_force_root(|m| (1.0 - 2.0 * m).powi(2) * PI - 4.0 * (1.0 - m).powi(2) * m);
    let (t, t_avg) = (torus_threshold().map_err(err)?, torus_threshold_averaged().map_err(err)?);
    if (t - scan).abs() > 1e-8 || (t_avg - scan_avg).abs() > 1e-8 {
        return Err(format!("thresholds {t} / {t_avg} vs scan {scan} / {scan_avg}"));
    }
    Ok(format!("m* = {t:.10} (scan {scan:.10}), averaged m* = {t_avg:.10}"))
}

fn spheroid_area(a: f64, c: f64) -> f64 {
    if a < c {
        let e = (1.0 - a * a / (c * c)).sqrt();
        2.0 * PI * a * a * (1.0 + c / (a * e) * e.asin())
    } else if a > c {
        let e = (1.0 - c * c / (a * a)).sqrt();
        2.0 * PI * a * a * (1.0 + (1.0 - e * e) / e * e.atanh())
    } else {
        4.0 * PI * a * a
    }
}

fn geometry_validation() -> Check {
    let err = |e: robiniso::Error| e.to_string();
    let mut corpus: Vec<(String, DomainSpec)> = std::fs::read_dir(spec_dir())
        .map_err(|e| e.to_string())?
        .map(|entry| {
            let path = entry.map_err(|e| e.to_string())?.path();
            let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
            let name = path.file_stem().unwrap().to_string_lossy().into_owned();
            DomainSpec::from_json(&text).map(|s| (name, s)).map_err(err)
        })
        .collect::<Result<_, _>>()?;
    corpus.sort_by(|a, b| a.0.cmp(&b.0));
    for &(a, c) in &[(0.3, 1.0), (0.7, 1.0), (1.0, 0.4), (2.0, 1.5)] {
        corpus.push((format!("spheroid {a}/{c}"), DomainSpec::spheroid(a, c)));
    }
    corpus.push(("torus 2/0.5".into(), DomainSpec::torus(2.0, 0.5)));

    let mut worst_gb: f64 = 0.0;
    let mut worst_area: f64 = 0.0;
    let mut min_slack = f64::INFINITY;
    for (name, spec) in &corpus {
        let profile = spec.profile().map_err(err)?;
        let s = summarize(&profile, 1e-11).map_err(err)?;
        let gauss = 2.0 * PI * s.euler_characteristic as f64;
        let e = if gauss == 0.0 { s.total_gaussian_curvature.abs() / (4.0 * PI) } else { rel(s.total_gaussian_curvature, gauss) };
        if e > 1e-6 {
            return Err(format!("{name}: ∫K dS = {} vs {gauss}", s.total_gaussian_curvature));
        }
        worst_gb = worst_gb.max(e);

        let p = |k: &str| spec.parameters[k];
        let exact = match spec.family {
            robiniso::domain::FamilyName::Sphere => Some(4.0 * PI * p("radius").powi(2)),
            robiniso::domain::FamilyName::Spheroid => Some(spheroid_area(p("a"), p("c"))),
            robiniso::domain::FamilyName::Torus => Some(4.0 * PI * PI * p("R") * p("r")),
            robiniso::domain::FamilyName::Sampled => None,
        };
        if let Some(exact) = exact {
            if rel(s.area, exact) > 1e-8 {
                return Err(format!("{name}: area {} vs {exact}", s.area));
            }
            worst_area = worst_area.max(rel(s.area, exact));
        }

        let pp = parallel_profile(&profile, &s, 101, SamplingPlan::default()).map_err(err)?;
        let hk = check_heintze_karcher(&pp, s.eta_bar, s.area, 3).map_err(err)?;
        if !hk.holds() {
            return Err(format!("{name}: Heintze–Karcher slack {:.3e} at t = {:.4}", hk.margin, hk.at));
        }
        min_slack = min_slack.min(hk.margin / s.area);
    }
    Ok(format!(
        "{} domains, Gauss–Bonnet {worst_gb:.1e}, area {worst_area:.1e}, min relative slack {min_slack:.1e}",
        corpus.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check, Duration); 10] = [
        ("radial oracle agreement", radial_oracle, Duration::from_secs(5)),
        ("shell below ball", comparison_sweep, Duration::from_secs(30)),
        ("shell limit", shell_limit, Duration::from_secs(2)),
        ("scaling law", scaling_law, Duration::from_secs(5)),
        ("shell radii identities", radii_identities, Duration::from_secs(1)),
        ("r′ certificate", rprime_certificate, Duration::from_secs(60)),
        ("bound chain on spheroids", bound_chain_spheroids, Duration::from_secs(180)),
        ("axisymmetric solver on the ball", axisym_ball, Duration::from_secs(60)),
        ("shape condition limits", condition_limits, Duration::from_secs(1)),
        ("geometry validation", geometry_validation, Duration::from_secs(30)),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > *budget {
            outcome = Err(format!("took {elapsed:.2?}, budget {budget:?}"));
        }
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
