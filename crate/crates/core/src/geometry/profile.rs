//! Meridian curves of axisymmetric domains.
//!
//! A profile is a curve `u ↦ (s(u), z(u))`, `u ∈ [0, 1]`, in the half-plane
//! `s ≥ 0` (`s` is the distance from the symmetry axis). Curves are oriented
//! counter-clockwise, so the outward normal is `(z′, −s′)/|c′|`. Sphere-like
//! curves run from the bottom pole to the top pole, both on the axis;
//! torus-like curves are closed and stay off the axis.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::spline::{CubicSpline, EndCondition};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Topology {
    SphereLike,
    TorusLike,
}

impl Topology {
    pub fn euler_characteristic(self) -> i32 {
        match self {
            Topology::SphereLike => 2,
            Topology::TorusLike => 0,
        }
    }
}

/// Point and first two derivatives of the meridian at a parameter value.
#[derive(Debug, Clone, Copy)]
pub struct CurveJet {
    pub point: [f64; 2],
    pub d1: [f64; 2],
    pub d2: [f64; 2],
}

impl CurveJet {
    pub fn speed(&self) -> f64 {
        self.d1[0].hypot(self.d1[1])
    }

    pub fn outward_normal(&self) -> [f64; 2] {
        let v = self.speed();
        [self.d1[1] / v, -self.d1[0] / v]
    }
}

#[derive(Debug, Clone)]
pub struct SampledCurve {
    s: CubicSpline,
    z: CubicSpline,
    points: Vec<[f64; 2]>,
}

#[derive(Debug, Clone)]
enum Curve {
    Sphere { radius: f64 },
    /// `a` is the equatorial semi-axis (distance from the axis), `c` the polar one.
    Spheroid { a: f64, c: f64 },
    Torus { major: f64, minor: f64 },
    Sampled(SampledCurve),
}

/// Named family of a profile, for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Sphere { radius: f64 },
    Spheroid { a: f64, c: f64 },
    Torus { major: f64, minor: f64 },
    Sampled { points: usize },
}

#[derive(Debug, Clone)]
pub struct RevolutionProfile {
    curve: Curve,
    topology: Topology,
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be positive and finite, got {v}")))
    }
}

impl RevolutionProfile {
    pub fn sphere(radius: f64) -> Result<Self> {
        positive("radius", radius)?;
        Ok(RevolutionProfile { curve: Curve::Sphere { radius }, topology: Topology::SphereLike })
    }

    /// Spheroid with equatorial semi-axis `a` and polar semi-axis `c`;
    /// prolate when `c > a`, oblate when `a > c`.
    pub fn spheroid(a: f64, c: f64) -> Result<Self> {
        positive("a", a)?;
        positive("c", c)?;
        Ok(RevolutionProfile { curve: Curve::Spheroid { a, c }, topology: Topology::SphereLike })
    }

    /// Solid torus with centre-line radius `major` and tube radius `minor`.
    pub fn torus(major: f64, minor: f64) -> Result<Self> {
        positive("major radius", major)?;
        positive("minor radius", minor)?;
        if minor >= major {
            return Err(invalid(format!("torus needs minor < major, got r = {minor}, R = {major}")));
        }
        Ok(RevolutionProfile { curve: Curve::Torus { major, minor }, topology: Topology::TorusLike })
    }

    /// Profile through sample points `[s, z]`, interpolated by cubic splines
    /// in normalised chord length. Sphere-like samples must start and end on
    /// the axis; torus-like samples describe a closed loop (the first point
    /// may or may not be repeated at the end). Orientation is normalised.
    pub fn sampled(points: &[[f64; 2]], topology: Topology) -> Result<Self> {
        let mut pts: Vec<[f64; 2]> = points.to_vec();
        if pts.iter().any(|p| !(p[0].is_finite() && p[1].is_finite())) {
            return Err(invalid("sample coordinates must be finite"));
        }
        if pts.iter().any(|p| p[0] < 0.0) {
            return Err(invalid("samples must satisfy s ≥ 0"));
        }
        let scale = pts.iter().fold(0.0f64, |m, p| m.max(p[0].abs()).max(p[1].abs())).max(1e-300);
        match topology {
            Topology::SphereLike => {
                let (first, last) = (pts[0], pts[pts.len() - 1]);
                if first[0] > 1e-9 * scale || last[0] > 1e-9 * scale {
                    return Err(invalid("sphere-like samples must start and end on the axis (s = 0)"));
                }
                if first[1] > last[1] {
                    pts.reverse();
                }
                let n = pts.len();
                pts[0][0] = 0.0;
                pts[n - 1][0] = 0.0;
                if pts[1..n - 1].iter().any(|p| p[0] <= 0.0) {
                    return Err(invalid("interior samples must lie off the axis"));
                }
            }
            Topology::TorusLike => {
                let n = pts.len();
                let (a, b) = (pts[0], pts[n - 1]);
                if (a[0] - b[0]).hypot(a[1] - b[1]) > 1e-12 * scale {
                    pts.push(a);
                }
                if pts.iter().any(|p| p[0] <= 0.0) {
                    return Err(invalid("torus-like samples must stay off the axis"));
                }
                let shoelace: f64 =
                    pts.windows(2).map(|w| w[0][0] * w[1][1] - w[1][0] * w[0][1]).sum();
                if shoelace < 0.0 {
                    pts.reverse();
                }
            }
        }
        if pts.len() < 5 {
            return Err(invalid("at least five samples are required"));
        }
        if polyline_self_intersects(&pts, topology == Topology::TorusLike) {
            return Err(Error::DegenerateProfile("sample polyline self-intersects".into()));
        }
        let mut knots = vec![0.0];
        for w in pts.windows(2) {
            let d = (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1]);
            if d <= 1e-12 * scale {
                return Err(Error::DegenerateProfile("repeated consecutive samples".into()));
            }
            knots.push(knots.last().unwrap() + d);
        }
        let total = *knots.last().unwrap();
        knots.iter_mut().for_each(|k| *k /= total);
        let s_vals: Vec<f64> = pts.iter().map(|p| p[0]).collect();
        let z_vals: Vec<f64> = pts.iter().map(|p| p[1]).collect();
        let (s, z) = match topology {
            // reflection symmetry through the axis: s odd, z even at the poles
            Topology::SphereLike => (
                CubicSpline::new(&knots, &s_vals, EndCondition::Natural)?,
                CubicSpline::new(&knots, &z_vals, EndCondition::Clamped(0.0, 0.0))?,
            ),
            Topology::TorusLike => (
                CubicSpline::new(&knots, &s_vals, EndCondition::Periodic)?,
                CubicSpline::new(&knots, &z_vals, EndCondition::Periodic)?,
            ),
        };
        let profile = RevolutionProfile { curve: Curve::Sampled(SampledCurve { s, z, points: pts }), topology };
        if topology == Topology::SphereLike {
            for i in 1..400 {
                if profile.jet(i as f64 / 400.0).point[0] <= 0.0 {
                    return Err(Error::DegenerateProfile("interpolated curve crosses the axis".into()));
                }
            }
        }
        Ok(profile)
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn family(&self) -> Family {
        match &self.curve {
            Curve::Sphere { radius } => Family::Sphere { radius: *radius },
            Curve::Spheroid { a, c } => Family::Spheroid { a: *a, c: *c },
            Curve::Torus { major, minor } => Family::Torus { major: *major, minor: *minor },
            Curve::Sampled(c) => Family::Sampled { points: c.points.len() },
        }
    }

    pub fn is_closed(&self) -> bool {
        self.topology == Topology::TorusLike
    }

    pub fn jet(&self, u: f64) -> CurveJet {
        match &self.curve {
            Curve::Sphere { radius } => ellipse_jet(*radius, *radius, u),
            Curve::Spheroid { a, c } => ellipse_jet(*a, *c, u),
            Curve::Torus { major, minor } => {
                let phi = 2.0 * PI * u;
                let (sn, cs) = phi.sin_cos();
                let w = 2.0 * PI;
                CurveJet {
                    point: [major + minor * cs, minor * sn],
                    d1: [-w * minor * sn, w * minor * cs],
                    d2: [-w * w * minor * cs, -w * w * minor * sn],
                }
            }
            Curve::Sampled(c) => {
                let (s, ds, dds) = c.s.eval(u);
                let (z, dz, ddz) = c.z.eval(u);
                CurveJet { point: [s.max(0.0), z], d1: [ds, dz], d2: [dds, ddz] }
            }
        }
    }

    pub fn point(&self, u: f64) -> [f64; 2] {
        self.jet(u).point
    }

    /// Parameter values where the curve is only piecewise smooth (spline knots).
    pub fn breakpoints(&self) -> Vec<f64> {
        match &self.curve {
            Curve::Sampled(c) => c.s.knots().to_vec(),
            _ => vec![0.0, 0.5, 1.0],
        }
    }

    /// Bounding box `[s_min, s_max, z_min, z_max]` from a dense sampling.
    pub fn bounding_box(&self) -> [f64; 4] {
        match &self.curve {
            Curve::Sphere { radius } => [0.0, *radius, -radius, *radius],
            Curve::Spheroid { a, c } => [0.0, *a, -c, *c],
            Curve::Torus { major, minor } => [major - minor, major + minor, -minor, *minor],
            Curve::Sampled(_) => {
                let mut b = [f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY];
                for i in 0..=4000 {
                    let p = self.point(i as f64 / 4000.0);
                    b[0] = b[0].min(p[0]);
                    b[1] = b[1].max(p[0]);
                    b[2] = b[2].min(p[1]);
                    b[3] = b[3].max(p[1]);
                }
                if self.topology == Topology::SphereLike {
                    b[0] = 0.0;
                }
                b
            }
        }
    }

    /// Principal curvatures `(κ_meridian, κ_parallel)` with the sign convention
    /// that the sphere of radius `R` has both equal to `1/R`. On the axis the
    /// parallel curvature is replaced by its limit, which equals the meridian one.
    pub fn principal_curvatures(&self, u: f64) -> (f64, f64) {
        let j = self.jet(u);
        let v = j.speed();
        let k_mer = (j.d1[0] * j.d2[1] - j.d1[1] * j.d2[0]) / (v * v * v);
        let on_axis = self.topology == Topology::SphereLike && (u <= 0.0 || u >= 1.0 || j.point[0] <= 0.0);
        let k_par = if on_axis { k_mer } else { j.d1[1] / (j.point[0] * v) };
        (k_mer, k_par)
    }

    /// Mean curvature `M = (κ₁ + κ₂)/2` and Gaussian curvature `K = κ₁κ₂`.
    pub fn curvatures(&self, u: f64) -> (f64, f64) {
        let (a, b) = self.principal_curvatures(u);
        (0.5 * (a + b), a * b)
    }

    /// Sample of the curve with `n` segments (`n + 1` points; closed curves
    /// repeat the first point).
    pub fn polyline(&self, n: usize) -> Vec<[f64; 2]> {
        (0..=n).map(|i| self.point(i as f64 / n as f64)).collect()
    }
}

fn ellipse_jet(a: f64, c: f64, u: f64) -> CurveJet {
    let theta = PI * u;
    let (sn, cs) = theta.sin_cos();
    CurveJet {
        point: [a * sn, -c * cs],
        d1: [PI * a * cs, PI * c * sn],
        d2: [-PI * PI * a * sn, PI * PI * c * cs],
    }
}

fn segments_cross(p1: [f64; 2], p2: [f64; 2], q1: [f64; 2], q2: [f64; 2]) -> bool {
    let orient = |a: [f64; 2], b: [f64; 2], c: [f64; 2]| (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    (d1 > 0.0) != (d2 > 0.0) && (d3 > 0.0) != (d4 > 0.0) && d1 != 0.0 && d2 != 0.0 && d3 != 0.0 && d4 != 0.0
}

fn polyline_self_intersects(pts: &[[f64; 2]], closed: bool) -> bool {
    let m = pts.len() - 1;
    for i in 0..m {
        for j in i + 2..m {
            if closed && i == 0 && j == m - 1 {
                continue;
            }
            if segments_cross(pts[i], pts[i + 1], pts[j], pts[j + 1]) {
                return true;
            }
        }
    }
    false
}
