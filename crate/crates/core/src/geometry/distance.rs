//! Distance from points of the meridian half-plane to the boundary.
//!
//! For an axisymmetric body the distance from a point with `s ≥ 0` to the
//! boundary surface is the planar distance to the meridian curve, so
//! everything here is two-dimensional.

use super::profile::{RevolutionProfile, Topology};

const CHUNK: usize = 16;

#[derive(Debug, Clone, Copy)]
struct Chunk {
    start: usize,
    end: usize,
    bbox: [f64; 4],
}

/// Point–curve distance queries on a fixed profile.
#[derive(Debug, Clone)]
pub struct BoundaryDistance<'a> {
    profile: &'a RevolutionProfile,
    params: Vec<f64>,
    pts: Vec<[f64; 2]>,
    chunks: Vec<Chunk>,
    closed: bool,
}

/// Closest boundary point of a query.
#[derive(Debug, Clone, Copy)]
pub struct Closest {
    pub u: f64,
    pub point: [f64; 2],
    pub distance: f64,
    /// Positive inside the domain.
    pub signed_distance: f64,
}

fn dist2(a: [f64; 2], b: [f64; 2]) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    dx * dx + dy * dy
}

fn box_dist2(b: &[f64; 4], p: [f64; 2]) -> f64 {
    let dx = (b[0] - p[0]).max(0.0).max(p[0] - b[1]);
    let dy = (b[2] - p[1]).max(0.0).max(p[1] - b[3]);
    dx * dx + dy * dy
}

impl<'a> BoundaryDistance<'a> {
    pub fn new(profile: &'a RevolutionProfile) -> Self {
        let knots = profile.breakpoints().len();
        let n = (1024usize).max(8 * knots).next_multiple_of(CHUNK);
        let params: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
        let pts: Vec<[f64; 2]> = params.iter().map(|&u| profile.point(u)).collect();
        let mut chunks = Vec::new();
        let mut start = 0;
        while start < n {
            let end = (start + CHUNK).min(n);
            let mut bbox = [f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY];
            for p in &pts[start..=end] {
                bbox[0] = bbox[0].min(p[0]);
                bbox[1] = bbox[1].max(p[0]);
                bbox[2] = bbox[2].min(p[1]);
                bbox[3] = bbox[3].max(p[1]);
            }
            chunks.push(Chunk { start, end, bbox });
            start = end;
        }
        BoundaryDistance { profile, params, pts, chunks, closed: profile.topology() == Topology::TorusLike }
    }

    pub fn profile(&self) -> &RevolutionProfile {
        self.profile
    }

    /// Nearest sample index, best-first over chunk bounding boxes.
    fn nearest_sample(&self, p: [f64; 2]) -> usize {
        let mut order: Vec<(f64, usize)> =
            self.chunks.iter().enumerate().map(|(i, c)| (box_dist2(&c.bbox, p), i)).collect();
        order.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
        let mut best = (f64::INFINITY, 0usize);
        for (lb, ci) in order {
            if lb > best.0 {
                break;
            }
            let c = self.chunks[ci];
            for i in c.start..=c.end {
                let d = dist2(self.pts[i], p);
                if d < best.0 {
                    best = (d, i);
                }
            }
        }
        best.1
    }

    /// Refines the closest parameter in `[lo, hi]` by safeguarded Newton on
    /// `g(u) = (c(u) − p)·c′(u)`.
    fn refine(&self, p: [f64; 2], lo: f64, hi: f64, start: f64) -> f64 {
        let g = |u: f64| {
            let j = self.profile.jet(u);
            let r = [j.point[0] - p[0], j.point[1] - p[1]];
            let g = r[0] * j.d1[0] + r[1] * j.d1[1];
            let dg = j.d1[0] * j.d1[0] + j.d1[1] * j.d1[1] + r[0] * j.d2[0] + r[1] * j.d2[1];
            (g, dg)
        };
        let (glo, _) = g(lo);
        let (ghi, _) = g(hi);
        // no interior stationary point: minimum at an end
        if glo >= 0.0 && ghi >= 0.0 {
            return lo;
        }
        if glo <= 0.0 && ghi <= 0.0 {
            return hi;
        }
        let (mut a, mut b) = (lo, hi);
        let mut u = start.clamp(lo, hi);
        for _ in 0..60 {
            let (gu, dgu) = g(u);
            if gu == 0.0 {
                return u;
            }
            if (gu < 0.0) == (glo < 0.0) {
                a = u;
            } else {
                b = u;
            }
            let newton = u - gu / dgu;
            let next = if dgu > 0.0 && newton > a && newton < b { newton } else { 0.5 * (a + b) };
            if (next - u).abs() <= 1e-15 * (1.0 + u.abs()) || (b - a) <= 1e-15 {
                return next;
            }
            u = next;
        }
        u
    }

    pub fn closest(&self, p: [f64; 2]) -> Closest {
        let i = self.nearest_sample(p);
        let n = self.params.len() - 1;
        let (lo, hi) = if self.closed {
            (self.params[i] - 1.0 / n as f64, self.params[i] + 1.0 / n as f64)
        } else {
            (self.params[i.saturating_sub(1)], self.params[(i + 1).min(n)])
        };
        let mut u = self.refine(p, lo, hi, self.params[i]);
        if self.closed {
            u = u.rem_euclid(1.0);
        }
        let jet = self.profile.jet(u);
        let d = dist2(jet.point, p).sqrt();
        let nrm = jet.outward_normal();
        let outward = (p[0] - jet.point[0]) * nrm[0] + (p[1] - jet.point[1]) * nrm[1];
        let sign = if outward > 0.0 { -1.0 } else { 1.0 };
        Closest { u, point: jet.point, distance: d, signed_distance: sign * d }
    }

    /// Distance to the boundary, positive inside.
    pub fn signed_distance(&self, p: [f64; 2]) -> f64 {
        self.closest(p).signed_distance
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_distances() {
        let p = RevolutionProfile::sphere(2.0).unwrap();
        let d = BoundaryDistance::new(&p);
        for &(s, z) in &[(0.0, 0.0), (0.5, 0.3), (1.9, -0.2), (0.0, 1.5), (1.0, 2.5), (0.0, -3.0)] {
            let r = (s * s + z * z as f64).sqrt();
            let got = d.signed_distance([s, z]);
            assert!((got - (2.0 - r)).abs() < 1e-12, "({s},{z}): {got}");
        }
    }

    #[test]
    fn torus_distances() {
        let p = RevolutionProfile::torus(1.0, 0.3).unwrap();
        let d = BoundaryDistance::new(&p);
        for &(s, z) in &[(1.0, 0.0), (1.1, 0.1), (0.75, -0.05), (1.5, 0.0), (0.2, 0.0)] {
            let exact = 0.3 - ((s - 1.0f64).powi(2) + z * z).sqrt();
            let got = d.signed_distance([s, z]);
            assert!((got - exact).abs() < 1e-12, "({s},{z}): {got} vs {exact}");
        }
    }

    #[test]
    fn spheroid_centre_distance_is_equatorial_semi_axis() {
        let p = RevolutionProfile::spheroid(0.6, 1.0).unwrap();
        let d = BoundaryDistance::new(&p);
        assert!((d.signed_distance([0.0, 0.0]) - 0.6).abs() < 1e-12);
        // on the axis near the pole the distance is to the pole
        assert!((d.signed_distance([0.0, 0.95]) - 0.05).abs() < 1e-12);
    }
}
