//! First Robin eigenvalue of a body of revolution, computed on its meridian
//! region.
//!
//! The first eigenfunction of a rotationally symmetric domain is itself
//! rotationally symmetric, so it minimises
//! `∫(u_s² + u_z²) 2πs ds dz + α∮u² 2πs dℓ` over `∫u² 2πs ds dz` among
//! functions of `(s, z)` only. The weight vanishes on the axis, which
//! therefore needs no boundary condition. The quotient is discretised with
//! linear triangles on a polar mesh: rays from a centre point to uniformly
//! spaced boundary points, cut into equally spaced rings.

use std::f64::consts::PI;

use serde::Serialize;

use crate::boundary::BoundaryParameter;
use crate::error::{invalid, Error, Result};
use crate::extrapolate::{richardson3, Richardson};
use crate::geometry::summary::inner_radius;
use crate::geometry::{RevolutionProfile, Topology};
use crate::linalg::{Skyline, SkylineFactor};

/// Triangulated meridian region.
#[derive(Debug, Clone, Serialize)]
pub struct MeridianMesh {
    pub nodes: Vec<[f64; 2]>,
    pub triangles: Vec<[usize; 3]>,
    /// Segments of the mesh boundary lying on the profile curve.
    pub boundary_edges: Vec<[usize; 2]>,
    pub boundary_nodes: Vec<usize>,
    /// Outward unit normal of the profile at each boundary node.
    pub normals: Vec<[f64; 2]>,
    pub centre: [f64; 2],
    pub rings: usize,
    pub rays: usize,
    /// Largest edge length.
    pub h: f64,
}

fn signed_area(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))
}

fn length(a: [f64; 2], b: [f64; 2]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

/// Star centre used for the polar mesh: a point of the axis halfway between
/// the poles, or the centroid of the meridian region of a torus.
fn mesh_centre(profile: &RevolutionProfile) -> [f64; 2] {
    match profile.topology() {
        Topology::SphereLike => [0.0, 0.5 * (profile.point(0.0)[1] + profile.point(1.0)[1])],
        Topology::TorusLike => {
            let poly = profile.polyline(2048);
            let (mut a, mut cs, mut cz) = (0.0, 0.0, 0.0);
            for w in poly.windows(2) {
                let cross = w[0][0] * w[1][1] - w[1][0] * w[0][1];
                a += cross;
                cs += (w[0][0] + w[1][0]) * cross;
                cz += (w[0][1] + w[1][1]) * cross;
            }
            [cs / (3.0 * a), cz / (3.0 * a)]
        }
    }
}

impl MeridianMesh {
    /// Mesh with `rings` radial subdivisions and `rays` boundary segments.
    pub fn with_resolution(profile: &RevolutionProfile, rings: usize, rays: usize) -> Result<Self> {
        let closed = profile.topology() == Topology::TorusLike;
        if rings < 2 || rays < if closed { 6 } else { 4 } {
            return Err(Error::Mesh(format!("too coarse: {rings} rings, {rays} rays")));
        }
        let centre = mesh_centre(profile);
        let n_rays = if closed { rays } else { rays + 1 };
        let boundary: Vec<f64> = (0..n_rays).map(|j| j as f64 / rays as f64).collect();
        let mut nodes = Vec::with_capacity(n_rays * rings + 1);
        for &u in &boundary {
            let b = profile.point(u);
            for k in 1..=rings {
                let w = k as f64 / rings as f64;
                let mut p = [centre[0] + w * (b[0] - centre[0]), centre[1] + w * (b[1] - centre[1])];
                if !closed && p[0] < 0.0 {
                    p[0] = 0.0;
                }
                nodes.push(p);
            }
        }
        let c = nodes.len();
        nodes.push(centre);
        let id = |j: usize, k: usize| -> usize {
            if k == 0 {
                c
            } else {
                (j % n_rays) * rings + (k - 1)
            }
        };
        let mut triangles = Vec::with_capacity(2 * rays * rings);
        for j in 0..rays {
            triangles.push([c, id(j, 1), id(j + 1, 1)]);
            for k in 1..rings {
                let (a, b, cc, d) = (id(j, k), id(j + 1, k), id(j + 1, k + 1), id(j, k + 1));
                triangles.push([a, cc, b]);
                triangles.push([a, d, cc]);
            }
        }
        for t in &triangles {
            if signed_area(nodes[t[0]], nodes[t[1]], nodes[t[2]]) <= 0.0 {
                return Err(Error::Mesh(format!(
                    "meridian region is not star-shaped about ({:.4}, {:.4})",
                    centre[0], centre[1]
                )));
            }
        }
        let boundary_edges: Vec<[usize; 2]> = (0..rays).map(|j| [id(j, rings), id(j + 1, rings)]).collect();
        let boundary_nodes: Vec<usize> = (0..n_rays).map(|j| id(j, rings)).collect();
        let normals = boundary.iter().map(|&u| profile.jet(u).outward_normal()).collect();
        let mut h: f64 = 0.0;
        for t in &triangles {
            for e in 0..3 {
                h = h.max(length(nodes[t[e]], nodes[t[(e + 1) % 3]]));
            }
        }
        Ok(MeridianMesh { nodes, triangles, boundary_edges, boundary_nodes, normals, centre, rings, rays, h })
    }

    /// Mesh whose rays and boundary segments are about `h` long.
    pub fn build(profile: &RevolutionProfile, h: f64) -> Result<Self> {
        let (rings, rays) = resolution_for(profile, h)?;
        Self::with_resolution(profile, rings, rays)
    }

    /// `2πs̄ · area` of every triangle, `s̄` the centroid distance to the axis.
    pub fn cell_weights(&self) -> Vec<f64> {
        self.triangles
            .iter()
            .map(|t| {
                let [a, b, c] = t.map(|i| self.nodes[i]);
                2.0 * PI * (a[0] + b[0] + c[0]) / 3.0 * signed_area(a, b, c)
            })
            .collect()
    }

    /// Discrete volume `Σ 2πs̄·area` and boundary area `Σ 2πs̄·length`.
    pub fn measures(&self) -> (f64, f64) {
        let vol = self.cell_weights().iter().sum();
        let area = self
            .boundary_edges
            .iter()
            .map(|e| {
                let (a, b) = (self.nodes[e[0]], self.nodes[e[1]]);
                PI * (a[0] + b[0]) * length(a, b)
            })
            .sum();
        (vol, area)
    }
}

fn resolution_for(profile: &RevolutionProfile, h: f64) -> Result<(usize, usize)> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(invalid(format!("mesh size must be positive, got {h}")));
    }
    let centre = mesh_centre(profile);
    let poly = profile.polyline(2048);
    let perimeter: f64 = poly.windows(2).map(|w| length(w[0], w[1])).sum();
    let reach = poly.iter().map(|&p| length(p, centre)).fold(0.0, f64::max);
    let rings = (reach / h).ceil() as usize;
    let rays = (perimeter / h).ceil() as usize;
    let min_rays = if profile.is_closed() { 6 } else { 4 };
    Ok((rings.max(2), rays.max(min_rays)))
}

/// Assembled stiffness (including the Robin term) and mass matrices on the
/// free degrees of freedom.
struct Discrete {
    stiffness: Skyline,
    mass: Skyline,
    /// Node → degree of freedom; `None` on a Dirichlet boundary.
    dof: Vec<Option<usize>>,
}

impl Discrete {
    fn assemble(mesh: &MeridianMesh, alpha: BoundaryParameter) -> Result<Self> {
        alpha.validate()?;
        let mut dof = vec![Some(0); mesh.nodes.len()];
        if alpha.is_dirichlet() {
            for &b in &mesh.boundary_nodes {
                dof[b] = None;
            }
        }
        let mut next = 0;
        for d in dof.iter_mut() {
            if d.is_some() {
                *d = Some(next);
                next += 1;
            }
        }
        if next == 0 {
            return Err(Error::Mesh("no interior nodes".into()));
        }
        let pairs = mesh.triangles.iter().flat_map(|t| {
            let dof = &dof;
            (0..3).flat_map(move |a| (0..3).filter_map(move |b| Some((dof[t[a]]?, dof[t[b]]?))))
        });
        let pattern = Skyline::with_pattern(next, pairs.collect::<Vec<_>>());
        let mut stiffness = pattern.clone();
        let mut mass = pattern;
        for t in &mesh.triangles {
            let p = t.map(|i| mesh.nodes[i]);
            let area = signed_area(p[0], p[1], p[2]);
            // ∇λ_i = (z_j − z_k, s_k − s_j) / 2A
            let grad: [[f64; 2]; 3] = std::array::from_fn(|i| {
                let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                [(p[j][1] - p[k][1]) / (2.0 * area), (p[k][0] - p[j][0]) / (2.0 * area)]
            });
            let s_bar = (p[0][0] + p[1][0] + p[2][0]) / 3.0;
            let s_sum = p[0][0] + p[1][0] + p[2][0];
            for a in 0..3 {
                let Some(da) = dof[t[a]] else { continue };
                for b in 0..=a {
                    let Some(db) = dof[t[b]] else { continue };
                    let k = 2.0 * PI * s_bar * area * (grad[a][0] * grad[b][0] + grad[a][1] * grad[b][1]);
                    // ∫ s λ_a λ_b over the triangle
                    let m = if a == b {
                        area * (2.0 * p[a][0] + s_sum) / 30.0
                    } else {
                        area * (s_sum + p[a][0] + p[b][0]) / 60.0
                    };
                    stiffness.add(da, db, k);
                    mass.add(da, db, 2.0 * PI * m);
                }
            }
        }
        if let BoundaryParameter::Finite(alpha) = alpha {
            if alpha != 0.0 {
                for e in &mesh.boundary_edges {
                    let (sa, sb) = (mesh.nodes[e[0]][0], mesh.nodes[e[1]][0]);
                    let l = length(mesh.nodes[e[0]], mesh.nodes[e[1]]);
                    let (Some(da), Some(db)) = (dof[e[0]], dof[e[1]]) else { continue };
                    let w = 2.0 * PI * alpha * l;
                    stiffness.add(da, da, w * (sa / 4.0 + sb / 12.0));
                    stiffness.add(db, db, w * (sb / 4.0 + sa / 12.0));
                    stiffness.add(da, db, w * (sa + sb) / 12.0);
                }
            }
        }
        Ok(Discrete { stiffness, mass, dof })
    }

    fn restrict(&self, u: &[f64]) -> Vec<f64> {
        let mut x = vec![0.0; self.mass.dim()];
        for (i, d) in self.dof.iter().enumerate() {
            if let Some(d) = d {
                x[*d] = u[i];
            }
        }
        x
    }

    fn extend(&self, x: &[f64]) -> Vec<f64> {
        self.dof.iter().map(|d| d.map_or(0.0, |d| x[d])).collect()
    }

    fn quotient(&self, x: &[f64]) -> Result<f64> {
        let den = self.mass.quadratic_form(x);
        if !(den > 0.0) {
            return Err(invalid("test function vanishes on the free nodes"));
        }
        Ok(self.stiffness.quadratic_form(x) / den)
    }

    fn factor_at(&self, sigma: f64) -> Result<SkylineFactor> {
        self.stiffness.shifted(sigma, &self.mass).factor()
    }

    /// Smallest eigenpair. The shift is moved below the first eigenvalue using
    /// inertia counts, then inverse iteration runs with that factorization.
    fn smallest(&self, start: &[f64], hint: Option<(f64, f64)>) -> Result<(f64, Vec<f64>)> {
        let mut x = start.to_vec();
        let upper = self.quotient(&x)?;
        let scale = upper.abs().max(1.0);
        let mut factor = None;
        if let Some((guess, spread)) = hint {
            let sigma = guess.min(upper) - spread.max(1e-3 * scale);
            let f = self.factor_at(sigma)?;
            if f.negative_pivots() == 0 {
                factor = Some((sigma, f));
            }
        }
        let (sigma, factor) = match factor {
            Some(sf) => sf,
            None => {
                let mut hi = upper;
                let mut lo = upper - scale;
                let mut f = self.factor_at(lo)?;
                let mut steps = 0;
                while f.negative_pivots() > 0 {
                    hi = lo;
                    lo -= 2.0 * scale * (1 << steps.min(30)) as f64;
                    f = self.factor_at(lo)?;
                    steps += 1;
                    if steps > 60 {
                        return Err(Error::NoConvergence { iterations: steps, lo, hi });
                    }
                }
                // narrow the bracket so that inverse iteration converges quickly
                while hi - lo > 2e-2 * scale {
                    let mid = 0.5 * (lo + hi);
                    let g = self.factor_at(mid)?;
                    if g.negative_pivots() == 0 {
                        lo = mid;
                        f = g;
                    } else {
                        hi = mid;
                    }
                }
                (lo, f)
            }
        };
        let mut lambda = upper;
        for it in 0..500 {
            let mx = self.mass.mul_vec(&x);
            let mut y = factor.solve(&mx);
            let norm = self.mass.quadratic_form(&y).sqrt();
            if !(norm > 0.0 && norm.is_finite()) {
                return Err(Error::NoConvergence { iterations: it, lo: sigma, hi: lambda });
            }
            y.iter_mut().for_each(|v| *v /= norm);
            let next = self.stiffness.quadratic_form(&y);
            let change = (next - lambda).abs();
            lambda = next;
            x = y;
            if change <= 1e-14 * scale && it > 1 {
                return Ok((lambda, x));
            }
        }
        Err(Error::NoConvergence { iterations: 500, lo: sigma, hi: lambda })
    }
}

/// Discrete quotient of the nodal function `u` on `mesh`. With a Dirichlet
/// condition the boundary values of `u` are ignored (taken to be zero).
pub fn rayleigh_quotient(mesh: &MeridianMesh, alpha: BoundaryParameter, u: &[f64]) -> Result<f64> {
    if u.len() != mesh.nodes.len() {
        return Err(invalid(format!("expected {} nodal values, got {}", mesh.nodes.len(), u.len())));
    }
    let d = Discrete::assemble(mesh, alpha)?;
    d.quotient(&d.restrict(u))
}

/// Smallest discrete eigenvalue on one mesh with its nodal eigenfunction
/// (normalised in the weighted mass norm, positive).
pub fn solve_mesh(mesh: &MeridianMesh, alpha: BoundaryParameter) -> Result<(f64, Vec<f64>)> {
    let d = Discrete::assemble(mesh, alpha)?;
    let (lambda, x) = d.smallest(&bump(mesh, &d), None)?;
    let mut u = d.extend(&x);
    if u.iter().sum::<f64>() < 0.0 {
        u.iter_mut().for_each(|v| *v = -*v);
    }
    Ok((lambda, u))
}

/// Positive start vector, largest at the centre.
fn bump(mesh: &MeridianMesh, d: &Discrete) -> Vec<f64> {
    let mut u = vec![0.0; mesh.nodes.len()];
    for (i, p) in mesh.nodes.iter().enumerate() {
        let r = length(*p, mesh.centre);
        u[i] = 1.0 + 1.0 / (1.0 + r);
    }
    for &b in &mesh.boundary_nodes {
        u[b] *= 0.5;
    }
    d.restrict(&u)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct MeshLevel {
    pub h: f64,
    pub rings: usize,
    pub rays: usize,
    pub nodes: usize,
    pub eigenvalue: f64,
}

/// Eigenvalues on three nested meshes with their extrapolation.
#[derive(Debug, Clone, Serialize)]
pub struct DiscreteEigenResult {
    /// Value on the finest mesh.
    pub eigenvalue: f64,
    /// Nominal size of the finest mesh.
    pub h: f64,
    pub levels: Vec<MeshLevel>,
    pub extrapolated: f64,
    /// Observed convergence order, when the differences allow one.
    pub order: Option<f64>,
    pub error_estimate: f64,
}

/// Default coarse mesh size: a twelfth of the inner radius.
pub fn default_mesh_size(profile: &RevolutionProfile) -> Result<f64> {
    Ok(inner_radius(profile)?.0 / 12.0)
}

/// First eigenvalue on meshes of size `h`, `h/2`, `h/4` and the Richardson
/// extrapolation in `h²`.
pub fn solve_domain(profile: &RevolutionProfile, alpha: BoundaryParameter, h: f64) -> Result<DiscreteEigenResult> {
    alpha.validate()?;
    let (rings, rays) = resolution_for(profile, h)?;
    let mut levels: Vec<MeshLevel> = Vec::with_capacity(3);
    let mut hint: Option<(f64, f64)> = None;
    for l in 0..3 {
        let f = 1 << l;
        let mesh = MeridianMesh::with_resolution(profile, rings * f, rays * f)?;
        let d = Discrete::assemble(&mesh, alpha)?;
        let (lambda, _) = d.smallest(&bump(&mesh, &d), hint)?;
        if let Some(prev) = levels.last() {
            let spread = 2.0 * (prev.eigenvalue - lambda).abs();
            hint = Some((lambda, spread));
        } else {
            hint = Some((lambda, 0.3 * lambda.abs().max(1.0)));
        }
        levels.push(MeshLevel { h: h / f as f64, rings: mesh.rings, rays: mesh.rays, nodes: mesh.nodes.len(), eigenvalue: lambda });
    }
    let Richardson { mut order, extrapolated, error_estimate } =
        richardson3(levels[0].eigenvalue, levels[1].eigenvalue, levels[2].eigenvalue, 2.0, 2.0);
    // differences at rounding level (e.g. the Neumann constant mode) carry no order
    let reach = rings as f64 * h;
    let noise = 1e-10 * (1.0 / (reach * reach)).max(levels[2].eigenvalue.abs());
    if (levels[0].eigenvalue - levels[1].eigenvalue).abs() < noise || (levels[1].eigenvalue - levels[2].eigenvalue).abs() < noise {
        order = None;
    }
    Ok(DiscreteEigenResult { eigenvalue: levels[2].eigenvalue, h: levels[2].h, levels, extrapolated, order, error_estimate })
}
