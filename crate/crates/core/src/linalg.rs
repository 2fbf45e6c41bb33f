//! Symmetric factorizations used by the eigenvalue solvers.
//!
//! Both solvers work on a generalized pencil `K − σM` with `K`, `M` symmetric
//! and `M` positive definite. The number of negative pivots of an `LDLᵀ`
//! factorization of `K − σM` equals the number of pencil eigenvalues below
//! `σ` (Sylvester's law of inertia), which is what the bracketing relies on.

use crate::error::{Error, Result};

/// Symmetric tridiagonal pencil `K x = λ diag(m) x` with
/// `xᵀKx = Σ cᵢ (xᵢ₊₁ − xᵢ)² + Σ pᵢ xᵢ²`.
///
/// Keeping the couplings and the potential apart lets the Rayleigh quotient be
/// evaluated without cancellation, which matters when `λ₁` is zero.
#[derive(Debug, Clone)]
pub struct TridiagonalPencil {
    /// `coupling[i] ≥ 0` joins unknowns `i` and `i + 1`.
    pub coupling: Vec<f64>,
    pub potential: Vec<f64>,
    pub mass: Vec<f64>,
}

impl TridiagonalPencil {
    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    pub fn diag(&self, i: usize) -> f64 {
        let left = if i == 0 { 0.0 } else { self.coupling[i - 1] };
        let right = self.coupling.get(i).copied().unwrap_or(0.0);
        left + right + self.potential[i]
    }

    fn off(&self, i: usize) -> f64 {
        -self.coupling[i]
    }

    /// Number of pencil eigenvalues strictly below `sigma`.
    pub fn count_below(&self, sigma: f64) -> usize {
        let mut count = 0;
        let mut p = 1.0;
        for i in 0..self.len() {
            let d = self.diag(i);
            let coupling = if i == 0 { 0.0 } else { self.off(i - 1) * self.off(i - 1) / p };
            p = d - sigma * self.mass[i] - coupling;
            if p == 0.0 {
                p = -f64::EPSILON * (d.abs() + sigma.abs() * self.mass[i]).max(f64::MIN_POSITIVE);
            }
            if p < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin enclosure of the spectrum of `diag(m)^{-1/2} K diag(m)^{-1/2}`.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let scale = self.mass[i].sqrt();
            let mut radius = 0.0;
            if i > 0 {
                radius += self.coupling[i - 1] / (scale * self.mass[i - 1].sqrt());
            }
            if i + 1 < n {
                radius += self.coupling[i] / (scale * self.mass[i + 1].sqrt());
            }
            let c = self.diag(i) / self.mass[i];
            lo = lo.min(c - radius);
            hi = hi.max(c + radius);
        }
        (lo, hi)
    }

    /// Solves `(K − σM) x = rhs` by an unpivoted `LDLᵀ` sweep.
    pub fn solve_shifted(&self, sigma: f64, rhs: &[f64]) -> Result<Vec<f64>> {
        let n = self.len();
        let mut d = vec![0.0; n];
        let mut l = vec![0.0; n.saturating_sub(1)];
        for i in 0..n {
            let a = self.diag(i) - sigma * self.mass[i];
            d[i] = if i == 0 { a } else { a - l[i - 1] * l[i - 1] * d[i - 1] };
            if d[i] == 0.0 || !d[i].is_finite() {
                return Err(Error::Factorization(i));
            }
            if i + 1 < n {
                l[i] = self.off(i) / d[i];
            }
        }
        let mut x = rhs.to_vec();
        for i in 1..n {
            x[i] -= l[i - 1] * x[i - 1];
        }
        for i in 0..n {
            x[i] /= d[i];
        }
        for i in (0..n.saturating_sub(1)).rev() {
            x[i] -= l[i] * x[i + 1];
        }
        Ok(x)
    }

    pub fn rayleigh(&self, x: &[f64]) -> f64 {
        let mut num: f64 = self.potential.iter().zip(x).map(|(p, v)| p * v * v).sum();
        num += self.coupling.iter().zip(x.windows(2)).map(|(c, w)| c * (w[1] - w[0]).powi(2)).sum::<f64>();
        let den: f64 = self.mass.iter().zip(x).map(|(m, v)| m * v * v).sum();
        num / den
    }

    /// Smallest pencil eigenpair: Sturm bisection down to a tight bracket,
    /// then shifted inverse iteration from just below the bracket.
    pub fn smallest_eigenpair(&self, rel_tol: f64) -> Result<(f64, Vec<f64>)> {
        let n = self.len();
        if n == 0 {
            return Err(crate::error::invalid("empty pencil"));
        }
        let (mut lo, mut hi) = self.gershgorin();
        let spread = lo.abs() + hi.abs();
        let pad = 1e-12 * spread + f64::MIN_POSITIVE;
        lo -= pad;
        hi += pad;
        let abs_floor = 1e-14 * spread;
        let max_bisect = 200;
        let mut it = 0;
        while hi - lo > (rel_tol * lo.abs().max(hi.abs())).max(abs_floor) && it < max_bisect {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) >= 1 {
                hi = mid;
            } else {
                lo = mid;
            }
            it += 1;
        }
        if it == max_bisect {
            return Err(Error::NoConvergence { iterations: it, lo, hi });
        }
        // Shift strictly below the eigenvalue keeps K − σM positive definite.
        let width = (hi - lo).max(abs_floor);
        let sigma = lo - width;
        let mut x = vec![1.0; n];
        let mut lambda = self.rayleigh(&x);
        for _ in 0..50 {
            let rhs: Vec<f64> = x.iter().zip(&self.mass).map(|(a, m)| a * m).collect();
            let mut y = self.solve_shifted(sigma, &rhs)?;
            let norm = y.iter().zip(&self.mass).map(|(a, m)| a * a * m).sum::<f64>().sqrt();
            y.iter_mut().for_each(|v| *v /= norm);
            let next = self.rayleigh(&y);
            let change = (next - lambda).abs();
            x = y;
            lambda = next;
            if change <= 1e-15 * lambda.abs().max(abs_floor) {
                break;
            }
        }
        Ok((lambda, x))
    }
}

/// Symmetric matrix in variable-band (skyline) storage, lower triangle by rows.
#[derive(Debug, Clone)]
pub struct Skyline {
    first: Vec<usize>,
    start: Vec<usize>,
    values: Vec<f64>,
}

impl Skyline {
    /// Allocates the envelope for the given symmetric pairs `(i, j)`.
    pub fn with_pattern(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut first: Vec<usize> = (0..n).collect();
        for (i, j) in pairs {
            let (r, c) = if i >= j { (i, j) } else { (j, i) };
            first[r] = first[r].min(c);
        }
        let mut start = Vec::with_capacity(n + 1);
        let mut total = 0;
        for (i, &f) in first.iter().enumerate() {
            start.push(total);
            total += i - f + 1;
        }
        start.push(total);
        Skyline { first, start, values: vec![0.0; total] }
    }

    pub fn dim(&self) -> usize {
        self.first.len()
    }

    pub fn envelope_size(&self) -> usize {
        self.values.len()
    }

    fn index(&self, i: usize, j: usize) -> Option<usize> {
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        if c < self.first[r] {
            None
        } else {
            Some(self.start[r] + (c - self.first[r]))
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.index(i, j).map_or(0.0, |k| self.values[k])
    }

    /// Adds to the symmetric entry `(i, j)`; panics outside the envelope.
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let k = self.index(i, j).expect("entry outside the allocated envelope");
        self.values[k] += v;
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut y = vec![0.0; n];
        for i in 0..n {
            let f = self.first[i];
            let row = &self.values[self.start[i]..self.start[i + 1]];
            for (off, &a) in row.iter().enumerate() {
                let j = f + off;
                y[i] += a * x[j];
                if j != i {
                    y[j] += a * x[i];
                }
            }
        }
        y
    }

    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        self.mul_vec(x).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// `self − sigma · other`, both sharing the same envelope.
    pub fn shifted(&self, sigma: f64, other: &Skyline) -> Skyline {
        assert_eq!(self.start, other.start, "envelopes differ");
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - sigma * b).collect();
        Skyline { first: self.first.clone(), start: self.start.clone(), values }
    }

    /// Unpivoted `LDLᵀ` factorization within the envelope.
    pub fn factor(&self) -> Result<SkylineFactor> {
        let n = self.dim();
        let mut l = self.values.clone();
        let mut d = vec![0.0; n];
        let mut g: Vec<f64> = Vec::new();
        for i in 0..n {
            let fi = self.first[i];
            let si = self.start[i];
            let len = i - fi;
            g.clear();
            g.resize(len, 0.0);
            for j in fi..i {
                let fj = self.first[j];
                let sj = self.start[j];
                let k0 = fi.max(fj);
                let mut acc = l[si + (j - fi)];
                // g_k = l_ik d_k for k < j, l_jk from row j
                let gi = &g[(k0 - fi)..(j - fi)];
                let lj = &l[(sj + (k0 - fj))..(sj + (j - fj))];
                acc -= gi.iter().zip(lj).map(|(a, b)| a * b).sum::<f64>();
                g[j - fi] = acc;
            }
            let mut diag = l[si + len];
            for (off, j) in (fi..i).enumerate() {
                let lij = g[off] / d[j];
                diag -= g[off] * lij;
                l[si + off] = lij;
            }
            if diag == 0.0 || !diag.is_finite() {
                return Err(Error::Factorization(i));
            }
            d[i] = diag;
            l[si + len] = 1.0;
        }
        Ok(SkylineFactor { first: self.first.clone(), start: self.start.clone(), l, d })
    }
}

/// `LDLᵀ` factors in skyline storage.
#[derive(Debug, Clone)]
pub struct SkylineFactor {
    first: Vec<usize>,
    start: Vec<usize>,
    l: Vec<f64>,
    d: Vec<f64>,
}

impl SkylineFactor {
    /// Number of negative pivots, i.e. eigenvalues of the factored matrix below zero.
    pub fn negative_pivots(&self) -> usize {
        self.d.iter().filter(|&&v| v < 0.0).count()
    }

    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.d.len();
        let mut x = rhs.to_vec();
        for i in 0..n {
            let fi = self.first[i];
            let row = &self.l[self.start[i]..self.start[i + 1] - 1];
            let s: f64 = row.iter().zip(&x[fi..i]).map(|(a, b)| a * b).sum();
            x[i] -= s;
        }
        for i in 0..n {
            x[i] /= self.d[i];
        }
        for i in (0..n).rev() {
            let fi = self.first[i];
            let xi = x[i];
            let row = &self.l[self.start[i]..self.start[i + 1] - 1];
            for (off, a) in row.iter().enumerate() {
                x[fi + off] -= a * xi;
            }
        }
        x
    }
}
