//! Eigenvalues of small dense complex matrices.
//!
//! Householder reduction to Hessenberg form followed by single-shift complex
//! QR iteration with Wilkinson shifts and deflation. Parabolic elements are
//! non-normal and have genuinely repeated eigenvalues, which the iteration
//! returns split by roughly `(ε‖g‖)^{1/k}` for a Jordan block of size `k`;
//! [`eigen_decompose`] clusters them back together.

use alloc::vec::Vec;
use core::ops::Range;

#[allow(unused_imports)] // inherent float methods need std
use num_traits::{Float, Zero};

use super::{svd, GroupElement, Matrix, C64};
use crate::{Error, Result};

const MAX_ITER_PER_EIGENVALUE: usize = 60;

/// Largest Jordan block an element of `U(n,1)` can have.
const MAX_JORDAN_BLOCK: i32 = 3;

/// One group of numerically coincident eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenCluster {
    /// Mean of the member eigenvalues.
    pub value: C64,
    pub multiplicity: usize,
    /// Raw eigenvalues merged into this cluster.
    pub members: Vec<C64>,
    /// Columns of [`EigenData::vectors`] spanning the generalized eigenspace.
    pub columns: Range<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenData {
    pub clusters: Vec<EigenCluster>,
    /// Orthonormal bases of the generalized eigenspaces, grouped by cluster.
    pub vectors: Matrix,
    /// Distance below which eigenvalues were merged.
    pub merge_radius: f64,
}

impl EigenData {
    /// `(λ, multiplicity)` pairs.
    pub fn values(&self) -> impl Iterator<Item = (C64, usize)> + '_ {
        self.clusters.iter().map(|c| (c.value, c.multiplicity))
    }

    pub fn generalized_basis(&self, cluster: usize) -> Matrix {
        let r = self.clusters[cluster].columns.clone();
        let idx: Vec<usize> = r.collect();
        self.vectors.select_columns(&idx)
    }

    pub fn is_distinct(&self) -> bool {
        self.clusters.iter().all(|c| c.multiplicity == 1)
    }
}

/// All eigenvalues of a square matrix, unordered.
pub fn eigenvalues(a: &Matrix) -> Result<Vec<C64>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: a.cols() });
    }
    let mut h = hessenberg(a);
    shifted_qr(&mut h)
}

fn hessenberg(a: &Matrix) -> Matrix {
    let n = a.rows();
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = super::vnorm(&x);
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { C64::new(1.0, 0.0) };
        let mut v = x.clone();
        v[0] += phase * xnorm;
        let vnorm = super::vnorm(&v);
        if vnorm == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // H ← (I − 2vv*) H
        for j in 0..n {
            let dot: C64 = (0..v.len()).map(|i| v[i].conj() * h[(k + 1 + i, j)]).sum();
            for i in 0..v.len() {
                h[(k + 1 + i, j)] -= v[i] * dot * 2.0;
            }
        }
        // H ← H (I − 2vv*)
        for i in 0..n {
            let dot: C64 = (0..v.len()).map(|j| h[(i, k + 1 + j)] * v[j]).sum();
            for j in 0..v.len() {
                h[(i, k + 1 + j)] -= dot * v[j].conj() * 2.0;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = C64::zero();
        }
    }
    h
}

fn shifted_qr(h: &mut Matrix) -> Result<Vec<C64>> {
    let n = h.rows();
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return Ok(out);
    }
    let norm = h.frobenius().max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;

    loop {
        if hi == 0 {
            out.push(h[(0, 0)]);
            break;
        }
        // look for a negligible subdiagonal entry in the active window
        let mut lo = hi;
        while lo > 0 {
            let s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            let s = if s == 0.0 { norm } else { s };
            if h[(lo, lo - 1)].norm() <= eps * s {
                h[(lo, lo - 1)] = C64::zero();
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            out.push(h[(hi, hi)]);
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if iter > MAX_ITER_PER_EIGENVALUE {
            return Err(Error::NoConvergence { iterations: total });
        }

        let shift = if iter.is_multiple_of(11) {
            // exceptional shift to break cycles
            h[(hi, hi)] + C64::new(h[(hi, hi - 1)].norm() * 0.75, h[(hi - 1, hi.saturating_sub(2))].norm() * 0.5)
        } else {
            wilkinson(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        for i in lo..=hi {
            h[(i, i)] -= shift;
        }
        let mut rots: Vec<(f64, C64)> = Vec::with_capacity(hi - lo);
        for j in lo..hi {
            let (x, y) = (h[(j, j)], h[(j + 1, j)]);
            let (c, s) = givens(x, y);
            for k in j..=hi {
                let (a, b) = (h[(j, k)], h[(j + 1, k)]);
                h[(j, k)] = a * c + s * b;
                h[(j + 1, k)] = -s.conj() * a + b * c;
            }
            rots.push((c, s));
        }
        for (off, (c, s)) in rots.into_iter().enumerate() {
            let j = lo + off;
            for i in lo..=(j + 1).min(hi) {
                let (a, b) = (h[(i, j)], h[(i, j + 1)]);
                h[(i, j)] = a * c + b * s.conj();
                h[(i, j + 1)] = -a * s + b * c;
            }
        }
        for i in lo..=hi {
            h[(i, i)] += shift;
        }
    }
    Ok(out)
}

/// Eigenvalue of the trailing 2×2 block closest to its last diagonal entry.
fn wilkinson(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let m1 = (a + d) * 0.5 + disc;
    let m2 = (a + d) * 0.5 - disc;
    if (m1 - d).norm() < (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

/// `(c, s)` with `[[c, s], [−s̄, c]]·[x, y]ᵀ = [r, 0]ᵀ`, `c` real.
fn givens(x: C64, y: C64) -> (f64, C64) {
    let (ax, ay) = (x.norm(), y.norm());
    if ay == 0.0 {
        return (1.0, C64::zero());
    }
    if ax == 0.0 {
        return (0.0, y.conj() / ay);
    }
    let rho = ax.hypot(ay);
    (ax / rho, (x / ax) * y.conj() / rho)
}

/// Radius below which eigenvalues of `g` are merged: the caller's tolerance,
/// raised to the worst-case splitting of a size-3 Jordan block.
pub fn merge_radius(g: &Matrix, cluster_tol: f64) -> f64 {
    let splitting = 10.0 * f64::EPSILON.powf(1.0 / MAX_JORDAN_BLOCK as f64) * g.frobenius();
    cluster_tol.max(splitting)
}

/// Single-linkage clustering on absolute distance.
pub fn cluster_values(values: &[C64], radius: f64) -> Vec<Vec<C64>> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() <= radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<C64>)> = Vec::new();
    for (i, &z) in values.iter().enumerate() {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, g)) => g.push(z),
            None => groups.push((r, alloc::vec![z])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}

/// Eigenvalues grouped into clusters, with a basis of each generalized eigenspace.
pub fn eigen_decompose(g: &GroupElement, cluster_tol: f64) -> Result<EigenData> {
    decompose_matrix(g.matrix(), cluster_tol)
}

pub fn decompose_matrix(m: &Matrix, cluster_tol: f64) -> Result<EigenData> {
    if !(cluster_tol > 0.0) {
        return Err(Error::InvalidParameter(alloc::format!("cluster tolerance must be positive, got {cluster_tol}")));
    }
    let raw = eigenvalues(m)?;
    let radius = merge_radius(m, cluster_tol);
    let mut groups = cluster_values(&raw, radius);
    // deterministic order: by argument, then modulus
    groups.sort_by(|a, b| {
        let (ma, mb) = (mean(a), mean(b));
        ma.arg().total_cmp(&mb.arg()).then(ma.norm().total_cmp(&mb.norm()))
    });

    let size = m.rows();
    let mut vectors = Matrix::zeros(size, size);
    let mut clusters = Vec::with_capacity(groups.len());
    let mut col = 0;
    for members in groups {
        let value = mean(&members);
        let k = members.len();
        let shifted = m.shift(value).pow(k);
        let basis = svd::svd(&shifted).trailing(k);
        vectors.set_block(0, col, &basis);
        clusters.push(EigenCluster { value, multiplicity: k, members, columns: col..col + k });
        col += k;
    }
    Ok(EigenData { clusters, vectors, merge_radius: radius })
}

fn mean(v: &[C64]) -> C64 {
    v.iter().sum::<C64>() / v.len() as f64
}

/// Unit eigenvector for an eigenvalue: the right singular vector of `m − λI`
/// with the smallest singular value.
pub fn eigenvector(m: &Matrix, lambda: C64) -> Vec<C64> {
    svd::svd(&m.shift(lambda)).trailing(1).column(0)
}
