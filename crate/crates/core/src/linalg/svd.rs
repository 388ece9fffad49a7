//! One-sided Jacobi SVD and a Jacobi eigensolver for Hermitian matrices.
//!
//! Both work directly on complex data and are accurate to a few ulps in the
//! small singular values, which is what kernel and nullspace dimension tests
//! need. Sizes here never exceed a few dozen columns.

use alloc::vec::Vec;

#[allow(unused_imports)] // inherent float methods need std
use num_traits::{Float, Zero};

use super::{Matrix, C64};

const MAX_SWEEPS: usize = 80;

/// Singular values (descending) and matching right singular vectors.
#[derive(Debug, Clone)]
pub struct Svd {
    pub sigma: Vec<f64>,
    /// Columns are right singular vectors, in the order of `sigma`.
    pub v: Matrix,
}

impl Svd {
    /// Number of singular values `≤ rel_tol · σ_max`.
    pub fn nullity(&self, rel_tol: f64) -> usize {
        let smax = self.sigma.first().copied().unwrap_or(0.0);
        self.sigma.iter().filter(|s| **s <= rel_tol * smax).count()
    }

    /// Right singular vectors for the `k` smallest singular values.
    pub fn trailing(&self, k: usize) -> Matrix {
        let n = self.sigma.len();
        let idx: Vec<usize> = (n - k.min(n)..n).collect();
        self.v.select_columns(&idx)
    }
}

pub fn svd(a: &Matrix) -> Svd {
    let n = a.cols();
    let mut cols: Vec<Vec<C64>> = a.columns();
    let mut v = Matrix::identity(n);
    let eps = f64::EPSILON;

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(C64::norm_sqr).sum();
                let beta: f64 = cols[q].iter().map(C64::norm_sqr).sum();
                let gamma: C64 = super::vdot(&cols[p], &cols[q]);
                let g = gamma.norm();
                if g == 0.0 || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // rotate column q so that a_p* a_q is real and positive
                let phase = (gamma / g).conj();
                for z in cols[q].iter_mut() {
                    *z *= phase;
                }
                for i in 0..n {
                    v[(i, q)] *= phase;
                }
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (head, tail) = cols.split_at_mut(q);
                for (x, y) in head[p].iter_mut().zip(tail[0].iter_mut()) {
                    (*x, *y) = (*x * c - *y * s, *x * s + *y * c);
                }
                for i in 0..n {
                    let (x, y) = (v[(i, p)], v[(i, q)]);
                    v[(i, p)] = x * c - y * s;
                    v[(i, q)] = x * s + y * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = cols.iter().map(|c| super::vnorm(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    Svd { sigma: order.iter().map(|&i| norms[i]).collect(), v: v.select_columns(&order) }
}

/// Orthonormal basis of the numerical kernel: right singular vectors with
/// `σ ≤ rel_tol · scale`, where `scale` defaults to `σ_max` when `None`.
pub fn kernel(a: &Matrix, rel_tol: f64, scale: Option<f64>) -> Matrix {
    let d = svd(a);
    let scale = scale.unwrap_or_else(|| d.sigma.first().copied().unwrap_or(0.0));
    let k = d.sigma.iter().filter(|s| **s <= rel_tol * scale).count();
    d.trailing(k)
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.
pub fn hermitian_eigen(h: &Matrix) -> (Vec<f64>, Matrix) {
    let k = h.rows();
    // symmetrize against rounding in the caller's product
    let mut a = Matrix::from_fn(k, k, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5);
    let mut v = Matrix::identity(k);
    let scale = a.frobenius().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..k)
            .flat_map(|i| (0..k).filter(move |j| *j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..k {
            for q in p + 1..k {
                let b = a[(p, q)];
                let bn = b.norm();
                if bn <= 1e-300 {
                    continue;
                }
                let phase = (b / bn).conj();
                let (ap, aq) = (a[(p, p)].re, a[(q, q)].re);
                let zeta = (aq - ap) / (2.0 * bn);
                let t = if zeta == 0.0 { 1.0 } else { zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt()) };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                // W = diag(1, phase) · [[c, s], [-s, c]]
                let w = [[C64::new(c, 0.0), C64::new(s, 0.0)], [phase * (-s), phase * c]];
                for i in 0..k {
                    let (x, y) = (a[(i, p)], a[(i, q)]);
                    a[(i, p)] = x * w[0][0] + y * w[1][0];
                    a[(i, q)] = x * w[0][1] + y * w[1][1];
                    let (x, y) = (v[(i, p)], v[(i, q)]);
                    v[(i, p)] = x * w[0][0] + y * w[1][0];
                    v[(i, q)] = x * w[0][1] + y * w[1][1];
                }
                for j in 0..k {
                    let (x, y) = (a[(p, j)], a[(q, j)]);
                    a[(p, j)] = w[0][0].conj() * x + w[1][0].conj() * y;
                    a[(q, j)] = w[0][1].conj() * x + w[1][1].conj() * y;
                }
                a[(p, q)] = C64::zero();
                a[(q, p)] = C64::zero();
            }
        }
    }

    let vals: Vec<f64> = (0..k).map(|i| a[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
    (order.iter().map(|&i| vals[i]).collect(), v.select_columns(&order))
}
