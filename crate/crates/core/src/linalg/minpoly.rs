use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)] // inherent float methods need std
use num_traits::Float;

use super::{eigen::EigenData, svd, Matrix, C64};
use crate::{Error, Result};

/// Ratio band above the tolerance in which an exponent decision is refused.
const AMBIGUITY_BAND: f64 = 1e3;

/// `Π (x − λᵢ)^{eᵢ}` over the eigenvalue clusters.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimalPolynomial {
    pub factors: Vec<(C64, usize)>,
}

impl MinimalPolynomial {
    /// All exponents equal to one, i.e. the matrix is diagonalizable.
    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn max_exponent(&self) -> usize {
        self.factors.iter().map(|(_, e)| *e).max().unwrap_or(0)
    }

    /// `Π (m − λᵢI)^{eᵢ}`.
    pub fn evaluate(&self, m: &Matrix) -> Matrix {
        self.factors.iter().fold(Matrix::identity(m.rows()), |acc, (l, e)| &acc * &m.shift(*l).pow(*e))
    }
}

/// Smallest exponent per cluster such that `ker (m − λI)^e` reaches the
/// cluster multiplicity, decided on singular values relative to `(‖m‖ + |λ|)^e`.
///
/// Fails with [`Error::Ambiguous`] when the deciding singular value lands
/// within three decades above `tol`, which is where near-defective
/// diagonalizable matrices and nearly-trivial Jordan blocks meet.
pub fn minimal_polynomial_from(m: &Matrix, eigen: &EigenData, tol: f64) -> Result<MinimalPolynomial> {
    let size = m.rows();
    let norm = m.frobenius();
    let mut factors = Vec::with_capacity(eigen.clusters.len());
    for cluster in &eigen.clusters {
        let k = cluster.multiplicity;
        let lambda = cluster.value;
        let base = m.shift(lambda);
        let scale1 = norm + lambda.norm();
        let mut power = Matrix::identity(size);
        let mut exponent = None;
        for e in 1..=k {
            power = &power * &base;
            let s = svd::svd(&power).sigma;
            let ratio = s[size - k] / scale1.powi(e as i32).max(f64::MIN_POSITIVE);
            if ratio <= tol {
                exponent = Some(e);
                break;
            }
            if ratio <= AMBIGUITY_BAND * tol {
                return Err(Error::Ambiguous(format!(
                    "exponent {e} of eigenvalue {lambda:.6} has residual ratio {ratio:.2e} just above {tol:.1e}"
                )));
            }
        }
        match exponent {
            Some(e) => factors.push((lambda, e)),
            None => {
                return Err(Error::Ambiguous(format!(
                    "cluster at {lambda:.6} of multiplicity {k} does not span a generalized eigenspace"
                )))
            }
        }
    }
    Ok(MinimalPolynomial { factors })
}
