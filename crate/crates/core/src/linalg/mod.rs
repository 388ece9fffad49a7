//! Complex linear algebra at small fixed dimension and the group `U(n,1)`.

mod eigen;
mod expm;
mod group;
mod matrix;
mod minpoly;
mod random;
pub mod svd;

pub use eigen::{
    cluster_values, decompose_matrix, eigen_decompose, eigenvalues, eigenvector, merge_radius, EigenCluster, EigenData,
};
pub use expm::matrix_exp;
pub use group::{
    inverse_by_form, is_group_member, membership_residual, FormKind, GroupElement, HermitianForm, LieAlgebraElement,
};
pub use matrix::{orthonormal_columns, vadd, vdot, vnorm, vscale, vsub, Matrix};
pub use minpoly::{minimal_polynomial_from, MinimalPolynomial};
pub use random::{gaussian_matrix, random_algebra_element, random_element, random_element_with, random_unitary};

use crate::{Result, Tolerances};

pub type C64 = num_complex::Complex64;

/// Finite complex scalar; rejects NaN and infinities.
pub fn scalar(re: f64, im: f64) -> Result<C64> {
    if re.is_finite() && im.is_finite() {
        Ok(C64::new(re, im))
    } else {
        Err(crate::Error::NonFinite)
    }
}

/// Minimal polynomial of a group element with clusters at `tol.cluster` and
/// exponent decisions at `tol.rank`.
pub fn minimal_polynomial(g: &GroupElement, tol: &Tolerances) -> Result<MinimalPolynomial> {
    let eigen = eigen_decompose(g, tol.cluster)?;
    minimal_polynomial_from(g.matrix(), &eigen, tol.rank)
}
