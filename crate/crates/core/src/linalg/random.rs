use alloc::format;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{GroupElement, HermitianForm, LieAlgebraElement, Matrix, C64};
use crate::{Error, Result};

/// Gaussian matrix with independent real and imaginary parts of standard deviation `scale`.
pub fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, scale: f64, rng: &mut R) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re * scale, im * scale)
    })
}

/// Random element of `u(n,1)`: a Gaussian matrix projected onto `x*J + Jx = 0`.
pub fn random_algebra_element<R: Rng + ?Sized>(form: &HermitianForm, scale: f64, rng: &mut R) -> LieAlgebraElement {
    let x = gaussian_matrix(form.size(), form.size(), scale, rng);
    LieAlgebraElement::project(form.clone(), &x)
}

/// `exp(X)` for a random algebra element `X` drawn from `rng`.
pub fn random_element_with<R: Rng + ?Sized>(form: &HermitianForm, scale: f64, rng: &mut R) -> GroupElement {
    random_algebra_element(form, scale, rng).exp()
}

/// Deterministic random group element for a given seed.
pub fn random_element(form: &HermitianForm, scale: f64, seed: u64) -> Result<GroupElement> {
    if !(scale >= 0.0) || !scale.is_finite() {
        return Err(Error::InvalidParameter(format!("scale must be a finite non-negative number, got {scale}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(random_element_with(form, scale, &mut rng))
}

/// Random unitary `k×k` matrix, `exp` of a Gaussian skew-Hermitian matrix.
pub fn random_unitary<R: Rng + ?Sized>(k: usize, scale: f64, rng: &mut R) -> Matrix {
    let g = gaussian_matrix(k, k, scale, rng);
    let skew = (&g - &g.adjoint()).scale_real(0.5);
    super::matrix_exp(&skew)
}
