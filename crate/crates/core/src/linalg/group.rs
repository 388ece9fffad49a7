use alloc::format;

use super::{Matrix, C64};
use crate::{Error, Result};

/// Which of the two standard Hermitian forms of signature `(n,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormKind {
    /// `⟨z,w⟩ = −z̄₀w₀ + z̄₁w₁ + … + z̄ₙwₙ`, the ball model.
    First,
    /// `⟨z,w⟩ = w*Jz` with `J` anti-diagonal in the outer corners, the Siegel domain.
    Second,
}

/// A Hermitian form on `ℂ^{n+1}` together with its Gram matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianForm {
    kind: FormKind,
    n: usize,
    gram: Matrix,
}

impl HermitianForm {
    pub fn new(kind: FormKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(format!("hyperbolic dimension must be ≥ 1, got {n}")));
        }
        let mut gram = Matrix::zeros(n + 1, n + 1);
        let one = C64::new(1.0, 0.0);
        match kind {
            FormKind::First => {
                gram[(0, 0)] = -one;
                for i in 1..=n {
                    gram[(i, i)] = one;
                }
            }
            FormKind::Second => {
                gram[(0, n)] = one;
                gram[(n, 0)] = one;
                for i in 1..n {
                    gram[(i, i)] = one;
                }
            }
        }
        Ok(HermitianForm { kind, n, gram })
    }

    /// Ball-model form of complex dimension `n`.
    ///
    /// # Panics
    /// If `n == 0`.
    pub fn first(n: usize) -> Self {
        Self::new(FormKind::First, n).expect("n ≥ 1")
    }

    /// Siegel-domain form of complex dimension `n`.
    ///
    /// # Panics
    /// If `n == 0`.
    pub fn second(n: usize) -> Self {
        Self::new(FormKind::Second, n).expect("n ≥ 1")
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    /// Complex dimension of the hyperbolic space.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Size `n+1` of the matrices acting on the form.
    pub fn size(&self) -> usize {
        self.n + 1
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// Both Gram matrices are involutions, so `J⁻¹ = J`.
    pub fn gram_inverse(&self) -> &Matrix {
        &self.gram
    }

    /// `⟨z,w⟩ = w*Jz`.
    pub fn inner(&self, z: &[C64], w: &[C64]) -> C64 {
        let jz = self.gram.mul_vec(z);
        super::vdot(w, &jz)
    }

    /// `⟨v,v⟩`, real by Hermitian symmetry.
    pub fn norm_sqr(&self, v: &[C64]) -> f64 {
        self.inner(v, v).re
    }

    /// Gram matrix `B*JB` of the form restricted to the column span of `b`.
    pub fn restrict(&self, b: &Matrix) -> Matrix {
        &(&b.adjoint() * &self.gram) * b
    }
}

/// `‖m*Jm − J‖_max`.
pub fn membership_residual(m: &Matrix, form: &HermitianForm) -> Result<f64> {
    if !m.is_square() || m.rows() != form.size() {
        return Err(Error::DimensionMismatch { expected: form.size(), found: m.rows().max(m.cols()) });
    }
    let j = form.gram();
    Ok((&(&(&m.adjoint() * j) * m) - j).max_abs())
}

/// True iff `‖m*Jm − J‖_max ≤ tol`.
pub fn is_group_member(m: &Matrix, form: &HermitianForm, tol: f64) -> Result<bool> {
    Ok(membership_residual(m, form)? <= tol)
}

/// An element of `U(n,1)` for a fixed Hermitian form.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    form: HermitianForm,
    m: Matrix,
}

impl GroupElement {
    /// Checks membership at `tol`.
    pub fn new(form: HermitianForm, m: Matrix, tol: f64) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let residual = membership_residual(&m, &form)?;
        if residual > tol {
            return Err(Error::NotMember { residual, tol });
        }
        Ok(GroupElement { form, m })
    }

    /// Wraps a matrix already known to preserve `form` (products, exact constructions).
    pub fn from_matrix_unchecked(form: HermitianForm, m: Matrix) -> Self {
        debug_assert_eq!(m.rows(), form.size());
        GroupElement { form, m }
    }

    pub fn identity(form: HermitianForm) -> Self {
        let m = Matrix::identity(form.size());
        GroupElement { form, m }
    }

    pub fn form(&self) -> &HermitianForm {
        &self.form
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn into_matrix(self) -> Matrix {
        self.m
    }

    pub fn n(&self) -> usize {
        self.form.n()
    }

    pub fn membership_residual(&self) -> f64 {
        membership_residual(&self.m, &self.form).unwrap_or(f64::INFINITY)
    }

    pub fn try_mul(&self, rhs: &GroupElement) -> Result<GroupElement> {
        self.same_form(rhs)?;
        Ok(GroupElement { form: self.form.clone(), m: &self.m * &rhs.m })
    }

    /// `J⁻¹g*J`.
    pub fn inverse(&self) -> GroupElement {
        let j = self.form.gram();
        let m = &(self.form.gram_inverse() * &self.m.adjoint()) * j;
        GroupElement { form: self.form.clone(), m }
    }

    /// `h·self·h⁻¹`.
    pub fn conjugate_by(&self, h: &GroupElement) -> Result<GroupElement> {
        h.try_mul(self)?.try_mul(&h.inverse())
    }

    /// Multiplies by a unit scalar.
    pub fn scaled(&self, mu: C64) -> GroupElement {
        GroupElement { form: self.form.clone(), m: self.m.scale(mu) }
    }

    pub fn same_form(&self, other: &GroupElement) -> Result<()> {
        if self.form.size() != other.form.size() {
            return Err(Error::DimensionMismatch { expected: self.form.size(), found: other.form.size() });
        }
        if self.form.kind() != other.form.kind() {
            return Err(Error::FormMismatch);
        }
        Ok(())
    }
}

impl core::ops::Mul for &GroupElement {
    type Output = GroupElement;
    fn mul(self, rhs: &GroupElement) -> GroupElement {
        self.try_mul(rhs).expect("group elements of different forms")
    }
}

/// Inverse through the form, `g⁻¹ = J⁻¹g*J`, never by elimination.
///
/// Fails if `g` has drifted out of the group beyond `tol`, since the formula
/// is only an inverse for members.
pub fn inverse_by_form(g: &GroupElement, tol: f64) -> Result<GroupElement> {
    let residual = g.membership_residual();
    if residual > tol {
        return Err(Error::NotMember { residual, tol });
    }
    Ok(g.inverse())
}

/// Element of the Lie algebra `u(n,1)`: `x*J + Jx = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebraElement {
    form: HermitianForm,
    x: Matrix,
}

impl LieAlgebraElement {
    pub fn new(form: HermitianForm, x: Matrix, tol: f64) -> Result<Self> {
        let r = Self::residual_of(&x, &form)?;
        if r > tol {
            return Err(Error::NotMember { residual: r, tol });
        }
        Ok(LieAlgebraElement { form, x })
    }

    /// Orthogonal projection `x ↦ (x − J⁻¹x*J)/2` onto the algebra.
    pub fn project(form: HermitianForm, x: &Matrix) -> Self {
        let j = form.gram();
        let reflected = &(form.gram_inverse() * &x.adjoint()) * j;
        let x = (x - &reflected).scale_real(0.5);
        LieAlgebraElement { form, x }
    }

    fn residual_of(x: &Matrix, form: &HermitianForm) -> Result<f64> {
        if !x.is_square() || x.rows() != form.size() {
            return Err(Error::DimensionMismatch { expected: form.size(), found: x.rows() });
        }
        let j = form.gram();
        Ok((&(&x.adjoint() * j) + &(j * x)).max_abs())
    }

    pub fn residual(&self) -> f64 {
        Self::residual_of(&self.x, &self.form).unwrap_or(f64::INFINITY)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.x
    }

    pub fn form(&self) -> &HermitianForm {
        &self.form
    }

    pub fn exp(&self) -> GroupElement {
        GroupElement::from_matrix_unchecked(self.form.clone(), super::matrix_exp(&self.x))
    }
}
