//! The Heisenberg group and the stabilizer of `∞` in the Siegel model.
//!
//! An element `(τ, t) ∈ ℂ^{n−1} × ℝ` acts as the unipotent matrix `T_(τ,t)`.
//! Every element fixing `∞` factors uniquely as `μ·D_r·R_U·T_(τ,t)`: a unit
//! scalar, a dilation, a unitary rotation and a translation.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // inherent float methods need std
use num_traits::{Float, Zero};

use crate::linalg::{vdot, vnorm, vscale, FormKind, GroupElement, HermitianForm, Matrix, C64};
use crate::{Error, Result};

/// Unitarity tolerance for rotation blocks.
const UNITARY_TOL: f64 = 1e-9;

/// `(τ, t)` with the twisted group law of [`heis_mul`].
#[derive(Debug, Clone, PartialEq)]
pub struct HeisElement {
    pub tau: Vec<C64>,
    pub t: f64,
}

impl HeisElement {
    pub fn new(tau: Vec<C64>, t: f64) -> Result<Self> {
        if !t.is_finite() || tau.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(HeisElement { tau, t })
    }

    /// Identity of the group acting on complex dimension `n`.
    pub fn zero(n: usize) -> Self {
        HeisElement { tau: vec![C64::zero(); n.saturating_sub(1)], t: 0.0 }
    }

    /// Central element `(0, t)`.
    pub fn vertical(n: usize, t: f64) -> Self {
        HeisElement { tau: vec![C64::zero(); n.saturating_sub(1)], t }
    }

    pub fn inverse(&self) -> Self {
        HeisElement { tau: self.tau.iter().map(|z| -z).collect(), t: -self.t }
    }

    /// Length of `τ`, which is `n − 1`.
    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    /// Max-norm distance between parameters.
    pub fn distance(&self, other: &HeisElement) -> f64 {
        let d = self.tau.iter().zip(&other.tau).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        d.max((self.t - other.t).abs())
    }
}

fn check_len(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch { expected: a, found: b });
    }
    Ok(())
}

/// `(τa, ta)·(τb, tb) = (τa + τb, ta + tb + 2·Im(τb*τa))`.
pub fn heis_mul(a: &HeisElement, b: &HeisElement) -> Result<HeisElement> {
    check_len(a.len(), b.len())?;
    let tau = a.tau.iter().zip(&b.tau).map(|(x, y)| x + y).collect();
    Ok(HeisElement { tau, t: a.t + b.t + 2.0 * vdot(&b.tau, &a.tau).im })
}

/// `Im(τ*σ)`, the symplectic pairing deciding isotropy.
pub fn symplectic_pairing(a: &HeisElement, b: &HeisElement) -> Result<f64> {
    check_len(a.len(), b.len())?;
    Ok(vdot(&a.tau, &b.tau).im)
}

/// `|Im(τ*σ)| ≤ tol`.
pub fn is_isotropic(a: &HeisElement, b: &HeisElement, tol: f64) -> Result<bool> {
    Ok(symplectic_pairing(a, b)?.abs() <= tol)
}

/// `‖τ‖ ≤ tol·(1 + |t|)`.
pub fn is_vertical(a: &HeisElement, tol: f64) -> bool {
    vnorm(&a.tau) <= tol * (1.0 + a.t.abs())
}

fn form_for(n: usize) -> Result<HermitianForm> {
    HermitianForm::new(FormKind::Second, n)
}

/// Unipotent matrix with rows `(1, −τ*, (−|τ|²+ti)/2)`, `(0, I, τ)`, `(0, 0, 1)`.
pub fn translation_matrix(a: &HeisElement, n: usize) -> Result<GroupElement> {
    let form = form_for(n)?;
    check_len(n - 1, a.len())?;
    let mut m = Matrix::identity(n + 1);
    for (i, z) in a.tau.iter().enumerate() {
        m[(0, i + 1)] = -z.conj();
        m[(i + 1, n)] = *z;
    }
    let t2: f64 = a.tau.iter().map(C64::norm_sqr).sum();
    m[(0, n)] = C64::new(-t2, a.t) * 0.5;
    Ok(GroupElement::from_matrix_unchecked(form, m))
}

fn unitarity_residual(u: &Matrix) -> f64 {
    (&(&u.adjoint() * u) - &Matrix::identity(u.rows())).max_abs()
}

/// `diag(1, U, 1)`, acting on complex dimension `U.rows() + 1`.
pub fn rotation_matrix(u: &Matrix) -> Result<GroupElement> {
    if !u.is_square() {
        return Err(Error::DimensionMismatch { expected: u.rows(), found: u.cols() });
    }
    let res = unitarity_residual(u);
    if !(res <= UNITARY_TOL) {
        return Err(Error::InvalidParameter(format!("rotation block is not unitary (residual {res:e})")));
    }
    let n = u.rows() + 1;
    let mut m = Matrix::identity(n + 1);
    m.set_block(1, 1, u);
    Ok(GroupElement::from_matrix_unchecked(form_for(n)?, m))
}

/// `diag(r, I, 1/r)`.
pub fn dilation_matrix(r: f64, n: usize) -> Result<GroupElement> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter(format!("dilation factor must be positive, got {r}")));
    }
    let mut m = Matrix::identity(n + 1);
    m[(0, 0)] = C64::new(r, 0.0);
    m[(n, n)] = C64::new(1.0 / r, 0.0);
    Ok(GroupElement::from_matrix_unchecked(form_for(n)?, m))
}

/// Heisenberg isometry `R_U·T_(τ,t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeisIsometry {
    pub rotation: Matrix,
    pub trans: HeisElement,
}

impl HeisIsometry {
    pub fn new(rotation: Matrix, trans: HeisElement) -> Result<Self> {
        check_len(rotation.rows(), trans.len())?;
        let res = unitarity_residual(&rotation);
        if !(res <= UNITARY_TOL) {
            return Err(Error::InvalidParameter(format!("rotation block is not unitary (residual {res:e})")));
        }
        Ok(HeisIsometry { rotation, trans })
    }

    pub fn translation(trans: HeisElement) -> Self {
        HeisIsometry { rotation: Matrix::identity(trans.len()), trans }
    }

    pub fn n(&self) -> usize {
        self.trans.len() + 1
    }

    pub fn matrix(&self) -> Result<GroupElement> {
        let n = self.n();
        rotation_matrix(&self.rotation)?.try_mul(&translation_matrix(&self.trans, n)?)
    }
}

/// `μ·D_r·R_U·T_(τ,t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeisSimilarity {
    pub r: f64,
    pub rotation: Matrix,
    pub trans: HeisElement,
    /// Unit scalar factored out of the matrix.
    pub scalar: C64,
}

impl HeisSimilarity {
    pub fn n(&self) -> usize {
        self.trans.len() + 1
    }

    pub fn matrix(&self) -> Result<GroupElement> {
        let n = self.n();
        let d = dilation_matrix(self.r, n)?;
        let rt = HeisIsometry::new(self.rotation.clone(), self.trans.clone())?.matrix()?;
        Ok(d.try_mul(&rt)?.scaled(self.scalar))
    }

    /// Drops the dilation, failing unless `r = 1` within `tol`.
    pub fn isometry(&self, tol: f64) -> Result<HeisIsometry> {
        if (self.r - 1.0).abs() > tol {
            return Err(Error::InvalidParameter(format!("element has dilation factor {}", self.r)));
        }
        Ok(HeisIsometry { rotation: self.rotation.clone(), trans: self.trans.clone() })
    }
}

/// True iff the first column is proportional to `e₁`, i.e. `g(∞) = ∞`.
pub fn fixes_infinity(g: &GroupElement, tol: f64) -> bool {
    let m = g.matrix();
    let lead = m[(0, 0)].norm();
    let tail = (1..m.rows()).map(|i| m[(i, 0)].norm()).fold(0.0, f64::max);
    lead > 0.0 && tail <= tol * lead.max(1.0)
}

/// Unique factorization of an element fixing `∞`.
pub fn decompose_stabilizer(g: &GroupElement, tol: f64) -> Result<HeisSimilarity> {
    if g.form().kind() != FormKind::Second {
        return Err(Error::FormMismatch);
    }
    if !fixes_infinity(g, tol) {
        return Err(Error::NotFixingInfinity);
    }
    let n = g.n();
    let m = g.matrix();
    let d = m[(n, n)];
    if d.norm() == 0.0 {
        return Err(Error::NotFixingInfinity);
    }
    let mu = d / d.norm();
    let r = 1.0 / d.norm();
    let a = m[(0, 0)];
    let rotation = m.block(1, n, 1, n).scale(mu.conj());
    let beta: Vec<C64> = (1..n).map(|i| m[(i, n)] * mu.conj()).collect();
    let tau = rotation.adjoint().mul_vec(&beta);
    let t = (m[(0, n)] * 2.0 / a).im;
    let out = HeisSimilarity { r, rotation, trans: HeisElement { tau, t }, scalar: mu };

    let unit = unitarity_residual(&out.rotation);
    if !(unit <= tol.max(UNITARY_TOL)) {
        return Err(Error::InvalidParameter(format!(
            "middle block is not a multiple of a unitary (residual {unit:e})"
        )));
    }
    let rebuilt = out.matrix()?;
    let err = (rebuilt.matrix() - m).max_abs();
    if !(err <= tol * m.max_abs().max(1.0)) {
        return Err(Error::InvalidParameter(format!("reconstruction residual {err:e} exceeds tolerance")));
    }
    Ok(out)
}

/// Conjugating elements of the stabilizer of `∞`.
#[derive(Debug, Clone, PartialEq)]
pub enum Conjugator {
    ByTranslation(HeisElement),
    ByRotation(Matrix),
    ByDilation(f64),
}

impl Conjugator {
    pub fn matrix(&self, n: usize) -> Result<GroupElement> {
        match self {
            Conjugator::ByTranslation(s) => translation_matrix(s, n),
            Conjugator::ByRotation(v) => rotation_matrix(v),
            Conjugator::ByDilation(r) => dilation_matrix(*r, n),
        }
    }
}

/// Parameters of `h·R_U T_(τ,t)·h⁻¹` in closed form.
///
/// Rotation: `(VUV*, Vτ, t)`. Dilation: `(U, rτ, r²t)`. Translation by `σ`:
/// `T_σ R_U = R_U T_(U*σ)`, so the result is `R_U·T_((U*σ,0)(τ,t)(−σ,0))`.
pub fn conjugate_similarity(by: &Conjugator, target: &HeisIsometry) -> Result<HeisIsometry> {
    let (u, a) = (&target.rotation, &target.trans);
    match by {
        Conjugator::ByRotation(v) => {
            check_len(a.len(), v.rows())?;
            let rotation = &(v * u) * &v.adjoint();
            Ok(HeisIsometry { rotation, trans: HeisElement { tau: v.mul_vec(&a.tau), t: a.t } })
        }
        Conjugator::ByDilation(r) => {
            if !(*r > 0.0) {
                return Err(Error::InvalidParameter(format!("dilation factor must be positive, got {r}")));
            }
            let tau = vscale(&a.tau, C64::new(*r, 0.0));
            Ok(HeisIsometry { rotation: u.clone(), trans: HeisElement { tau, t: r * r * a.t } })
        }
        Conjugator::ByTranslation(s) => {
            check_len(a.len(), s.len())?;
            let pulled = HeisElement { tau: u.adjoint().mul_vec(&s.tau), t: 0.0 };
            let back = HeisElement { tau: s.tau.iter().map(|z| -z).collect(), t: 0.0 };
            let trans = heis_mul(&heis_mul(&pulled, a)?, &back)?;
            Ok(HeisIsometry { rotation: u.clone(), trans })
        }
    }
}

/// Parameter-level test for `R_U T_(τ,t)` and `R_V T_(σ,s)` to commute:
/// `VU = UV` and `(V*τ, t)(σ, s) = (U*σ, s)(τ, t)`.
pub fn heisenberg_commute_condition(a: &HeisIsometry, b: &HeisIsometry, tol: f64) -> Result<bool> {
    check_len(a.trans.len(), b.trans.len())?;
    let (u, v) = (&a.rotation, &b.rotation);
    let scale = 1.0 + vnorm(&a.trans.tau).powi(2) + vnorm(&b.trans.tau).powi(2) + a.trans.t.abs() + b.trans.t.abs();
    if (&(v * u) - &(u * v)).max_abs() > tol {
        return Ok(false);
    }
    let lhs = heis_mul(&HeisElement { tau: v.adjoint().mul_vec(&a.trans.tau), t: a.trans.t }, &b.trans)?;
    let rhs = heis_mul(&HeisElement { tau: u.adjoint().mul_vec(&b.trans.tau), t: b.trans.t }, &a.trans)?;
    Ok(lhs.distance(&rhs) <= tol * scale)
}
