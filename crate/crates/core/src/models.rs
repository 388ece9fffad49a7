//! Ball and Siegel-domain coordinates.
//!
//! Points of complex hyperbolic space and its boundary are lines in
//! `ℂ^{n+1}` on which the Hermitian form is negative or zero. Under the
//! Siegel form they carry horospherical coordinates `(ζ, v, u)`; under the
//! ball form the affine chart `ζᵢ = zᵢ/z₀`. A fixed Cayley matrix moves
//! between the two forms.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // inherent float methods need std
use num_traits::{Float, Zero};

use crate::linalg::{orthonormal_columns, vdot, vnorm, vscale, FormKind, GroupElement, HermitianForm, Matrix, C64};
use crate::{Error, Result};

/// Nonzero vector of `ℂ^{n+1}` taken up to a nonzero complex scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveVector {
    v: Vec<C64>,
    form: HermitianForm,
}

impl ProjectiveVector {
    pub fn new(v: Vec<C64>, form: HermitianForm) -> Result<Self> {
        if v.len() != form.size() {
            return Err(Error::DimensionMismatch { expected: form.size(), found: v.len() });
        }
        if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        if vnorm(&v) == 0.0 {
            return Err(Error::InvalidParameter("zero vector has no projective class".into()));
        }
        Ok(ProjectiveVector { v, form })
    }

    pub fn coords(&self) -> &[C64] {
        &self.v
    }

    pub fn form(&self) -> &HermitianForm {
        &self.form
    }

    /// Representative of unit Euclidean length.
    pub fn normalized(&self) -> Vec<C64> {
        let n = vnorm(&self.v);
        vscale(&self.v, C64::new(1.0 / n, 0.0))
    }

    /// `⟨v,v⟩ / ‖v‖²`, a scale-free measure of the signature.
    pub fn relative_norm(&self) -> f64 {
        self.form.norm_sqr(&self.v) / vnorm(&self.v).powi(2)
    }

    /// Same line up to scalar: `|v*w| ≥ (1 − tol)‖v‖‖w‖`.
    pub fn same_point(&self, other: &ProjectiveVector, tol: f64) -> bool {
        same_line(&self.v, &other.v, tol)
    }

    /// Image under a group element.
    pub fn apply(&self, g: &GroupElement) -> Result<ProjectiveVector> {
        if g.form().kind() != self.form.kind() || g.form().size() != self.form.size() {
            return Err(Error::FormMismatch);
        }
        ProjectiveVector::new(g.matrix().mul_vec(&self.v), self.form.clone())
    }
}

/// Sine of the angle between two lines, compared against `tol`.
pub fn same_line(a: &[C64], b: &[C64], tol: f64) -> bool {
    line_distance(a, b) <= tol
}

/// `sin∠(a, b)`: zero iff `a ∝ b`.
pub fn line_distance(a: &[C64], b: &[C64]) -> f64 {
    let (na, nb) = (vnorm(a), vnorm(b));
    if na == 0.0 || nb == 0.0 {
        return 1.0;
    }
    let cos = (vdot(a, b).norm() / (na * nb)).min(1.0);
    (1.0 - cos * cos).max(0.0).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointSignature {
    TimeLike,
    LightLike,
    SpaceLike,
}

/// Sign of `⟨v,v⟩` against the band `|⟨v,v⟩| ≤ tol·‖v‖²`.
pub fn signature(v: &ProjectiveVector, tol: f64) -> PointSignature {
    let r = v.relative_norm();
    if r < -tol {
        PointSignature::TimeLike
    } else if r <= tol {
        PointSignature::LightLike
    } else {
        PointSignature::SpaceLike
    }
}

/// Horospherical coordinates on the Siegel domain, or the point at infinity.
#[derive(Debug, Clone, PartialEq)]
pub enum HorosphericalPoint {
    Finite { zeta: Vec<C64>, v: f64, u: f64 },
    Infinity,
}

impl HorosphericalPoint {
    pub fn origin(n: usize) -> Self {
        HorosphericalPoint::Finite { zeta: vec![C64::zero(); n.saturating_sub(1)], v: 0.0, u: 0.0 }
    }

    pub fn is_boundary(&self) -> bool {
        match self {
            HorosphericalPoint::Finite { u, .. } => *u == 0.0,
            HorosphericalPoint::Infinity => true,
        }
    }
}

/// `ψ(ζ,v,u) = ((−|ζ|² − u + iv)/2, ζ, 1)`, `ψ(∞) = (1,0,…,0)`, under the Siegel form of dimension `n`.
pub fn psi(p: &HorosphericalPoint, n: usize) -> Result<ProjectiveVector> {
    let form = HermitianForm::new(FormKind::Second, n)?;
    match p {
        HorosphericalPoint::Infinity => {
            let mut v = vec![C64::zero(); n + 1];
            v[0] = C64::new(1.0, 0.0);
            ProjectiveVector::new(v, form)
        }
        HorosphericalPoint::Finite { zeta, v, u } => {
            if zeta.len() + 1 != n {
                return Err(Error::DimensionMismatch { expected: n - 1, found: zeta.len() });
            }
            if !(*u >= 0.0) || !v.is_finite() || !u.is_finite() {
                return Err(Error::InvalidParameter(format!("need finite v and u ≥ 0, got v={v}, u={u}")));
            }
            let z2: f64 = zeta.iter().map(C64::norm_sqr).sum();
            let mut out = Vec::with_capacity(n + 1);
            out.push(C64::new(-z2 - u, *v) * 0.5);
            out.extend_from_slice(zeta);
            out.push(C64::new(1.0, 0.0));
            ProjectiveVector::new(out, form)
        }
    }
}

/// Inverse of [`psi`] up to scalar. Space-like input is rejected.
pub fn psi_inverse(p: &ProjectiveVector, tol: f64) -> Result<HorosphericalPoint> {
    if p.form().kind() != FormKind::Second {
        return Err(Error::FormMismatch);
    }
    if signature(p, tol) == PointSignature::SpaceLike {
        return Err(Error::SpaceLike);
    }
    let x = p.coords();
    let n = x.len() - 1;
    let scale = vnorm(x);
    if vnorm(&x[1..]) <= tol * scale {
        return Ok(HorosphericalPoint::Infinity);
    }
    let last = x[n];
    if last.norm() <= tol * scale {
        // a non-positive vector with vanishing last entry is proportional to e₁
        return Ok(HorosphericalPoint::Infinity);
    }
    let y: Vec<C64> = x.iter().map(|z| z / last).collect();
    let zeta = y[1..n].to_vec();
    let z2: f64 = zeta.iter().map(C64::norm_sqr).sum();
    let u = -2.0 * y[0].re - z2;
    // light-like points land within rounding of zero
    let u = if u.abs() <= tol * (1.0 + z2 + y[0].norm()) { 0.0 } else { u };
    if u < 0.0 {
        return Err(Error::SpaceLike);
    }
    Ok(HorosphericalPoint::Finite { zeta, v: 2.0 * y[0].im, u })
}

/// Affine chart `ζᵢ = zᵢ/z₀` of the ball model.
#[derive(Debug, Clone, PartialEq)]
pub struct BallPoint {
    pub zeta: Vec<C64>,
}

impl BallPoint {
    pub fn norm_sqr(&self) -> f64 {
        self.zeta.iter().map(C64::norm_sqr).sum()
    }

    pub fn is_interior(&self) -> bool {
        self.norm_sqr() < 1.0
    }
}

/// Ball coordinates of a first-form vector; requires `z₀ ≠ 0`.
pub fn ball_coordinates(p: &ProjectiveVector) -> Result<BallPoint> {
    if p.form().kind() != FormKind::First {
        return Err(Error::FormMismatch);
    }
    let x = p.coords();
    if x[0].norm() <= f64::EPSILON * vnorm(x) {
        return Err(Error::SpaceLike);
    }
    Ok(BallPoint { zeta: x[1..].iter().map(|z| z / x[0]).collect() })
}

/// Cayley matrix `C` with `C*·J₂·C = J₁`, so `z ↦ Cz` carries the ball form to the Siegel form.
///
/// First column `(1,0,…,0,−1)/√2`, last column `(1,0,…,0,1)/√2`, identity in between.
pub fn cayley_matrix(n: usize) -> Result<Matrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be ≥ 1".into()));
    }
    let h = core::f64::consts::FRAC_1_SQRT_2;
    let mut c = Matrix::identity(n + 1);
    c[(0, 0)] = C64::new(h, 0.0);
    c[(n, 0)] = C64::new(-h, 0.0);
    c[(0, n)] = C64::new(h, 0.0);
    c[(n, n)] = C64::new(h, 0.0);
    Ok(c)
}

/// Inverse Cayley matrix, `C⁻¹ = J₁C*J₂`.
pub fn cayley_inverse(n: usize) -> Result<Matrix> {
    let c = cayley_matrix(n)?;
    let (j1, j2) = (HermitianForm::first(n), HermitianForm::second(n));
    Ok(&(j1.gram() * &c.adjoint()) * j2.gram())
}

/// Re-expresses `g` as an element preserving `target` (`CgC⁻¹` or `C⁻¹gC`).
pub fn convert_element(g: &GroupElement, target: &HermitianForm, tol: f64) -> Result<GroupElement> {
    let n = g.n();
    if target.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: target.n() });
    }
    let m = match (g.form().kind(), target.kind()) {
        (a, b) if a == b => g.matrix().clone(),
        (FormKind::First, FormKind::Second) => &(&cayley_matrix(n)? * g.matrix()) * &cayley_inverse(n)?,
        (FormKind::Second, FormKind::First) => &(&cayley_inverse(n)? * g.matrix()) * &cayley_matrix(n)?,
        _ => unreachable!(),
    };
    GroupElement::new(target.clone(), m, tol)
}

/// Same map for vectors.
pub fn convert_vector(p: &ProjectiveVector, target: &HermitianForm) -> Result<ProjectiveVector> {
    let n = p.form().n();
    let v = match (p.form().kind(), target.kind()) {
        (a, b) if a == b => p.coords().to_vec(),
        (FormKind::First, FormKind::Second) => cayley_matrix(n)?.mul_vec(p.coords()),
        _ => cayley_inverse(n)?.mul_vec(p.coords()),
    };
    ProjectiveVector::new(v, target.clone())
}

/// Siegel-form element `F` whose first column is the null vector `x`, so `F(∞) = x`.
///
/// Columns are `x`, an orthonormal basis of `{x, y}^⊥` and a null `y` with
/// `⟨x,y⟩ = 1`; then `F*JF = J`. Its inverse moves `x` to `∞`.
pub fn frame_at_null(x: &[C64], form: &HermitianForm, tol: f64) -> Result<GroupElement> {
    if form.kind() != FormKind::Second {
        return Err(Error::FormMismatch);
    }
    let size = form.size();
    if x.len() != size {
        return Err(Error::DimensionMismatch { expected: size, found: x.len() });
    }
    let nx = vnorm(x);
    if nx == 0.0 {
        return Err(Error::InvalidParameter("zero vector".into()));
    }
    let x = vscale(x, C64::new(1.0 / nx, 0.0));
    if form.norm_sqr(&x).abs() > tol {
        return Err(Error::InvalidParameter(format!("vector is not light-like: ⟨x,x⟩ = {:e}", form.norm_sqr(&x))));
    }
    let j = form.gram();
    // ⟨x, Jx⟩ = x*x = 1
    let w = j.mul_vec(&x);
    let b = -form.norm_sqr(&w) / 2.0;
    let y: Vec<C64> = w.iter().zip(&x).map(|(wi, xi)| wi + xi * b).collect();

    let project = |z: &[C64]| -> Vec<C64> {
        let zy = form.inner(z, &y);
        let zx = form.inner(z, &x);
        z.iter().zip(x.iter().zip(&y)).map(|(zi, (xi, yi))| zi - xi * zy - yi * zx).collect()
    };
    // complement of span{x, y}; the form is positive there, so Euclidean
    // orthonormalization followed by a form-Gram–Schmidt is well conditioned
    let candidates: Vec<Vec<C64>> = (0..size)
        .map(|k| {
            let mut e = vec![C64::zero(); size];
            e[k] = C64::new(1.0, 0.0);
            project(&e)
        })
        .collect();
    let euclid = orthonormal_columns(&Matrix::from_columns(&candidates), 1e-8);
    let mut middle: Vec<Vec<C64>> = Vec::with_capacity(size - 2);
    for mut c in euclid.columns() {
        for m in &middle {
            let p = form.inner(&c, m);
            c = c.iter().zip(m).map(|(ci, mi)| ci - mi * p).collect();
        }
        let q = form.norm_sqr(&c);
        if q > 1e-10 {
            middle.push(vscale(&c, C64::new(1.0 / q.sqrt(), 0.0)));
        }
        if middle.len() == size - 2 {
            break;
        }
    }
    if middle.len() != size - 2 {
        return Err(Error::Ambiguous("could not complete a null frame".into()));
    }
    let mut cols = Vec::with_capacity(size);
    cols.push(x);
    cols.extend(middle);
    cols.push(y);
    GroupElement::new(form.clone(), Matrix::from_columns(&cols), 1e3 * tol.max(1e-12))
}
