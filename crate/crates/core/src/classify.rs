//! Elliptic, parabolic and hyperbolic elements.
//!
//! Classification reads three things off the spectrum: whether some
//! eigenvalue leaves the unit circle (hyperbolic), whether the minimal
//! polynomial is squarefree (elliptic), and otherwise the size of the
//! defective Jordan block (parabolic). Eigenspaces are then sorted by the sign
//! of the form restricted to them, which locates fixed points in the ball and
//! on its boundary.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::heisenberg::{decompose_stabilizer, HeisElement};
use crate::linalg::svd::{hermitian_eigen, svd};
use crate::linalg::{
    eigen_decompose, inverse_by_form, membership_residual, minimal_polynomial_from, vnorm, EigenData, GroupElement,
    Matrix, MinimalPolynomial, C64,
};
use crate::models::ProjectiveVector;
use crate::{Error, Result, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EllipticKind {
    /// All eigenvalues distinct.
    Regular,
    /// The eigenvalue of the fixed interior point has multiplicity ≥ 2.
    Boundary,
    /// Simple negative eigenvalue, some repeated positive one.
    OtherElliptic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HyperbolicKind {
    /// All eigenvalues real after removing a unit scalar.
    Strict,
    Loxodromic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParabolicKind {
    /// Unipotent up to scalar with minimal polynomial `(x−1)²`.
    VerticalTranslation,
    /// Unipotent up to scalar with minimal polynomial `(x−1)³`.
    NonVerticalTranslation,
    ElliptoParabolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IsometryKind {
    Elliptic(EllipticKind),
    Hyperbolic(HyperbolicKind),
    Parabolic(ParabolicKind),
}

impl IsometryKind {
    pub fn is_elliptic(self) -> bool {
        matches!(self, IsometryKind::Elliptic(_))
    }

    pub fn is_hyperbolic(self) -> bool {
        matches!(self, IsometryKind::Hyperbolic(_))
    }

    pub fn is_parabolic(self) -> bool {
        matches!(self, IsometryKind::Parabolic(_))
    }

    /// Translation, possibly times a unit scalar.
    pub fn is_translation(self) -> bool {
        matches!(
            self,
            IsometryKind::Parabolic(ParabolicKind::VerticalTranslation | ParabolicKind::NonVerticalTranslation)
        )
    }

    pub fn label(self) -> &'static str {
        match self {
            IsometryKind::Elliptic(EllipticKind::Regular) => "elliptic/regular",
            IsometryKind::Elliptic(EllipticKind::Boundary) => "elliptic/boundary",
            IsometryKind::Elliptic(EllipticKind::OtherElliptic) => "elliptic/other",
            IsometryKind::Hyperbolic(HyperbolicKind::Strict) => "hyperbolic/strict",
            IsometryKind::Hyperbolic(HyperbolicKind::Loxodromic) => "hyperbolic/loxodromic",
            IsometryKind::Parabolic(ParabolicKind::VerticalTranslation) => "parabolic/vertical-translation",
            IsometryKind::Parabolic(ParabolicKind::NonVerticalTranslation) => "parabolic/non-vertical-translation",
            IsometryKind::Parabolic(ParabolicKind::ElliptoParabolic) => "parabolic/ellipto-parabolic",
        }
    }
}

/// Kind plus the unit scalar that puts the distinguished eigenvalue on the
/// positive real axis (the fixed interior point, the repelling/attracting pair, or the Jordan block).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsometryClass {
    pub kind: IsometryKind,
    pub scalar: C64,
}

/// Sign of the form on an eigenspace.
#[derive(Debug, Clone, PartialEq)]
pub enum SpaceSign {
    /// Contains a time-like vector: the eigenspace meets the ball.
    Negative,
    /// Positive semi-definite with a null radical: a boundary fixed point.
    Degenerate {
        radical: Vec<C64>,
    },
    Positive,
}

/// One eigenvalue cluster with its eigenspace.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterInfo {
    pub value: C64,
    pub multiplicity: usize,
    /// Exponent of `(x − λ)` in the minimal polynomial.
    pub exponent: usize,
    /// Orthonormal basis of `ker(g − λI)`.
    pub eigenspace: Matrix,
    pub sign: SpaceSign,
}

/// Spectral data of an element shared by classification, commutation and centralizers.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub element: GroupElement,
    pub class: IsometryClass,
    pub eigen: EigenData,
    pub minpoly: MinimalPolynomial,
    pub clusters: Vec<ClusterInfo>,
    /// Cluster carrying the scalar: the negative one (elliptic), the
    /// expanding one (hyperbolic) or the defective one (parabolic).
    pub distinguished: usize,
}

impl Analysis {
    pub fn kind(&self) -> IsometryKind {
        self.class.kind
    }

    /// Light-like eigenlines (two for hyperbolic, one for parabolic).
    pub fn null_eigenlines(&self) -> Vec<Vec<C64>> {
        self.clusters
            .iter()
            .filter_map(|c| match &c.sign {
                SpaceSign::Degenerate { radical } => Some(radical.clone()),
                _ => None,
            })
            .collect()
    }

    /// Eigenspace containing the fixed interior points of an elliptic element.
    pub fn negative_eigenspace(&self) -> Option<&Matrix> {
        self.clusters.iter().find(|c| c.sign == SpaceSign::Negative).map(|c| &c.eigenspace)
    }

    /// Multiplicities of clusters other than the distinguished one.
    pub fn other_multiplicities(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .clusters
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != self.distinguished)
            .map(|(_, c)| c.multiplicity)
            .collect();
        v.sort_unstable();
        v
    }
}

fn check_member(g: &GroupElement, tol: &Tolerances) -> Result<()> {
    let residual = membership_residual(g.matrix(), g.form())?;
    if !(residual <= tol.membership) {
        return Err(Error::NotMember { residual, tol: tol.membership });
    }
    Ok(())
}

fn eigenspace(m: &Matrix, value: C64, dim: usize) -> Matrix {
    svd(&m.shift(value)).trailing(dim)
}

fn space_sign(g: &GroupElement, basis: &Matrix, tol: f64) -> SpaceSign {
    let gram = g.form().restrict(basis);
    let (vals, vecs) = hermitian_eigen(&gram);
    if vals[0] < -tol {
        SpaceSign::Negative
    } else if vals[0] <= tol {
        SpaceSign::Degenerate { radical: basis.mul_vec(&vecs.column(0)) }
    } else {
        SpaceSign::Positive
    }
}

fn unit(z: C64) -> C64 {
    if z.norm() == 0.0 {
        C64::one()
    } else {
        z / z.norm()
    }
}

/// Full spectral analysis of a member.
pub fn analyze(g: &GroupElement, tol: &Tolerances) -> Result<Analysis> {
    check_member(g, tol)?;
    let m = g.matrix();
    let eigen = eigen_decompose(g, tol.cluster)?;
    let minpoly = minimal_polynomial_from(m, &eigen, tol.rank)?;

    let mut clusters = Vec::with_capacity(eigen.clusters.len());
    for (c, &(_, exponent)) in eigen.clusters.iter().zip(&minpoly.factors) {
        let dim = c.multiplicity + 1 - exponent;
        let space = eigenspace(m, c.value, dim);
        let sign = space_sign(g, &space, tol.signature);
        clusters.push(ClusterInfo { value: c.value, multiplicity: c.multiplicity, exponent, eigenspace: space, sign });
    }

    let off_circle: Vec<usize> = (0..clusters.len())
        .filter(|&i| (clusters[i].value.norm() - 1.0).abs() > tol.cluster.max(eigen.merge_radius / 2.0))
        .collect();

    let (kind, distinguished) = if !off_circle.is_empty() {
        if off_circle.len() != 2 || !minpoly.is_squarefree() {
            return Err(Error::Ambiguous(format!(
                "{} eigenvalue clusters off the unit circle; expected a reciprocal pair",
                off_circle.len()
            )));
        }
        let outer = *off_circle
            .iter()
            .max_by(|&&a, &&b| clusters[a].value.norm().total_cmp(&clusters[b].value.norm()))
            .unwrap();
        let mu = unit(clusters[outer].value);
        let strict = clusters.iter().all(|c| (c.value / mu).im.abs() <= tol.cluster * c.value.norm().max(1.0));
        let kind = if strict { HyperbolicKind::Strict } else { HyperbolicKind::Loxodromic };
        (IsometryKind::Hyperbolic(kind), outer)
    } else if minpoly.is_squarefree() {
        let negative: Vec<usize> = (0..clusters.len()).filter(|&i| clusters[i].sign == SpaceSign::Negative).collect();
        if negative.len() != 1 {
            return Err(Error::Ambiguous(format!(
                "{} eigenspaces meet the ball; expected exactly one",
                negative.len()
            )));
        }
        let neg = negative[0];
        let kind = if clusters[neg].multiplicity >= 2 {
            EllipticKind::Boundary
        } else if clusters.iter().all(|c| c.multiplicity == 1) {
            EllipticKind::Regular
        } else {
            EllipticKind::OtherElliptic
        };
        (IsometryKind::Elliptic(kind), neg)
    } else {
        let defective: Vec<usize> = (0..clusters.len()).filter(|&i| clusters[i].exponent > 1).collect();
        if defective.len() != 1 {
            return Err(Error::Ambiguous(format!("{} defective eigenvalue clusters; expected one", defective.len())));
        }
        let d = defective[0];
        let kind = match (clusters.len(), clusters[d].exponent) {
            (1, 2) => ParabolicKind::VerticalTranslation,
            (1, 3) => ParabolicKind::NonVerticalTranslation,
            (_, 2 | 3) => ParabolicKind::ElliptoParabolic,
            (_, e) => return Err(Error::Ambiguous(format!("Jordan block of size {e} cannot occur in U(n,1)"))),
        };
        (IsometryKind::Parabolic(kind), d)
    };

    let scalar = unit(clusters[distinguished].value);
    Ok(Analysis { element: g.clone(), class: IsometryClass { kind, scalar }, eigen, minpoly, clusters, distinguished })
}

pub fn classify(g: &GroupElement, tol: &Tolerances) -> Result<IsometryClass> {
    Ok(analyze(g, tol)?.class)
}

/// Commuting semisimple and unipotent factors with `g = s·u`.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanParts {
    pub s: GroupElement,
    pub u: GroupElement,
}

/// Truncated Taylor series at 0 of `1/Π(y + d_j)^{e_j}` up to degree `order − 1`.
fn reciprocal_series(shifts: &[(C64, usize)], order: usize) -> Vec<C64> {
    let mut acc = alloc::vec![C64::zero(); order];
    acc[0] = C64::one();
    for &(d, e) in shifts {
        // 1/(y + d) = Σ (−1)^m y^m / d^{m+1}
        let inv: Vec<C64> = (0..order).map(|m| (-C64::one()).powi(m as i32) / d.powi(m as i32 + 1)).collect();
        for _ in 0..e {
            let mut next = alloc::vec![C64::zero(); order];
            for (i, a) in acc.iter().enumerate() {
                for (j, b) in inv.iter().enumerate().take(order - i) {
                    next[i + j] += a * b;
                }
            }
            acc = next;
        }
    }
    acc
}

/// Spectral projector onto the generalized eigenspace of cluster `i`, as a polynomial in `m`.
fn spectral_projector(m: &Matrix, factors: &[(C64, usize)], i: usize) -> Matrix {
    let size = m.rows();
    let (li, ei) = factors[i];
    let mut w = Matrix::identity(size);
    let mut shifts = Vec::new();
    for (j, &(lj, ej)) in factors.iter().enumerate() {
        if j != i {
            w = &w * &m.shift(lj).pow(ej);
            shifts.push((li - lj, ej));
        }
    }
    let coeffs = reciprocal_series(&shifts, ei);
    let base = m.shift(li);
    let mut q = Matrix::zeros(size, size);
    let mut power = Matrix::identity(size);
    for c in coeffs {
        q = &q + &power.scale(c);
        power = &power * &base;
    }
    &w * &q
}

/// Multiplicative Jordan decomposition from the additive one.
///
/// `S = p(g)` where `p ≡ λᵢ mod (x − λᵢ)^{eᵢ}` for each cluster; then
/// `u = S⁻¹g`. Both parts are checked for membership at `2·tol.residual`.
pub fn jordan_decompose(g: &GroupElement, tol: &Tolerances) -> Result<JordanParts> {
    let analysis = analyze(g, tol)?;
    jordan_from(&analysis, tol)
}

pub fn jordan_from(analysis: &Analysis, tol: &Tolerances) -> Result<JordanParts> {
    let g = &analysis.element;
    let m = g.matrix();
    let factors = &analysis.minpoly.factors;
    if analysis.minpoly.is_squarefree() {
        return Ok(JordanParts { s: g.clone(), u: GroupElement::identity(g.form().clone()) });
    }
    let size = m.rows();
    let mut s = Matrix::zeros(size, size);
    for (i, &(li, _)) in factors.iter().enumerate() {
        s = &s + &spectral_projector(m, factors, i).scale(li);
    }
    let bound = 2.0 * tol.residual;
    let s = GroupElement::new(g.form().clone(), s, bound)?;
    let s_inv = inverse_by_form(&s, bound)?;
    let u = GroupElement::new(g.form().clone(), s_inv.matrix() * m, bound)?;
    Ok(JordanParts { s, u })
}

/// Fixed points on the boundary sphere.
///
/// Isolated points come from degenerate eigenspaces. A negative eigenspace
/// of dimension ≥ 2 fixes a whole sub-sphere, recorded by its basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedBoundarySet {
    pub points: Vec<ProjectiveVector>,
    pub spheres: Vec<Matrix>,
}

impl FixedBoundarySet {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.spheres.is_empty()
    }
}

pub fn fixed_boundary_points(g: &GroupElement, tol: &Tolerances) -> Result<FixedBoundarySet> {
    Ok(boundary_set_of(&analyze(g, tol)?))
}

pub fn boundary_set_of(a: &Analysis) -> FixedBoundarySet {
    let form = a.element.form();
    let mut out = FixedBoundarySet { points: Vec::new(), spheres: Vec::new() };
    for c in &a.clusters {
        match &c.sign {
            SpaceSign::Degenerate { radical } => {
                if let Ok(p) = ProjectiveVector::new(radical.clone(), form.clone()) {
                    out.points.push(p);
                }
            }
            SpaceSign::Negative if c.eigenspace.cols() >= 2 => out.spheres.push(c.eigenspace.clone()),
            _ => {}
        }
    }
    out
}

/// A connected piece of the fixed set in the closed ball.
#[derive(Debug, Clone, PartialEq)]
pub enum FixedComponent {
    /// Projectivized non-positive part of a negative eigenspace.
    Interior(Matrix),
    BoundaryPoint(Vec<C64>),
}

pub fn fixed_components(a: &Analysis) -> Vec<FixedComponent> {
    a.clusters
        .iter()
        .filter_map(|c| match &c.sign {
            SpaceSign::Negative => Some(FixedComponent::Interior(c.eigenspace.clone())),
            SpaceSign::Degenerate { radical } => Some(FixedComponent::BoundaryPoint(radical.clone())),
            SpaceSign::Positive => None,
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScrewType {
    /// `R_U T_(0,t)` with `t ≠ 0`.
    VerticalPart,
    /// `R_U T_(τ,t)` with `Uτ = τ ≠ 0`.
    NonVerticalPart,
    NotScrew,
}

/// Reads the screw type off `g = R_U T_(τ,t)` (up to a unit scalar).
pub fn screw_unipotent_type(g: &GroupElement, tol: f64) -> Result<ScrewType> {
    let sim = decompose_stabilizer(g, tol)?;
    let iso = sim.isometry(tol.max(1e-9))?;
    let (u, a) = (&iso.rotation, &iso.trans);
    let scale = 1.0 + vnorm(&a.tau);
    let moved = vnorm(&crate::linalg::vsub(&u.mul_vec(&a.tau), &a.tau));
    if moved > tol * scale {
        return Ok(ScrewType::NotScrew);
    }
    if crate::heisenberg::is_vertical(a, tol) {
        if a.t.abs() <= tol {
            Ok(ScrewType::NotScrew)
        } else {
            Ok(ScrewType::VerticalPart)
        }
    } else {
        Ok(ScrewType::NonVerticalPart)
    }
}

/// Convenience: `R_U T_(τ,t)` from its parameters.
pub fn screw(u: &Matrix, a: &HeisElement) -> Result<GroupElement> {
    crate::heisenberg::HeisIsometry::new(u.clone(), a.clone())?.matrix()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::{dilation_matrix, rotation_matrix, translation_matrix, HeisElement};
    use crate::linalg::{random_element, HermitianForm};
    use crate::models::{same_line, signature, PointSignature};
    use alloc::vec;

    const TOL: Tolerances = Tolerances::DEFAULT;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn phase(a: f64) -> C64 {
        C64::from_polar(1.0, a)
    }

    fn kind(g: &GroupElement) -> IsometryKind {
        classify(g, &TOL).unwrap().kind
    }

    #[test]
    fn spec_examples() {
        let f2 = HermitianForm::second(2);
        let lox =
            GroupElement::new(f2.clone(), Matrix::from_diag(&[c(2.0, 0.0), phase(0.7), c(0.5, 0.0)]), 1e-12).unwrap();
        assert_eq!(kind(&lox), IsometryKind::Hyperbolic(HyperbolicKind::Loxodromic));

        let vt = translation_matrix(&HeisElement::vertical(2, 1.0), 2).unwrap();
        assert_eq!(kind(&vt), IsometryKind::Parabolic(ParabolicKind::VerticalTranslation));

        let f1 = HermitianForm::first(2);
        let reg = GroupElement::new(f1, Matrix::from_diag(&[phase(0.3), phase(1.4), phase(-2.2)]), 1e-12).unwrap();
        assert_eq!(kind(&reg), IsometryKind::Elliptic(EllipticKind::Regular));

        let ep = screw(&Matrix::from_diag(&[phase(0.9)]), &HeisElement::vertical(2, 1.0)).unwrap();
        assert_eq!(kind(&ep), IsometryKind::Parabolic(ParabolicKind::ElliptoParabolic));
    }

    #[test]
    fn more_kinds() {
        let f2 = HermitianForm::second(3);
        let d = dilation_matrix(2.0, 3).unwrap();
        assert_eq!(kind(&d), IsometryKind::Hyperbolic(HyperbolicKind::Strict));
        let flip = rotation_matrix(&Matrix::from_diag(&[c(-1.0, 0.0), c(1.0, 0.0)])).unwrap();
        assert_eq!(kind(&(&d * &flip)), IsometryKind::Hyperbolic(HyperbolicKind::Strict));

        let nv = translation_matrix(&HeisElement { tau: vec![c(1.0, 0.0), c(0.0, 0.0)], t: 0.0 }, 3).unwrap();
        assert_eq!(kind(&nv), IsometryKind::Parabolic(ParabolicKind::NonVerticalTranslation));
        assert_eq!(classify(&nv.scaled(phase(1.0)), &TOL).unwrap().scalar, phase(1.0));

        let id = GroupElement::identity(f2.clone());
        assert_eq!(kind(&id), IsometryKind::Elliptic(EllipticKind::Boundary));

        // negative eigenvalue simple, positive one doubled
        let f1 = HermitianForm::first(3);
        let other =
            GroupElement::new(f1.clone(), Matrix::from_diag(&[phase(0.2), phase(1.0), phase(1.0), phase(2.0)]), 1e-12)
                .unwrap();
        assert_eq!(kind(&other), IsometryKind::Elliptic(EllipticKind::OtherElliptic));
        let boundary =
            GroupElement::new(f1, Matrix::from_diag(&[phase(0.2), phase(0.2), phase(1.0), phase(2.0)]), 1e-12).unwrap();
        assert_eq!(kind(&boundary), IsometryKind::Elliptic(EllipticKind::Boundary));
    }

    #[test]
    fn invariant_under_conjugation_and_scalars() {
        let f = HermitianForm::second(3);
        let samples = [
            dilation_matrix(1.8, 3).unwrap(),
            translation_matrix(&HeisElement { tau: vec![c(0.5, 0.2), c(-1.0, 0.0)], t: 0.4 }, 3).unwrap(),
            translation_matrix(&HeisElement::vertical(3, -2.0), 3).unwrap(),
            screw(
                &Matrix::from_diag(&[c(1.0, 0.0), phase(2.0)]),
                &HeisElement { tau: vec![c(1.0, 0.0), c(0.0, 0.0)], t: 0.0 },
            )
            .unwrap(),
            GroupElement::new(
                HermitianForm::second(3),
                Matrix::from_diag(&[phase(0.1), phase(1.5), phase(-1.7), phase(0.1)]),
                1e-12,
            )
            .unwrap(),
        ];
        for (k, g) in samples.iter().enumerate() {
            let base = kind(g);
            for seed in 0..20 {
                let h = random_element(&f, 0.6, 100 * k as u64 + seed).unwrap();
                let conj = g.conjugate_by(&h).unwrap().scaled(phase(seed as f64));
                assert_eq!(kind(&conj), base, "sample {k} seed {seed}");
            }
        }
    }

    #[test]
    fn non_member_rejected() {
        let f = HermitianForm::second(2);
        let bad = GroupElement::from_matrix_unchecked(f, Matrix::from_diag(&[c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]));
        assert!(matches!(classify(&bad, &TOL), Err(Error::NotMember { .. })));
    }

    #[test]
    fn jordan_examples() {
        let t = translation_matrix(&HeisElement { tau: vec![c(1.0, 0.0)], t: 0.5 }, 2).unwrap();
        let p = jordan_decompose(&t, &TOL).unwrap();
        assert!((p.s.matrix() - &Matrix::identity(3)).max_abs() < 1e-12);
        assert!((p.u.matrix() - t.matrix()).max_abs() < 1e-12);

        let u = Matrix::from_diag(&[c(1.0, 0.0), phase(1.2)]);
        let a = HeisElement { tau: vec![c(0.7, -0.3), c(0.0, 0.0)], t: 1.3 };
        let g = screw(&u, &a).unwrap();
        let p = jordan_decompose(&g, &TOL).unwrap();
        assert!((p.s.matrix() - rotation_matrix(&u).unwrap().matrix()).max_abs() < 1e-8);
        assert!((p.u.matrix() - translation_matrix(&a, 3).unwrap().matrix()).max_abs() < 1e-8);

        let d = GroupElement::new(
            HermitianForm::second(2),
            Matrix::from_diag(&[phase(0.4), phase(1.0), phase(0.4)]),
            1e-12,
        )
        .unwrap();
        let p = jordan_decompose(&d, &TOL).unwrap();
        assert_eq!(p.s, d);
        assert_eq!(p.u.matrix(), &Matrix::identity(3));
    }

    #[test]
    fn jordan_of_conjugated_screw() {
        let f = HermitianForm::second(3);
        let g0 = screw(&Matrix::from_diag(&[phase(-0.8), phase(2.1)]), &HeisElement::vertical(3, 0.9)).unwrap();
        for seed in 0..10 {
            let h = random_element(&f, 0.5, seed).unwrap();
            let g = g0.conjugate_by(&h).unwrap();
            let p = jordan_decompose(&g, &TOL).unwrap();
            assert!((&(p.s.matrix() * p.u.matrix()) - g.matrix()).max_abs() < 1e-8);
            assert!((p.s.matrix().commutator(p.u.matrix())).max_abs() < 1e-8);
            let mp = crate::linalg::minimal_polynomial(&p.u, &TOL).unwrap();
            assert!(mp.factors.iter().all(|(l, _)| (l - 1.0).norm() < 1e-6));
            assert!(crate::linalg::minimal_polynomial(&p.s, &TOL).unwrap().is_squarefree());
        }
    }

    #[test]
    fn fixed_points() {
        let t = translation_matrix(&HeisElement { tau: vec![c(1.0, 0.0)], t: 0.0 }, 2).unwrap();
        let fs = fixed_boundary_points(&t, &TOL).unwrap();
        assert_eq!(fs.points.len(), 1);
        assert!(fs.spheres.is_empty());
        assert!(same_line(fs.points[0].coords(), &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], 1e-12));

        let h = GroupElement::new(
            HermitianForm::second(2),
            Matrix::from_diag(&[c(2.0, 0.0), phase(0.5), c(0.5, 0.0)]),
            1e-12,
        )
        .unwrap();
        let fs = fixed_boundary_points(&h, &TOL).unwrap();
        assert_eq!(fs.points.len(), 2);
        for p in &fs.points {
            assert_eq!(signature(p, 1e-9), PointSignature::LightLike);
        }

        let reg = GroupElement::new(
            HermitianForm::first(2),
            Matrix::from_diag(&[phase(0.3), phase(1.4), phase(-2.2)]),
            1e-12,
        )
        .unwrap();
        assert!(fixed_boundary_points(&reg, &TOL).unwrap().is_empty());

        let bnd = GroupElement::new(
            HermitianForm::first(2),
            Matrix::from_diag(&[phase(0.3), phase(0.3), phase(-2.2)]),
            1e-12,
        )
        .unwrap();
        let fs = fixed_boundary_points(&bnd, &TOL).unwrap();
        assert!(fs.points.is_empty() && fs.spheres.len() == 1);
    }

    #[test]
    fn screw_types() {
        let u = Matrix::from_diag(&[c(1.0, 0.0), phase(1.0)]);
        let v = screw(&u, &HeisElement::vertical(3, 1.0)).unwrap();
        assert_eq!(screw_unipotent_type(&v, 1e-9).unwrap(), ScrewType::VerticalPart);
        let nv = screw(&u, &HeisElement { tau: vec![c(2.0, 0.0), c(0.0, 0.0)], t: 0.0 }).unwrap();
        assert_eq!(screw_unipotent_type(&nv, 1e-9).unwrap(), ScrewType::NonVerticalPart);
        let no = screw(&u, &HeisElement { tau: vec![c(0.0, 0.0), c(1.0, 0.0)], t: 0.0 }).unwrap();
        assert_eq!(screw_unipotent_type(&no, 1e-9).unwrap(), ScrewType::NotScrew);
    }

    #[test]
    fn eigenspaces_are_orthogonal() {
        let f = HermitianForm::second(3);
        let g0 =
            GroupElement::new(f.clone(), Matrix::from_diag(&[phase(0.1), phase(1.5), phase(-1.7), phase(0.1)]), 1e-12)
                .unwrap();
        let h = random_element(&f, 0.7, 8).unwrap();
        let a = analyze(&g0.conjugate_by(&h).unwrap(), &TOL).unwrap();
        for i in 0..a.clusters.len() {
            for j in 0..i {
                let cross = &(&a.clusters[i].eigenspace.adjoint() * f.gram()) * &a.clusters[j].eigenspace;
                assert!(cross.max_abs() < 1e-7);
            }
        }
    }
}
