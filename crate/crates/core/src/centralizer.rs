//! Centralizers and z-classes.
//!
//! [`centralizer_descriptor`] names the centralizer of an element as a
//! product of standard groups read off its spectrum. [`commutant_dimension`]
//! measures the same thing numerically: the dimension of the Lie algebra
//! `{X ∈ u(n,1) : Xt = tX}`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::classify::{analyze, jordan_from, Analysis, IsometryKind, ParabolicKind};
use crate::linalg::svd::svd;
use crate::linalg::{GroupElement, LieAlgebraElement, Matrix, C64};
use crate::{Error, Result, Tolerances};

/// Building blocks of centralizers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// `U(p−1, 1)`.
    IndefUnitary(usize),
    /// `U(k)`.
    Unitary(usize),
    /// Unit scalars.
    Circle,
    /// One-parameter group of dilations along an axis.
    RealLine,
    /// Heisenberg group of complex dimension `n`, real dimension `2n − 1`.
    HeisenbergGroup(usize),
    /// Translations isotropic to a fixed non-vertical one, real dimension `2n − 2`.
    IsotropicSubgroup(usize),
}

impl Atom {
    pub fn dimension(self) -> usize {
        match self {
            Atom::IndefUnitary(p) => p * p,
            Atom::Unitary(k) => k * k,
            Atom::Circle | Atom::RealLine => 1,
            Atom::HeisenbergGroup(n) => (2 * n).saturating_sub(1),
            Atom::IsotropicSubgroup(n) => (2 * n).saturating_sub(2),
        }
    }

    fn is_nilpotent(self) -> bool {
        matches!(self, Atom::HeisenbergGroup(_) | Atom::IsotropicSubgroup(_))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::IndefUnitary(p) => write!(f, "U({},1)", p - 1),
            Atom::Unitary(k) => write!(f, "U({k})"),
            Atom::Circle => f.write_str("S1"),
            Atom::RealLine => f.write_str("R"),
            Atom::HeisenbergGroup(n) => write!(f, "N({n})"),
            Atom::IsotropicSubgroup(n) => write!(f, "Iso({n})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Structure {
    DirectProduct,
    /// Reductive factors acting on a nilpotent normal subgroup (the last factor).
    SemidirectOverNilpotent,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CentralizerDescriptor {
    pub factors: Vec<Atom>,
    pub structure: Structure,
    /// For ellipto-parabolic elements: descriptors of the semisimple and
    /// unipotent Jordan parts, whose centralizers intersect in `factors`.
    pub parts: Option<Box<(CentralizerDescriptor, CentralizerDescriptor)>>,
}

impl CentralizerDescriptor {
    fn new(mut reductive: Vec<Atom>, nilpotent: Option<Atom>) -> Self {
        reductive.retain(|a| !matches!(a, Atom::Unitary(0)));
        reductive.sort();
        let structure = match nilpotent {
            Some(a) => {
                reductive.push(a);
                Structure::SemidirectOverNilpotent
            }
            None => Structure::DirectProduct,
        };
        CentralizerDescriptor { factors: reductive, structure, parts: None }
    }

    pub fn dimension(&self) -> usize {
        descriptor_dimension(self)
    }

    pub fn label(&self) -> ZClassLabel {
        ZClassLabel(format!("{self}"))
    }
}

impl fmt::Display for CentralizerDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (red, nil): (Vec<Atom>, Vec<Atom>) = self.factors.iter().partition(|a| !a.is_nilpotent());
        let join = |atoms: &[Atom]| atoms.iter().map(|a| format!("{a}")).collect::<Vec<_>>().join(" x ");
        match self.structure {
            Structure::DirectProduct => f.write_str(&join(&red))?,
            Structure::SemidirectOverNilpotent => write!(f, "[{}] |x {}", join(&red), join(&nil))?,
        }
        if let Some(p) = &self.parts {
            write!(f, " = Z({}) & Z({})", p.0, p.1)?;
        }
        Ok(())
    }
}

/// Real dimension; semidirect products add like direct ones.
pub fn descriptor_dimension(d: &CentralizerDescriptor) -> usize {
    d.factors.iter().map(|a| a.dimension()).sum()
}

/// Canonical text form of a descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZClassLabel(pub String);

impl fmt::Display for ZClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn centralizer_descriptor(t: &GroupElement, tol: &Tolerances) -> Result<CentralizerDescriptor> {
    descriptor_of(&analyze(t, tol)?, tol)
}

pub fn descriptor_of(a: &Analysis, tol: &Tolerances) -> Result<CentralizerDescriptor> {
    let n = a.element.n();
    let others: Vec<Atom> = a.other_multiplicities().into_iter().map(Atom::Unitary).collect();
    let dist = &a.clusters[a.distinguished];
    Ok(match a.kind() {
        IsometryKind::Elliptic(_) => {
            let mut red = others;
            red.push(Atom::IndefUnitary(dist.multiplicity));
            CentralizerDescriptor::new(red, None)
        }
        IsometryKind::Hyperbolic(_) => {
            // the two null clusters each have multiplicity one
            let mut red: Vec<Atom> = a
                .clusters
                .iter()
                .filter(|c| matches!(c.sign, crate::classify::SpaceSign::Positive))
                .map(|c| Atom::Unitary(c.multiplicity))
                .collect();
            red.extend([Atom::Circle, Atom::RealLine]);
            CentralizerDescriptor::new(red, None)
        }
        IsometryKind::Parabolic(ParabolicKind::VerticalTranslation) => {
            CentralizerDescriptor::new(alloc::vec![Atom::Circle, Atom::Unitary(n - 1)], Some(Atom::HeisenbergGroup(n)))
        }
        IsometryKind::Parabolic(ParabolicKind::NonVerticalTranslation) => CentralizerDescriptor::new(
            alloc::vec![Atom::Circle, Atom::Unitary(n - 2)],
            Some(Atom::IsotropicSubgroup(n)),
        ),
        IsometryKind::Parabolic(ParabolicKind::ElliptoParabolic) => {
            // inside the generalized eigenspace of the Jordan block the element
            // is a translation of U(m,1), m = multiplicity − 1; the other
            // eigenspaces contribute their unitary groups
            let m = dist.multiplicity - 1;
            let mut red = others;
            red.push(Atom::Circle);
            let nil = if dist.exponent == 2 {
                red.push(Atom::Unitary(m - 1));
                Atom::HeisenbergGroup(m)
            } else {
                red.push(Atom::Unitary(m.saturating_sub(2)));
                Atom::IsotropicSubgroup(m)
            };
            let mut d = CentralizerDescriptor::new(red, Some(nil));
            let parts = jordan_from(a, tol)?;
            let ds = centralizer_descriptor(&parts.s, tol)?;
            let du = centralizer_descriptor(&parts.u, tol)?;
            d.parts = Some(Box::new((ds, du)));
            d
        }
    })
}

/// Singular values and right singular vectors of the real system whose
/// kernel is the commutant of `t` in `u(n,1)`.
///
/// Unknowns are the real and imaginary parts of `X`; rows are the real and
/// imaginary parts of `(Xt − tX)/‖t‖` and of `X*J + JX`.
fn commutant_system(t: &GroupElement) -> (Vec<f64>, Matrix) {
    let k = t.form().size();
    let m = t.matrix();
    let j = t.form().gram();
    let scale = 1.0 / m.frobenius();
    let unknowns = 2 * k * k;
    let mut a = Matrix::zeros(4 * k * k, unknowns);
    // column index of unknown Re X[p][q] is 2(pk+q), Im is 2(pk+q)+1
    for p in 0..k {
        for q in 0..k {
            let col = 2 * (p * k + q);
            for (unit, offset) in [(C64::new(1.0, 0.0), 0), (C64::new(0.0, 1.0), 1)] {
                // X = unit·E_pq
                let mut x = Matrix::zeros(k, k);
                x[(p, q)] = unit;
                let comm = (&(&x * m) - &(m * &x)).scale_real(scale);
                let alg = &(&x.adjoint() * j) + &(j * &x);
                for (block, mat) in [(0, &comm), (1, &alg)] {
                    for r in 0..k {
                        for s in 0..k {
                            let row = 2 * (block * k * k + r * k + s);
                            a[(row, col + offset)] = C64::new(mat[(r, s)].re, 0.0);
                            a[(row + 1, col + offset)] = C64::new(mat[(r, s)].im, 0.0);
                        }
                    }
                }
            }
        }
    }
    let d = svd(&a);
    (d.sigma, d.v)
}

fn nullity(sigma: &[f64], rel_tol: f64) -> Result<usize> {
    let smax = sigma.first().copied().unwrap_or(0.0);
    let cut = rel_tol * smax;
    let dim = sigma.iter().filter(|s| **s <= cut).count();
    if let Some(&retained) = sigma.iter().rev().find(|s| **s > cut) {
        if retained < 10.0 * cut {
            let discarded = sigma.iter().copied().filter(|s| *s <= cut).fold(0.0, f64::max);
            return Err(Error::IllConditioned { retained: retained / smax, discarded: discarded / smax });
        }
    }
    Ok(dim)
}

/// Real dimension of `{X ∈ u(n,1) : Xt = tX}` by singular-value thresholding at `tol.nullspace`.
pub fn commutant_dimension(t: &GroupElement, tol: &Tolerances) -> Result<usize> {
    let (sigma, _) = commutant_system(t);
    nullity(&sigma, tol.nullspace)
}

/// Basis of the commutant as Lie algebra elements.
pub fn commutant_basis(t: &GroupElement, tol: &Tolerances) -> Result<Vec<LieAlgebraElement>> {
    let (sigma, v) = commutant_system(t);
    let dim = nullity(&sigma, tol.nullspace)?;
    let k = t.form().size();
    let total = sigma.len();
    Ok((total - dim..total)
        .map(|c| {
            let x = Matrix::from_fn(k, k, |p, q| {
                let i = 2 * (p * k + q);
                C64::new(v[(i, c)].re, v[(i + 1, c)].re)
            });
            LieAlgebraElement::project(t.form().clone(), &x)
        })
        .collect())
}

/// Equal canonical centralizer labels.
pub fn z_class_equal(a: &GroupElement, b: &GroupElement, tol: &Tolerances) -> Result<bool> {
    a.same_form(b)?;
    Ok(centralizer_descriptor(a, tol)?.label() == centralizer_descriptor(b, tol)?.label())
}
