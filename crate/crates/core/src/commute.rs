//! Deciding whether two elements commute.
//!
//! [`commutes_by_theorem`] dispatches on the class of `t`. Semisimple `t`
//! (elliptic or hyperbolic) commutes with `s` exactly when `s` preserves
//! every eigenspace of `t`. A translation `t` needs `s` to fix its boundary
//! point; what else is required depends on the class of `s`. An
//! ellipto-parabolic `t` is split into its Jordan parts and each part is
//! handled separately. [`commutes_oracle`] compares the matrices directly.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::classify::{analyze, jordan_from, Analysis, EllipticKind, FixedComponent, IsometryKind};
use crate::heisenberg::{decompose_stabilizer, symplectic_pairing};
use crate::linalg::{orthonormal_columns, vnorm, GroupElement, Matrix, C64};
use crate::models::{frame_at_null, line_distance};
use crate::{Error, Result, Tolerances};

/// Which branch of the case analysis decided the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `t` elliptic: eigenspace preservation.
    Elliptic,
    /// `t` hyperbolic: eigenspace preservation plus the action on the axis.
    Hyperbolic,
    /// `t` a translation and `s` moves its fixed point.
    FixedPointMoved,
    /// `t` a translation and `s` of a class that can never commute with it.
    Excluded,
    /// `t` a translation, `s` boundary elliptic.
    BoundaryElliptic,
    /// Both translations: isotropy.
    Isotropy,
    /// `t` a translation, `s` ellipto-parabolic: both Jordan parts of `s`.
    ScrewPartner,
    /// `t` ellipto-parabolic: both Jordan parts of `t`.
    JordanParts,
}

impl Rule {
    pub fn label(self) -> &'static str {
        match self {
            Rule::Elliptic => "case(1)",
            Rule::Hyperbolic => "case(2)",
            Rule::FixedPointMoved => "case(3)/fixed-point",
            Rule::Excluded => "case(3)/excluded",
            Rule::BoundaryElliptic => "case(3)(i)",
            Rule::Isotropy => "case(3)(ii)",
            Rule::ScrewPartner => "case(3)(iii)",
            Rule::JordanParts => "case(4)",
        }
    }
}

/// Why a pair failed to commute.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// `s` moves the eigenspace of `t` for this eigenvalue by `leak`.
    EigenspaceMoved { eigenvalue: C64, leak: f64 },
    /// Eigenvalue ratio of `s` on the axis of `t` is not a positive real.
    AxisAction { ratio: C64 },
    /// Angle between the fixed point of `t` and its image under `s`.
    FixedPointMoved { distance: f64 },
    /// Class of `s` that cannot commute with a translation.
    ExcludedClass(IsometryKind),
    /// `t` moves the fixed eigenspace of `s`.
    FixedSetMoved { leak: f64 },
    /// `Im(τ*σ)` of the two translations at `∞`.
    NonIsotropic { pairing: f64 },
    /// Verdict on one Jordan part.
    Part { part: JordanPart, verdict: Box<CommuteVerdict> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JordanPart {
    Semisimple,
    Unipotent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommuteVerdict {
    pub commutes: bool,
    pub rule: Rule,
    pub witness: Option<Witness>,
}

impl CommuteVerdict {
    fn yes(rule: Rule) -> Self {
        CommuteVerdict { commutes: true, rule, witness: None }
    }

    fn no(rule: Rule, witness: Witness) -> Self {
        CommuteVerdict { commutes: false, rule, witness: Some(witness) }
    }
}

/// `‖st − ts‖_max ≤ tol·(1 + ‖s‖_F‖t‖_F)`.
pub fn commutes_oracle(s: &GroupElement, t: &GroupElement, tol: f64) -> Result<bool> {
    Ok(commutator_ratio(s, t)? <= tol)
}

/// `‖st − ts‖_max / (1 + ‖s‖_F‖t‖_F)`.
pub fn commutator_ratio(s: &GroupElement, t: &GroupElement) -> Result<f64> {
    s.same_form(t)?;
    let (a, b) = (s.matrix(), t.matrix());
    Ok(a.commutator(b).max_abs() / (1.0 + a.frobenius() * b.frobenius()))
}

/// Relative amount by which `m` moves the column span of the orthonormal `basis`.
fn leak(m: &Matrix, basis: &Matrix) -> f64 {
    let image = m * basis;
    let back = &(basis * &(&basis.adjoint() * &image));
    (&image - back).max_abs() / m.frobenius()
}

fn first_leak(s: &GroupElement, t: &Analysis, tol: f64) -> Option<Witness> {
    t.clusters.iter().find_map(|c| {
        let l = leak(s.matrix(), &c.eigenspace);
        (l > tol).then_some(Witness::EigenspaceMoved { eigenvalue: c.value, leak: l })
    })
}

/// Whether `s` maps every eigenspace of the semisimple `t` into itself.
pub fn preserves_eigenspaces(s: &GroupElement, t: &GroupElement, tol: &Tolerances) -> Result<bool> {
    s.same_form(t)?;
    let a = analyze(t, tol)?;
    if !a.minpoly.is_squarefree() {
        return Err(Error::NotSemisimple);
    }
    Ok(first_leak(s, &a, tol.verdict).is_none())
}

/// Eigenvalues of a 2×2 matrix.
fn eigen2(m: &Matrix) -> (C64, C64) {
    let tr = m[(0, 0)] + m[(1, 1)];
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let disc = (tr * tr - det * 4.0).sqrt();
    ((tr + disc) / 2.0, (tr - disc) / 2.0)
}

/// Decides commutation through the case analysis on the class of `t`.
pub fn commutes_by_theorem(s: &GroupElement, t: &GroupElement, tol: &Tolerances) -> Result<CommuteVerdict> {
    s.same_form(t)?;
    let ta = analyze(t, tol)?;
    verdict_for(s, &ta, tol)
}

/// Same, reusing an analysis of `t`.
pub fn verdict_for(s: &GroupElement, t: &Analysis, tol: &Tolerances) -> Result<CommuteVerdict> {
    match t.kind() {
        IsometryKind::Elliptic(_) => Ok(match first_leak(s, t, tol.verdict) {
            None => CommuteVerdict::yes(Rule::Elliptic),
            Some(w) => CommuteVerdict::no(Rule::Elliptic, w),
        }),
        IsometryKind::Hyperbolic(_) => hyperbolic_case(s, t, tol),
        IsometryKind::Parabolic(_) if t.kind().is_translation() => translation_case(s, t, tol),
        IsometryKind::Parabolic(_) => {
            let parts = jordan_from(t, tol)?;
            for (part, piece) in [(JordanPart::Semisimple, &parts.s), (JordanPart::Unipotent, &parts.u)] {
                let v = commutes_by_theorem(s, piece, &for_parts(tol))?;
                if !v.commutes {
                    return Ok(CommuteVerdict::no(Rule::JordanParts, Witness::Part { part, verdict: Box::new(v) }));
                }
            }
            Ok(CommuteVerdict::yes(Rule::JordanParts))
        }
    }
}

/// Jordan parts are accepted at `2·residual`; re-analysing them must not be stricter.
fn for_parts(tol: &Tolerances) -> Tolerances {
    Tolerances { membership: tol.membership.max(2.0 * tol.residual), ..*tol }
}

fn hyperbolic_case(s: &GroupElement, t: &Analysis, tol: &Tolerances) -> Result<CommuteVerdict> {
    if let Some(w) = first_leak(s, t, tol.verdict) {
        return Ok(CommuteVerdict::no(Rule::Hyperbolic, w));
    }
    // s preserves both null lines, so it acts on their span; the two
    // eigenvalues there must agree up to a positive real factor
    let lines = t.null_eigenlines();
    let q = orthonormal_columns(&Matrix::from_columns(&lines), 1e-12);
    let restricted = &(&q.adjoint() * s.matrix()) * &q;
    let (a, b) = eigen2(&restricted);
    let ratio = a / b;
    if ratio.im.abs() > tol.verdict * ratio.norm().max(1.0) || ratio.re <= 0.0 {
        return Ok(CommuteVerdict::no(Rule::Hyperbolic, Witness::AxisAction { ratio }));
    }
    Ok(CommuteVerdict::yes(Rule::Hyperbolic))
}

fn translation_case(s: &GroupElement, t: &Analysis, tol: &Tolerances) -> Result<CommuteVerdict> {
    let x = t
        .null_eigenlines()
        .into_iter()
        .next()
        .ok_or_else(|| Error::Ambiguous("translation without a null eigenline".into()))?;
    let distance = line_distance(&s.matrix().mul_vec(&x), &x);
    if distance > tol.verdict {
        return Ok(CommuteVerdict::no(Rule::FixedPointMoved, Witness::FixedPointMoved { distance }));
    }
    let sa = analyze(s, tol)?;
    match sa.kind() {
        IsometryKind::Hyperbolic(_) | IsometryKind::Elliptic(EllipticKind::Regular | EllipticKind::OtherElliptic) => {
            Ok(CommuteVerdict::no(Rule::Excluded, Witness::ExcludedClass(sa.kind())))
        }
        IsometryKind::Elliptic(EllipticKind::Boundary) => {
            let w = sa.negative_eigenspace().expect("elliptic element has a negative eigenspace");
            let l = leak(t.element.matrix(), w);
            if l > tol.verdict {
                Ok(CommuteVerdict::no(Rule::BoundaryElliptic, Witness::FixedSetMoved { leak: l }))
            } else {
                Ok(CommuteVerdict::yes(Rule::BoundaryElliptic))
            }
        }
        kind if kind.is_translation() => {
            let pairing = translation_pairing(s, &t.element, &x, tol)?;
            let (ts, ss) = (t.element.matrix().frobenius(), s.matrix().frobenius());
            if pairing.abs() > tol.verdict * (1.0 + ts * ss) {
                Ok(CommuteVerdict::no(Rule::Isotropy, Witness::NonIsotropic { pairing }))
            } else {
                Ok(CommuteVerdict::yes(Rule::Isotropy))
            }
        }
        _ => {
            let parts = jordan_from(&sa, tol)?;
            for (part, piece) in [(JordanPart::Semisimple, &parts.s), (JordanPart::Unipotent, &parts.u)] {
                let v = verdict_for(piece, t, &for_parts(tol))?;
                if !v.commutes {
                    return Ok(CommuteVerdict::no(Rule::ScrewPartner, Witness::Part { part, verdict: Box::new(v) }));
                }
            }
            Ok(CommuteVerdict::yes(Rule::ScrewPartner))
        }
    }
}

/// `Im(τ*σ)` after moving the common fixed point `x` of two translations to `∞`.
fn translation_pairing(s: &GroupElement, t: &GroupElement, x: &[C64], tol: &Tolerances) -> Result<f64> {
    let to_form = |g: &GroupElement| -> Result<GroupElement> {
        crate::models::convert_element(g, &crate::linalg::HermitianForm::second(g.n()), tol.residual)
    };
    let (s2, t2) = (to_form(s)?, to_form(t)?);
    let x2 = match s.form().kind() {
        crate::linalg::FormKind::Second => x.to_vec(),
        crate::linalg::FormKind::First => crate::models::cayley_matrix(s.n())?.mul_vec(x),
    };
    let frame = frame_at_null(&x2, s2.form(), tol.residual.max(1e-9))?;
    let k = frame.inverse();
    let sk = s2.conjugate_by(&k)?;
    let tk = t2.conjugate_by(&k)?;
    let scale = |g: &GroupElement| tol.residual * g.matrix().max_abs().max(1.0);
    let ds = decompose_stabilizer(&sk, scale(&sk))?;
    let dt = decompose_stabilizer(&tk, scale(&tk))?;
    symplectic_pairing(&ds.trans, &dt.trans)
}

/// Whether `s` maps the fixed set of `t` in the closed ball onto itself:
/// every boundary fixed point to a boundary fixed point, and the fixed
/// interior eigenspace into itself.
pub fn preserves_fixed_set(s: &GroupElement, t: &GroupElement, tol: &Tolerances) -> Result<bool> {
    s.same_form(t)?;
    let ta = analyze(t, tol)?;
    let comps = crate::classify::fixed_components(&ta);
    let points: Vec<&Vec<C64>> = comps
        .iter()
        .filter_map(|c| match c {
            FixedComponent::BoundaryPoint(p) => Some(p),
            FixedComponent::Interior(_) => None,
        })
        .collect();
    for c in &comps {
        let ok = match c {
            FixedComponent::BoundaryPoint(p) => {
                let image = s.matrix().mul_vec(p);
                vnorm(&image) > 0.0 && points.iter().any(|q| line_distance(&image, q) <= tol.verdict)
            }
            FixedComponent::Interior(basis) => leak(s.matrix(), basis) <= tol.verdict,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}
