//! One function per subcommand, each producing a [`Report`].

use chiso::centralizer::{centralizer_descriptor, commutant_dimension};
use chiso::classify::{analyze, boundary_set_of, jordan_decompose};
use chiso::commute::{commutator_ratio, commutes_by_theorem};
use chiso::heisenberg::{decompose_stabilizer, HeisElement, HeisSimilarity};
use chiso::linalg::{random_element, GroupElement};
use chiso::models::convert_element;
use chiso::{Matrix, Tolerances, C64};
use serde::Serialize;

use crate::document::{complex, matrix_of, pair, rows_of, FormName, MatrixDocument, Pair};
use crate::error::CliError;
use crate::report::{digest, CommandEcho, DescriptorDoc, Oracle, Payload, Report};

/// Settings shared by every item of one invocation.
pub struct Context {
    pub tol: Tolerances,
    pub n: Option<usize>,
    pub form: Option<FormName>,
    pub name: &'static str,
    pub args: Vec<String>,
}

impl Context {
    fn report(
        &self,
        index: Option<usize>,
        inputs: &[&MatrixDocument],
        result: Payload,
        oracle: Option<Oracle>,
    ) -> Report {
        Report {
            command: CommandEcho { name: self.name.into(), args: self.args.clone(), batch_index: index },
            inputs_digest: digest(inputs),
            inputs: inputs.iter().map(|d| (*d).clone()).collect(),
            tolerances: self.tol.into(),
            result,
            oracle,
            mismatch: false,
        }
    }

    /// Parses a document and checks it against `--n`.
    fn parse(&self, doc: &MatrixDocument) -> Result<GroupElement, CliError> {
        if let Some(n) = self.n {
            if doc.n != n {
                return Err(CliError::Argument(format!("document has n = {}, expected {n}", doc.n)));
            }
        }
        doc.element(self.tol.membership)
    }

    /// Membership tolerance `doc` was accepted at.
    fn accepted(&self, doc: &MatrixDocument) -> f64 {
        doc.tolerance.unwrap_or(self.tol.membership)
    }

    /// Like [`Context::parse`], then converts to `--form` when given.
    fn element(&self, doc: &MatrixDocument) -> Result<GroupElement, CliError> {
        let g = self.parse(doc)?;
        match self.form {
            Some(f) => convert(&g, f, self.accepted(doc)),
            None => Ok(g),
        }
    }
}

/// Cayley conversion; the membership check allows for rounding in the two products.
fn convert(g: &GroupElement, to: FormName, membership: f64) -> Result<GroupElement, CliError> {
    let scale = g.matrix().max_abs().max(1.0);
    let bound = membership.max(64.0 * f64::EPSILON * scale * scale);
    Ok(convert_element(g, &to.form(g.n()), bound)?)
}

/// Emits `g` as a document, widening its tolerance if rounding pushed the
/// residual past the default so that it re-parses.
fn emit(g: &GroupElement, label: Option<String>, tol: &Tolerances) -> MatrixDocument {
    let mut doc = MatrixDocument::from_element(g, label);
    let residual = g.membership_residual();
    if residual > tol.membership {
        doc.tolerance = Some(2.0 * residual);
    }
    doc
}

fn column(m: &Matrix, j: usize) -> Vec<Pair> {
    (0..m.rows()).map(|i| pair(m[(i, j)])).collect()
}

fn columns(m: &Matrix) -> Vec<Vec<Pair>> {
    (0..m.cols()).map(|j| column(m, j)).collect()
}

pub fn classify(ctx: &Context, doc: &MatrixDocument, index: Option<usize>) -> Result<Report, CliError> {
    let g = ctx.element(doc)?;
    let a = analyze(&g, &ctx.tol)?;
    let fixed = boundary_set_of(&a);
    let result = Payload::Classification {
        kind: a.kind().label().into(),
        scalar: pair(a.class.scalar),
        clusters: a.clusters.iter().map(Into::into).collect(),
        fixed_boundary_points: fixed.points.iter().map(|p| p.normalized().into_iter().map(pair).collect()).collect(),
        fixed_spheres: fixed.spheres.iter().map(columns).collect(),
    };
    let oracle = Oracle::Membership { residuals: vec![g.membership_residual()] };
    Ok(ctx.report(index, &[doc], result, Some(oracle)))
}

pub fn commute(
    ctx: &Context,
    a: &MatrixDocument,
    b: &MatrixDocument,
    index: Option<usize>,
) -> Result<Report, CliError> {
    let (s, t) = (ctx.element(a)?, ctx.element(b)?);
    s.same_form(&t)?;
    let verdict = commutes_by_theorem(&s, &t, &ctx.tol)?;
    let ratio = commutator_ratio(&s, &t)?;
    let oracle_says = ratio <= ctx.tol.verdict;
    let agrees = oracle_says == verdict.commutes;
    let oracle = Oracle::Commutator { ratio, commutes: oracle_says, agrees };
    let mut report = ctx.report(index, &[a, b], (&verdict).into(), Some(oracle));
    report.mismatch = !agrees;
    Ok(report)
}

pub fn centralizer(ctx: &Context, doc: &MatrixDocument, index: Option<usize>) -> Result<Report, CliError> {
    let g = ctx.element(doc)?;
    let d = centralizer_descriptor(&g, &ctx.tol)?;
    let dimension = commutant_dimension(&g, &ctx.tol)?;
    let agrees = dimension == d.dimension();
    let mut report = ctx.report(
        index,
        &[doc],
        Payload::Centralizer(DescriptorDoc::from(&d)),
        Some(Oracle::Commutant { dimension, agrees }),
    );
    report.mismatch = !agrees;
    Ok(report)
}

/// Compares centralizer labels; `b` is moved into `a`'s form first.
pub fn zclass(ctx: &Context, a: &MatrixDocument, b: &MatrixDocument, index: Option<usize>) -> Result<Report, CliError> {
    let ga = ctx.element(a)?;
    let gb = ctx.element(b)?;
    if ga.n() != gb.n() {
        return Err(chiso::Error::DimensionMismatch { expected: ga.n(), found: gb.n() }.into());
    }
    let gb = convert(&gb, FormName::of(ga.form().kind()), ctx.accepted(b))?;
    let la = centralizer_descriptor(&ga, &ctx.tol)?.label();
    let lb = centralizer_descriptor(&gb, &ctx.tol)?.label();
    let result = Payload::ZClass { equal: la == lb, label_a: la.0, label_b: lb.0 };
    Ok(ctx.report(index, &[a, b], result, None))
}

/// Moves a document to the other form (or to `--form` when given).
pub fn cayley(ctx: &Context, doc: &MatrixDocument, index: Option<usize>) -> Result<Report, CliError> {
    let g = ctx.parse(doc)?;
    let target = ctx.form.unwrap_or(FormName::of(g.form().kind()).other());
    let out = convert(&g, target, ctx.accepted(doc))?;
    let emitted = emit(&out, doc.label.clone(), &ctx.tol);
    let oracle = Oracle::Membership { residuals: vec![out.membership_residual()] };
    Ok(ctx.report(index, &[doc], Payload::Document { document: emitted }, Some(oracle)))
}

pub fn jordan(ctx: &Context, doc: &MatrixDocument, index: Option<usize>) -> Result<Report, CliError> {
    let g = ctx.element(doc)?;
    let parts = jordan_decompose(&g, &ctx.tol)?;
    let (s, u) = (parts.s.matrix(), parts.u.matrix());
    let oracle = Oracle::Jordan { product: (&(s * u) - g.matrix()).max_abs(), commutator: s.commutator(u).max_abs() };
    let result = Payload::Jordan {
        semisimple: emit(&parts.s, Some("semisimple".into()), &ctx.tol),
        unipotent: emit(&parts.u, Some("unipotent".into()), &ctx.tol),
    };
    Ok(ctx.report(index, &[doc], result, Some(oracle)))
}

/// `μ·D_r·R_U·T_(τ,t)` for an element fixing `∞`, read in the second form.
pub fn decompose(ctx: &Context, doc: &MatrixDocument, index: Option<usize>) -> Result<Report, CliError> {
    let g = ctx.element(doc)?;
    let g = convert(&g, FormName::Second, ctx.accepted(doc))?;
    let parts = decompose_stabilizer(&g, ctx.tol.residual)?;
    let residual = (parts.matrix()?.matrix() - g.matrix()).max_abs();
    let result = Payload::Stabilizer {
        r: parts.r,
        scalar: pair(parts.scalar),
        rotation: rows_of(&parts.rotation),
        tau: parts.trans.tau.iter().copied().map(pair).collect(),
        t: parts.trans.t,
    };
    Ok(ctx.report(index, &[doc], result, Some(Oracle::Reconstruction { residual })))
}

fn require_n(ctx: &Context) -> Result<usize, CliError> {
    match ctx.n {
        Some(n) if n >= 1 => Ok(n),
        Some(_) => Err(CliError::Argument("--n must be at least 1".into())),
        None => Err(CliError::Argument("--n is required".into())),
    }
}

#[derive(Serialize)]
struct RandomParams {
    n: usize,
    form: FormName,
    seed: u64,
    scale: f64,
}

pub fn random(ctx: &Context, seed: u64, scale: f64) -> Result<Report, CliError> {
    let n = require_n(ctx)?;
    let form = ctx.form.unwrap_or(FormName::Second);
    let g = random_element(&form.form(n), scale, seed)?;
    let doc = emit(&g, Some(format!("random seed {seed}")), &ctx.tol);
    let oracle = Oracle::Membership { residuals: vec![g.membership_residual()] };
    let params = RandomParams { n, form, seed, scale };
    Ok(Report {
        inputs_digest: digest(&[params]),
        ..ctx.report(None, &[], Payload::Document { document: doc }, Some(oracle))
    })
}

/// Parameters of `D_r·R_U·T_(τ,t)`; `U` and `τ` default to the identity and zero.
#[derive(Debug, Clone, Serialize)]
pub struct HeisParams {
    pub r: f64,
    pub rotation: Option<Vec<Vec<Pair>>>,
    pub tau: Option<Vec<Pair>>,
    pub t: f64,
}

pub fn heisenberg(ctx: &Context, p: &HeisParams) -> Result<Report, CliError> {
    let n = require_n(ctx)?;
    let k = n - 1;
    if !(p.r > 0.0 && p.r.is_finite()) {
        return Err(CliError::Argument(format!("r must be a positive finite number, got {}", p.r)));
    }
    if !p.t.is_finite() {
        return Err(CliError::Argument("t must be finite".into()));
    }
    let rotation = match &p.rotation {
        Some(rows) => matrix_of(rows, k, "rotation")?,
        None => Matrix::identity(k),
    };
    let unitarity = (&(&rotation.adjoint() * &rotation) - &Matrix::identity(k)).max_abs();
    if unitarity > ctx.tol.membership {
        return Err(CliError::Argument(format!("rotation is not unitary (residual {unitarity:e})")));
    }
    let tau: Vec<C64> = match &p.tau {
        Some(v) if v.len() != k => {
            return Err(CliError::Argument(format!("tau must have {k} entries, got {}", v.len())))
        }
        Some(v) if v.iter().flatten().any(|x| !x.is_finite()) => {
            return Err(CliError::Argument("tau contains a non-finite entry".into()))
        }
        Some(v) => v.iter().copied().map(complex).collect(),
        None => vec![C64::new(0.0, 0.0); k],
    };
    let sim = HeisSimilarity { r: p.r, rotation, trans: HeisElement::new(tau, p.t)?, scalar: C64::new(1.0, 0.0) };
    let g = sim.matrix()?;
    let g = match ctx.form {
        Some(FormName::First) => convert(&g, FormName::First, ctx.tol.membership)?,
        _ => g,
    };
    let label = format!("D_{} R_U T_(tau,{})", p.r, p.t);
    let doc = emit(&g, Some(label), &ctx.tol);
    let oracle = Oracle::Membership { residuals: vec![g.membership_residual()] };
    let params = (n, ctx.form.unwrap_or(FormName::Second), p);
    Ok(Report {
        inputs_digest: digest(&[params]),
        ..ctx.report(None, &[], Payload::Document { document: doc }, Some(oracle))
    })
}
