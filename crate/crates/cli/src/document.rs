//! The JSON matrix document shared by every command.

use chiso::linalg::{FormKind, GroupElement, HermitianForm};
use chiso::{Matrix, C64};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

/// Which Hermitian form an element preserves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FormName {
    /// `diag(−1, I)`.
    First,
    /// Anti-diagonal corners, identity in the middle.
    Second,
}

impl FormName {
    pub fn of(kind: FormKind) -> Self {
        match kind {
            FormKind::First => FormName::First,
            FormKind::Second => FormName::Second,
        }
    }

    pub fn form(self, n: usize) -> HermitianForm {
        match self {
            FormName::First => HermitianForm::first(n),
            FormName::Second => HermitianForm::second(n),
        }
    }

    pub fn other(self) -> Self {
        match self {
            FormName::First => FormName::Second,
            FormName::Second => FormName::First,
        }
    }
}

pub type Pair = [f64; 2];

pub fn pair(z: C64) -> Pair {
    [z.re, z.im]
}

pub fn complex(p: Pair) -> C64 {
    C64::new(p[0], p[1])
}

pub fn rows_of(m: &Matrix) -> Vec<Vec<Pair>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| pair(m[(i, j)])).collect()).collect()
}

/// Matrix from nested `[re, im]` rows, checking the shape is `size × size`.
pub fn matrix_of(rows: &[Vec<Pair>], size: usize, what: &str) -> Result<Matrix, CliError> {
    if rows.len() != size || rows.iter().any(|r| r.len() != size) {
        let shape: Vec<usize> = rows.iter().map(Vec::len).collect();
        return Err(CliError::Parse(format!("{what} must be {size}×{size}, got rows of lengths {shape:?}")));
    }
    if rows.iter().flatten().flatten().any(|x| !x.is_finite()) {
        return Err(CliError::Parse(format!("{what} contains a non-finite entry")));
    }
    Ok(Matrix::from_fn(size, size, |i, j| complex(rows[i][j])))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub n: usize,
    pub form: FormName,
    /// `(n+1)×(n+1)` rows of `[re, im]` pairs.
    pub entries: Vec<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// Membership tolerance for this document, when it differs from the default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl MatrixDocument {
    pub fn from_element(g: &GroupElement, label: Option<String>) -> Self {
        MatrixDocument {
            n: g.n(),
            form: FormName::of(g.form().kind()),
            entries: rows_of(g.matrix()),
            label,
            tolerance: None,
        }
    }

    /// Parses into a group element, checking membership at the document's
    /// tolerance or `default_tol`.
    pub fn element(&self, default_tol: f64) -> Result<GroupElement, CliError> {
        if self.n == 0 {
            return Err(CliError::Parse("n must be at least 1".into()));
        }
        let m = matrix_of(&self.entries, self.n + 1, "entries")?;
        let tol = self.tolerance.unwrap_or(default_tol);
        Ok(GroupElement::new(self.form.form(self.n), m, tol)?)
    }

    /// Reads a bare document, or one carried by a report: the emitted
    /// document if there is one, else the single input.
    pub fn from_value(v: Value) -> Result<Self, CliError> {
        let single_input = v.get("inputs").and_then(Value::as_array).filter(|a| a.len() == 1).map(|a| &a[0]);
        let doc = if v.get("entries").is_some() {
            v
        } else if let Some(d) = v.get("result").and_then(|r| r.get("document")).or(single_input) {
            d.clone()
        } else {
            return Err(CliError::Parse("expected a matrix document or a report carrying one".into()));
        };
        serde_json::from_value(doc).map_err(|e| CliError::Parse(format!("malformed matrix document: {e}")))
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let v: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("invalid JSON: {e}")))?;
        Self::from_value(v)
    }
}
