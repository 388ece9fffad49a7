//! Machine-readable output of every command.

use chiso::centralizer::{Atom, CentralizerDescriptor, Structure};
use chiso::classify::{ClusterInfo, SpaceSign};
use chiso::commute::{CommuteVerdict, JordanPart, Witness};
use chiso::Tolerances;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::document::{pair, MatrixDocument, Pair};
use crate::error::exit;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub name: String,
    pub args: Vec<String>,
    /// Line number (from 0) within a batch file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub batch_index: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceSet {
    pub membership: f64,
    pub residual: f64,
    pub cluster: f64,
    pub rank: f64,
    pub verdict: f64,
    pub nullspace: f64,
    pub signature: f64,
}

impl From<Tolerances> for ToleranceSet {
    fn from(t: Tolerances) -> Self {
        ToleranceSet {
            membership: t.membership,
            residual: t.residual,
            cluster: t.cluster,
            rank: t.rank,
            verdict: t.verdict,
            nullspace: t.nullspace,
            signature: t.signature,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: CommandEcho,
    /// SHA-256 over the canonical JSON of the inputs, hex encoded.
    pub inputs_digest: String,
    /// The input documents as read, so reports can be piped onward.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inputs: Vec<MatrixDocument>,
    pub tolerances: ToleranceSet,
    pub result: Payload,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Oracle>,
    /// Set when the theorem-based answer disagrees with the oracle.
    pub mismatch: bool,
}

impl Report {
    pub fn exit_code(&self) -> u8 {
        if self.mismatch {
            exit::MISMATCH
        } else {
            exit::OK
        }
    }
}

pub fn digest<T: Serialize>(inputs: &[T]) -> String {
    let mut h = Sha256::new();
    for item in inputs {
        h.update(serde_json::to_vec(item).expect("inputs serialize"));
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Payload {
    Classification {
        kind: String,
        scalar: Pair,
        clusters: Vec<Cluster>,
        fixed_boundary_points: Vec<Vec<Pair>>,
        /// Orthonormal bases (as columns) of fixed sub-spheres.
        fixed_spheres: Vec<Vec<Vec<Pair>>>,
    },
    Commutation {
        commutes: bool,
        rule: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<WitnessDoc>,
    },
    Centralizer(DescriptorDoc),
    ZClass {
        label_a: String,
        label_b: String,
        equal: bool,
    },
    Document {
        document: MatrixDocument,
    },
    Jordan {
        semisimple: MatrixDocument,
        unipotent: MatrixDocument,
    },
    Stabilizer {
        r: f64,
        scalar: Pair,
        rotation: Vec<Vec<Pair>>,
        tau: Vec<Pair>,
        t: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub eigenvalue: Pair,
    pub multiplicity: usize,
    pub exponent: usize,
    /// `negative`, `degenerate` or `positive`.
    pub sign: String,
}

impl From<&ClusterInfo> for Cluster {
    fn from(c: &ClusterInfo) -> Self {
        let sign = match c.sign {
            SpaceSign::Negative => "negative",
            SpaceSign::Degenerate { .. } => "degenerate",
            SpaceSign::Positive => "positive",
        };
        Cluster { eigenvalue: pair(c.value), multiplicity: c.multiplicity, exponent: c.exponent, sign: sign.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum WitnessDoc {
    EigenspaceMoved {
        eigenvalue: Pair,
        leak: f64,
    },
    AxisAction {
        ratio: Pair,
    },
    FixedPointMoved {
        distance: f64,
    },
    ExcludedClass {
        class: String,
    },
    FixedSetMoved {
        leak: f64,
    },
    /// `Im(τ*σ)` of the two translation parts.
    NonIsotropic {
        pairing: f64,
    },
    Part {
        part: String,
        commutes: bool,
        rule: String,
        witness: Option<Box<WitnessDoc>>,
    },
}

impl From<&Witness> for WitnessDoc {
    fn from(w: &Witness) -> Self {
        match w {
            Witness::EigenspaceMoved { eigenvalue, leak } => {
                WitnessDoc::EigenspaceMoved { eigenvalue: pair(*eigenvalue), leak: *leak }
            }
            Witness::AxisAction { ratio } => WitnessDoc::AxisAction { ratio: pair(*ratio) },
            Witness::FixedPointMoved { distance } => WitnessDoc::FixedPointMoved { distance: *distance },
            Witness::ExcludedClass(k) => WitnessDoc::ExcludedClass { class: k.label().into() },
            Witness::FixedSetMoved { leak } => WitnessDoc::FixedSetMoved { leak: *leak },
            Witness::NonIsotropic { pairing } => WitnessDoc::NonIsotropic { pairing: *pairing },
            Witness::Part { part, verdict } => WitnessDoc::Part {
                part: match part {
                    JordanPart::Semisimple => "semisimple",
                    JordanPart::Unipotent => "unipotent",
                }
                .into(),
                commutes: verdict.commutes,
                rule: verdict.rule.label().into(),
                witness: verdict.witness.as_ref().map(|w| Box::new(w.into())),
            },
        }
    }
}

impl From<&CommuteVerdict> for Payload {
    fn from(v: &CommuteVerdict) -> Self {
        Payload::Commutation {
            commutes: v.commutes,
            rule: v.rule.label().into(),
            witness: v.witness.as_ref().map(WitnessDoc::from),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescriptorDoc {
    pub descriptor: String,
    pub factors: Vec<Factor>,
    /// `direct` or `semidirect`; in the latter the last factor is the nilpotent normal subgroup.
    pub structure: String,
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts: Option<Box<[DescriptorDoc; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Factor {
    pub name: String,
    pub dimension: usize,
}

impl From<&CentralizerDescriptor> for DescriptorDoc {
    fn from(d: &CentralizerDescriptor) -> Self {
        let factor = |a: &Atom| Factor { name: a.to_string(), dimension: a.dimension() };
        DescriptorDoc {
            descriptor: d.to_string(),
            factors: d.factors.iter().map(factor).collect(),
            structure: match d.structure {
                Structure::DirectProduct => "direct",
                Structure::SemidirectOverNilpotent => "semidirect",
            }
            .into(),
            dimension: d.dimension(),
            parts: d.parts.as_ref().map(|p| Box::new([(&p.0).into(), (&p.1).into()])),
        }
    }
}

/// Independent cross-checks attached to a result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Oracle {
    /// Membership residuals `‖g*Jg − J‖_max` of the inputs or of emitted documents.
    Membership { residuals: Vec<f64> },
    /// Relative size of `[A, B]`, and whether that counts as commuting at the verdict tolerance.
    Commutator { ratio: f64, commutes: bool, agrees: bool },
    /// Dimension of the commutant Lie algebra from a nullspace computation.
    Commutant { dimension: usize, agrees: bool },
    /// `‖s·u − g‖_max` and `‖[s, u]‖_max`.
    Jordan { product: f64, commutator: f64 },
    /// `‖rebuilt − g‖_max` for the stabilizer decomposition.
    Reconstruction { residual: f64 },
}
