//! Minimal model program on log surfaces given by dual graphs.
//!
//! Curves are judged on the current model through Mumford pullback. A run is a
//! sequence of elementary contractions of log exceptional curves, recorded
//! together with the model reached after each step. On top of runs the module
//! provides peelings (runs supported in the boundary), redundant and almost log
//! exceptional curves with their case tags, the relative K-MMP and the staged
//! almost minimalization.

mod almost_min;
mod cases;
mod peeling;
mod runs;

pub use almost_min::{almost_minimalize, AlmostMinDecomposition, AmStage, LadderRung};
pub use cases::{
    almost_log_exceptional, redundant, AleCurve, CaseFamily, CaseTag, RedundantCurve,
    TwigInequality,
};
pub use peeling::{peel, peel_from, reduced_peeling_shapes, Peeling, PeelingDecomposition};
pub use runs::{
    boundary_stays_snc, canonical_model, enumerate_runs, find_run_within, image_is_smooth,
    is_partial_mmp_run, relative_k_mmp, run_mmp, RunCheck, RunEnumeration, ENUMERATION_LIMIT,
};

use crate::classify::ClassifyError;
use crate::graph::{GraphError, VertexSet};
use crate::invariants::InvariantError;
use crate::model::{LogSurfaceModel, ModelError};
use crate::rational::Rational;
use num_traits::{Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MmpError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{free} free vertices exceed the enumeration limit of {limit}")]
    TooLarge { free: usize, limit: usize },
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("vertex {0} is already contracted")]
    AlreadyContracted(String),
}

/// The kind of a run: the first kind contracts only curves with negative log
/// canonical pairing, the second kind also admits log crepant ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    First,
    Second,
}

impl Kind {
    /// Whether a curve of kind `c` may be contracted in a run of this kind.
    pub fn admits(self, c: CurveKind) -> bool {
        match self {
            Kind::First => c == CurveKind::First,
            Kind::Second => c != CurveKind::None,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::First => "first",
            Kind::Second => "second",
        })
    }
}

/// The verdict on a single curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveKind {
    First,
    Second,
    None,
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveKind::First => "first",
            CurveKind::Second => "second",
            CurveKind::None => "none",
        })
    }
}

/// Numerical data of a surviving curve on the current model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveVerdict {
    pub vertex: usize,
    pub self_int: Rational,
    /// `C . K`.
    pub k_pairing: Rational,
    /// `C . (K + B)` for the boundary `B` of the model.
    pub log_pairing: Rational,
    pub kind: CurveKind,
    /// Second-kind curves whose contraction the graph cannot certify: either
    /// `C . (K + C) >= 0` (an isolated boundary curve of elliptic type), or a
    /// `K`-trivial curve disjoint from the boundary.
    pub contraction_assumed: bool,
}

/// Verdict on the surviving curve `v`.
pub fn curve_verdict(model: &LogSurfaceModel, v: usize) -> Result<CurveVerdict, MmpError> {
    if model.is_contracted(v) {
        return Err(MmpError::AlreadyContracted(model.graph().id(v).to_string()));
    }
    let (self_int, k_pairing, log_pairing) = model.curve_numbers(v)?;
    let kind = if !self_int.is_negative() {
        CurveKind::None
    } else if log_pairing.is_negative() {
        CurveKind::First
    } else if log_pairing.is_zero() {
        CurveKind::Second
    } else {
        CurveKind::None
    };
    let contraction_assumed = kind == CurveKind::Second && {
        let elliptic_type = !(&k_pairing + &self_int).is_negative();
        let boundary_pairing = &log_pairing - &k_pairing;
        let isolated_k_trivial =
            k_pairing.is_zero() && boundary_pairing.is_zero() && !model.in_boundary(v);
        elliptic_type || isolated_k_trivial
    };
    Ok(CurveVerdict {
        vertex: v,
        self_int,
        k_pairing,
        log_pairing,
        kind,
        contraction_assumed,
    })
}

/// Verdicts for every surviving curve, in vertex order.
pub fn log_exceptional(model: &LogSurfaceModel) -> Result<Vec<CurveVerdict>, MmpError> {
    model
        .surviving()
        .into_iter()
        .map(|v| curve_verdict(model, v))
        .collect()
}

/// Choice of the next curve when several are contractible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    /// First-kind curves before second-kind ones, then by lexicographic id.
    #[default]
    LowestId,
    /// As `LowestId`, but boundary curves go before all others.
    BoundaryFirst,
}

/// One elementary contraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MmpStep {
    /// The contracted curve as seen on the model before the step.
    pub verdict: CurveVerdict,
    /// The model after the step.
    pub model: LogSurfaceModel,
}

/// A sequence of elementary contractions starting at `start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MmpRun {
    pub kind: Kind,
    pub start: LogSurfaceModel,
    pub steps: Vec<MmpStep>,
    /// Curves contracted by the run (the start's contracted set excluded).
    pub final_contracted: VertexSet,
}

impl MmpRun {
    pub(crate) fn empty(kind: Kind, start: LogSurfaceModel) -> Self {
        MmpRun {
            kind,
            start,
            steps: Vec::new(),
            final_contracted: VertexSet::new(),
        }
    }

    pub(crate) fn push(&mut self, verdict: CurveVerdict, model: LogSurfaceModel) {
        self.final_contracted.insert(verdict.vertex);
        self.steps.push(MmpStep { verdict, model });
    }

    pub fn final_model(&self) -> &LogSurfaceModel {
        self.steps.last().map_or(&self.start, |s| &s.model)
    }

    /// Contracted vertices in the order of contraction.
    pub fn order(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.verdict.vertex).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }
}
