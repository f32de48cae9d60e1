//! Lexicon-based discourse marker detection, association of markers with
//! relations (orphan flagging), and secondary-edge candidate enumeration.

mod associate;
mod detect;
mod lexicon;

pub use associate::{
    associate, enumerate_secedge_candidates, Alignment, AssociateOptions, Candidate, CandidateKind,
};
pub use detect::{detect_dms, detect_dms_with, DetectOptions};
pub use lexicon::{normalize_surface, DmLexicon, DmRelationMap, LexiconEntry};

use crate::model::EdgeRef;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DmStatus {
    Unassigned,
    Attached(EdgeRef),
    /// No compatible primary relation; `edge` is the secondary edge the
    /// marker supports, if any.
    Orphan {
        edge: Option<EdgeRef>,
    },
}

impl DmStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            DmStatus::Unassigned => "unassigned",
            DmStatus::Attached(_) => "attached",
            DmStatus::Orphan { .. } => "orphan",
        }
    }
}

/// One detected connective.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DmOccurrence {
    /// Token indices in text order (one or two contiguous runs).
    pub tokens: Vec<usize>,
    /// Normalized lexicon surface.
    pub surface: String,
    pub status: DmStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlignError {
    #[error("connective token {token} lies outside every EDU of the tree")]
    OutsideEdu { token: usize },
    #[error("connective occurrence has no tokens")]
    EmptyOccurrence,
}
