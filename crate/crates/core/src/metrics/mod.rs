//! Evaluation metrics: primary and secondary Parseval, signal detection
//! (S_P/S_R) and signal anchoring (W_P/W_R), per document and per corpus.

pub mod assignment;
mod corpus;
mod parseval;
mod signals;

pub use assignment::max_weight_assignment;
pub use corpus::{score_corpus, score_document, DocumentScore, ScoreOptions, ScoreReport, Totals};
pub use parseval::{parseval, parseval_secondary, ParsevalCounts, ParsevalScores};
pub use signals::{edge_key, optimal_pair_overlap, signal_counts, EdgeKey, SignalCounts};

use crate::treeops::TreeError;

#[derive(Debug, Clone, thiserror::Error)]
pub enum MetricsError {
    #[error("EDU counts differ (gold {gold}, predicted {pred})")]
    EduCount { gold: usize, pred: usize },
    #[error("document {doc}: token sequences differ")]
    TokenMismatch { doc: String },
    #[error("document {doc}: EDU segmentations differ")]
    Segmentation { doc: String },
    #[error("document {doc}: {side} graph cannot be scored: {source}")]
    Invalid {
        doc: String,
        side: &'static str,
        source: TreeError,
    },
}

impl MetricsError {
    /// Input mismatches, as opposed to invalid graphs.
    pub fn is_mismatch(&self) -> bool {
        !matches!(self, MetricsError::Invalid { .. })
    }
}

/// `num / den`; when `den` is zero the result is 1.0 if the other side is
/// empty as well and 0.0 otherwise.
pub fn ratio(num: u64, den: u64, other: u64) -> f64 {
    if den == 0 {
        if other == 0 {
            1.0
        } else {
            0.0
        }
    } else {
        num as f64 / den as f64
    }
}

/// Harmonic mean, 0.0 when both inputs are 0.
pub fn f1(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}
