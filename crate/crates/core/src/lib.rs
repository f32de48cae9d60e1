//! Toolkit for enhanced RST discourse graphs: a projective primary
//! constituent tree over EDUs, signal-licensed secondary edges, and
//! token-anchored signals.
//!
//! Start with [`model::GraphBuilder`] or [`io::read_document`], check graphs
//! with [`validate()`], and score predictions with [`metrics`].

pub mod align;
pub mod index;
pub mod induce;
pub mod io;
pub mod metrics;
pub mod model;
pub mod relations;
pub mod render;
pub mod stats;
pub mod synth;
pub mod treeops;
pub mod validate;

pub use index::{EduRange, TreeIndex};
pub use model::*;
pub use validate::{validate, Severity, ValidationPolicy, ValidationReport, Violation};

/// Errors raised by model accessors and label parsing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("{0}")]
    Parse(String),
}
