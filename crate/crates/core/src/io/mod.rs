//! The XML document format and the tab-separated sidecar files.
//!
//! Document layout:
//!
//! ```text
//! <erst format-version="1" doc="ID">
//!   <header>
//!     <relations><rel name="elaboration-additional" type="satellite"/>...</relations>
//!     <sigtypes><sig major="graphical" subtypes="colon,dash"/>...</sigtypes>
//!   </header>
//!   <body>
//!     <segment id="1" parent="4" relname="span">Tokens separated by spaces</segment>
//!     <group id="4" type="span"/>
//!     <secedge id="3-4" source="3" target="4" relname="adversative-concession"/>
//!     <signal source="3-4" type="orphan" subtype="orphan" tokens="12"/>
//!   </body>
//! </erst>
//! ```
//!
//! `relname="span"` (or no relname) attaches a nucleus; children of a
//! multinuc group are multinuclear members; any other relname attaches a
//! satellite. Segment tokens are numbered from 1 in segment-id order.
//! Primary-edge signals reference the child id.

mod sidecar;
mod xml;

use std::fs;
use std::path::{Path, PathBuf};

pub use sidecar::{
    parse_aux, parse_coref, parse_eligibility, parse_genre_map, parse_indicative, parse_lexicon,
    parse_map, parse_signal_list, write_signal_list,
};
pub use xml::{parse_document, read_document_str, write_document_string, FORMAT_VERSION};

use crate::model::DocumentGraph;
use crate::validate::{ValidationPolicy, ValidationReport};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: malformed XML: {message}")]
    Xml { line: usize, message: String },
    #[error("line {line}: <{element}>: {message}")]
    Format {
        line: usize,
        element: String,
        message: String,
    },
    #[error("document {doc} is invalid:\n{report}")]
    Invalid {
        doc: String,
        report: ValidationReport,
    },
    #[error("document {doc}: EDU ids must increase in text order to be written")]
    EduOrder { doc: String },
    #[error("{kind} file, line {line}: {message}")]
    Sidecar {
        kind: &'static str,
        line: usize,
        message: String,
    },
}

impl IoError {
    /// Adds the file name to content errors.
    pub fn in_file(self, path: &Path) -> IoError {
        match self {
            IoError::File { .. } => self,
            other => IoError::File {
                path: path.to_path_buf(),
                source: std::io::Error::new(std::io::ErrorKind::InvalidData, other.to_string()),
            },
        }
    }
}

pub fn read_text(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads and validates a document under the default (strict) policy.
pub fn read_document(path: &Path) -> Result<DocumentGraph, IoError> {
    read_document_with(path, &ValidationPolicy::default())
}

pub fn read_document_with(
    path: &Path,
    policy: &ValidationPolicy,
) -> Result<DocumentGraph, IoError> {
    read_document_str(&read_text(path)?, policy)
}

/// Writes the canonical serialization (UTF-8, LF line endings).
pub fn write_document(graph: &DocumentGraph, path: &Path) -> Result<(), IoError> {
    let text = write_document_string(graph)?;
    fs::write(path, text).map_err(|source| IoError::File {
        path: path.to_path_buf(),
        source,
    })
}
