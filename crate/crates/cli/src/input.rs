use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use rayon::prelude::*;

use erst::io::{parse_document, read_text, IoError};
use erst::{validate, DocumentGraph, ValidationPolicy};

/// Expands directories to their `.xml` files (sorted by name); files are
/// kept as given.
pub fn expand(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut files: Vec<PathBuf> = std::fs::read_dir(p)
                .with_context(|| format!("cannot list {}", p.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.is_file() && f.extension().is_some_and(|x| x == "xml"))
                .collect();
            files.sort();
            out.extend(files);
        } else if p.is_file() {
            out.push(p.clone());
        } else {
            anyhow::bail!("{} does not exist", p.display());
        }
    }
    Ok(out)
}

/// One error line: `error<TAB>where<TAB>message`, newlines flattened.
pub fn report_error(place: &str, message: impl std::fmt::Display) {
    let text = message.to_string();
    let flat: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    eprintln!("error\t{place}\t{}", flat.join(" | "));
}

pub fn report_warning(place: &str, message: impl std::fmt::Display) {
    eprintln!("warning\t{place}\t{message}");
}

/// Order-preserving parallel map.
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.par_iter().map(f).collect()
}

/// Reads and validates one document. Unsignaled secondary edges are
/// warnings, so partially annotated corpora load.
pub fn load(path: &Path) -> Result<DocumentGraph, IoError> {
    let text = read_text(path)?;
    erst::io::read_document_str(&text, &ValidationPolicy::lenient())
}

/// Loads documents in parallel, reporting failures per document. Returns
/// the loaded documents in input order and whether any failed.
pub fn load_all(paths: &[PathBuf]) -> (Vec<(PathBuf, DocumentGraph)>, bool) {
    let results = par_map(paths, |p| load(p));
    let mut docs = Vec::new();
    let mut failed = false;
    for (p, r) in paths.iter().zip(results) {
        match r {
            Ok(g) => docs.push((p.clone(), g)),
            Err(e) => {
                failed = true;
                report_error(&p.display().to_string(), e);
            }
        }
    }
    (docs, failed)
}

/// Structural parse plus the full violation list, for `validate`.
pub fn check(path: &Path, policy: &ValidationPolicy) -> Result<erst::ValidationReport, IoError> {
    let graph = parse_document(&read_text(path)?)?;
    Ok(validate(&graph, policy))
}

pub fn read_sidecar<T>(path: &Path, parse: impl Fn(&str) -> Result<T, IoError>) -> Result<T> {
    let text = read_text(path)?;
    parse(&text)
        .map_err(|e| e.in_file(path))
        .map_err(Into::into)
}

pub fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default()
}
