//! Rule-based induction of non-connective signals from auxiliary
//! annotation layers (sentences, lemmas, tags, dependencies, coreference).
//!
//! Every rule proposes signals for a relation instance; a signal survives
//! only if the [`EligibilityTable`] allows its type for the instance's
//! relation. Output is deduplicated and sorted.

mod aux;
mod eligibility;
mod rules;

pub use aux::{AuxAnnotations, AuxToken, Layer, LayoutRegion, Mention};
pub use eligibility::{EligibilityTable, IndicativeEntry, IndicativeLexicon, RelationPatterns};

use crate::model::{DocumentGraph, EdgeRef, Role, Signal};
use crate::validate::{validate, ValidationPolicy, ValidationReport};
use rules::{sites, Ctx};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InduceError {
    #[error("{family} rules need missing layers: {}", layers.iter().map(|l| l.as_str()).collect::<Vec<_>>().join(", "))]
    MissingLayers {
        family: &'static str,
        layers: Vec<Layer>,
    },
    #[error("auxiliary annotation has {aux} tokens but the document has {doc}")]
    TokenCount { aux: usize, doc: usize },
    #[error("token {index}: auxiliary form {aux:?} differs from document form {doc:?}")]
    TokenForm {
        index: usize,
        aux: String,
        doc: String,
    },
    #[error("dependency layer, sentence {sentence}: {message}")]
    Dependencies { sentence: usize, message: String },
    #[error("signals reference edges that do not exist (lines {})", lines.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(", "))]
    DanglingSignals { lines: Vec<usize> },
    #[error("ingested signals leave the graph invalid:\n{0}")]
    Invalid(ValidationReport),
}

/// A proposal that needs a human decision rather than an automatic signal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReviewItem {
    pub edge: EdgeRef,
    pub relation: String,
    pub kind: String,
    pub tokens: Vec<usize>,
    pub note: String,
}

/// A rule family that did not run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkippedFamily {
    pub family: &'static str,
    pub missing: Vec<Layer>,
}

/// Output of one or more rule families.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Induced {
    pub signals: Vec<Signal>,
    pub review: Vec<ReviewItem>,
    pub skipped: Vec<SkippedFamily>,
}

impl Induced {
    fn absorb(&mut self, other: Induced) {
        self.signals.extend(other.signals);
        self.signals.sort();
        self.signals.dedup();
        self.review.extend(other.review);
        self.skipped.extend(other.skipped);
    }

    /// The graph plus the induced signals; new labels join its vocabulary.
    pub fn apply(&self, graph: &DocumentGraph) -> DocumentGraph {
        let mut parts = graph.parts().clone();
        for s in &self.signals {
            parts.signal_types.insert(s.label.clone());
        }
        DocumentGraph::from_parts(parts).merge_signals(self.signals.iter().cloned())
    }
}

pub const GRAPHICAL: &str = "graphical";
pub const SYNTACTIC: &str = "syntactic-morphological";
pub const REFERENCE: &str = "reference-semantic";
pub const LEXICAL: &str = "lexical";

fn check_tokens(graph: &DocumentGraph, aux: &AuxAnnotations) -> Result<(), InduceError> {
    if aux.tokens.is_empty() {
        return Ok(());
    }
    if aux.tokens.len() != graph.tokens().len() {
        return Err(InduceError::TokenCount {
            aux: aux.tokens.len(),
            doc: graph.tokens().len(),
        });
    }
    for (t, a) in graph.tokens().iter().zip(&aux.tokens) {
        if t.form != a.form {
            return Err(InduceError::TokenForm {
                index: t.index,
                aux: a.form.clone(),
                doc: t.form.clone(),
            });
        }
    }
    Ok(())
}

fn require(
    aux: &AuxAnnotations,
    family: &'static str,
    layers: &[Layer],
) -> Result<(), InduceError> {
    let missing: Vec<Layer> = layers.iter().copied().filter(|l| !aux.has(*l)).collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(InduceError::MissingLayers {
            family,
            layers: missing,
        })
    }
}

/// Question marks, enclosing parentheses and quotes, boundary colons,
/// dashes and semicolons, layout regions and list markers. Needs no layer;
/// sentences widen the question-mark search.
pub fn induce_graphical(
    graph: &DocumentGraph,
    aux: &AuxAnnotations,
    table: &EligibilityTable,
) -> Result<Induced, InduceError> {
    check_tokens(graph, aux)?;
    let mut ctx = Ctx::new(graph, aux, table);
    ctx.graphical(&sites(graph));
    Ok(ctx.finish())
}

/// Adnominal clauses, reported speech, mood, tense and inversion. Tense
/// changes in sequences go to the review list only.
pub fn induce_syntactic_morphological(
    graph: &DocumentGraph,
    aux: &AuxAnnotations,
    table: &EligibilityTable,
) -> Result<Induced, InduceError> {
    check_tokens(graph, aux)?;
    require(aux, SYNTACTIC, &[Layer::Dependencies])?;
    aux.check_dependency_trees()
        .map_err(|(sentence, message)| InduceError::Dependencies { sentence, message })?;
    let mut ctx = Ctx::new(graph, aux, table);
    ctx.syntactic(&sites(graph));
    Ok(ctx.finish())
}

/// Pronominal and demonstrative reference, head-lemma repetition, and
/// attribution sources. Attribution sources need dependencies too and are
/// skipped (and reported) without them.
pub fn induce_reference_semantic(
    graph: &DocumentGraph,
    aux: &AuxAnnotations,
    table: &EligibilityTable,
) -> Result<Induced, InduceError> {
    check_tokens(graph, aux)?;
    require(aux, REFERENCE, &[Layer::Coreference])?;
    let with_deps = aux.has(Layer::Dependencies);
    let mut ctx = Ctx::new(graph, aux, table);
    ctx.reference(&sites(graph), with_deps);
    let mut out = ctx.finish();
    if !with_deps {
        out.skipped.push(SkippedFamily {
            family: "attribution-source",
            missing: vec![Layer::Dependencies],
        });
    }
    Ok(out)
}

/// Indicative words by (lemma, tag) in the satellite, and in the nucleus
/// for nucleus-marking relations. Without a tag layer nothing matches and
/// the family is reported as skipped.
pub fn induce_lexical(
    graph: &DocumentGraph,
    aux: &AuxAnnotations,
    table: &EligibilityTable,
    lexicon: &IndicativeLexicon,
) -> Result<Induced, InduceError> {
    check_tokens(graph, aux)?;
    if !aux.has(Layer::Pos) {
        return Ok(Induced {
            skipped: vec![SkippedFamily {
                family: LEXICAL,
                missing: vec![Layer::Pos],
            }],
            ..Induced::default()
        });
    }
    let mut ctx = Ctx::new(graph, aux, table);
    ctx.lexical(&sites(graph), lexicon);
    Ok(ctx.finish())
}

/// Runs every family whose layers are present and lists the others in
/// [`Induced::skipped`].
pub fn induce_all(
    graph: &DocumentGraph,
    aux: &AuxAnnotations,
    table: &EligibilityTable,
    lexicon: &IndicativeLexicon,
) -> Result<Induced, InduceError> {
    let mut out = induce_graphical(graph, aux, table)?;
    for result in [
        induce_syntactic_morphological(graph, aux, table),
        induce_reference_semantic(graph, aux, table),
        induce_lexical(graph, aux, table, lexicon),
    ] {
        match result {
            Ok(r) => out.absorb(r),
            Err(InduceError::MissingLayers { family, layers }) => out.skipped.push(SkippedFamily {
                family,
                missing: layers,
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn edge_exists(graph: &DocumentGraph, edge: EdgeRef) -> bool {
    match edge {
        EdgeRef::Primary(id) => graph
            .node(id)
            .and_then(|n| n.role())
            .is_some_and(|r| r != Role::Nucleus),
        EdgeRef::Secondary { source, target } => graph.secondary_edge(source, target).is_some(),
    }
}

/// Merges externally produced signals (with their source line numbers)
/// into the graph. Signals on missing edges are rejected with their lines;
/// the merged graph must still validate under `policy`.
pub fn ingest_external_signals(
    graph: &DocumentGraph,
    signals: &[(usize, Signal)],
    policy: &ValidationPolicy,
) -> Result<DocumentGraph, InduceError> {
    let lines: Vec<usize> = signals
        .iter()
        .filter(|(_, s)| !edge_exists(graph, s.edge))
        .map(|(l, _)| *l)
        .collect();
    if !lines.is_empty() {
        return Err(InduceError::DanglingSignals { lines });
    }
    let merged = graph.merge_signals(signals.iter().map(|(_, s)| s.clone()));
    let report = validate(&merged, policy);
    if !report.is_valid() {
        return Err(InduceError::Invalid(report));
    }
    Ok(merged)
}
