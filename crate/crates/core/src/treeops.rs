//! Binarization, de-binarization, decision extraction and isomorphism.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::index::EduRange;
use crate::model::{Attachment, DocumentGraph, EdgeRef, Node, NodeId, NodeKind, Role};
use crate::validate::{validate, Severity, ValidationPolicy, ValidationReport};

#[derive(Debug, Clone, thiserror::Error)]
pub enum TreeError {
    #[error("graph is invalid:\n{0}")]
    Invalid(ValidationReport),
    #[error("node {node} has {children} children; expected a binary tree")]
    NotBinary { node: NodeId, children: usize },
}

/// Policy used by tree operations: satellite ties are legal input for
/// binarization and missing secondary-edge signals do not block it.
fn structural_policy() -> ValidationPolicy {
    ValidationPolicy {
        unsignaled_secondary: Severity::Warning,
        allow_satellite_ties: true,
    }
}

fn require_valid(graph: &DocumentGraph) -> Result<(), TreeError> {
    let report = validate(graph, &structural_policy());
    if report.is_valid() {
        Ok(())
    } else {
        Err(TreeError::Invalid(report))
    }
}

fn require_binary(graph: &DocumentGraph) -> Result<(), TreeError> {
    let index = graph.index();
    for node in graph.nodes() {
        if node.kind.is_terminal() {
            continue;
        }
        let n = index.children(node.id).len();
        if n != 2 {
            return Err(TreeError::NotBinary {
                node: node.id,
                children: n,
            });
        }
    }
    Ok(())
}

/// Converts every non-terminal to exactly two children.
///
/// N-ary multinucs become right-branching chains sharing the original label.
/// A nucleus with several satellites is stacked so that satellites closest to
/// the nucleus join first: right-hand satellites innermost-first, then
/// left-hand ones; the outermost join keeps the original node id. Introduced
/// nodes get fresh negative ids, so every original id survives and secondary
/// edges and signals carry over unchanged.
pub fn binarize(graph: &DocumentGraph) -> Result<DocumentGraph, TreeError> {
    require_valid(graph)?;
    let index = graph.index();
    let mut next = graph.nodes().first().map_or(0, |n| n.id).min(0) - 1;
    let mut fresh = || {
        let id = next;
        next -= 1;
        id
    };
    let mut reattach: HashMap<NodeId, Attachment> = HashMap::new();
    let mut added: Vec<Node> = Vec::new();

    for node in graph.nodes() {
        let kids = index.children(node.id);
        if kids.len() <= 2 {
            continue;
        }
        match node.kind {
            NodeKind::Edu => {}
            NodeKind::Multinuc => {
                let label = graph
                    .node(kids[0])
                    .and_then(|k| k.relation())
                    .expect("valid multinuc child carries a label")
                    .to_string();
                let mut host = node.id;
                for &kid in &kids[1..kids.len() - 1] {
                    let id = fresh();
                    added.push(Node {
                        id,
                        kind: NodeKind::Multinuc,
                        attachment: Some(Attachment::multinuc_child(host, label.clone())),
                    });
                    move_to(graph, &mut reattach, kid, id);
                    host = id;
                }
                move_to(graph, &mut reattach, kids[kids.len() - 1], host);
            }
            NodeKind::Span => {
                let n = kids
                    .iter()
                    .position(|k| graph.node(*k).and_then(|k| k.role()) == Some(Role::Nucleus))
                    .expect("valid span has a nucleus");
                let order: Vec<NodeId> = kids[n + 1..]
                    .iter()
                    .chain(kids[..n].iter().rev())
                    .copied()
                    .collect();
                let mut inner = kids[n];
                for (j, &sat) in order.iter().enumerate() {
                    let host = if j + 1 == order.len() {
                        node.id
                    } else {
                        let id = fresh();
                        added.push(Node {
                            id,
                            kind: NodeKind::Span,
                            attachment: None,
                        });
                        id
                    };
                    set_attachment(&mut reattach, &mut added, inner, Attachment::nucleus(host));
                    move_to(graph, &mut reattach, sat, host);
                    inner = host;
                }
            }
        }
    }

    let mut parts = graph.parts().clone();
    for node in &mut parts.nodes {
        if let Some(att) = reattach.remove(&node.id) {
            node.attachment = Some(att);
        }
    }
    parts.nodes.extend(added);
    Ok(DocumentGraph::from_parts(parts))
}

fn move_to(
    graph: &DocumentGraph,
    reattach: &mut HashMap<NodeId, Attachment>,
    child: NodeId,
    parent: NodeId,
) {
    let mut att = graph
        .node(child)
        .and_then(|n| n.attachment.clone())
        .expect("child has an attachment");
    att.parent = parent;
    reattach.insert(child, att);
}

fn set_attachment(
    reattach: &mut HashMap<NodeId, Attachment>,
    added: &mut [Node],
    id: NodeId,
    att: Attachment,
) {
    if let Some(node) = added.iter_mut().find(|n| n.id == id) {
        node.attachment = Some(att);
    } else {
        reattach.insert(id, att);
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DebinarizeMode {
    /// Collapse only nodes introduced by [`binarize`] (negative ids).
    #[default]
    Introduced,
    /// Also collapse right-branching same-label multinuc chains with
    /// original ids, unless a secondary edge or signal references them.
    SameLabelChains,
}

/// Inverse of [`binarize`]: `debinarize(binarize(g))` reproduces `g`.
pub fn debinarize(graph: &DocumentGraph, mode: DebinarizeMode) -> Result<DocumentGraph, TreeError> {
    require_valid(graph)?;
    require_binary(graph)?;
    let index = graph.index();

    let mut referenced: HashSet<NodeId> = HashSet::new();
    for e in graph.secondary_edges() {
        referenced.insert(e.source);
        referenced.insert(e.target);
    }
    for s in graph.signals() {
        if let EdgeRef::Primary(n) = s.edge {
            referenced.insert(n);
        }
    }

    let mut collapsed: HashSet<NodeId> = HashSet::new();
    for node in graph.nodes() {
        let Some(att) = &node.attachment else {
            continue;
        };
        if referenced.contains(&node.id) {
            continue;
        }
        let Some(parent) = graph.node(att.parent) else {
            continue;
        };
        let collapse = match (node.kind, parent.kind, att.role) {
            (NodeKind::Multinuc, NodeKind::Multinuc, Role::MultinucChild) => {
                if node.id < 0 {
                    true
                } else {
                    mode == DebinarizeMode::SameLabelChains
                        && index.children(parent.id).last() == Some(&node.id)
                        && index.children(node.id).iter().all(|k| {
                            graph.node(*k).and_then(|k| k.relation()) == att.relation.as_deref()
                        })
                }
            }
            (NodeKind::Span, NodeKind::Span, Role::Nucleus) => node.id < 0,
            _ => false,
        };
        if collapse {
            collapsed.insert(node.id);
        }
    }

    let mut parts = graph.parts().clone();
    let parent_of: HashMap<NodeId, NodeId> = graph
        .nodes()
        .iter()
        .filter_map(|n| n.parent().map(|p| (n.id, p)))
        .collect();
    parts.nodes.retain(|n| !collapsed.contains(&n.id));
    for node in &mut parts.nodes {
        if let Some(att) = &mut node.attachment {
            let mut p = att.parent;
            while collapsed.contains(&p) {
                p = parent_of[&p];
            }
            att.parent = p;
        }
    }
    Ok(DocumentGraph::from_parts(parts))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Nuclearity {
    NS,
    SN,
    NN,
}

impl Nuclearity {
    pub fn as_str(self) -> &'static str {
        match self {
            Nuclearity::NS => "NS",
            Nuclearity::SN => "SN",
            Nuclearity::NN => "NN",
        }
    }
}

/// One binarized parsing decision: two adjacent child yields, their
/// nuclearity and the relation label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decision {
    pub left: EduRange,
    pub right: EduRange,
    pub nuclearity: Nuclearity,
    pub label: String,
}

impl Decision {
    pub fn new(
        left: EduRange,
        right: EduRange,
        nuclearity: Nuclearity,
        label: impl Into<String>,
    ) -> Self {
        Decision {
            left,
            right,
            nuclearity,
            label: label.into(),
        }
    }

    /// Unordered yield pair, normalized to text order.
    pub fn span(&self) -> (EduRange, EduRange) {
        if self.left <= self.right {
            (self.left, self.right)
        } else {
            (self.right, self.left)
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}|{}) {} {}",
            self.left,
            self.right,
            self.nuclearity.as_str(),
            self.label
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecisionSequence {
    pub edu_count: usize,
    pub decisions: Vec<Decision>,
}

impl DecisionSequence {
    pub fn len(&self) -> usize {
        self.decisions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decisions.is_empty()
    }
}

/// One decision per non-terminal of a binary tree, in preorder.
pub fn extract_decisions(graph: &DocumentGraph) -> Result<DecisionSequence, TreeError> {
    require_valid(graph)?;
    require_binary(graph)?;
    let index = graph.index();
    let mut decisions = Vec::new();
    for &id in index.preorder() {
        let node = graph.node(id).expect("indexed node");
        if node.kind.is_terminal() {
            continue;
        }
        let kids = index.children(id);
        let (a, b) = (graph.node(kids[0]).unwrap(), graph.node(kids[1]).unwrap());
        let left = index.yield_range(a.id).expect("valid yield");
        let right = index.yield_range(b.id).expect("valid yield");
        let (nuclearity, label) = match node.kind {
            NodeKind::Multinuc => (Nuclearity::NN, a.relation()),
            _ if a.role() == Some(Role::Nucleus) => (Nuclearity::NS, b.relation()),
            _ => (Nuclearity::SN, a.relation()),
        };
        decisions.push(Decision::new(
            left,
            right,
            nuclearity,
            label.expect("valid attachment label"),
        ));
    }
    Ok(DecisionSequence {
        edu_count: graph.edus().len(),
        decisions,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    SourceFirst,
    TargetFirst,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::SourceFirst => "source-before-target",
            Direction::TargetFirst => "target-before-source",
        }
    }

    /// Text order of two yields, compared by (first, last).
    pub fn of(source: EduRange, target: EduRange) -> Direction {
        if source <= target {
            Direction::SourceFirst
        } else {
            Direction::TargetFirst
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SecondaryDecision {
    pub source: EduRange,
    pub target: EduRange,
    pub direction: Direction,
    pub label: String,
}

impl SecondaryDecision {
    /// Unordered endpoint pair in text order.
    pub fn span(&self) -> (EduRange, EduRange) {
        if self.source <= self.target {
            (self.source, self.target)
        } else {
            (self.target, self.source)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SecondaryDecisions {
    pub edu_count: usize,
    pub records: Vec<SecondaryDecision>,
}

/// One record per secondary edge.
pub fn extract_secondary_decisions(graph: &DocumentGraph) -> Result<SecondaryDecisions, TreeError> {
    require_valid(graph)?;
    let mut records: Vec<SecondaryDecision> = graph
        .secondary_edges()
        .iter()
        .map(|e| {
            let source = graph.yield_range(e.source).expect("valid yield");
            let target = graph.yield_range(e.target).expect("valid yield");
            SecondaryDecision {
                source,
                target,
                direction: Direction::of(source, target),
                label: e.relation.clone(),
            }
        })
        .collect();
    records.sort();
    Ok(SecondaryDecisions {
        edu_count: graph.edus().len(),
        records,
    })
}

/// Id-free description of a graph: nodes, secondary edges and signals keyed
/// by yields. Two graphs are isomorphic iff their canonical forms are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub tokens: Vec<String>,
    pub edus: Vec<(usize, usize)>,
    pub nodes: BTreeSet<CanonicalNode>,
    pub secondary: BTreeSet<(Option<EduRange>, Option<EduRange>, String)>,
    pub signals: Vec<(
        Option<(EduRange, Option<EduRange>)>,
        bool,
        String,
        Vec<usize>,
    )>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonicalNode {
    pub yields: Option<EduRange>,
    pub kind: NodeKind,
    pub role: Option<Role>,
    pub relation: Option<String>,
    pub parent: Option<Option<EduRange>>,
}

pub fn canonical_form(graph: &DocumentGraph) -> CanonicalForm {
    let index = graph.index();
    let nodes = graph
        .nodes()
        .iter()
        .map(|n| CanonicalNode {
            yields: index.yield_range(n.id),
            kind: n.kind,
            role: n.role(),
            relation: n.relation().map(str::to_string),
            parent: n.parent().map(|p| index.yield_range(p)),
        })
        .collect();
    let secondary = graph
        .secondary_edges()
        .iter()
        .map(|e| {
            (
                index.yield_range(e.source),
                index.yield_range(e.target),
                e.relation.clone(),
            )
        })
        .collect();
    let mut signals: Vec<_> = graph
        .signals()
        .iter()
        .map(|s| {
            let (key, secondary) = match s.edge {
                EdgeRef::Primary(c) => (
                    index.yield_range(c).map(|y| {
                        (
                            y,
                            graph
                                .node(c)
                                .and_then(|n| n.parent())
                                .and_then(|p| index.yield_range(p)),
                        )
                    }),
                    false,
                ),
                EdgeRef::Secondary { source, target } => (
                    index
                        .yield_range(source)
                        .map(|y| (y, index.yield_range(target))),
                    true,
                ),
            };
            (
                key,
                secondary,
                s.label.to_string(),
                s.tokens.iter().copied().collect(),
            )
        })
        .collect();
    signals.sort();
    CanonicalForm {
        tokens: graph.tokens().iter().map(|t| t.form.clone()).collect(),
        edus: graph
            .edus()
            .iter()
            .map(|e| (e.first_token, e.last_token))
            .collect(),
        nodes,
        secondary,
        signals,
    }
}

/// Structural equality up to node-id renaming.
pub fn isomorphic(a: &DocumentGraph, b: &DocumentGraph) -> bool {
    canonical_form(a) == canonical_form(b)
}

/// Primary-tree projection: the same graph without secondary edges and
/// without the signals that referenced them.
pub fn primary_projection(graph: &DocumentGraph) -> DocumentGraph {
    let mut parts = graph.parts().clone();
    parts.secondary.clear();
    parts
        .signals
        .retain(|s| matches!(s.edge, EdgeRef::Primary(_)));
    DocumentGraph::from_parts(parts)
}
