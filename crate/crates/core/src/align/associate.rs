use std::collections::{BTreeSet, HashMap, HashSet};

use super::lexicon::DmRelationMap;
use super::{AlignError, DmOccurrence, DmStatus};
use crate::index::{ancestors, lowest_common_ancestor};
use crate::model::{DocumentGraph, EdgeRef, NodeId, Role, SecondaryEdge, Signal, SignalLabel};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AssociateOptions {
    /// After the outgoing walk fails, try relations pointing into the chain
    /// (satellite siblings of chain nuclei). Raises recall, lowers precision.
    pub incoming_fallback: bool,
}

/// Result of associating detected connectives with relations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alignment {
    pub occurrences: Vec<DmOccurrence>,
    /// dm:dm signals for attached connectives and orphan:orphan signals for
    /// orphans that support an existing secondary edge.
    pub signals: Vec<Signal>,
}

impl Alignment {
    pub fn orphans(&self) -> impl Iterator<Item = &DmOccurrence> {
        self.occurrences
            .iter()
            .filter(|o| matches!(o.status, DmStatus::Orphan { .. }))
    }

    /// Orphans that could not be tied to any secondary edge.
    pub fn unreferenced_orphans(&self) -> impl Iterator<Item = &DmOccurrence> {
        self.occurrences
            .iter()
            .filter(|o| matches!(o.status, DmStatus::Orphan { edge: None }))
    }

    /// The input graph plus the generated signals.
    pub fn apply(&self, graph: &DocumentGraph) -> DocumentGraph {
        let mut parts = graph.parts().clone();
        parts.signal_types.insert(SignalLabel::dm());
        parts.signal_types.insert(SignalLabel::orphan());
        let merged = DocumentGraph::from_parts(parts);
        merged.merge_signals(self.signals.iter().cloned())
    }
}

/// EDU followed by its ancestors up to the root.
fn chain(graph: &DocumentGraph, edu: NodeId) -> Vec<NodeId> {
    let mut c = vec![edu];
    c.extend(ancestors(graph, edu));
    c
}

fn outgoing(graph: &DocumentGraph, node: NodeId) -> Option<(EdgeRef, &str)> {
    let att = graph.node(node)?.attachment.as_ref()?;
    match att.role {
        Role::Nucleus => None,
        _ => Some((EdgeRef::Primary(node), att.relation.as_deref()?)),
    }
}

/// Attaches each connective to the nearest compatible relation on its
/// EDU's ancestor chain, using each node's own outgoing relation. Connectives
/// with no compatible relation become orphans; an orphan references a
/// compatible secondary edge leaving the chain when one exists.
pub fn associate(
    graph: &DocumentGraph,
    dms: &[DmOccurrence],
    map: &DmRelationMap,
    options: &AssociateOptions,
) -> Result<Alignment, AlignError> {
    let index = graph.index();
    let mut order: Vec<usize> = (0..dms.len()).collect();
    order.sort_by(|a, b| dms[*a].tokens.cmp(&dms[*b].tokens));
    let mut used: HashMap<(NodeId, String), HashSet<EdgeRef>> = HashMap::new();
    let mut out = Alignment::default();

    for i in order {
        let dm = &dms[i];
        let first = *dm.tokens.first().ok_or(AlignError::EmptyOccurrence)?;
        let edu = graph
            .edu_of_token(first)
            .ok_or(AlignError::OutsideEdu { token: first })?
            .id;
        if index.depth(edu).is_none() {
            return Err(AlignError::OutsideEdu { token: first });
        }
        let excluded = used.entry((edu, dm.surface.clone())).or_default();
        let path = chain(graph, edu);

        let mut found = path.iter().find_map(|&n| {
            outgoing(graph, n)
                .filter(|(e, rel)| !excluded.contains(e) && map.compatible(&dm.surface, rel))
        });
        if found.is_none() && options.incoming_fallback {
            found = path.iter().find_map(|&n| {
                let node = graph.node(n)?;
                if node.role() != Some(Role::Nucleus) {
                    return None;
                }
                index.children(node.parent()?).iter().find_map(|&sib| {
                    outgoing(graph, sib).filter(|(e, rel)| {
                        sib != n && !excluded.contains(e) && map.compatible(&dm.surface, rel)
                    })
                })
            });
        }

        let tokens = dm.tokens.iter().copied();
        let status = match found {
            Some((edge, _)) => {
                excluded.insert(edge);
                out.signals
                    .push(Signal::new(edge, SignalLabel::dm(), tokens));
                DmStatus::Attached(edge)
            }
            None => {
                let edge = orphan_edge(graph, &path, &dm.surface, map, options);
                if let Some(e) = edge {
                    out.signals
                        .push(Signal::new(e, SignalLabel::orphan(), tokens));
                }
                DmStatus::Orphan { edge }
            }
        };
        out.occurrences.push(DmOccurrence {
            status,
            ..dm.clone()
        });
    }
    out.occurrences.sort_by(|a, b| a.tokens.cmp(&b.tokens));
    out.signals.sort();
    out.signals.dedup();
    Ok(out)
}

/// Nearest compatible secondary edge whose source lies on the chain (or,
/// with the incoming fallback, whose target does).
fn orphan_edge(
    graph: &DocumentGraph,
    path: &[NodeId],
    surface: &str,
    map: &DmRelationMap,
    options: &AssociateOptions,
) -> Option<EdgeRef> {
    let mut edges: Vec<&SecondaryEdge> = graph.secondary_edges().iter().collect();
    edges.sort();
    for &n in path {
        let hit = edges.iter().find(|e| {
            map.compatible(surface, &e.relation)
                && (e.source == n || (options.incoming_fallback && e.target == n))
        });
        if let Some(e) = hit {
            return Some(e.edge_ref());
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CandidateKind {
    /// Source on the connective's chain, target elsewhere in the tree.
    PrimaryPath,
    /// Units spanning two adjacent sentences.
    AdjacentSentences,
}

impl CandidateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CandidateKind::PrimaryPath => "primary-path",
            CandidateKind::AdjacentSentences => "adjacent-sentences",
        }
    }
}

/// A possible secondary edge licensed by an orphan connective.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Candidate {
    pub edge: SecondaryEdge,
    /// Index of the licensing orphan in the input list.
    pub orphan: usize,
    pub kind: CandidateKind,
}

/// Enumerates secondary-edge candidates for orphan connectives: for every
/// node off the orphan's ancestor chain, an edge from the chain node just
/// below their common ancestor, for each compatible label; plus edges
/// between units covering adjacent sentences when sentence boundaries are
/// given. Candidates that duplicate an existing secondary path, loop, or
/// reference missing nodes are dropped. No ranking is applied.
pub fn enumerate_secedge_candidates(
    graph: &DocumentGraph,
    orphans: &[DmOccurrence],
    map: &DmRelationMap,
    sentences: Option<&[(usize, usize)]>,
) -> Vec<Candidate> {
    let index = graph.index();
    let existing: HashSet<(NodeId, NodeId)> = graph
        .secondary_edges()
        .iter()
        .map(|e| (e.source, e.target))
        .collect();
    let mut seen: BTreeSet<(NodeId, NodeId, String)> = BTreeSet::new();
    let mut out = Vec::new();

    let sentence_units: Vec<Option<NodeId>> = sentences
        .unwrap_or(&[])
        .iter()
        .map(|&(a, b)| {
            index
                .preorder()
                .iter()
                .rev()
                .copied()
                .find(|&n| graph.token_span(n) == Some((a, b)))
        })
        .collect();

    for (i, dm) in orphans.iter().enumerate() {
        if !matches!(dm.status, DmStatus::Orphan { .. }) {
            continue;
        }
        let Some(first) = dm.tokens.first() else {
            continue;
        };
        let Some(edu) = graph.edu_of_token(*first).map(|e| e.id) else {
            continue;
        };
        let Some(labels) = map.labels(&dm.surface) else {
            continue;
        };
        let compatible: Vec<&str> = graph
            .relations()
            .iter()
            .map(|(name, _)| name)
            .filter(|name| map.compatible(&dm.surface, name))
            .collect();
        if labels.is_empty() || compatible.is_empty() {
            continue;
        }
        let path = chain(graph, edu);
        let on_path: HashSet<NodeId> = path.iter().copied().collect();

        let mut push =
            |source: NodeId, target: NodeId, kind: CandidateKind, out: &mut Vec<Candidate>| {
                if source == target
                    || graph.node(source).is_none()
                    || graph.node(target).is_none()
                    || existing.contains(&(source, target))
                {
                    return;
                }
                for label in &compatible {
                    if seen.insert((source, target, label.to_string())) {
                        out.push(Candidate {
                            edge: SecondaryEdge::new(source, target, *label),
                            orphan: i,
                            kind,
                        });
                    }
                }
            };

        for &b in index.preorder() {
            if on_path.contains(&b) {
                continue;
            }
            let Some(lca) = lowest_common_ancestor(graph, b, edu) else {
                continue;
            };
            let Some(pos) = path.iter().position(|&n| n == lca) else {
                continue;
            };
            if pos == 0 {
                continue;
            }
            push(path[pos - 1], b, CandidateKind::PrimaryPath, &mut out);
        }

        if let Some(sents) = sentences {
            if let Some(s) = sents.iter().position(|&(a, b)| a <= *first && *first <= b) {
                let here = sentence_units[s];
                for other in [s.checked_sub(1), Some(s + 1)].into_iter().flatten() {
                    if let (Some(src), Some(Some(tgt))) = (here, sentence_units.get(other)) {
                        push(src, *tgt, CandidateKind::AdjacentSentences, &mut out);
                    }
                }
            }
        }
    }
    out.sort();
    out
}
