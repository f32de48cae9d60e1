//! Relation instances: the unit counted by statistics and targeted by
//! signal induction.

use crate::model::{DocumentGraph, EdgeRef, NodeId, NodeKind, Role};

/// One relation in the graph.
///
/// For satellite attachments `satellite` is the attached node and `nucleus`
/// its nucleus sibling. Multinuclear relations yield one instance per child
/// after the first, pairing it with the preceding sibling; the first
/// instance also owns the first child's edge. Secondary edges pair source
/// (`satellite`) with target (`nucleus`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    /// Edge new signals are attached to.
    pub edge: EdgeRef,
    /// All edges whose signals belong to this instance (`edge` first).
    pub edges: Vec<EdgeRef>,
    pub relation: String,
    pub secondary: bool,
    pub multinuclear: bool,
    pub satellite: NodeId,
    pub nucleus: NodeId,
}

/// All relation instances, primary ones in tree preorder followed by
/// secondary edges.
pub fn relation_instances(graph: &DocumentGraph) -> Vec<RelationInstance> {
    let index = graph.index();
    let mut out = Vec::new();
    for &id in index.preorder() {
        let Some(node) = graph.node(id) else { continue };
        if node.kind.is_terminal() {
            continue;
        }
        let kids = index.children(id);
        match node.kind {
            NodeKind::Multinuc => {
                for i in 1..kids.len() {
                    let Some(rel) = graph.node(kids[i]).and_then(|k| k.relation()) else {
                        continue;
                    };
                    let mut edges = vec![EdgeRef::Primary(kids[i])];
                    if i == 1 {
                        edges.push(EdgeRef::Primary(kids[0]));
                    }
                    out.push(RelationInstance {
                        edge: EdgeRef::Primary(kids[i]),
                        edges,
                        relation: rel.to_string(),
                        secondary: false,
                        multinuclear: true,
                        satellite: kids[i],
                        nucleus: kids[i - 1],
                    });
                }
            }
            _ => {
                let Some(&nuc) = kids
                    .iter()
                    .find(|k| graph.node(**k).and_then(|n| n.role()) == Some(Role::Nucleus))
                else {
                    continue;
                };
                for &k in kids {
                    let Some(child) = graph.node(k) else { continue };
                    if child.role() != Some(Role::Satellite) {
                        continue;
                    }
                    let Some(rel) = child.relation() else {
                        continue;
                    };
                    out.push(RelationInstance {
                        edge: EdgeRef::Primary(k),
                        edges: vec![EdgeRef::Primary(k)],
                        relation: rel.to_string(),
                        secondary: false,
                        multinuclear: false,
                        satellite: k,
                        nucleus: nuc,
                    });
                }
            }
        }
    }
    for e in graph.secondary_edges() {
        out.push(RelationInstance {
            edge: e.edge_ref(),
            edges: vec![e.edge_ref()],
            relation: e.relation.clone(),
            secondary: true,
            multinuclear: false,
            satellite: e.source,
            nucleus: e.target,
        });
    }
    out
}
