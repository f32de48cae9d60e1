//! Derived constituent view of the primary tree.

use std::collections::HashMap;
use std::fmt;

use crate::model::{DocumentGraph, NodeId};

/// Inclusive range of EDU ordinals (1-based, text order).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EduRange {
    pub first: usize,
    pub last: usize,
}

impl EduRange {
    pub fn new(first: usize, last: usize) -> Self {
        debug_assert!(first <= last);
        EduRange { first, last }
    }

    pub fn single(pos: usize) -> Self {
        EduRange::new(pos, pos)
    }

    pub fn len(&self) -> usize {
        self.last - self.first + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.first <= pos && pos <= self.last
    }

    pub fn covers(&self, other: &EduRange) -> bool {
        self.first <= other.first && other.last <= self.last
    }

    pub fn overlaps(&self, other: &EduRange) -> bool {
        self.first <= other.last && other.first <= self.last
    }

    pub fn union(&self, other: &EduRange) -> EduRange {
        EduRange::new(self.first.min(other.first), self.last.max(other.last))
    }
}

impl fmt::Display for EduRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.first == self.last {
            write!(f, "{}", self.first)
        } else {
            write!(f, "{}-{}", self.first, self.last)
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Extent {
    min: usize,
    max: usize,
    count: usize,
}

/// Children lists, EDU ordinals and yields, tolerant of malformed trees
/// so the validator can use it.
#[derive(Clone, Debug, Default)]
pub struct TreeIndex {
    children: HashMap<NodeId, Vec<NodeId>>,
    edu_positions: HashMap<NodeId, usize>,
    edu_at: Vec<NodeId>,
    extents: HashMap<NodeId, Extent>,
    roots: Vec<NodeId>,
    unreachable: Vec<NodeId>,
    preorder: Vec<NodeId>,
    depth: HashMap<NodeId, usize>,
}

const NO_CHILDREN: &[NodeId] = &[];

impl TreeIndex {
    pub fn build(graph: &DocumentGraph) -> TreeIndex {
        let mut index = TreeIndex::default();
        for (i, edu) in graph.edus().iter().enumerate() {
            index.edu_positions.entry(edu.id).or_insert(i + 1);
            index.edu_at.push(edu.id);
        }

        let mut last_id = None;
        for node in graph.nodes() {
            if last_id == Some(node.id) {
                continue;
            }
            last_id = Some(node.id);
            match &node.attachment {
                Some(att) if graph.node(att.parent).is_some() => {
                    index.children.entry(att.parent).or_default().push(node.id);
                }
                Some(_) => {}
                None => index.roots.push(node.id),
            }
        }

        // Iterative post-order from every root; cycles are never entered
        // because no node on a cycle is reachable from a root.
        for &root in &index.roots.clone() {
            let mut stack = vec![(root, false)];
            index.depth.insert(root, 0);
            while let Some((id, expanded)) = stack.pop() {
                if expanded {
                    let own = index.edu_positions.get(&id).copied();
                    let mut ext = own.map(|p| Extent {
                        min: p,
                        max: p,
                        count: 1,
                    });
                    for child in index
                        .children
                        .get(&id)
                        .map(Vec::as_slice)
                        .unwrap_or(NO_CHILDREN)
                    {
                        if let Some(c) = index.extents.get(child).copied() {
                            ext = Some(match ext {
                                None => c,
                                Some(e) => Extent {
                                    min: e.min.min(c.min),
                                    max: e.max.max(c.max),
                                    count: e.count + c.count,
                                },
                            });
                        }
                    }
                    if let Some(e) = ext {
                        index.extents.insert(id, e);
                    }
                } else {
                    stack.push((id, true));
                    let d = index.depth[&id];
                    for &child in index
                        .children
                        .get(&id)
                        .map(Vec::as_slice)
                        .unwrap_or(NO_CHILDREN)
                    {
                        if index.depth.contains_key(&child) {
                            continue;
                        }
                        index.depth.insert(child, d + 1);
                        stack.push((child, false));
                    }
                }
            }
        }

        let extents = &index.extents;
        for kids in index.children.values_mut() {
            kids.sort_by_key(|c| {
                let e = extents.get(c);
                (
                    e.map_or(usize::MAX, |e| e.min),
                    e.map_or(usize::MAX, |e| e.max),
                    *c,
                )
            });
        }

        let mut last_id = None;
        for node in graph.nodes() {
            if last_id != Some(node.id) && !index.depth.contains_key(&node.id) {
                index.unreachable.push(node.id);
            }
            last_id = Some(node.id);
        }

        index.roots.sort_by_key(|r| {
            let e = index.extents.get(r);
            (e.map_or(usize::MAX, |e| e.min), *r)
        });
        let mut stack: Vec<NodeId> = index.roots.iter().rev().copied().collect();
        while let Some(id) = stack.pop() {
            index.preorder.push(id);
            if let Some(kids) = index.children.get(&id) {
                stack.extend(kids.iter().rev().copied());
            }
        }
        index
    }

    /// Children in text order.
    pub fn children(&self, id: NodeId) -> &[NodeId] {
        self.children
            .get(&id)
            .map(Vec::as_slice)
            .unwrap_or(NO_CHILDREN)
    }

    /// 1-based text position of an EDU node.
    pub fn edu_position(&self, id: NodeId) -> Option<usize> {
        self.edu_positions.get(&id).copied()
    }

    /// EDU node id at a 1-based text position.
    pub fn edu_at(&self, pos: usize) -> Option<NodeId> {
        pos.checked_sub(1).and_then(|i| self.edu_at.get(i)).copied()
    }

    pub fn edu_count(&self) -> usize {
        self.edu_at.len()
    }

    pub fn roots(&self) -> &[NodeId] {
        &self.roots
    }

    /// The root when the tree is single-rooted.
    pub fn root(&self) -> Option<NodeId> {
        match self.roots.as_slice() {
            [r] => Some(*r),
            _ => None,
        }
    }

    /// Nodes not reachable from any root (members of attachment cycles or
    /// hanging below them).
    pub fn unreachable(&self) -> &[NodeId] {
        &self.unreachable
    }

    /// Reachable nodes, parents before children, siblings in text order.
    pub fn preorder(&self) -> &[NodeId] {
        &self.preorder
    }

    pub fn depth(&self, id: NodeId) -> Option<usize> {
        self.depth.get(&id).copied()
    }

    /// Number of EDUs dominated by `id`.
    pub fn yield_size(&self, id: NodeId) -> usize {
        self.extents.get(&id).map_or(0, |e| e.count)
    }

    /// Smallest EDU range enclosing the yield, contiguous or not.
    pub fn yield_bounds(&self, id: NodeId) -> Option<EduRange> {
        self.extents.get(&id).map(|e| EduRange::new(e.min, e.max))
    }

    /// The yield as a range, only when it is contiguous.
    pub fn yield_range(&self, id: NodeId) -> Option<EduRange> {
        self.extents
            .get(&id)
            .filter(|e| e.count == e.max - e.min + 1)
            .map(|e| EduRange::new(e.min, e.max))
    }

    pub fn is_projective(&self, id: NodeId) -> bool {
        self.extents
            .get(&id)
            .is_none_or(|e| e.count == e.max - e.min + 1)
    }
}

/// Ancestors of `id` from its parent up to the root. Stops on cycles.
pub fn ancestors(graph: &DocumentGraph, id: NodeId) -> Vec<NodeId> {
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    seen.insert(id);
    let mut cur = graph.node(id).and_then(|n| n.parent());
    while let Some(p) = cur {
        if !seen.insert(p) || graph.node(p).is_none() {
            break;
        }
        out.push(p);
        cur = graph.node(p).and_then(|n| n.parent());
    }
    out
}

/// Lowest common ancestor of two nodes (either may be the answer).
pub fn lowest_common_ancestor(graph: &DocumentGraph, a: NodeId, b: NodeId) -> Option<NodeId> {
    let mut chain_a = vec![a];
    chain_a.extend(ancestors(graph, a));
    let mut chain_b = vec![b];
    chain_b.extend(ancestors(graph, b));
    let set_b: std::collections::HashSet<NodeId> = chain_b.into_iter().collect();
    chain_a.into_iter().find(|n| set_b.contains(n))
}
