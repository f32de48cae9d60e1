//! Structural validation of document graphs.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::model::{ArityKind, DocumentGraph, EdgeRef, NodeId, NodeKind, Role};

/// Stable violation codes.
pub mod codes {
    pub const TOKEN_SEQUENCE: &str = "token-sequence";
    pub const EMPTY_TOKEN: &str = "empty-token";
    pub const EDU_SPAN: &str = "edu-span-invalid";
    pub const TOKEN_GAP: &str = "token-gap";
    pub const TOKEN_OVERLAP: &str = "token-overlap";
    pub const DUPLICATE_NODE: &str = "duplicate-node-id";
    pub const EDU_NODE_MISMATCH: &str = "edu-node-mismatch";
    pub const UNKNOWN_NODE: &str = "unknown-node";
    pub const EDU_AS_PARENT: &str = "edu-as-parent";
    pub const NO_ROOT: &str = "no-root";
    pub const MULTIPLE_ROOTS: &str = "multiple-roots";
    pub const ROOT_RELATION: &str = "root-has-relation";
    pub const CYCLE: &str = "cycle";
    pub const NON_PROJECTIVE: &str = "non-projective";
    pub const EMPTY_HIERARCHY: &str = "no-empty-hierarchy";
    pub const SATELLITE_TIE: &str = "satellite-tie";
    pub const MISSING_NUCLEUS: &str = "missing-nucleus";
    pub const MULTIPLE_NUCLEI: &str = "multiple-nuclei";
    pub const ROLE_RELATION: &str = "role-relation-mismatch";
    pub const ROLE_PARENT: &str = "role-parent-mismatch";
    pub const MULTINUC_LABEL: &str = "multinuc-label-mismatch";
    pub const UNKNOWN_RELATION: &str = "unknown-relation";
    pub const SECONDARY_SELF_LOOP: &str = "secondary-self-loop";
    pub const DUPLICATE_SECONDARY: &str = "duplicate-secondary-path";
    pub const SECONDARY_UNKNOWN_NODE: &str = "secondary-unknown-node";
    pub const SECONDARY_UNSIGNALED: &str = "secondary-unsignaled";
    pub const DANGLING_SIGNAL: &str = "dangling-signal-edge";
    pub const SIGNAL_TOKEN_RANGE: &str = "signal-token-out-of-range";
    pub const UNKNOWN_SIGNAL_TYPE: &str = "unknown-signal-type";
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Severity {
    /// Unresolvable references.
    Fatal,
    Error,
    Warning,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Fatal => "fatal",
            Severity::Error => "error",
            Severity::Warning => "warning",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Violation {
    pub code: &'static str,
    pub severity: Severity,
    /// Offending node ids (for secondary edges: source then target).
    pub nodes: Vec<NodeId>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t", self.severity.as_str(), self.code)?;
        let ids: Vec<String> = self.nodes.iter().map(|n| n.to_string()).collect();
        write!(f, "{}\t{}", ids.join(","), self.message)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    /// No fatal or error-level violations.
    pub fn is_valid(&self) -> bool {
        self.violations
            .iter()
            .all(|v| v.severity == Severity::Warning)
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn codes(&self) -> BTreeSet<&'static str> {
        self.violations.iter().map(|v| v.code).collect()
    }

    pub fn errors(&self) -> impl Iterator<Item = &Violation> {
        self.violations
            .iter()
            .filter(|v| v.severity != Severity::Warning)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Violation> {
        self.violations
            .iter()
            .filter(|v| v.severity == Severity::Warning)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValidationPolicy {
    /// Severity for secondary edges without any supporting signal.
    pub unsignaled_secondary: Severity,
    /// Accept nodes with one nucleus and several satellites.
    pub allow_satellite_ties: bool,
}

impl Default for ValidationPolicy {
    fn default() -> Self {
        ValidationPolicy {
            unsignaled_secondary: Severity::Error,
            allow_satellite_ties: false,
        }
    }
}

impl ValidationPolicy {
    pub fn strict() -> Self {
        Self::default()
    }

    /// Policy for partially annotated corpora: unsignaled secondary edges
    /// are warnings.
    pub fn lenient() -> Self {
        ValidationPolicy {
            unsignaled_secondary: Severity::Warning,
            ..Self::default()
        }
    }
}

struct Collector {
    out: Vec<Violation>,
}

impl Collector {
    fn push(
        &mut self,
        code: &'static str,
        severity: Severity,
        nodes: Vec<NodeId>,
        message: String,
    ) {
        self.out.push(Violation {
            code,
            severity,
            nodes,
            message,
        });
    }

    fn error(&mut self, code: &'static str, nodes: Vec<NodeId>, message: String) {
        self.push(code, Severity::Error, nodes, message);
    }
}

/// Checks every structural constraint and returns the full list of
/// violations, sorted. An empty report means the graph is valid.
pub fn validate(graph: &DocumentGraph, policy: &ValidationPolicy) -> ValidationReport {
    let mut c = Collector { out: Vec::new() };
    check_tokens(graph, &mut c);
    check_nodes(graph, &mut c);
    check_tree(graph, policy, &mut c);
    check_secondary(graph, &mut c);
    check_signals(graph, policy, &mut c);
    c.out.sort();
    c.out.dedup();
    ValidationReport { violations: c.out }
}

fn check_tokens(graph: &DocumentGraph, c: &mut Collector) {
    for (i, tok) in graph.tokens().iter().enumerate() {
        if tok.index != i + 1 {
            c.error(
                codes::TOKEN_SEQUENCE,
                vec![],
                format!("token at position {} has index {}", i + 1, tok.index),
            );
        }
        if tok.form.is_empty() {
            c.error(
                codes::EMPTY_TOKEN,
                vec![],
                format!("token {} has an empty form", i + 1),
            );
        }
    }
    let k = graph.tokens().len();
    let mut cover: Vec<Vec<NodeId>> = vec![Vec::new(); k + 1];
    for edu in graph.edus() {
        if edu.first_token == 0 || edu.first_token > edu.last_token || edu.last_token > k {
            c.error(
                codes::EDU_SPAN,
                vec![edu.id],
                format!(
                    "EDU {} spans tokens {}..{} outside 1..{}",
                    edu.id, edu.first_token, edu.last_token, k
                ),
            );
            continue;
        }
        for slot in &mut cover[edu.first_token..=edu.last_token] {
            slot.push(edu.id);
        }
    }
    let mut t = 1;
    while t <= k {
        if cover[t].is_empty() {
            let start = t;
            while t <= k && cover[t].is_empty() {
                t += 1;
            }
            c.error(
                codes::TOKEN_GAP,
                vec![],
                format!("tokens {}..{} belong to no EDU", start, t - 1),
            );
            continue;
        }
        t += 1;
    }
    let mut pairs = BTreeSet::new();
    for slot in &cover[1..] {
        for (i, a) in slot.iter().enumerate() {
            for b in &slot[i + 1..] {
                pairs.insert((*a.min(b), *a.max(b)));
            }
        }
    }
    for (a, b) in pairs {
        c.error(
            codes::TOKEN_OVERLAP,
            vec![a, b],
            format!("EDUs {a} and {b} share tokens"),
        );
    }
}

fn check_nodes(graph: &DocumentGraph, c: &mut Collector) {
    let mut seen = HashSet::new();
    for node in graph.nodes() {
        if !seen.insert(node.id) {
            c.push(
                codes::DUPLICATE_NODE,
                Severity::Fatal,
                vec![node.id],
                format!("node id {} is declared more than once", node.id),
            );
        }
    }
    let mut edu_ids = HashSet::new();
    for edu in graph.edus() {
        if !edu_ids.insert(edu.id) {
            c.push(
                codes::DUPLICATE_NODE,
                Severity::Fatal,
                vec![edu.id],
                format!("EDU id {} is declared more than once", edu.id),
            );
        }
        match graph.node(edu.id) {
            Some(n) if n.kind == NodeKind::Edu => {}
            _ => c.error(
                codes::EDU_NODE_MISMATCH,
                vec![edu.id],
                format!("EDU {} has no terminal node", edu.id),
            ),
        }
    }
    for node in graph.nodes() {
        if node.kind == NodeKind::Edu && !edu_ids.contains(&node.id) {
            c.error(
                codes::EDU_NODE_MISMATCH,
                vec![node.id],
                format!("terminal node {} has no EDU span", node.id),
            );
        }
        if let Some(att) = &node.attachment {
            match graph.node(att.parent) {
                None => c.push(
                    codes::UNKNOWN_NODE,
                    Severity::Fatal,
                    vec![node.id, att.parent],
                    format!("node {} attaches to unknown parent {}", node.id, att.parent),
                ),
                Some(p) if p.kind == NodeKind::Edu => c.error(
                    codes::EDU_AS_PARENT,
                    vec![node.id, att.parent],
                    format!("node {} attaches to EDU {}", node.id, att.parent),
                ),
                Some(_) => {}
            }
        }
    }
}

fn check_tree(graph: &DocumentGraph, policy: &ValidationPolicy, c: &mut Collector) {
    let index = graph.index();
    let inventory = graph.relations();

    match index.roots().len() {
        0 if !graph.nodes().is_empty() => c.error(
            codes::NO_ROOT,
            vec![],
            "primary tree has no root".to_string(),
        ),
        0 | 1 => {}
        _ => c.error(
            codes::MULTIPLE_ROOTS,
            index.roots().to_vec(),
            format!("primary tree has {} roots", index.roots().len()),
        ),
    }
    for &root in index.roots() {
        if let Some(node) = graph.node(root) {
            if node.relation().is_some() {
                c.error(
                    codes::ROOT_RELATION,
                    vec![root],
                    format!("root {root} carries a relation"),
                );
            }
        }
    }
    let mut cyclic: Vec<NodeId> = index
        .unreachable()
        .iter()
        .copied()
        .filter(|id| {
            graph
                .node(*id)
                .and_then(|n| n.parent())
                .is_some_and(|p| graph.node(p).is_some())
        })
        .collect();
    cyclic.sort();
    if !cyclic.is_empty() {
        c.error(
            codes::CYCLE,
            cyclic,
            "nodes are not connected to the root (attachment cycle)".to_string(),
        );
    }

    let mut seen = HashSet::new();
    for node in graph.nodes() {
        if !seen.insert(node.id) {
            continue;
        }
        if let Some(att) = &node.attachment {
            let parent_kind = graph.node(att.parent).map(|p| p.kind);
            match (&att.relation, att.role) {
                (Some(rel), _) if !inventory.contains(rel) => c.error(
                    codes::UNKNOWN_RELATION,
                    vec![node.id],
                    format!("relation '{rel}' on node {} is not declared", node.id),
                ),
                (None, Role::Nucleus) => {}
                (Some(rel), Role::Nucleus) => c.error(
                    codes::ROLE_RELATION,
                    vec![node.id],
                    format!("nucleus {} carries relation '{rel}'", node.id),
                ),
                (None, role) => c.error(
                    codes::ROLE_RELATION,
                    vec![node.id],
                    format!("{role:?} attachment of node {} has no relation", node.id),
                ),
                (Some(rel), Role::Satellite) => {
                    if inventory.arity(rel) != Some(ArityKind::Satellite) {
                        c.error(
                            codes::ROLE_RELATION,
                            vec![node.id],
                            format!("satellite {} uses multinuclear relation '{rel}'", node.id),
                        );
                    }
                }
                (Some(rel), Role::MultinucChild) => {
                    if inventory.arity(rel) != Some(ArityKind::Multinuclear) {
                        c.error(
                            codes::ROLE_RELATION,
                            vec![node.id],
                            format!("multinuc child {} uses satellite relation '{rel}'", node.id),
                        );
                    }
                }
            }
            let expected = match att.role {
                Role::Nucleus | Role::Satellite => NodeKind::Span,
                Role::MultinucChild => NodeKind::Multinuc,
            };
            if let Some(pk) = parent_kind {
                if pk != NodeKind::Edu && pk != expected {
                    c.error(
                        codes::ROLE_PARENT,
                        vec![node.id, att.parent],
                        format!(
                            "{:?} attachment of node {} under {} node {}",
                            att.role,
                            node.id,
                            pk.as_str(),
                            att.parent
                        ),
                    );
                }
            }
        }

        if node.kind.is_terminal() {
            continue;
        }
        let kids = index.children(node.id);
        if kids.len() < 2 {
            c.error(
                codes::EMPTY_HIERARCHY,
                vec![node.id],
                format!("non-terminal {} has {} child(ren)", node.id, kids.len()),
            );
        }
        let roles: Vec<(NodeId, Role, Option<&str>)> = kids
            .iter()
            .filter_map(|k| graph.node(*k))
            .filter_map(|k| {
                k.attachment
                    .as_ref()
                    .map(|a| (k.id, a.role, a.relation.as_deref()))
            })
            .collect();
        let nuclei = roles.iter().filter(|r| r.1.is_nuclear()).count();
        let satellites: Vec<NodeId> = roles
            .iter()
            .filter(|r| r.1 == Role::Satellite)
            .map(|r| r.0)
            .collect();
        if !kids.is_empty() && nuclei == 0 {
            c.error(
                codes::MISSING_NUCLEUS,
                vec![node.id],
                format!("non-terminal {} has no nucleus child", node.id),
            );
        }
        if node.kind == NodeKind::Span {
            let span_nuclei = roles.iter().filter(|r| r.1 == Role::Nucleus).count();
            if span_nuclei > 1 {
                c.error(
                    codes::MULTIPLE_NUCLEI,
                    vec![node.id],
                    format!("span {} has {span_nuclei} nucleus children", node.id),
                );
            }
            if nuclei >= 1 && satellites.len() >= 2 && !policy.allow_satellite_ties {
                let mut ids = vec![node.id];
                ids.extend(&satellites);
                c.error(
                    codes::SATELLITE_TIE,
                    ids,
                    format!("span {} has {} satellites", node.id, satellites.len()),
                );
            }
        } else {
            let labels: BTreeSet<&str> = roles.iter().filter_map(|r| r.2).collect();
            if labels.len() > 1 {
                c.error(
                    codes::MULTINUC_LABEL,
                    vec![node.id],
                    format!(
                        "multinuc {} mixes labels {}",
                        node.id,
                        labels.into_iter().collect::<Vec<_>>().join(", ")
                    ),
                );
            }
        }
    }

    for &id in index.preorder() {
        if !index.is_projective(id) {
            let b = index.yield_bounds(id).expect("reachable node with extent");
            c.error(
                codes::NON_PROJECTIVE,
                vec![id],
                format!(
                    "yield of node {id} covers {} of EDUs {b}",
                    index.yield_size(id)
                ),
            );
        }
    }
}

fn check_secondary(graph: &DocumentGraph, c: &mut Collector) {
    let inventory = graph.relations();
    let mut counts: BTreeMap<(NodeId, NodeId), usize> = BTreeMap::new();
    for edge in graph.secondary_edges() {
        let ids = vec![edge.source, edge.target];
        for end in [edge.source, edge.target] {
            if graph.node(end).is_none() {
                c.push(
                    codes::SECONDARY_UNKNOWN_NODE,
                    Severity::Fatal,
                    ids.clone(),
                    format!(
                        "secondary edge {}-{} references unknown node {end}",
                        edge.source, edge.target
                    ),
                );
            }
        }
        if edge.source == edge.target {
            c.error(
                codes::SECONDARY_SELF_LOOP,
                ids.clone(),
                format!("secondary edge connects node {} to itself", edge.source),
            );
        }
        if !inventory.contains(&edge.relation) {
            c.error(
                codes::UNKNOWN_RELATION,
                ids.clone(),
                format!(
                    "relation '{}' on secondary edge {}-{} is not declared",
                    edge.relation, edge.source, edge.target
                ),
            );
        }
        *counts.entry((edge.source, edge.target)).or_default() += 1;
    }
    for ((s, t), n) in counts {
        if n > 1 {
            c.error(
                codes::DUPLICATE_SECONDARY,
                vec![s, t],
                format!("{n} secondary edges share the path {s}-{t}"),
            );
        }
    }
}

fn check_signals(graph: &DocumentGraph, policy: &ValidationPolicy, c: &mut Collector) {
    let k = graph.tokens().len();
    let vocab = graph.signal_types();
    let secondary: HashSet<(NodeId, NodeId)> = graph
        .secondary_edges()
        .iter()
        .map(|e| (e.source, e.target))
        .collect();
    let mut supported: HashMap<(NodeId, NodeId), usize> = HashMap::new();
    for sig in graph.signals() {
        let ids = match sig.edge {
            EdgeRef::Primary(n) => vec![n],
            EdgeRef::Secondary { source, target } => vec![source, target],
        };
        let resolves = match sig.edge {
            EdgeRef::Primary(n) => graph
                .node(n)
                .and_then(|node| node.attachment.as_ref())
                .is_some_and(|a| a.role != Role::Nucleus),
            EdgeRef::Secondary { source, target } => {
                let ok = secondary.contains(&(source, target));
                if ok {
                    *supported.entry((source, target)).or_default() += 1;
                }
                ok
            }
        };
        if !resolves {
            c.push(
                codes::DANGLING_SIGNAL,
                Severity::Fatal,
                ids.clone(),
                format!(
                    "{} signal references no relation at edge {}",
                    sig.label, sig.edge
                ),
            );
        }
        if !vocab.contains(&sig.label) {
            c.error(
                codes::UNKNOWN_SIGNAL_TYPE,
                ids.clone(),
                format!("signal type {} is not declared", sig.label),
            );
        }
        let bad: Vec<String> = sig
            .tokens
            .iter()
            .filter(|&&t| t == 0 || t > k)
            .map(|t| t.to_string())
            .collect();
        if !bad.is_empty() {
            c.error(
                codes::SIGNAL_TOKEN_RANGE,
                ids,
                format!(
                    "{} signal anchors tokens {} outside 1..{k}",
                    sig.label,
                    bad.join(",")
                ),
            );
        }
    }
    for edge in graph.secondary_edges() {
        if !supported.contains_key(&(edge.source, edge.target)) {
            c.push(
                codes::SECONDARY_UNSIGNALED,
                policy.unsignaled_secondary,
                vec![edge.source, edge.target],
                format!(
                    "secondary edge {}-{} ({}) has no supporting signal",
                    edge.source, edge.target, edge.relation
                ),
            );
        }
    }
}
