//! Graph data model: tokens, EDUs, the primary constituent tree, secondary
//! edges and token-anchored signals.
//!
//! The primary tree is stored attachment-style: every node except the root
//! carries its parent, its nuclearity role and (for satellites and multinuc
//! children) the relation label. The constituent view (children, yields) is
//! derived on demand through [`TreeIndex`].

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::index::{EduRange, TreeIndex};
use crate::ModelError;

/// Node identifier. Identifiers introduced by binarization are negative.
pub type NodeId = i64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Token {
    /// 1-based, document-wide position.
    pub index: usize,
    pub form: String,
}

impl Token {
    pub fn new(index: usize, form: impl Into<String>) -> Self {
        Token {
            index,
            form: form.into(),
        }
    }
}

/// An elementary discourse unit with an inclusive token span.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edu {
    pub id: NodeId,
    pub first_token: usize,
    pub last_token: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Edu,
    Span,
    Multinuc,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::Edu => "edu",
            NodeKind::Span => "span",
            NodeKind::Multinuc => "multinuc",
        }
    }

    pub fn is_terminal(self) -> bool {
        self == NodeKind::Edu
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArityKind {
    Satellite,
    Multinuclear,
}

impl ArityKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ArityKind::Satellite => "satellite",
            ArityKind::Multinuclear => "multinuc",
        }
    }
}

impl FromStr for ArityKind {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "satellite" | "rst" => Ok(ArityKind::Satellite),
            "multinuc" | "multinuclear" => Ok(ArityKind::Multinuclear),
            other => Err(ModelError::Parse(format!("unknown arity kind '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Nucleus,
    Satellite,
    MultinucChild,
}

impl Role {
    /// Multinuc children count as nuclei.
    pub fn is_nuclear(self) -> bool {
        matches!(self, Role::Nucleus | Role::MultinucChild)
    }
}

/// A node's link to its parent in the primary tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Attachment {
    pub parent: NodeId,
    pub role: Role,
    /// `None` for nucleus children of a span.
    pub relation: Option<String>,
}

impl Attachment {
    pub fn nucleus(parent: NodeId) -> Self {
        Attachment {
            parent,
            role: Role::Nucleus,
            relation: None,
        }
    }

    pub fn satellite(parent: NodeId, relation: impl Into<String>) -> Self {
        Attachment {
            parent,
            role: Role::Satellite,
            relation: Some(relation.into()),
        }
    }

    pub fn multinuc_child(parent: NodeId, relation: impl Into<String>) -> Self {
        Attachment {
            parent,
            role: Role::MultinucChild,
            relation: Some(relation.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Node {
    pub id: NodeId,
    pub kind: NodeKind,
    pub attachment: Option<Attachment>,
}

impl Node {
    pub fn relation(&self) -> Option<&str> {
        self.attachment.as_ref().and_then(|a| a.relation.as_deref())
    }

    pub fn parent(&self) -> Option<NodeId> {
        self.attachment.as_ref().map(|a| a.parent)
    }

    pub fn role(&self) -> Option<Role> {
        self.attachment.as_ref().map(|a| a.role)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SecondaryEdge {
    pub source: NodeId,
    pub target: NodeId,
    pub relation: String,
}

impl SecondaryEdge {
    pub fn new(source: NodeId, target: NodeId, relation: impl Into<String>) -> Self {
        SecondaryEdge {
            source,
            target,
            relation: relation.into(),
        }
    }

    pub fn edge_ref(&self) -> EdgeRef {
        EdgeRef::Secondary {
            source: self.source,
            target: self.target,
        }
    }
}

/// Major signal classes. `Dm` and `Orphan` cover discourse markers; the
/// remaining seven are the non-DM types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignalMajor {
    Dm,
    Orphan,
    Graphical,
    Lexical,
    Morphological,
    Numerical,
    Reference,
    Semantic,
    Syntactic,
}

impl SignalMajor {
    pub const ALL: [SignalMajor; 9] = [
        SignalMajor::Dm,
        SignalMajor::Orphan,
        SignalMajor::Graphical,
        SignalMajor::Lexical,
        SignalMajor::Morphological,
        SignalMajor::Numerical,
        SignalMajor::Reference,
        SignalMajor::Semantic,
        SignalMajor::Syntactic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SignalMajor::Dm => "dm",
            SignalMajor::Orphan => "orphan",
            SignalMajor::Graphical => "graphical",
            SignalMajor::Lexical => "lexical",
            SignalMajor::Morphological => "morphological",
            SignalMajor::Numerical => "numerical",
            SignalMajor::Reference => "reference",
            SignalMajor::Semantic => "semantic",
            SignalMajor::Syntactic => "syntactic",
        }
    }

    /// Short column name used in per-type score tables.
    pub fn short_name(self) -> &'static str {
        match self {
            SignalMajor::Dm => "dm",
            SignalMajor::Orphan => "orphan",
            SignalMajor::Graphical => "graph",
            SignalMajor::Lexical => "lex",
            SignalMajor::Morphological => "morph",
            SignalMajor::Numerical => "num",
            SignalMajor::Reference => "ref",
            SignalMajor::Semantic => "sem",
            SignalMajor::Syntactic => "syn",
        }
    }
}

impl fmt::Display for SignalMajor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SignalMajor {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SignalMajor::ALL
            .iter()
            .copied()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| ModelError::Parse(format!("unknown signal type '{s}'")))
    }
}

/// Combined signal label `major:subtype`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignalLabel {
    pub major: SignalMajor,
    pub subtype: String,
}

impl SignalLabel {
    pub fn new(major: SignalMajor, subtype: impl Into<String>) -> Self {
        SignalLabel {
            major,
            subtype: subtype.into(),
        }
    }

    pub fn dm() -> Self {
        SignalLabel::new(SignalMajor::Dm, "dm")
    }

    pub fn orphan() -> Self {
        SignalLabel::new(SignalMajor::Orphan, "orphan")
    }
}

impl fmt::Display for SignalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.major, self.subtype)
    }
}

impl FromStr for SignalLabel {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (major, subtype) = s
            .split_once(':')
            .ok_or_else(|| ModelError::Parse(format!("signal label '{s}' is not major:subtype")))?;
        if subtype.is_empty() {
            return Err(ModelError::Parse(format!(
                "signal label '{s}' has an empty subtype"
            )));
        }
        Ok(SignalLabel::new(major.parse()?, subtype))
    }
}

/// Reference to the edge a signal supports.
///
/// Primary relations are referenced through the child node whose attachment
/// carries the relation; secondary edges through their endpoint pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeRef {
    Primary(NodeId),
    Secondary { source: NodeId, target: NodeId },
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeRef::Primary(id) => write!(f, "{id}"),
            EdgeRef::Secondary { source, target } => write!(f, "{source}-{target}"),
        }
    }
}

impl FromStr for EdgeRef {
    type Err = ModelError;

    /// Accepts `12` and `12-19`; negative ids are allowed (`-3--5`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ModelError::Parse(format!("malformed edge reference '{s}'"));
        if let Ok(id) = s.parse::<NodeId>() {
            return Ok(EdgeRef::Primary(id));
        }
        // The separator is the first '-' that is not a leading sign.
        let body = s.strip_prefix('-').unwrap_or(s);
        let offset = s.len() - body.len();
        let split = body.find('-').ok_or_else(bad)? + offset;
        let source = s[..split].parse::<NodeId>().map_err(|_| bad())?;
        let target = s[split + 1..].parse::<NodeId>().map_err(|_| bad())?;
        Ok(EdgeRef::Secondary { source, target })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signal {
    pub edge: EdgeRef,
    pub label: SignalLabel,
    pub tokens: BTreeSet<usize>,
}

impl Signal {
    pub fn new(edge: EdgeRef, label: SignalLabel, tokens: impl IntoIterator<Item = usize>) -> Self {
        Signal {
            edge,
            label,
            tokens: tokens.into_iter().collect(),
        }
    }
}

/// Coarse relation class: the label prefix before the first hyphen.
pub fn coarse_class(label: &str) -> &str {
    label.split('-').next().unwrap_or(label)
}

/// `same-unit` stitches parts of a discontinuous EDU and is not a discourse
/// relation.
pub fn is_pseudo_relation(label: &str) -> bool {
    label == "same-unit"
}

/// Declared relation labels and their arity kinds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationInventory {
    labels: BTreeMap<String, ArityKind>,
}

const GUM_RELATIONS: &[(&str, ArityKind)] = &[
    ("adversative-antithesis", ArityKind::Satellite),
    ("adversative-concession", ArityKind::Satellite),
    ("adversative-contrast", ArityKind::Multinuclear),
    ("attribution-negative", ArityKind::Satellite),
    ("attribution-positive", ArityKind::Satellite),
    ("causal-cause", ArityKind::Satellite),
    ("causal-result", ArityKind::Satellite),
    ("context-background", ArityKind::Satellite),
    ("context-circumstance", ArityKind::Satellite),
    ("contingency-condition", ArityKind::Satellite),
    ("elaboration-additional", ArityKind::Satellite),
    ("elaboration-attribute", ArityKind::Satellite),
    ("evaluation-comment", ArityKind::Satellite),
    ("explanation-evidence", ArityKind::Satellite),
    ("explanation-justify", ArityKind::Satellite),
    ("explanation-motivation", ArityKind::Satellite),
    ("joint-disjunction", ArityKind::Multinuclear),
    ("joint-list", ArityKind::Multinuclear),
    ("joint-other", ArityKind::Multinuclear),
    ("joint-sequence", ArityKind::Multinuclear),
    ("mode-manner", ArityKind::Satellite),
    ("mode-means", ArityKind::Satellite),
    ("organization-heading", ArityKind::Satellite),
    ("organization-phatic", ArityKind::Satellite),
    ("organization-preparation", ArityKind::Satellite),
    ("purpose-attribute", ArityKind::Satellite),
    ("purpose-goal", ArityKind::Satellite),
    ("restatement-partial", ArityKind::Satellite),
    ("restatement-repetition", ArityKind::Multinuclear),
    ("same-unit", ArityKind::Multinuclear),
    ("topic-question", ArityKind::Satellite),
    ("topic-solutionhood", ArityKind::Satellite),
];

impl RelationInventory {
    pub fn new() -> Self {
        Self::default()
    }

    /// The 32-label GUM inventory.
    pub fn gum() -> Self {
        GUM_RELATIONS
            .iter()
            .map(|&(name, kind)| (name.to_string(), kind))
            .collect()
    }

    pub fn insert(&mut self, name: impl Into<String>, kind: ArityKind) {
        self.labels.insert(name.into(), kind);
    }

    pub fn arity(&self, name: &str) -> Option<ArityKind> {
        self.labels.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.labels.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, ArityKind)> {
        self.labels.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

impl FromIterator<(String, ArityKind)> for RelationInventory {
    fn from_iter<I: IntoIterator<Item = (String, ArityKind)>>(iter: I) -> Self {
        RelationInventory {
            labels: iter.into_iter().collect(),
        }
    }
}

/// Closed vocabulary of signal labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignalVocabulary {
    types: BTreeMap<SignalMajor, BTreeSet<String>>,
}

const DEFAULT_SIGNAL_TYPES: &[(SignalMajor, &[&str])] = &[
    (SignalMajor::Dm, &["dm"]),
    (SignalMajor::Orphan, &["orphan"]),
    (
        SignalMajor::Graphical,
        &[
            "colon",
            "dash",
            "items-in-sequence",
            "layout",
            "parentheses",
            "question-mark",
            "quotation-marks",
            "semicolon",
        ],
    ),
    (
        SignalMajor::Lexical,
        &["alternate-expression", "indicative-word"],
    ),
    (SignalMajor::Morphological, &["mood", "tense"]),
    (SignalMajor::Numerical, &["same-count"]),
    (
        SignalMajor::Reference,
        &["comparative", "demonstrative", "personal", "propositional"],
    ),
    (
        SignalMajor::Semantic,
        &[
            "antonymy",
            "attribution-source",
            "lexical-chain",
            "meronymy",
            "negation",
            "repetition",
            "synonymy",
        ],
    ),
    (
        SignalMajor::Syntactic,
        &[
            "interrupted-matrix-clause",
            "modified-head",
            "nominal-modifier",
            "parallel-syntactic-construction",
            "participial-clause",
            "relative-or-infinitival",
            "reported-speech",
            "subject-auxiliary-inversion",
        ],
    ),
];

impl SignalVocabulary {
    pub fn new() -> Self {
        Self::default()
    }

    /// DM/orphan plus the seven non-DM types and their subtypes.
    pub fn standard() -> Self {
        let mut vocab = SignalVocabulary::new();
        for (major, subtypes) in DEFAULT_SIGNAL_TYPES {
            for subtype in *subtypes {
                vocab.insert(SignalLabel::new(*major, *subtype));
            }
        }
        vocab
    }

    pub fn insert(&mut self, label: SignalLabel) {
        self.types
            .entry(label.major)
            .or_default()
            .insert(label.subtype);
    }

    pub fn contains(&self, label: &SignalLabel) -> bool {
        self.types
            .get(&label.major)
            .is_some_and(|subs| subs.contains(&label.subtype))
    }

    pub fn subtypes(&self, major: SignalMajor) -> impl Iterator<Item = &str> {
        self.types
            .get(&major)
            .into_iter()
            .flatten()
            .map(String::as_str)
    }

    pub fn majors(&self) -> impl Iterator<Item = SignalMajor> + '_ {
        self.types.keys().copied()
    }

    pub fn labels(&self) -> impl Iterator<Item = SignalLabel> + '_ {
        self.types
            .iter()
            .flat_map(|(m, subs)| subs.iter().map(move |s| SignalLabel::new(*m, s.clone())))
    }
}

/// Owned constituents of a [`DocumentGraph`].
#[derive(Clone, Debug, Default)]
pub struct GraphParts {
    pub id: String,
    pub tokens: Vec<Token>,
    pub edus: Vec<Edu>,
    pub nodes: Vec<Node>,
    pub secondary: Vec<SecondaryEdge>,
    pub relations: RelationInventory,
    pub signal_types: SignalVocabulary,
    pub signals: Vec<Signal>,
}

/// One document: tokens, EDUs, primary tree, secondary edges, label
/// inventories and signals. Immutable once built.
#[derive(Clone, Debug)]
pub struct DocumentGraph {
    parts: GraphParts,
    positions: HashMap<NodeId, usize>,
    index: OnceLock<TreeIndex>,
}

impl DocumentGraph {
    /// Builds a graph without validating it; see [`crate::validate()`].
    pub fn from_parts(mut parts: GraphParts) -> Self {
        parts
            .edus
            .sort_by_key(|e| (e.first_token, e.last_token, e.id));
        parts.nodes.sort_by_key(|n| n.id);
        parts.secondary.sort();
        parts.signals.sort();
        let mut positions = HashMap::with_capacity(parts.nodes.len());
        for (pos, node) in parts.nodes.iter().enumerate() {
            positions.entry(node.id).or_insert(pos);
        }
        DocumentGraph {
            parts,
            positions,
            index: OnceLock::new(),
        }
    }

    pub fn into_parts(self) -> GraphParts {
        self.parts
    }

    pub fn parts(&self) -> &GraphParts {
        &self.parts
    }

    pub fn id(&self) -> &str {
        &self.parts.id
    }

    pub fn tokens(&self) -> &[Token] {
        &self.parts.tokens
    }

    /// EDUs in text order.
    pub fn edus(&self) -> &[Edu] {
        &self.parts.edus
    }

    /// All nodes, sorted by id.
    pub fn nodes(&self) -> &[Node] {
        &self.parts.nodes
    }

    pub fn node(&self, id: NodeId) -> Option<&Node> {
        self.positions.get(&id).map(|&p| &self.parts.nodes[p])
    }

    pub fn secondary_edges(&self) -> &[SecondaryEdge] {
        &self.parts.secondary
    }

    pub fn secondary_edge(&self, source: NodeId, target: NodeId) -> Option<&SecondaryEdge> {
        self.parts
            .secondary
            .iter()
            .find(|e| e.source == source && e.target == target)
    }

    pub fn relations(&self) -> &RelationInventory {
        &self.parts.relations
    }

    pub fn signal_types(&self) -> &SignalVocabulary {
        &self.parts.signal_types
    }

    pub fn signals(&self) -> &[Signal] {
        &self.parts.signals
    }

    pub fn token_form(&self, index: usize) -> Option<&str> {
        index
            .checked_sub(1)
            .and_then(|i| self.parts.tokens.get(i))
            .map(|t| t.form.as_str())
    }

    /// Derived constituent view, computed once.
    pub fn index(&self) -> &TreeIndex {
        self.index.get_or_init(|| TreeIndex::build(self))
    }

    /// Terminal descendants of `node` in text order.
    pub fn node_yield(&self, node: NodeId) -> Result<Vec<NodeId>, ModelError> {
        if self.node(node).is_none() {
            return Err(ModelError::UnknownNode(node));
        }
        let index = self.index();
        let mut out = Vec::new();
        let mut stack = vec![node];
        let mut seen = BTreeSet::new();
        while let Some(n) = stack.pop() {
            if !seen.insert(n) {
                continue;
            }
            match self.node(n) {
                Some(nd) if nd.kind.is_terminal() => out.push(n),
                _ => stack.extend(index.children(n).iter().copied()),
            }
        }
        out.sort_by_key(|id| index.edu_position(*id));
        Ok(out)
    }

    /// Yield of `node` as an EDU ordinal range, if contiguous.
    pub fn yield_range(&self, node: NodeId) -> Option<EduRange> {
        self.index().yield_range(node)
    }

    /// Inclusive token span covered by `node`.
    pub fn token_span(&self, node: NodeId) -> Option<(usize, usize)> {
        let range = self.yield_range(node)?;
        let first = self.parts.edus.get(range.first - 1)?;
        let last = self.parts.edus.get(range.last - 1)?;
        Some((first.first_token, last.last_token))
    }

    /// The EDU containing token `index`.
    pub fn edu_of_token(&self, index: usize) -> Option<&Edu> {
        let edus = &self.parts.edus;
        let pos = edus.partition_point(|e| e.last_token < index);
        edus.get(pos).filter(|e| e.first_token <= index)
    }

    /// Replaces the signal list, keeping everything else.
    pub fn with_signals(&self, signals: Vec<Signal>) -> DocumentGraph {
        let mut parts = self.parts.clone();
        parts.signals = signals;
        DocumentGraph::from_parts(parts)
    }

    /// Adds signals not already present (same edge, label and tokens).
    pub fn merge_signals(&self, extra: impl IntoIterator<Item = Signal>) -> DocumentGraph {
        let mut set: BTreeSet<Signal> = self.parts.signals.iter().cloned().collect();
        set.extend(extra);
        self.with_signals(set.into_iter().collect())
    }
}

impl PartialEq for DocumentGraph {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (&self.parts, &other.parts);
        a.id == b.id
            && a.tokens == b.tokens
            && a.edus == b.edus
            && a.nodes == b.nodes
            && a.secondary == b.secondary
            && a.relations == b.relations
            && a.signal_types == b.signal_types
            && a.signals == b.signals
    }
}

/// Incremental construction helper for tests, fixtures and converters.
///
/// EDUs are added in text order; their tokens are appended to the document.
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    parts: GraphParts,
}

impl GraphBuilder {
    pub fn new(id: impl Into<String>) -> Self {
        GraphBuilder {
            parts: GraphParts {
                id: id.into(),
                relations: RelationInventory::gum(),
                signal_types: SignalVocabulary::standard(),
                ..GraphParts::default()
            },
        }
    }

    pub fn relations(mut self, relations: RelationInventory) -> Self {
        self.parts.relations = relations;
        self
    }

    pub fn relation(mut self, name: &str, kind: ArityKind) -> Self {
        self.parts.relations.insert(name, kind);
        self
    }

    pub fn signal_types(mut self, vocab: SignalVocabulary) -> Self {
        self.parts.signal_types = vocab;
        self
    }

    /// Appends an EDU whose whitespace-separated tokens follow the current
    /// last token.
    pub fn edu(mut self, id: NodeId, text: &str) -> Self {
        let first = self.parts.tokens.len() + 1;
        for form in text.split_whitespace() {
            let index = self.parts.tokens.len() + 1;
            self.parts.tokens.push(Token::new(index, form));
        }
        let last = self.parts.tokens.len();
        self.parts.edus.push(Edu {
            id,
            first_token: first,
            last_token: last,
        });
        self.parts.nodes.push(Node {
            id,
            kind: NodeKind::Edu,
            attachment: None,
        });
        self
    }

    pub fn span(self, id: NodeId) -> Self {
        self.group(id, NodeKind::Span)
    }

    pub fn multinuc(self, id: NodeId) -> Self {
        self.group(id, NodeKind::Multinuc)
    }

    fn group(mut self, id: NodeId, kind: NodeKind) -> Self {
        self.parts.nodes.push(Node {
            id,
            kind,
            attachment: None,
        });
        self
    }

    fn attach(mut self, child: NodeId, attachment: Attachment) -> Self {
        if let Some(node) = self.parts.nodes.iter_mut().rev().find(|n| n.id == child) {
            node.attachment = Some(attachment);
        } else {
            panic!("attach: node {child} has not been declared");
        }
        self
    }

    pub fn nucleus(self, child: NodeId, parent: NodeId) -> Self {
        self.attach(child, Attachment::nucleus(parent))
    }

    pub fn satellite(self, child: NodeId, parent: NodeId, relation: &str) -> Self {
        self.attach(child, Attachment::satellite(parent, relation))
    }

    pub fn multinuc_child(self, child: NodeId, parent: NodeId, relation: &str) -> Self {
        self.attach(child, Attachment::multinuc_child(parent, relation))
    }

    pub fn secondary(mut self, source: NodeId, target: NodeId, relation: &str) -> Self {
        self.parts
            .secondary
            .push(SecondaryEdge::new(source, target, relation));
        self
    }

    pub fn signal(mut self, edge: EdgeRef, label: &str, tokens: &[usize]) -> Self {
        let label = label.parse().expect("signal label must be major:subtype");
        self.parts
            .signals
            .push(Signal::new(edge, label, tokens.iter().copied()));
        self
    }

    pub fn push_signal(mut self, signal: Signal) -> Self {
        self.parts.signals.push(signal);
        self
    }

    pub fn parts_mut(&mut self) -> &mut GraphParts {
        &mut self.parts
    }

    pub fn build(self) -> DocumentGraph {
        DocumentGraph::from_parts(self.parts)
    }
}
