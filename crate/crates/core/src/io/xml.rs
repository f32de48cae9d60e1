use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;

use roxmltree::{Document, Node as XmlNode};

use super::IoError;
use crate::model::{
    ArityKind, Attachment, DocumentGraph, EdgeRef, Edu, GraphParts, Node, NodeId, NodeKind,
    RelationInventory, SecondaryEdge, Signal, SignalLabel, SignalMajor, SignalVocabulary, Token,
};
use crate::validate::{validate, ValidationPolicy};

pub const FORMAT_VERSION: &str = "1";

fn line_of(doc: &Document, node: XmlNode) -> usize {
    doc.text_pos_at(node.range().start).row as usize
}

struct Reader<'a, 'input> {
    doc: &'a Document<'input>,
}

impl<'a, 'input> Reader<'a, 'input> {
    fn err(&self, node: XmlNode, message: impl Into<String>) -> IoError {
        IoError::Format {
            line: line_of(self.doc, node),
            element: node.tag_name().name().to_string(),
            message: message.into(),
        }
    }

    fn attr<'n>(&self, node: XmlNode<'n, 'input>, name: &str) -> Result<&'n str, IoError> {
        node.attribute(name)
            .ok_or_else(|| self.err(node, format!("missing attribute {name:?}")))
    }

    fn id(&self, node: XmlNode, name: &str) -> Result<NodeId, IoError> {
        let raw = self.attr(node, name)?;
        raw.trim().parse().map_err(|_| {
            self.err(
                node,
                format!("attribute {name}={raw:?} is not an integer id"),
            )
        })
    }

    fn opt_id(&self, node: XmlNode, name: &str) -> Result<Option<NodeId>, IoError> {
        match node.attribute(name) {
            None | Some("") => Ok(None),
            Some(_) => self.id(node, name).map(Some),
        }
    }
}

fn elements<'a, 'input>(node: XmlNode<'a, 'input>) -> impl Iterator<Item = XmlNode<'a, 'input>> {
    node.children().filter(|n| n.is_element())
}

/// Where each element came from, for error messages after parsing.
#[derive(Default)]
struct Lines {
    nodes: BTreeMap<NodeId, usize>,
    secondary: Vec<(usize, SecondaryEdge)>,
    signals: Vec<(usize, Signal)>,
}

/// Parses a document without checking references or validating it.
/// Duplicate ids and dangling references are kept so that
/// [`crate::validate()`] can report them.
pub fn parse_document(text: &str) -> Result<DocumentGraph, IoError> {
    parse(text).map(|(g, _)| g)
}

fn parse(text: &str) -> Result<(DocumentGraph, Lines), IoError> {
    let doc = Document::parse(text).map_err(|e| IoError::Xml {
        line: e.pos().row as usize,
        message: e.to_string(),
    })?;
    let r = Reader { doc: &doc };
    let root = doc.root_element();
    if root.tag_name().name() != "erst" {
        return Err(r.err(root, "root element must be <erst>"));
    }
    match root.attribute("format-version") {
        Some(FORMAT_VERSION) => {}
        Some(v) => return Err(r.err(root, format!("unsupported format-version {v:?}"))),
        None => return Err(r.err(root, "missing attribute \"format-version\"")),
    }
    let mut parts = GraphParts {
        id: r.attr(root, "doc")?.to_string(),
        relations: RelationInventory::new(),
        signal_types: SignalVocabulary::new(),
        ..GraphParts::default()
    };
    let mut lines = Lines::default();
    let mut segments: Vec<(NodeId, usize, Vec<String>)> = Vec::new();
    // (child, parent, relname, line) resolved once all kinds are known.
    let mut links: Vec<(NodeId, NodeId, Option<String>)> = Vec::new();
    let mut seen_header = false;
    let mut seen_body = false;

    for section in elements(root) {
        match section.tag_name().name() {
            "header" if !seen_header => {
                seen_header = true;
                for block in elements(section) {
                    match block.tag_name().name() {
                        "relations" => {
                            for rel in elements(block) {
                                if rel.tag_name().name() != "rel" {
                                    return Err(r.err(rel, "expected <rel>"));
                                }
                                let name = r.attr(rel, "name")?;
                                let kind: ArityKind =
                                    r.attr(rel, "type")?.parse().map_err(|_| {
                                        r.err(rel, "type must be satellite or multinuc")
                                    })?;
                                parts.relations.insert(name, kind);
                            }
                        }
                        "sigtypes" => {
                            for sig in elements(block) {
                                if sig.tag_name().name() != "sig" {
                                    return Err(r.err(sig, "expected <sig>"));
                                }
                                let major: SignalMajor = r
                                    .attr(sig, "major")?
                                    .parse()
                                    .map_err(|_| r.err(sig, "unknown major signal type"))?;
                                for sub in r
                                    .attr(sig, "subtypes")?
                                    .split(',')
                                    .map(str::trim)
                                    .filter(|s| !s.is_empty())
                                {
                                    parts.signal_types.insert(SignalLabel::new(major, sub));
                                }
                            }
                        }
                        other => {
                            return Err(r.err(block, format!("unexpected <{other}> in header")))
                        }
                    }
                }
            }
            "body" if !seen_body => {
                seen_body = true;
                for el in elements(section) {
                    let line = line_of(&doc, el);
                    match el.tag_name().name() {
                        "segment" => {
                            let id = r.id(el, "id")?;
                            let tokens = el
                                .text()
                                .unwrap_or("")
                                .split_whitespace()
                                .map(str::to_string)
                                .collect::<Vec<_>>();
                            if tokens.is_empty() {
                                return Err(r.err(el, format!("segment {id} has no tokens")));
                            }
                            segments.push((id, line, tokens));
                            parts.nodes.push(Node {
                                id,
                                kind: NodeKind::Edu,
                                attachment: None,
                            });
                            lines.nodes.entry(id).or_insert(line);
                            if let Some(p) = r.opt_id(el, "parent")? {
                                links.push((id, p, el.attribute("relname").map(str::to_string)));
                            }
                        }
                        "group" => {
                            let id = r.id(el, "id")?;
                            let kind = match r.attr(el, "type")? {
                                "span" => NodeKind::Span,
                                "multinuc" => NodeKind::Multinuc,
                                other => {
                                    return Err(r.err(
                                        el,
                                        format!("group type {other:?} is not span or multinuc"),
                                    ))
                                }
                            };
                            parts.nodes.push(Node {
                                id,
                                kind,
                                attachment: None,
                            });
                            lines.nodes.entry(id).or_insert(line);
                            if let Some(p) = r.opt_id(el, "parent")? {
                                links.push((id, p, el.attribute("relname").map(str::to_string)));
                            }
                        }
                        "secedge" => {
                            let source = r.id(el, "source")?;
                            let target = r.id(el, "target")?;
                            if let Some(id) = el.attribute("id") {
                                if id != format!("{source}-{target}") {
                                    return Err(r.err(
                                        el,
                                        format!("id {id:?} does not match {source}-{target}"),
                                    ));
                                }
                            }
                            let e = SecondaryEdge::new(source, target, r.attr(el, "relname")?);
                            lines.secondary.push((line, e.clone()));
                            parts.secondary.push(e);
                        }
                        "signal" => {
                            let source = r.attr(el, "source")?;
                            let edge: EdgeRef = source
                                .parse()
                                .map_err(|_| r.err(el, format!("bad edge reference {source:?}")))?;
                            let major: SignalMajor = r
                                .attr(el, "type")?
                                .parse()
                                .map_err(|_| r.err(el, "unknown signal type"))?;
                            let subtype = r.attr(el, "subtype")?;
                            let mut tokens = BTreeSet::new();
                            for t in el
                                .attribute("tokens")
                                .unwrap_or("")
                                .split(',')
                                .map(str::trim)
                            {
                                if t.is_empty() {
                                    continue;
                                }
                                let i: usize = t
                                    .parse()
                                    .map_err(|_| r.err(el, format!("bad token index {t:?}")))?;
                                tokens.insert(i);
                            }
                            let s = Signal {
                                edge,
                                label: SignalLabel::new(major, subtype),
                                tokens,
                            };
                            lines.signals.push((line, s.clone()));
                            parts.signals.push(s);
                        }
                        other => return Err(r.err(el, format!("unexpected <{other}> in body"))),
                    }
                }
            }
            other => return Err(r.err(section, format!("unexpected <{other}>"))),
        }
    }

    // Tokens follow segment id order.
    segments.sort_by_key(|(id, _, _)| *id);
    for (id, _, forms) in segments {
        let first = parts.tokens.len() + 1;
        for f in forms {
            let index = parts.tokens.len() + 1;
            parts.tokens.push(Token::new(index, f));
        }
        parts.edus.push(Edu {
            id,
            first_token: first,
            last_token: parts.tokens.len(),
        });
    }

    let kinds: BTreeMap<NodeId, NodeKind> = parts.nodes.iter().map(|n| (n.id, n.kind)).collect();
    let mut attachments: BTreeMap<NodeId, Attachment> = BTreeMap::new();
    for (child, parent, relname) in links {
        let att = match relname.as_deref() {
            None | Some("") | Some("span") => Attachment::nucleus(parent),
            Some(rel) if kinds.get(&parent) == Some(&NodeKind::Multinuc) => {
                Attachment::multinuc_child(parent, rel)
            }
            Some(rel) => Attachment::satellite(parent, rel),
        };
        attachments.insert(child, att);
    }
    // Duplicate ids: the first declaration keeps the attachment.
    let mut assigned = HashSet::new();
    for n in &mut parts.nodes {
        if assigned.insert(n.id) {
            n.attachment = attachments.get(&n.id).cloned();
        }
    }
    Ok((DocumentGraph::from_parts(parts), lines))
}

/// Reference checks with element context: parents, secondary edges and
/// signal anchors must exist and labels must be declared.
fn check_references(graph: &DocumentGraph, lines: &Lines) -> Result<(), IoError> {
    let fail = |line: usize, element: &str, message: String| IoError::Format {
        line,
        element: element.to_string(),
        message,
    };
    for n in graph.nodes() {
        let line = lines.nodes.get(&n.id).copied().unwrap_or(0);
        let element = if n.kind == NodeKind::Edu {
            "segment"
        } else {
            "group"
        };
        if let Some(att) = &n.attachment {
            if graph.node(att.parent).is_none() {
                return Err(fail(
                    line,
                    element,
                    format!("node {} has unknown parent {}", n.id, att.parent),
                ));
            }
            if let Some(rel) = &att.relation {
                if !graph.relations().contains(rel) {
                    return Err(fail(
                        line,
                        element,
                        format!("relation {rel:?} is not declared"),
                    ));
                }
            }
        }
    }
    for (line, e) in &lines.secondary {
        for id in [e.source, e.target] {
            if graph.node(id).is_none() {
                return Err(fail(
                    *line,
                    "secedge",
                    format!(
                        "secondary edge {}-{} names unknown node {id}",
                        e.source, e.target
                    ),
                ));
            }
        }
        if !graph.relations().contains(&e.relation) {
            return Err(fail(
                *line,
                "secedge",
                format!("relation {:?} is not declared", e.relation),
            ));
        }
    }
    let n_tokens = graph.tokens().len();
    for (line, s) in &lines.signals {
        let exists = match s.edge {
            EdgeRef::Primary(id) => graph.node(id).is_some_and(|n| n.attachment.is_some()),
            EdgeRef::Secondary { source, target } => graph.secondary_edge(source, target).is_some(),
        };
        if !exists {
            return Err(fail(
                *line,
                "signal",
                format!("signal references missing edge {}", s.edge),
            ));
        }
        if !graph.signal_types().contains(&s.label) {
            return Err(fail(
                *line,
                "signal",
                format!("signal type {} is not declared", s.label),
            ));
        }
        if let Some(t) = s.tokens.iter().find(|t| **t == 0 || **t > n_tokens) {
            return Err(fail(
                *line,
                "signal",
                format!("token {t} is outside 1..{n_tokens}"),
            ));
        }
    }
    Ok(())
}

/// Parses, checks references and validates a document held in memory.
pub fn read_document_str(text: &str, policy: &ValidationPolicy) -> Result<DocumentGraph, IoError> {
    let (graph, lines) = parse(text)?;
    check_references(&graph, &lines)?;
    let report = validate(&graph, policy);
    if !report.is_valid() {
        return Err(IoError::Invalid {
            doc: graph.id().to_string(),
            report,
        });
    }
    Ok(graph)
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn parent_attrs(out: &mut String, node: &Node) {
    if let Some(att) = &node.attachment {
        let rel = att.relation.as_deref().unwrap_or("span");
        let _ = write!(
            out,
            " parent=\"{}\" relname=\"{}\"",
            att.parent,
            escape(rel)
        );
    }
}

/// Canonical serialization. Refuses graphs that are invalid under the
/// lenient policy, and graphs whose EDU ids do not increase in text order
/// (tokens are reassigned by segment id on reading).
pub fn write_document_string(graph: &DocumentGraph) -> Result<String, IoError> {
    let report = validate(graph, &ValidationPolicy::lenient());
    if !report.is_valid() {
        return Err(IoError::Invalid {
            doc: graph.id().to_string(),
            report,
        });
    }
    if graph.edus().windows(2).any(|w| w[0].id >= w[1].id) {
        return Err(IoError::EduOrder {
            doc: graph.id().to_string(),
        });
    }

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<erst format-version=\"{FORMAT_VERSION}\" doc=\"{}\">",
        escape(graph.id())
    );
    out.push_str("  <header>\n    <relations>\n");
    for (name, kind) in graph.relations().iter() {
        let _ = writeln!(
            out,
            "      <rel name=\"{}\" type=\"{}\"/>",
            escape(name),
            kind.as_str()
        );
    }
    out.push_str("    </relations>\n    <sigtypes>\n");
    for major in graph.signal_types().majors() {
        let subs: Vec<&str> = graph.signal_types().subtypes(major).collect();
        let _ = writeln!(
            out,
            "      <sig major=\"{}\" subtypes=\"{}\"/>",
            major.as_str(),
            escape(&subs.join(","))
        );
    }
    out.push_str("    </sigtypes>\n  </header>\n  <body>\n");

    for edu in graph.edus() {
        let Some(node) = graph.node(edu.id) else {
            continue;
        };
        let text: Vec<&str> = (edu.first_token..=edu.last_token)
            .filter_map(|i| graph.token_form(i))
            .collect();
        let _ = write!(out, "    <segment id=\"{}\"", edu.id);
        parent_attrs(&mut out, node);
        let _ = writeln!(out, ">{}</segment>", escape(&text.join(" ")));
    }
    for node in graph.nodes().iter().filter(|n| !n.kind.is_terminal()) {
        let _ = write!(
            out,
            "    <group id=\"{}\" type=\"{}\"",
            node.id,
            node.kind.as_str()
        );
        parent_attrs(&mut out, node);
        out.push_str("/>\n");
    }
    for e in graph.secondary_edges() {
        let _ = writeln!(
            out,
            "    <secedge id=\"{0}-{1}\" source=\"{0}\" target=\"{1}\" relname=\"{2}\"/>",
            e.source,
            e.target,
            escape(&e.relation)
        );
    }
    for s in graph.signals() {
        let tokens: Vec<String> = s.tokens.iter().map(|t| t.to_string()).collect();
        let _ = writeln!(
            out,
            "    <signal source=\"{}\" type=\"{}\" subtype=\"{}\" tokens=\"{}\"/>",
            s.edge,
            s.label.major.as_str(),
            escape(&s.label.subtype),
            tokens.join(",")
        );
    }
    out.push_str("  </body>\n</erst>\n");
    Ok(out)
}
