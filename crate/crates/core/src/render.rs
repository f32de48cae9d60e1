//! Static renderings: an SVG diagram and an indented text outline.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::model::{DocumentGraph, EdgeRef, NodeId, Role, Signal, SignalMajor};
use crate::validate::{validate, ValidationPolicy, ValidationReport};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RenderError {
    #[error("cannot render invalid graph:\n{0}")]
    Invalid(ValidationReport),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderOptions {
    /// Color signal-anchored tokens by major type.
    pub highlight: bool,
    /// Width of one EDU box in pixels.
    pub box_width: u32,
    pub colors: BTreeMap<SignalMajor, String>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        let colors = [
            (SignalMajor::Dm, "#d62728"),
            (SignalMajor::Orphan, "#1f77b4"),
            (SignalMajor::Syntactic, "#17becf"),
            (SignalMajor::Semantic, "#2ca02c"),
            (SignalMajor::Lexical, "#d4b000"),
            (SignalMajor::Graphical, "#e8d77a"),
            (SignalMajor::Reference, "#888888"),
            (SignalMajor::Morphological, "#9467bd"),
            (SignalMajor::Numerical, "#8c564b"),
        ]
        .into_iter()
        .map(|(m, c)| (m, c.to_string()))
        .collect();
        RenderOptions {
            highlight: true,
            box_width: 160,
            colors,
        }
    }
}

const FONT: &str = "DejaVu Sans, Arial, Helvetica, sans-serif";
const MARGIN: i64 = 20;
const GAP: i64 = 20;
const LEVEL: i64 = 50;
const LINE: i64 = 16;
const SECONDARY: &str = "#1f77b4";

fn esc(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

struct Layout<'g> {
    graph: &'g DocumentGraph,
    box_w: i64,
    box_top: i64,
    box_h: i64,
    height: BTreeMap<NodeId, i64>,
    max_height: i64,
}

impl Layout<'_> {
    fn edu_x(&self, ordinal: usize) -> i64 {
        MARGIN + (ordinal as i64 - 1) * (self.box_w + GAP)
    }

    /// Horizontal center of a node's yield.
    fn center(&self, id: NodeId) -> i64 {
        let r = self
            .graph
            .yield_range(id)
            .expect("valid graph has contiguous yields");
        (self.edu_x(r.first) + self.edu_x(r.last) + self.box_w) / 2
    }

    /// Top of a node: its bar, or the box for EDUs.
    fn top(&self, id: NodeId) -> i64 {
        match self.height.get(&id) {
            Some(0) | None => self.box_top,
            Some(h) => MARGIN + LINE + (self.max_height - h) * LEVEL,
        }
    }
}

fn heights(graph: &DocumentGraph) -> BTreeMap<NodeId, i64> {
    let index = graph.index();
    let mut h = BTreeMap::new();
    for &id in index.preorder().iter().rev() {
        let v = index
            .children(id)
            .iter()
            .map(|c| h.get(c).copied().unwrap_or(0) + 1)
            .max()
            .unwrap_or(0);
        h.insert(id, v);
    }
    h
}

/// Splits an EDU's tokens into lines of at most `chars` characters.
fn wrap(graph: &DocumentGraph, first: usize, last: usize, chars: usize) -> Vec<Vec<usize>> {
    let mut lines: Vec<Vec<usize>> = vec![Vec::new()];
    let mut len = 0;
    for t in first..=last {
        let w = graph.token_form(t).unwrap_or("").chars().count();
        let cur = lines.last_mut().expect("non-empty");
        if !cur.is_empty() && len + 1 + w > chars {
            lines.push(vec![t]);
            len = w;
        } else {
            len += if cur.is_empty() { w } else { w + 1 };
            lines.last_mut().expect("non-empty").push(t);
        }
    }
    lines
}

fn signal_count(graph: &DocumentGraph, edge: EdgeRef) -> usize {
    graph.signals().iter().filter(|s| s.edge == edge).count()
}

/// Deterministic SVG: EDU boxes in text order, the primary tree above them
/// (satellite arrows point to their nucleus and carry the relation and a
/// signal count), secondary edges as dashed arcs below, and signal tokens
/// colored by major type.
pub fn render_svg(graph: &DocumentGraph, options: &RenderOptions) -> Result<String, RenderError> {
    let report = validate(graph, &ValidationPolicy::lenient());
    if !report.is_valid() {
        return Err(RenderError::Invalid(report));
    }
    let index = graph.index();
    let height = heights(graph);
    let max_height = height.values().copied().max().unwrap_or(0);
    let box_w = i64::from(options.box_width.max(40));
    let chars = ((box_w - 12) / 7).max(4) as usize;
    let wrapped: Vec<Vec<Vec<usize>>> = graph
        .edus()
        .iter()
        .map(|e| wrap(graph, e.first_token, e.last_token, chars))
        .collect();
    let max_lines = wrapped.iter().map(Vec::len).max().unwrap_or(1) as i64;
    let layout = Layout {
        graph,
        box_w,
        box_top: MARGIN + LINE + max_height * LEVEL + 10,
        box_h: max_lines * LINE + 12,
        height,
        max_height,
    };
    let n = graph.edus().len() as i64;
    let width = 2 * MARGIN + n * (box_w + GAP) - GAP;
    let box_bottom = layout.box_top + layout.box_h;
    let sec_count = graph.secondary_edges().len() as i64;
    let total_h = box_bottom
        + if sec_count > 0 {
            40 + 14 * sec_count + LINE
        } else {
            0
        }
        + MARGIN;

    let mut token_signals: BTreeMap<usize, Vec<&Signal>> = BTreeMap::new();
    for s in graph.signals() {
        for &t in &s.tokens {
            token_signals.entry(t).or_default().push(s);
        }
    }

    let mut o = String::new();
    let _ = writeln!(
        o,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{total_h}\" viewBox=\"0 0 {width} {total_h}\" font-family=\"{FONT}\" font-size=\"12\">"
    );
    let _ = writeln!(o, "  <title>{}</title>", esc(graph.id()));
    o.push_str("  <defs>\n");
    o.push_str("    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"7\" markerHeight=\"7\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#444444\"/></marker>\n");
    let _ = writeln!(o, "    <marker id=\"arrow-secondary\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"7\" markerHeight=\"7\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"{SECONDARY}\"/></marker>");
    o.push_str("  </defs>\n");

    // Primary tree.
    o.push_str("  <g class=\"primary\">\n");
    for &id in index.preorder() {
        let Some(node) = graph.node(id) else { continue };
        if node.kind.is_terminal() {
            continue;
        }
        let r = graph.yield_range(id).expect("valid graph");
        let y = layout.top(id);
        let (x1, x2) = (
            layout.edu_x(r.first) + box_w / 2,
            layout.edu_x(r.last) + box_w / 2,
        );
        let _ = writeln!(
            o,
            "    <line class=\"bar {}\" data-node=\"{id}\" x1=\"{x1}\" y1=\"{y}\" x2=\"{x2}\" y2=\"{y}\" stroke=\"#444444\" stroke-width=\"2\"/>",
            node.kind.as_str()
        );
        let kids = index.children(id);
        for &k in kids {
            let Some(child) = graph.node(k) else { continue };
            let (cx, cy) = (layout.center(k), layout.top(k));
            match child.role() {
                Some(Role::Nucleus) => {
                    let _ = writeln!(
                        o,
                        "    <line class=\"nucleus\" data-parent=\"{id}\" data-child=\"{k}\" x1=\"{cx}\" y1=\"{y}\" x2=\"{cx}\" y2=\"{cy}\" stroke=\"#444444\"/>"
                    );
                }
                Some(Role::MultinucChild) => {
                    let rel = child.relation().unwrap_or("");
                    let count = signal_count(graph, EdgeRef::Primary(k));
                    let _ = writeln!(
                        o,
                        "    <line class=\"multinuc-child\" data-parent=\"{id}\" data-child=\"{k}\" x1=\"{cx}\" y1=\"{y}\" x2=\"{cx}\" y2=\"{cy}\" stroke=\"#444444\"/>"
                    );
                    let ly = (y + cy) / 2;
                    let _ = writeln!(
                        o,
                        "    <text class=\"rel-label\" x=\"{}\" y=\"{ly}\" fill=\"#444444\">{}</text>",
                        cx + 4,
                        esc(rel)
                    );
                    if count > 0 {
                        let _ = writeln!(
                            o,
                            "    <text class=\"badge\" data-edge=\"{k}\" x=\"{}\" y=\"{}\" font-weight=\"bold\">{count}</text>",
                            cx + 4,
                            ly + LINE
                        );
                    }
                }
                Some(Role::Satellite) => {
                    let Some(&nuc) = kids
                        .iter()
                        .find(|c| graph.node(**c).and_then(|n| n.role()) == Some(Role::Nucleus))
                    else {
                        continue;
                    };
                    let (nx, ny) = (layout.center(nuc), layout.top(nuc));
                    let peak = cy.min(ny) - 30;
                    let rel = child.relation().unwrap_or("");
                    let _ = writeln!(
                        o,
                        "    <path class=\"satellite\" data-source=\"{k}\" data-target=\"{nuc}\" d=\"M{cx},{cy} C{cx},{peak} {nx},{peak} {nx},{ny}\" fill=\"none\" stroke=\"#444444\" marker-end=\"url(#arrow)\"/>"
                    );
                    let mx = (cx + nx) / 2;
                    let my = peak + 6;
                    let _ = writeln!(
                        o,
                        "    <text class=\"rel-label\" x=\"{mx}\" y=\"{my}\" text-anchor=\"middle\" fill=\"#444444\">{}</text>",
                        esc(rel)
                    );
                    let count = signal_count(graph, EdgeRef::Primary(k));
                    if count > 0 {
                        let _ = writeln!(
                            o,
                            "    <text class=\"badge\" data-edge=\"{k}\" x=\"{mx}\" y=\"{}\" text-anchor=\"middle\" font-weight=\"bold\">{count}</text>",
                            my - LINE + 2
                        );
                    }
                }
                None => {}
            }
        }
    }
    o.push_str("  </g>\n");

    // EDU boxes.
    o.push_str("  <g class=\"edus\">\n");
    for (i, edu) in graph.edus().iter().enumerate() {
        let x = layout.edu_x(i + 1);
        let _ = writeln!(
            o,
            "    <rect class=\"edu\" data-edu=\"{}\" x=\"{x}\" y=\"{}\" width=\"{box_w}\" height=\"{}\" rx=\"4\" fill=\"#ffffff\" stroke=\"#999999\"/>",
            edu.id, layout.box_top, layout.box_h
        );
        for (l, line) in wrapped[i].iter().enumerate() {
            let ty = layout.box_top + 6 + LINE * (l as i64 + 1) - 3;
            let _ = write!(o, "    <text x=\"{}\" y=\"{ty}\">", x + 6);
            for (j, &t) in line.iter().enumerate() {
                if j > 0 {
                    o.push(' ');
                }
                let form = esc(graph.token_form(t).unwrap_or(""));
                match token_signals.get(&t).filter(|_| options.highlight) {
                    Some(sigs) => {
                        let majors: BTreeSet<SignalMajor> =
                            sigs.iter().map(|s| s.label.major).collect();
                        let first = *majors.iter().next().expect("non-empty");
                        let color = options.colors.get(&first).map_or("#000000", String::as_str);
                        let classes: Vec<String> = majors
                            .iter()
                            .map(|m| format!("sig-{}", m.as_str()))
                            .collect();
                        let refs: Vec<String> = sigs
                            .iter()
                            .map(|s| format!("{}:{}", s.edge, s.label))
                            .collect();
                        let _ = write!(
                            o,
                            "<tspan class=\"sig {}\" data-token=\"{t}\" data-signals=\"{}\" fill=\"{color}\" font-weight=\"bold\">{form}</tspan>",
                            classes.join(" "),
                            esc(&refs.join(" "))
                        );
                    }
                    None => {
                        let _ = write!(o, "<tspan data-token=\"{t}\">{form}</tspan>");
                    }
                }
            }
            o.push_str("</text>\n");
        }
        let _ = writeln!(
            o,
            "    <text class=\"edu-id\" x=\"{}\" y=\"{}\" font-size=\"9\" fill=\"#999999\">{}</text>",
            x + box_w - 4,
            layout.box_top + 10,
            edu.id
        );
    }
    o.push_str("  </g>\n");

    // Secondary edges below the boxes.
    o.push_str("  <g class=\"secondary\">\n");
    for (k, e) in graph.secondary_edges().iter().enumerate() {
        let (sx, tx) = (layout.center(e.source), layout.center(e.target));
        let low = box_bottom + 30 + 14 * k as i64;
        let _ = writeln!(
            o,
            "    <path class=\"secedge\" data-source=\"{}\" data-target=\"{}\" d=\"M{sx},{box_bottom} C{sx},{low} {tx},{low} {tx},{box_bottom}\" fill=\"none\" stroke=\"{SECONDARY}\" stroke-dasharray=\"5,3\" marker-end=\"url(#arrow-secondary)\"/>",
            e.source, e.target
        );
        let count = signal_count(graph, e.edge_ref());
        let badge = if count > 0 {
            format!(" ({count})")
        } else {
            String::new()
        };
        let _ = writeln!(
            o,
            "    <text class=\"secedge-label\" x=\"{}\" y=\"{}\" text-anchor=\"middle\" fill=\"{SECONDARY}\">{}{badge}</text>",
            (sx + tx) / 2,
            low,
            esc(&e.relation)
        );
    }
    o.push_str("  </g>\n</svg>\n");
    Ok(o)
}

fn summarize(signals: &[&Signal]) -> String {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for s in signals {
        *counts.entry(s.label.to_string()).or_default() += 1;
    }
    counts
        .iter()
        .map(|(l, n)| format!("{l}={n}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// One line per node in tree order, indented by depth:
/// `id kind relation yield [signals]`, followed by outgoing secondary
/// edges as `-> target relation [signals]`.
pub fn render_text(graph: &DocumentGraph) -> String {
    let index = graph.index();
    let mut out = String::new();
    for &id in index.preorder() {
        let Some(node) = graph.node(id) else { continue };
        let depth = index.depth(id).unwrap_or(0);
        let rel = match &node.attachment {
            None => "root".to_string(),
            Some(a) => match a.role {
                Role::Nucleus => "span".to_string(),
                _ => a.relation.clone().unwrap_or_default(),
            },
        };
        let span = graph
            .yield_range(id)
            .map_or("?".to_string(), |r| r.to_string());
        let _ = write!(
            out,
            "{}{} {} {} {}",
            "  ".repeat(depth),
            id,
            node.kind.as_str(),
            rel,
            span
        );
        let own: Vec<&Signal> = graph
            .signals()
            .iter()
            .filter(|s| s.edge == EdgeRef::Primary(id))
            .collect();
        if !own.is_empty() {
            let _ = write!(out, " [{}]", summarize(&own));
        }
        for e in graph.secondary_edges().iter().filter(|e| e.source == id) {
            let _ = write!(out, " -> {} {}", e.target, e.relation);
            let sig: Vec<&Signal> = graph
                .signals()
                .iter()
                .filter(|s| s.edge == e.edge_ref())
                .collect();
            if !sig.is_empty() {
                let _ = write!(out, " [{}]", summarize(&sig));
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::GraphBuilder;

    fn three() -> DocumentGraph {
        GraphBuilder::new("d")
            .edu(1, "I stayed home")
            .edu(2, "because it rained")
            .edu(3, "and it was cold")
            .span(4)
            .multinuc(5)
            .nucleus(1, 4)
            .satellite(5, 4, "causal-cause")
            .multinuc_child(2, 5, "joint-list")
            .multinuc_child(3, 5, "joint-list")
            .signal(EdgeRef::Primary(3), "dm:dm", &[7])
            .build()
    }

    #[test]
    fn single_edu() {
        let g = GraphBuilder::new("d").edu(1, "Hello .").build();
        assert_eq!(render_text(&g), "1 edu root 1\n");
        let svg = render_svg(&g, &RenderOptions::default()).unwrap();
        assert_eq!(svg.matches("<rect class=\"edu\"").count(), 1);
        assert!(!svg.contains("<path class=\"satellite\""));
        assert!(!svg.contains("class=\"secedge\""));
    }

    #[test]
    fn text_outline() {
        let text = render_text(&three());
        assert_eq!(text.lines().count(), 5);
        assert_eq!(text.lines().next(), Some("4 span root 1-3"));
        assert!(text.contains("    3 edu joint-list 3 [dm:dm=1]"));
    }

    #[test]
    fn svg_is_deterministic_and_highlights() {
        let g = three();
        let a = render_svg(&g, &RenderOptions::default()).unwrap();
        assert_eq!(a, render_svg(&g, &RenderOptions::default()).unwrap());
        assert!(a.contains("data-token=\"7\" data-signals=\"3:dm:dm\""));
        let plain = render_svg(
            &g,
            &RenderOptions {
                highlight: false,
                ..RenderOptions::default()
            },
        )
        .unwrap();
        assert!(!plain.contains("class=\"sig"));
    }
}
