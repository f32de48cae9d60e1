//! Corpus statistics: connective and secondary-edge marking rates, signal
//! type distributions, marker rankings, secondary-edge proportions and
//! relation extraction.
//!
//! Relations are counted on the n-ary tree: one per satellite attachment,
//! one per multinuclear child after the first, and one per secondary edge.

use std::collections::{BTreeMap, BTreeSet};

use crate::index::EduRange;
use crate::induce::AuxAnnotations;
use crate::model::{coarse_class, is_pseudo_relation, DocumentGraph, EdgeRef, Signal, SignalMajor};
use crate::relations::{relation_instances, RelationInstance};

/// A rectangular table rendered as TSV or aligned text.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for row in std::iter::once(&self.header).chain(&self.rows) {
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }

    /// Columns padded to equal width; numeric-looking cells right-aligned.
    pub fn to_pretty(&self) -> String {
        let cols = self.header.len();
        let mut widths = vec![0; cols];
        for row in std::iter::once(&self.header).chain(&self.rows) {
            for (i, c) in row.iter().enumerate().take(cols) {
                widths[i] = widths[i].max(c.chars().count());
            }
        }
        let mut out = String::new();
        for row in std::iter::once(&self.header).chain(&self.rows) {
            let cells: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let numeric = c.parse::<f64>().is_ok();
                    if numeric {
                        format!("{c:>w$}", w = widths[i])
                    } else {
                        format!("{c:<w$}", w = widths[i])
                    }
                })
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupBy {
    None,
    Document,
    Genre,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StatsOptions {
    /// Count `same-unit` as a relation.
    pub include_same_unit: bool,
    /// Document id -> genre, overriding the id convention.
    pub genres: BTreeMap<String, String>,
}

/// Genre of a document: the override if present, else the second
/// underscore-separated field of the id ("GUM_news_iodine" -> "news"),
/// else "other".
pub fn genre_of(doc: &str, overrides: &BTreeMap<String, String>) -> String {
    if let Some(g) = overrides.get(doc) {
        return g.clone();
    }
    doc.split('_')
        .nth(1)
        .filter(|g| !g.is_empty())
        .unwrap_or("other")
        .to_string()
}

fn counted(inst: &RelationInstance, options: &StatsOptions) -> bool {
    options.include_same_unit || !is_pseudo_relation(&inst.relation)
}

fn instances(graph: &DocumentGraph, options: &StatsOptions) -> Vec<RelationInstance> {
    relation_instances(graph)
        .into_iter()
        .filter(|i| counted(i, options))
        .collect()
}

fn signals_of<'g>(graph: &'g DocumentGraph, inst: &RelationInstance) -> Vec<&'g Signal> {
    graph
        .signals()
        .iter()
        .filter(|s| inst.edges.contains(&s.edge))
        .collect()
}

fn pct(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 * 100.0 / den as f64
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct MarkingRow {
    pub group: String,
    pub dms: usize,
    pub orphans: usize,
    pub relations: usize,
    pub secedges: usize,
}

impl MarkingRow {
    pub fn markers(&self) -> usize {
        self.dms + self.orphans
    }

    pub fn markers_per_relation(&self) -> f64 {
        if self.relations == 0 {
            0.0
        } else {
            self.markers() as f64 / self.relations as f64
        }
    }

    pub fn secedge_percent(&self) -> f64 {
        pct(self.secedges, self.relations)
    }

    fn add(&mut self, other: &MarkingRow) {
        self.dms += other.dms;
        self.orphans += other.orphans;
        self.relations += other.relations;
        self.secedges += other.secedges;
    }
}

fn marking_counts(graph: &DocumentGraph, options: &StatsOptions) -> MarkingRow {
    let count = |m: SignalMajor| {
        graph
            .signals()
            .iter()
            .filter(|s| s.label.major == m)
            .count()
    };
    let insts = instances(graph, options);
    MarkingRow {
        group: String::new(),
        dms: count(SignalMajor::Dm),
        orphans: count(SignalMajor::Orphan),
        relations: insts.len(),
        secedges: insts.iter().filter(|i| i.secondary).count(),
    }
}

/// Marker and secondary-edge counts per group, followed by an "all" row
/// when grouping. An empty corpus gives no rows.
pub fn relation_marking_stats(
    corpus: &[DocumentGraph],
    by: GroupBy,
    options: &StatsOptions,
) -> Vec<MarkingRow> {
    if corpus.is_empty() {
        return Vec::new();
    }
    let mut groups: BTreeMap<String, MarkingRow> = BTreeMap::new();
    let mut total = MarkingRow {
        group: "all".into(),
        ..MarkingRow::default()
    };
    for g in corpus {
        let row = marking_counts(g, options);
        total.add(&row);
        let key = match by {
            GroupBy::None => continue,
            GroupBy::Document => g.id().to_string(),
            GroupBy::Genre => genre_of(g.id(), &options.genres),
        };
        groups
            .entry(key.clone())
            .or_insert_with(|| MarkingRow {
                group: key,
                ..MarkingRow::default()
            })
            .add(&row);
    }
    let mut rows: Vec<MarkingRow> = groups.into_values().collect();
    rows.push(total);
    rows
}

pub fn marking_table(rows: &[MarkingRow]) -> Table {
    let mut t = Table::new(&[
        "group",
        "dms",
        "orphans",
        "dms+orphans",
        "relations",
        "markers_per_rel",
        "secedges",
        "%secedge",
    ]);
    for r in rows {
        t.rows.push(vec![
            r.group.clone(),
            r.dms.to_string(),
            r.orphans.to_string(),
            r.markers().to_string(),
            r.relations.to_string(),
            format!("{:.2}", r.markers_per_relation()),
            r.secedges.to_string(),
            format!("{:.2}", r.secedge_percent()),
        ]);
    }
    t
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistributionBy {
    Class,
    Genre,
}

/// Per group: how many relation instances carry at least one signal of
/// each major type, and any signal at all.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DistributionRow {
    pub group: String,
    pub instances: usize,
    pub by_type: BTreeMap<SignalMajor, usize>,
    pub any: usize,
}

impl DistributionRow {
    pub fn fraction(&self, major: SignalMajor) -> f64 {
        pct(
            self.by_type.get(&major).copied().unwrap_or(0),
            self.instances,
        ) / 100.0
    }

    pub fn any_fraction(&self) -> f64 {
        pct(self.any, self.instances) / 100.0
    }
}

pub fn signal_distribution(
    corpus: &[DocumentGraph],
    by: DistributionBy,
    options: &StatsOptions,
) -> Vec<DistributionRow> {
    let mut groups: BTreeMap<String, DistributionRow> = BTreeMap::new();
    for g in corpus {
        for inst in instances(g, options) {
            let key = match by {
                DistributionBy::Class => coarse_class(&inst.relation).to_string(),
                DistributionBy::Genre => genre_of(g.id(), &options.genres),
            };
            let row = groups
                .entry(key.clone())
                .or_insert_with(|| DistributionRow {
                    group: key,
                    ..DistributionRow::default()
                });
            row.instances += 1;
            let majors: BTreeSet<SignalMajor> =
                signals_of(g, &inst).iter().map(|s| s.label.major).collect();
            if !majors.is_empty() {
                row.any += 1;
            }
            for m in majors {
                *row.by_type.entry(m).or_default() += 1;
            }
        }
    }
    groups.into_values().filter(|r| r.instances > 0).collect()
}

pub fn distribution_table(rows: &[DistributionRow]) -> Table {
    let mut header = vec!["group", "relations"];
    header.extend(SignalMajor::ALL.iter().map(|m| m.short_name()));
    header.push("any");
    let mut t = Table::new(&header);
    for r in rows {
        let mut row = vec![r.group.clone(), r.instances.to_string()];
        row.extend(
            SignalMajor::ALL
                .iter()
                .map(|m| format!("{:.3}", r.fraction(*m))),
        );
        row.push(format!("{:.3}", r.any_fraction()));
        t.rows.push(row);
    }
    t
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MarkerKind {
    /// Connectives, attached or orphaned.
    Dm,
    /// Indicative words.
    Lexical,
}

impl MarkerKind {
    fn matches(self, major: SignalMajor) -> bool {
        match self {
            MarkerKind::Dm => matches!(major, SignalMajor::Dm | SignalMajor::Orphan),
            MarkerKind::Lexical => major == SignalMajor::Lexical,
        }
    }
}

/// The anchored words of a signal: lemmas when an annotation layer is
/// given, lowercased forms otherwise.
pub fn signal_surface(
    graph: &DocumentGraph,
    signal: &Signal,
    aux: Option<&AuxAnnotations>,
) -> String {
    signal
        .tokens
        .iter()
        .map(|&t| {
            aux.and_then(|a| a.token(t).and(a.lemma(t)))
                .unwrap_or_else(|| graph.token_form(t).unwrap_or("").to_lowercase())
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn relation_matches(filter: &str, relation: &str) -> bool {
    filter == relation || filter == coarse_class(relation)
}

/// Most frequent markers for a relation class (or exact label), ranked by
/// frequency then alphabetically. `aux` maps document ids to annotations
/// for lemma lookup.
pub fn top_markers(
    corpus: &[DocumentGraph],
    class: &str,
    kind: MarkerKind,
    n: usize,
    aux: Option<&BTreeMap<String, AuxAnnotations>>,
    options: &StatsOptions,
) -> Vec<(String, usize)> {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for g in corpus {
        let a = aux.and_then(|m| m.get(g.id()));
        for inst in instances(g, options) {
            if !relation_matches(class, &inst.relation) {
                continue;
            }
            for s in signals_of(g, &inst) {
                if kind.matches(s.label.major) && !s.tokens.is_empty() {
                    *counts.entry(signal_surface(g, s, a)).or_default() += 1;
                }
            }
        }
    }
    let mut ranked: Vec<(String, usize)> = counts.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked.truncate(n);
    ranked
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProportionRow {
    pub relation: String,
    pub primary: usize,
    pub secondary: usize,
}

impl ProportionRow {
    /// Share of this relation's instances realized as secondary edges.
    pub fn secondary_percent(&self) -> f64 {
        pct(self.secondary, self.primary + self.secondary)
    }
}

/// Primary and secondary counts for every fine-grained relation.
pub fn relation_counts(corpus: &[DocumentGraph], options: &StatsOptions) -> Vec<ProportionRow> {
    let mut rows: BTreeMap<String, ProportionRow> = BTreeMap::new();
    for g in corpus {
        for inst in instances(g, options) {
            let row = rows
                .entry(inst.relation.clone())
                .or_insert_with(|| ProportionRow {
                    relation: inst.relation.clone(),
                    ..ProportionRow::default()
                });
            if inst.secondary {
                row.secondary += 1;
            } else {
                row.primary += 1;
            }
        }
    }
    rows.into_values().collect()
}

/// Relations with more than `threshold` secondary instances, by descending
/// secondary share.
pub fn secondary_proportions(
    corpus: &[DocumentGraph],
    threshold: usize,
    options: &StatsOptions,
) -> Vec<ProportionRow> {
    let mut rows: Vec<ProportionRow> = relation_counts(corpus, options)
        .into_iter()
        .filter(|r| r.secondary > threshold)
        .collect();
    rows.sort_by(|a, b| {
        b.secondary_percent()
            .total_cmp(&a.secondary_percent())
            .then_with(|| a.relation.cmp(&b.relation))
    });
    rows
}

pub fn proportions_table(rows: &[ProportionRow]) -> Table {
    let mut t = Table::new(&["relation", "primary", "secondary", "%secondary"]);
    for r in rows {
        t.rows.push(vec![
            r.relation.clone(),
            r.primary.to_string(),
            r.secondary.to_string(),
            format!("{:.1}", r.secondary_percent()),
        ]);
    }
    t
}

pub fn top_markers_table(items: &[(String, usize)]) -> Table {
    let mut t = Table::new(&["item", "frequency"]);
    for (item, n) in items {
        t.rows.push(vec![item.clone(), n.to_string()]);
    }
    t
}

/// Conjunctive relation query. Signal-level conditions must all hold for
/// one signal on the instance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Query {
    /// Fine label or coarse class.
    pub relation: Option<String>,
    pub major: Option<SignalMajor>,
    pub subtype: Option<String>,
    /// Anchored words (forms or lemmas), compared case-insensitively.
    pub surface: Option<String>,
    /// Collect attribution sources and predicates.
    pub attribution: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedSignal {
    pub signal: Signal,
    pub surface: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttributionBundle {
    pub source: BTreeSet<usize>,
    pub predicate: BTreeSet<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub doc: String,
    pub edge: EdgeRef,
    pub relation: String,
    pub secondary: bool,
    pub satellite: Option<EduRange>,
    pub nucleus: Option<EduRange>,
    pub signals: Vec<MatchedSignal>,
    pub attribution: Option<AttributionBundle>,
}

/// Every relation instance matching `query`, in corpus order.
pub fn extract(
    corpus: &[DocumentGraph],
    query: &Query,
    aux: Option<&BTreeMap<String, AuxAnnotations>>,
) -> Vec<Record> {
    let options = StatsOptions {
        include_same_unit: true,
        ..StatsOptions::default()
    };
    let surface = query.surface.as_ref().map(|s| s.to_lowercase());
    let mut out = Vec::new();
    for g in corpus {
        let a = aux.and_then(|m| m.get(g.id()));
        for inst in instances(g, &options) {
            if query
                .relation
                .as_ref()
                .is_some_and(|r| !relation_matches(r, &inst.relation))
            {
                continue;
            }
            let signals: Vec<MatchedSignal> = signals_of(g, &inst)
                .into_iter()
                .map(|s| MatchedSignal {
                    signal: s.clone(),
                    surface: signal_surface(g, s, a),
                })
                .collect();
            let wants_signal =
                query.major.is_some() || query.subtype.is_some() || surface.is_some();
            let hit = signals.iter().any(|m| {
                query.major.is_none_or(|x| m.signal.label.major == x)
                    && query
                        .subtype
                        .as_ref()
                        .is_none_or(|x| &m.signal.label.subtype == x)
                    && surface.as_ref().is_none_or(|x| {
                        *x == m.surface
                            || *x
                                == m.signal
                                    .tokens
                                    .iter()
                                    .map(|&t| g.token_form(t).unwrap_or("").to_lowercase())
                                    .collect::<Vec<_>>()
                                    .join(" ")
                    })
            });
            if wants_signal && !hit {
                continue;
            }
            let attribution = query.attribution.then(|| {
                let collect = |f: &dyn Fn(&Signal) -> bool| -> BTreeSet<usize> {
                    signals
                        .iter()
                        .filter(|m| f(&m.signal))
                        .flat_map(|m| m.signal.tokens.iter().copied())
                        .collect()
                };
                AttributionBundle {
                    source: collect(&|s| {
                        s.label.major == SignalMajor::Semantic
                            && s.label.subtype == "attribution-source"
                    }),
                    predicate: collect(&|s| {
                        (s.label.major == SignalMajor::Syntactic
                            && s.label.subtype == "reported-speech")
                            || (s.label.major == SignalMajor::Lexical
                                && s.label.subtype == "indicative-word")
                    }),
                }
            });
            out.push(Record {
                doc: g.id().to_string(),
                edge: inst.edge,
                relation: inst.relation.clone(),
                secondary: inst.secondary,
                satellite: g.yield_range(inst.satellite),
                nucleus: g.yield_range(inst.nucleus),
                signals,
                attribution,
            });
        }
    }
    out
}

fn tokens_text(graph_tokens: &BTreeSet<usize>) -> String {
    graph_tokens
        .iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn extract_table(records: &[Record]) -> Table {
    let mut t = Table::new(&[
        "doc",
        "edge",
        "relation",
        "kind",
        "satellite",
        "nucleus",
        "signals",
        "source",
        "predicate",
    ]);
    let range = |r: &Option<EduRange>| r.map_or("-".to_string(), |r| r.to_string());
    for r in records {
        let signals: Vec<String> = r
            .signals
            .iter()
            .map(|m| {
                format!(
                    "{}[{}]\"{}\"",
                    m.signal.label,
                    tokens_text(&m.signal.tokens),
                    m.surface
                )
            })
            .collect();
        let (source, predicate) = r
            .attribution
            .as_ref()
            .map_or(("-".into(), "-".into()), |b| {
                (tokens_text(&b.source), tokens_text(&b.predicate))
            });
        t.rows.push(vec![
            r.doc.clone(),
            r.edge.to_string(),
            r.relation.clone(),
            if r.secondary { "secondary" } else { "primary" }.to_string(),
            range(&r.satellite),
            range(&r.nucleus),
            if signals.is_empty() {
                "-".into()
            } else {
                signals.join(" ")
            },
            source,
            predicate,
        ]);
    }
    t
}
