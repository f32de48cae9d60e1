use std::collections::{BTreeSet, HashMap};

use super::aux::{AuxAnnotations, Mention};
use super::eligibility::{EligibilityTable, IndicativeLexicon};
use super::{Induced, ReviewItem};
use crate::model::{coarse_class, DocumentGraph, Signal, SignalLabel, SignalMajor};
use crate::relations::{relation_instances, RelationInstance};

/// A relation instance with the token spans of its two sides.
pub(super) struct Site {
    pub inst: RelationInstance,
    pub sat: (usize, usize),
    pub nuc: (usize, usize),
}

impl Site {
    fn class(&self) -> &str {
        coarse_class(&self.inst.relation)
    }

    fn is(&self, label: &str) -> bool {
        self.inst.relation == label
    }
}

pub(super) fn sites(graph: &DocumentGraph) -> Vec<Site> {
    relation_instances(graph)
        .into_iter()
        .filter_map(|inst| {
            let sat = graph.token_span(inst.satellite)?;
            let nuc = graph.token_span(inst.nucleus)?;
            Some(Site { inst, sat, nuc })
        })
        .collect()
}

fn inside(t: usize, span: (usize, usize)) -> bool {
    span.0 <= t && t <= span.1
}

pub(super) struct Ctx<'a> {
    pub graph: &'a DocumentGraph,
    pub aux: &'a AuxAnnotations,
    pub table: &'a EligibilityTable,
    deps: HashMap<usize, Vec<usize>>,
    pub out: Induced,
    signals: BTreeSet<Signal>,
}

impl<'a> Ctx<'a> {
    pub fn new(
        graph: &'a DocumentGraph,
        aux: &'a AuxAnnotations,
        table: &'a EligibilityTable,
    ) -> Self {
        let mut deps: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, t) in aux.tokens.iter().enumerate() {
            if let Some(h) = t.head.filter(|h| *h > 0) {
                deps.entry(h).or_default().push(i + 1);
            }
        }
        Ctx {
            graph,
            aux,
            table,
            deps,
            out: Induced::default(),
            signals: BTreeSet::new(),
        }
    }

    pub fn finish(mut self) -> Induced {
        self.out.signals = self.signals.into_iter().collect();
        self.out
    }

    fn emit(
        &mut self,
        site: &Site,
        major: SignalMajor,
        subtype: &str,
        tokens: impl IntoIterator<Item = usize>,
    ) {
        let label = SignalLabel::new(major, subtype);
        if self.table.is_eligible(&label, &site.inst.relation) {
            self.signals
                .insert(Signal::new(site.inst.edge, label, tokens));
        }
    }

    fn review(&mut self, site: &Site, kind: &str, tokens: Vec<usize>, note: String) {
        self.out.review.push(ReviewItem {
            edge: site.inst.edge,
            relation: site.inst.relation.clone(),
            kind: kind.to_string(),
            tokens,
            note,
        });
    }

    fn form(&self, t: usize) -> &str {
        self.graph.token_form(t).unwrap_or("")
    }

    fn pos(&self, t: usize) -> &str {
        self.aux.pos(t).unwrap_or("")
    }

    fn lemma(&self, t: usize) -> String {
        self.aux
            .lemma(t)
            .unwrap_or_else(|| self.form(t).to_lowercase())
    }

    fn deprel(&self, t: usize) -> &str {
        self.aux.base_deprel(t).unwrap_or("")
    }

    fn dependents(&self, t: usize) -> &[usize] {
        self.deps.get(&t).map_or(&[], Vec::as_slice)
    }

    fn dependents_with(&self, t: usize, rels: &[&str]) -> Vec<usize> {
        self.dependents(t)
            .iter()
            .copied()
            .filter(|d| rels.contains(&self.deprel(*d)))
            .collect()
    }

    fn is_punct(&self, t: usize) -> bool {
        let f = self.form(t);
        !f.is_empty()
            && f.chars()
                .all(|c| c.is_ascii_punctuation() || "“”‘’–—…".contains(c))
    }

    // Graphical

    pub fn graphical(&mut self, sites: &[Site]) {
        for site in sites {
            self.question_mark(site);
            self.enclosing_pair(site);
            self.boundary_punctuation(site);
            self.layout(site);
            self.items_in_sequence(site);
        }
    }

    fn question_mark(&mut self, site: &Site) {
        let mut marks: Vec<usize> = (site.sat.0..=site.sat.1)
            .filter(|&t| self.form(t) == "?")
            .collect();
        if marks.is_empty() {
            if let Some((a, b)) = self.aux.sentence_of(site.sat.1) {
                marks = (a..=b)
                    .filter(|&t| self.form(t) == "?" && !inside(t, site.nuc))
                    .collect();
            }
        }
        if !marks.is_empty() {
            self.emit(site, SignalMajor::Graphical, "question-mark", marks);
        }
    }

    fn enclosing_pair(&mut self, site: &Site) {
        let (a, b) = site.sat;
        if a >= b {
            return;
        }
        let (open, close) = (self.form(a), self.form(b));
        let subtype = match (open, close) {
            ("(", ")") | ("[", "]") => "parentheses",
            ("\"", "\"") | ("“", "”") | ("``", "''") | ("‘", "’") | ("'", "'") => {
                "quotation-marks"
            }
            _ => return,
        };
        self.emit(site, SignalMajor::Graphical, subtype, [a, b]);
    }

    fn boundary_punctuation(&mut self, site: &Site) {
        let (first, second) = if site.sat.0 < site.nuc.0 {
            (site.sat, site.nuc)
        } else {
            (site.nuc, site.sat)
        };
        if first.1 + 1 != second.0 {
            return;
        }
        for t in [first.1, second.0] {
            let subtype = match self.form(t) {
                ":" => "colon",
                ";" => "semicolon",
                "-" | "--" | "–" | "—" => "dash",
                _ => continue,
            };
            self.emit(site, SignalMajor::Graphical, subtype, [t]);
        }
    }

    fn layout(&mut self, site: &Site) {
        if self
            .aux
            .layout
            .iter()
            .any(|r| (r.start, r.end) == site.sat || (r.start, r.end) == site.nuc)
        {
            self.emit(site, SignalMajor::Graphical, "layout", []);
        }
    }

    fn is_list_marker(&self, t: usize) -> bool {
        let f = self.form(t);
        matches!(f, "-" | "*" | "•" | "·")
            || (f.len() <= 4
                && f.ends_with(['.', ')'])
                && f[..f.len() - 1]
                    .chars()
                    .all(|c| c.is_ascii_digit() || c.is_ascii_lowercase()))
    }

    fn items_in_sequence(&mut self, site: &Site) {
        if !site.inst.multinuclear {
            return;
        }
        let (a, b) = (site.nuc.0, site.sat.0);
        if self.is_list_marker(a) && self.is_list_marker(b) {
            self.emit(site, SignalMajor::Graphical, "items-in-sequence", [a, b]);
        }
    }

    // Syntactic and morphological

    pub fn syntactic(&mut self, sites: &[Site]) {
        for site in sites {
            self.adnominal_clause(site);
            self.reported_speech(site);
            if site.is("explanation-motivation") {
                self.imperative(site);
            }
            if site.is("contingency-condition") {
                self.conditional_modal(site);
                self.inversion(site);
            }
            if site.is("context-background") {
                self.past_perfect(site);
            }
            if site.is("joint-sequence") {
                self.tense_change(site);
            }
        }
    }

    fn adnominal_clause(&mut self, site: &Site) {
        for t in site.sat.0..=site.sat.1 {
            if self.deprel(t) != "acl" {
                continue;
            }
            let Some(h) = self.aux.head(t).filter(|h| !inside(*h, site.sat)) else {
                continue;
            };
            self.emit(site, SignalMajor::Syntactic, "modified-head", [h]);
            let mut marker = self.dependents_with(t, &["mark"]);
            marker.extend(self.dependents(t).iter().copied().filter(|d| {
                matches!(
                    self.lemma(*d).as_str(),
                    "who" | "whom" | "whose" | "which" | "that" | "where" | "when"
                ) && inside(*d, site.sat)
                    && self.deprel(*d) != "mark"
            }));
            if marker.is_empty() {
                marker.push(t);
            }
            self.emit(
                site,
                SignalMajor::Syntactic,
                "relative-or-infinitival",
                marker,
            );
        }
    }

    fn reported_speech(&mut self, site: &Site) {
        for (from, to) in [(site.nuc, site.sat), (site.sat, site.nuc)] {
            for t in from.0..=from.1 {
                if self.deprel(t) != "ccomp" || !self.aux.head(t).is_some_and(|h| inside(h, to)) {
                    continue;
                }
                let mut tokens = vec![t];
                tokens.extend(self.dependents_with(t, &["mark"]));
                self.emit(site, SignalMajor::Syntactic, "reported-speech", tokens);
            }
        }
    }

    fn imperative(&mut self, site: &Site) {
        for span in [site.nuc, site.sat] {
            for t in span.0..=span.1 {
                if self.aux.deprel(t) != Some("root") || self.pos(t) != "VB" {
                    continue;
                }
                let has_subject = !self
                    .dependents_with(t, &["nsubj", "expl", "aux"])
                    .is_empty();
                let question = self
                    .aux
                    .sentence_of(t)
                    .is_some_and(|(a, b)| (a..=b).any(|u| self.form(u) == "?"));
                if !has_subject && !question {
                    self.emit(site, SignalMajor::Morphological, "mood", [t]);
                    return;
                }
            }
        }
    }

    fn conditional_modal(&mut self, site: &Site) {
        let hit = (site.nuc.0..=site.nuc.1).find(|&t| {
            self.pos(t) == "MD"
                && matches!(
                    self.lemma(t).as_str(),
                    "would" | "could" | "might" | "should"
                )
        });
        if let Some(t) = hit {
            self.emit(site, SignalMajor::Morphological, "mood", [t]);
        }
    }

    fn inversion(&mut self, site: &Site) {
        let Some(t) = (site.sat.0..=site.sat.1).find(|&t| !self.is_punct(t)) else {
            return;
        };
        let aux_like =
            self.pos(t) == "MD" || matches!(self.lemma(t).as_str(), "have" | "be" | "do");
        if !aux_like || !matches!(self.deprel(t), "aux" | "cop" | "root") {
            return;
        }
        let clause = if self.deprel(t) == "root" {
            Some(t)
        } else {
            self.aux.head(t)
        };
        let Some(clause) = clause else { return };
        let subject_after = self
            .dependents_with(clause, &["nsubj"])
            .into_iter()
            .any(|s| s > t && inside(s, site.sat));
        if subject_after {
            self.emit(
                site,
                SignalMajor::Syntactic,
                "subject-auxiliary-inversion",
                [t],
            );
        }
    }

    fn past_perfect(&mut self, site: &Site) {
        let hit = (site.sat.0..=site.sat.1).find(|&t| {
            self.lemma(t) == "have"
                && self.pos(t) == "VBD"
                && self.deprel(t) == "aux"
                && self.aux.head(t).is_some_and(|h| self.pos(h) == "VBN")
        });
        if let Some(t) = hit {
            self.emit(site, SignalMajor::Morphological, "tense", [t]);
        }
    }

    /// Finite tense of the highest verb in a span.
    fn main_tense(&self, span: (usize, usize)) -> Option<(usize, &'static str)> {
        let top = (span.0..=span.1)
            .filter(|&t| self.aux.head(t).is_none_or(|h| !inside(h, span)))
            .find(|&t| self.pos(t).starts_with("VB") || self.pos(t) == "MD")?;
        let mut finite = vec![top];
        finite.extend(self.dependents_with(top, &["aux", "cop"]));
        finite.sort();
        finite.into_iter().find_map(|t| {
            let tense = match self.pos(t) {
                "VBD" => "past",
                "VBZ" | "VBP" => "present",
                "MD" => "modal",
                _ => return None,
            };
            Some((t, tense))
        })
    }

    fn tense_change(&mut self, site: &Site) {
        let (Some((a, ta)), Some((b, tb))) = (self.main_tense(site.nuc), self.main_tense(site.sat))
        else {
            return;
        };
        if ta != tb {
            self.review(site, "tense-change", vec![a, b], format!("{ta} -> {tb}"));
        }
    }

    // Reference and semantic

    fn is_pronoun(&self, m: &Mention) -> bool {
        m.start == m.end
            && (self.pos(m.start).starts_with("PRP")
                || PRONOUNS.contains(&self.form(m.start).to_lowercase().as_str()))
    }

    fn is_demonstrative(&self, m: &Mention) -> bool {
        DEMONSTRATIVES.contains(&self.form(m.start).to_lowercase().as_str())
    }

    /// Head token of a mention: first token whose syntactic head lies
    /// outside it, else the last token.
    fn mention_head(&self, m: &Mention) -> usize {
        m.tokens()
            .find(|&t| self.aux.head(t).is_some_and(|h| h < m.start || h > m.end))
            .unwrap_or(m.end)
    }

    pub fn reference(&mut self, sites: &[Site], with_deps: bool) {
        let mentions = self.aux.mentions.clone();
        for site in sites {
            self.anaphora(site, &mentions);
            self.repetition(site, &mentions);
            if with_deps && site.class() == "attribution" {
                self.attribution_source(site, &mentions);
            }
        }
    }

    fn anaphora(&mut self, site: &Site, mentions: &[Mention]) {
        for m in mentions.iter().filter(|m| m.within(site.sat)) {
            let subtype = if self.is_demonstrative(m) {
                "demonstrative"
            } else if self.is_pronoun(m) {
                "personal"
            } else {
                continue;
            };
            let candidates: Vec<&Mention> = mentions
                .iter()
                .filter(|a| a.chain == m.chain && a.within(site.nuc))
                .collect();
            fn pick<'m>(list: &[&'m Mention], anaphor: &Mention) -> Option<&'m Mention> {
                list.iter()
                    .filter(|a| a.end < anaphor.start)
                    .max_by_key(|a| a.start)
                    .or_else(|| list.iter().min_by_key(|a| a.start))
                    .copied()
            }
            let full: Vec<&Mention> = candidates
                .iter()
                .copied()
                .filter(|a| !self.is_pronoun(a))
                .collect();
            let Some(ante) = pick(&full, m).or_else(|| pick(&candidates, m)) else {
                continue;
            };
            let tokens: Vec<usize> = m.tokens().chain(ante.tokens()).collect();
            self.emit(site, SignalMajor::Reference, subtype, tokens);
        }
    }

    fn repetition(&mut self, site: &Site, mentions: &[Mention]) {
        let mut best: BTreeSet<(usize, String, Mention, Mention)> = BTreeSet::new();
        for a in mentions
            .iter()
            .filter(|m| m.within(site.nuc) && !self.is_pronoun(m))
        {
            for b in mentions
                .iter()
                .filter(|m| m.within(site.sat) && !self.is_pronoun(m))
            {
                if a.chain != b.chain || self.is_demonstrative(b) {
                    continue;
                }
                if self.lemma(self.mention_head(a)) != self.lemma(self.mention_head(b)) {
                    continue;
                }
                let distance = a.start.abs_diff(b.start);
                best.insert((distance, a.chain.clone(), a.clone(), b.clone()));
            }
        }
        let mut done = BTreeSet::new();
        for (_, chain, a, b) in best {
            if done.insert(chain) {
                self.emit(
                    site,
                    SignalMajor::Semantic,
                    "repetition",
                    a.tokens().chain(b.tokens()),
                );
            }
        }
    }

    fn attribution_source(&mut self, site: &Site, mentions: &[Mention]) {
        let predicate = (site.sat.0..=site.sat.1)
            .find(|&p| {
                (site.nuc.0..=site.nuc.1).any(|t| {
                    self.aux.head(t) == Some(p) && matches!(self.deprel(t), "ccomp" | "parataxis")
                })
            })
            .or_else(|| {
                (site.sat.0..=site.sat.1).find(|&t| {
                    self.pos(t).starts_with("VB")
                        && self.aux.head(t).is_none_or(|h| !inside(h, site.sat))
                })
            });
        let Some(predicate) = predicate else {
            self.review(
                site,
                "attribution-source",
                vec![],
                "no predicate found".into(),
            );
            return;
        };
        let mut cur = predicate;
        let mut subject = None;
        for _ in 0..8 {
            if let Some(&s) = self.dependents_with(cur, &["nsubj"]).first() {
                subject = Some(s);
                break;
            }
            if !matches!(self.deprel(cur), "xcomp" | "conj") {
                break;
            }
            let Some(h) = self.aux.head(cur) else { break };
            cur = h;
        }
        let Some(s) = subject else {
            self.review(
                site,
                "attribution-source",
                vec![predicate],
                "no subject for predicate".into(),
            );
            return;
        };
        let tokens: Vec<usize> = mentions
            .iter()
            .filter(|m| m.start <= s && s <= m.end && self.mention_head(m) == s)
            .min_by_key(|m| m.end - m.start)
            .map(|m| m.tokens().collect())
            .unwrap_or_else(|| {
                let mut v = vec![s];
                v.extend(self.dependents_with(s, &["compound", "flat", "det", "amod", "nmod"]));
                v
            });
        self.emit(site, SignalMajor::Semantic, "attribution-source", tokens);
    }

    // Lexical

    pub fn lexical(&mut self, sites: &[Site], lexicon: &IndicativeLexicon) {
        for site in sites {
            let mut spans = vec![site.sat];
            if self.table.nucleus_marks(&site.inst.relation) {
                spans.push(site.nuc);
            }
            for span in spans {
                for t in span.0..=span.1 {
                    if lexicon.indicates(&self.lemma(t), self.pos(t), &site.inst.relation) {
                        self.emit(site, SignalMajor::Lexical, "indicative-word", [t]);
                    }
                }
            }
        }
    }
}

const PRONOUNS: &[&str] = &[
    "i", "me", "my", "mine", "you", "your", "yours", "he", "him", "his", "she", "her", "hers",
    "it", "its", "we", "us", "our", "ours", "they", "them", "their", "theirs",
];

const DEMONSTRATIVES: &[&str] = &["this", "that", "these", "those"];
