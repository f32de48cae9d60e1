use std::collections::{BTreeMap, BTreeSet};

use crate::model::{coarse_class, SignalLabel};

/// Relation patterns: exact labels, coarse classes, or `*`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationPatterns(pub BTreeSet<String>);

impl RelationPatterns {
    pub fn matches(&self, relation: &str) -> bool {
        self.0.contains("*") || self.0.contains(relation) || self.0.contains(coarse_class(relation))
    }
}

/// Which relations may receive each induced signal type.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EligibilityTable {
    pub entries: BTreeMap<SignalLabel, RelationPatterns>,
    /// Relations whose nucleus is also searched for indicative words.
    pub nucleus_marking: RelationPatterns,
}

const DEFAULT_ELIGIBILITY: &str = include_str!("../../data/eligibility.tsv");
const DEFAULT_INDICATIVE: &str = include_str!("../../data/indicative.tsv");

impl EligibilityTable {
    /// The shipped defaults (`data/eligibility.tsv`).
    pub fn standard() -> Self {
        crate::io::parse_eligibility(DEFAULT_ELIGIBILITY).expect("bundled eligibility table parses")
    }

    pub fn insert(
        &mut self,
        label: SignalLabel,
        patterns: impl IntoIterator<Item = impl Into<String>>,
    ) {
        self.entries
            .entry(label)
            .or_default()
            .0
            .extend(patterns.into_iter().map(Into::into));
    }

    pub fn is_eligible(&self, label: &SignalLabel, relation: &str) -> bool {
        self.entries.get(label).is_some_and(|p| p.matches(relation))
    }

    pub fn nucleus_marks(&self, relation: &str) -> bool {
        self.nucleus_marking.matches(relation)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicativeEntry {
    /// Tag prefixes; "JJ" accepts JJ, JJR and JJS.
    pub pos: BTreeSet<String>,
    pub relations: RelationPatterns,
}

/// (lemma, part of speech) -> relations the word indicates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndicativeLexicon {
    pub entries: BTreeMap<String, Vec<IndicativeEntry>>,
}

impl IndicativeLexicon {
    /// The shipped defaults (`data/indicative.tsv`).
    pub fn standard() -> Self {
        crate::io::parse_indicative(DEFAULT_INDICATIVE).expect("bundled indicative lexicon parses")
    }

    pub fn insert(&mut self, lemma: &str, pos: &[&str], relations: &[&str]) {
        self.entries
            .entry(lemma.to_lowercase())
            .or_default()
            .push(IndicativeEntry {
                pos: pos.iter().map(|s| s.to_string()).collect(),
                relations: RelationPatterns(relations.iter().map(|s| s.to_string()).collect()),
            });
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Whether the word with this lemma and tag indicates `relation`.
    pub fn indicates(&self, lemma: &str, pos: &str, relation: &str) -> bool {
        self.entries.get(&lemma.to_lowercase()).is_some_and(|list| {
            list.iter().any(|e| {
                e.pos.iter().any(|p| pos.starts_with(p.as_str())) && e.relations.matches(relation)
            })
        })
    }
}
