use std::collections::{BTreeMap, BTreeSet};

use crate::model::coarse_class;

/// One connective: one contiguous part, or two for discontinuous items
/// such as "if ... then".
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LexiconEntry {
    pub parts: Vec<Vec<String>>,
    /// Match letter case exactly instead of case-folding.
    pub case_sensitive: bool,
}

impl LexiconEntry {
    pub fn contiguous(surface: &str) -> Self {
        LexiconEntry {
            parts: vec![surface.split_whitespace().map(str::to_string).collect()],
            case_sensitive: false,
        }
    }

    pub fn discontinuous(first: &str, second: &str) -> Self {
        LexiconEntry {
            parts: vec![
                first.split_whitespace().map(str::to_string).collect(),
                second.split_whitespace().map(str::to_string).collect(),
            ],
            case_sensitive: false,
        }
    }

    pub fn is_discontinuous(&self) -> bool {
        self.parts.len() > 1
    }

    pub fn token_count(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    /// Normalized surface: parts joined by single spaces, case-folded unless
    /// the entry is case-sensitive.
    pub fn surface(&self) -> String {
        let s = self
            .parts
            .iter()
            .flatten()
            .map(String::as_str)
            .collect::<Vec<_>>()
            .join(" ");
        if self.case_sensitive {
            s
        } else {
            s.to_lowercase()
        }
    }
}

/// Connective lexicon for the lexicon-based detector.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DmLexicon {
    pub entries: Vec<LexiconEntry>,
    /// Words that may precede a connective and are absorbed into its
    /// occurrence ("two months later" -> "later").
    pub modifiers: BTreeSet<String>,
}

impl DmLexicon {
    pub fn new(entries: impl IntoIterator<Item = LexiconEntry>) -> Self {
        let mut lex = DmLexicon::default();
        for e in entries {
            lex.insert(e);
        }
        lex
    }

    /// Adds an entry unless one with the same surface and shape exists.
    pub fn insert(&mut self, entry: LexiconEntry) -> bool {
        if self
            .entries
            .iter()
            .any(|e| e.parts == entry.parts && e.case_sensitive == entry.case_sensitive)
        {
            return false;
        }
        self.entries.push(entry);
        true
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }
}

/// Connective surface -> compatible relation labels or coarse classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DmRelationMap {
    map: BTreeMap<String, BTreeSet<String>>,
}

impl DmRelationMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, surface: &str, labels: impl IntoIterator<Item = impl Into<String>>) {
        self.map
            .entry(normalize_surface(surface))
            .or_default()
            .extend(labels.into_iter().map(Into::into));
    }

    pub fn labels(&self, surface: &str) -> Option<&BTreeSet<String>> {
        self.map
            .get(surface)
            .or_else(|| self.map.get(&normalize_surface(surface)))
    }

    /// True when `relation` or its coarse class is listed for `surface`.
    pub fn compatible(&self, surface: &str, relation: &str) -> bool {
        self.labels(surface)
            .is_some_and(|set| set.contains(relation) || set.contains(coarse_class(relation)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &BTreeSet<String>)> {
        self.map.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Lowercases and collapses whitespace; "if ... then" becomes "if then".
pub fn normalize_surface(s: &str) -> String {
    s.split_whitespace()
        .filter(|w| *w != "...")
        .map(str::to_lowercase)
        .collect::<Vec<_>>()
        .join(" ")
}
