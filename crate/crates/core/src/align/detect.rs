use std::collections::BTreeSet;

use super::lexicon::{DmLexicon, LexiconEntry};
use super::{DmOccurrence, DmStatus};
use crate::model::DocumentGraph;

/// Detection settings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetectOptions {
    /// Sentence token ranges (inclusive). When present, both parts of a
    /// discontinuous connective must fall in the EDUs of one sentence.
    pub sentences: Option<Vec<(usize, usize)>>,
    /// Window size in EDUs for discontinuous connectives when no sentence
    /// boundaries are known, starting at the EDU of the first part.
    pub window_edus: usize,
}

impl Default for DetectOptions {
    fn default() -> Self {
        DetectOptions {
            sentences: None,
            window_edus: 3,
        }
    }
}

struct Matcher<'a> {
    forms: Vec<String>,
    lower: Vec<String>,
    taken: Vec<bool>,
    graph: &'a DocumentGraph,
    options: &'a DetectOptions,
}

impl Matcher<'_> {
    /// Token at 1-based `pos` equals `word` under the entry's case rule.
    fn word_at(&self, pos: usize, word: &str, entry: &LexiconEntry) -> bool {
        match pos.checked_sub(1).and_then(|i| self.forms.get(i)) {
            None => false,
            Some(_) if self.taken[pos - 1] => false,
            Some(f) if entry.case_sensitive => f == word,
            Some(_) => self.lower[pos - 1] == word.to_lowercase(),
        }
    }

    fn part_at(&self, pos: usize, part: &[String], entry: &LexiconEntry) -> bool {
        part.iter()
            .enumerate()
            .all(|(i, w)| self.word_at(pos + i, w, entry))
    }

    /// Last token a discontinuous second part may end on.
    fn window_end(&self, pos: usize) -> usize {
        let edus = self.graph.edus();
        let Some(start) = edus
            .iter()
            .position(|e| e.first_token <= pos && pos <= e.last_token)
        else {
            return pos;
        };
        if let Some(sentences) = &self.options.sentences {
            if let Some(&(_, s_end)) = sentences.iter().find(|(a, b)| *a <= pos && pos <= *b) {
                // Extend to the end of the EDU containing the sentence end.
                return edus
                    .iter()
                    .find(|e| e.first_token <= s_end && s_end <= e.last_token)
                    .map_or(s_end, |e| e.last_token);
            }
        }
        let last = (start + self.options.window_edus.max(1) - 1).min(edus.len() - 1);
        edus[last].last_token
    }

    /// Best match starting at `pos`: (token positions, entry).
    fn best_at<'e>(
        &self,
        pos: usize,
        lexicon: &'e DmLexicon,
    ) -> Option<(Vec<usize>, &'e LexiconEntry)> {
        let mut best: Option<(Vec<usize>, &LexiconEntry)> = None;
        for entry in &lexicon.entries {
            let first = &entry.parts[0];
            if first.is_empty() || !self.part_at(pos, first, entry) {
                continue;
            }
            let mut tokens: Vec<usize> = (pos..pos + first.len()).collect();
            if let Some(second) = entry.parts.get(1) {
                if second.is_empty() {
                    continue;
                }
                let end = self.window_end(pos);
                let from = pos + first.len();
                let found = (from..=end.saturating_sub(second.len() - 1))
                    .find(|&j| self.part_at(j, second, entry));
                match found {
                    Some(j) => tokens.extend(j..j + second.len()),
                    None => continue,
                }
            }
            let better = match &best {
                None => true,
                Some((bt, be)) => {
                    let (len, blen) = (tokens.len(), bt.len());
                    if len != blen {
                        len > blen
                    } else if entry.is_discontinuous() != be.is_discontinuous() {
                        !entry.is_discontinuous()
                    } else {
                        // Nearest second part, then surface order.
                        (tokens.last(), entry.surface()) < (bt.last(), be.surface())
                    }
                }
            };
            if better {
                best = Some((tokens, entry));
            }
        }
        best
    }
}

/// Greedy left-to-right longest-match connective detection. Matches never
/// overlap; all returned occurrences are unassigned.
pub fn detect_dms(graph: &DocumentGraph, lexicon: &DmLexicon) -> Vec<DmOccurrence> {
    detect_dms_with(graph, lexicon, &DetectOptions::default())
}

pub fn detect_dms_with(
    graph: &DocumentGraph,
    lexicon: &DmLexicon,
    options: &DetectOptions,
) -> Vec<DmOccurrence> {
    let forms: Vec<String> = graph.tokens().iter().map(|t| t.form.clone()).collect();
    let mut m = Matcher {
        lower: forms.iter().map(|f| f.to_lowercase()).collect(),
        taken: vec![false; forms.len()],
        forms,
        graph,
        options,
    };
    let mut out = Vec::new();
    for pos in 1..=m.forms.len() {
        if m.taken[pos - 1] {
            continue;
        }
        let Some((tokens, entry)) = m.best_at(pos, lexicon) else {
            continue;
        };
        let mut all: BTreeSet<usize> = tokens.iter().copied().collect();
        for t in &tokens {
            m.taken[t - 1] = true;
        }
        // Absorb preceding modifiers inside the same EDU.
        if !lexicon.modifiers.is_empty() {
            let edu_start = graph.edu_of_token(pos).map_or(pos, |e| e.first_token);
            let mut p = pos;
            while p > edu_start && !m.taken[p - 2] && lexicon.modifiers.contains(&m.lower[p - 2]) {
                p -= 1;
                m.taken[p - 1] = true;
                all.insert(p);
            }
        }
        out.push(DmOccurrence {
            tokens: all.into_iter().collect(),
            surface: entry.surface(),
            status: DmStatus::Unassigned,
        });
    }
    out.sort_by(|a, b| a.tokens.cmp(&b.tokens));
    out
}
