//! Tab-separated sidecar formats. Blank lines and lines starting with `#`
//! are ignored unless noted.

use std::collections::BTreeMap;

use super::IoError;
use crate::align::{DmLexicon, DmRelationMap, LexiconEntry};
use crate::induce::{
    AuxAnnotations, AuxToken, EligibilityTable, IndicativeLexicon, LayoutRegion, Mention,
};
use crate::model::{EdgeRef, Signal, SignalLabel};

fn err(kind: &'static str, line: usize, message: impl Into<String>) -> IoError {
    IoError::Sidecar {
        kind,
        line,
        message: message.into(),
    }
}

/// Numbered content lines: (1-based line number, fields).
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim_end_matches('\r');
        if l.trim().is_empty() || l.trim_start().starts_with('#') {
            None
        } else {
            Some((i + 1, l.split('\t').map(str::trim).collect()))
        }
    })
}

fn list(field: &str) -> Vec<String> {
    field
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

/// Connective lexicon.
///
/// ```text
/// because
/// if ... then<TAB>DISCONT
/// US<TAB>CASED
/// @modifier<TAB>two three months
/// ```
///
/// Discontinuous entries separate their two parts with `...`; flags may be
/// combined in further columns.
pub fn parse_lexicon(text: &str) -> Result<DmLexicon, IoError> {
    const KIND: &str = "lexicon";
    let mut lex = DmLexicon::default();
    for (line, fields) in content_lines(text) {
        if fields[0] == "@modifier" {
            let words = fields
                .get(1)
                .ok_or_else(|| err(KIND, line, "@modifier needs a word list"))?;
            lex.modifiers
                .extend(words.split_whitespace().map(str::to_lowercase));
            continue;
        }
        let mut discont = false;
        let mut cased = false;
        for flag in &fields[1..] {
            match *flag {
                "DISCONT" => discont = true,
                "CASED" => cased = true,
                "" => {}
                other => return Err(err(KIND, line, format!("unknown flag {other:?}"))),
            }
        }
        let parts: Vec<&str> = fields[0].split("...").map(str::trim).collect();
        let mut entry = match (discont, parts.as_slice()) {
            (false, [one]) if !one.is_empty() => LexiconEntry::contiguous(one),
            (true, [a, b]) if !a.is_empty() && !b.is_empty() => LexiconEntry::discontinuous(a, b),
            (true, _) => {
                return Err(err(
                    KIND,
                    line,
                    "DISCONT entries need two parts separated by '...'",
                ))
            }
            (false, _) => return Err(err(KIND, line, "'...' requires the DISCONT flag")),
        };
        entry.case_sensitive = cased;
        lex.insert(entry);
    }
    Ok(lex)
}

/// Connective-to-relation map: `surface<TAB>label,label`. Labels may be
/// fine relations or coarse classes.
pub fn parse_map(text: &str) -> Result<DmRelationMap, IoError> {
    const KIND: &str = "map";
    let mut map = DmRelationMap::new();
    for (line, fields) in content_lines(text) {
        let [surface, labels] = fields[..] else {
            return Err(err(KIND, line, "expected surface<TAB>labels"));
        };
        let labels = list(labels);
        if surface.is_empty() || labels.is_empty() {
            return Err(err(KIND, line, "empty surface or label list"));
        }
        map.insert(surface, labels);
    }
    Ok(map)
}

/// Eligibility table: `major:subtype<TAB>patterns`, plus an optional
/// `@nucleus-marking<TAB>patterns` line. Patterns are relation labels,
/// coarse classes or `*`.
pub fn parse_eligibility(text: &str) -> Result<EligibilityTable, IoError> {
    const KIND: &str = "eligibility";
    let mut table = EligibilityTable::default();
    for (line, fields) in content_lines(text) {
        let [key, patterns] = fields[..] else {
            return Err(err(KIND, line, "expected major:subtype<TAB>relations"));
        };
        let patterns = list(patterns);
        if key == "@nucleus-marking" {
            table.nucleus_marking.0.extend(patterns);
            continue;
        }
        let label: SignalLabel = key.parse().map_err(|e| err(KIND, line, format!("{e}")))?;
        if patterns.is_empty() {
            return Err(err(KIND, line, "empty relation list"));
        }
        table.insert(label, patterns);
    }
    Ok(table)
}

/// Indicative-word lexicon: `lemma<TAB>TAG,TAG<TAB>relations`.
pub fn parse_indicative(text: &str) -> Result<IndicativeLexicon, IoError> {
    const KIND: &str = "indicative";
    let mut lex = IndicativeLexicon::default();
    for (line, fields) in content_lines(text) {
        let [lemma, tags, rels] = fields[..] else {
            return Err(err(KIND, line, "expected lemma<TAB>tags<TAB>relations"));
        };
        let (tags, rels) = (list(tags), list(rels));
        if lemma.is_empty() || tags.is_empty() || rels.is_empty() {
            return Err(err(KIND, line, "empty lemma, tag list or relation list"));
        }
        let tags: Vec<&str> = tags.iter().map(String::as_str).collect();
        let rels: Vec<&str> = rels.iter().map(String::as_str).collect();
        lex.insert(lemma, &tags, &rels);
    }
    Ok(lex)
}

fn opt(field: &str) -> Option<String> {
    (field != "_" && !field.is_empty()).then(|| field.to_string())
}

/// Token annotation columns, one token per line:
///
/// ```text
/// # newdoc id = doc1
/// # layout<TAB>heading<TAB>1<TAB>3
/// 1<TAB>Had<TAB>have<TAB>VBD<TAB>3<TAB>aux
/// ```
///
/// Columns are index, form, lemma, tag, head, relation; `_` marks a missing
/// value. Indices run through the whole document and heads use the same
/// numbering (0 = sentence root). A blank line ends a sentence. Documents
/// are keyed by their `newdoc` id; text before any `newdoc` line is keyed
/// by the empty string. Every sentence's dependencies must form a tree.
pub fn parse_aux(text: &str) -> Result<BTreeMap<String, AuxAnnotations>, IoError> {
    const KIND: &str = "aux";
    let mut docs: BTreeMap<String, AuxAnnotations> = BTreeMap::new();
    let mut current = String::new();
    let mut sentence_start: Option<usize> = None;
    // First line of each sentence, for error messages.
    let mut sentence_lines: BTreeMap<String, Vec<usize>> = BTreeMap::new();

    let close =
        |docs: &mut BTreeMap<String, AuxAnnotations>, doc: &str, start: &mut Option<usize>| {
            if let Some(s) = start.take() {
                let aux = docs.entry(doc.to_string()).or_default();
                aux.sentences.push((s, aux.tokens.len()));
            }
        };

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim_end_matches('\r');
        if l.trim().is_empty() {
            close(&mut docs, &current, &mut sentence_start);
            continue;
        }
        if let Some(comment) = l.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(id) = comment.strip_prefix("newdoc id =") {
                close(&mut docs, &current, &mut sentence_start);
                current = id.trim().to_string();
                docs.entry(current.clone()).or_default();
            } else if let Some(rest) = comment.strip_prefix("layout") {
                let f: Vec<&str> = rest
                    .split('\t')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .collect();
                let [kind, start, end] = f[..] else {
                    return Err(err(
                        KIND,
                        line,
                        "expected # layout<TAB>kind<TAB>start<TAB>end",
                    ));
                };
                let (start, end) = (
                    start
                        .parse()
                        .map_err(|_| err(KIND, line, "bad layout start"))?,
                    end.parse().map_err(|_| err(KIND, line, "bad layout end"))?,
                );
                docs.entry(current.clone())
                    .or_default()
                    .layout
                    .push(LayoutRegion {
                        kind: kind.to_string(),
                        start,
                        end,
                    });
            }
            continue;
        }
        let f: Vec<&str> = l.split('\t').collect();
        if f.len() != 6 {
            return Err(err(
                KIND,
                line,
                format!("expected 6 columns, found {}", f.len()),
            ));
        }
        let aux = docs.entry(current.clone()).or_default();
        let index: usize = f[0]
            .trim()
            .parse()
            .map_err(|_| err(KIND, line, "bad token index"))?;
        if index != aux.tokens.len() + 1 {
            return Err(err(
                KIND,
                line,
                format!("token index {index}, expected {}", aux.tokens.len() + 1),
            ));
        }
        let head = match f[4].trim() {
            "_" | "" => None,
            h => Some(
                h.parse()
                    .map_err(|_| err(KIND, line, format!("bad head {h:?}")))?,
            ),
        };
        aux.tokens.push(AuxToken {
            form: f[1].trim().to_string(),
            lemma: opt(f[2].trim()),
            pos: opt(f[3].trim()),
            head,
            deprel: opt(f[5].trim()),
        });
        if sentence_start.is_none() {
            sentence_start = Some(index);
            sentence_lines
                .entry(current.clone())
                .or_default()
                .push(line);
        }
    }
    close(&mut docs, &current, &mut sentence_start);

    for (doc, aux) in &docs {
        if let Err((sentence, message)) = aux.check_dependency_trees() {
            let line = sentence_lines
                .get(doc)
                .and_then(|v| v.get(sentence - 1))
                .copied()
                .unwrap_or(0);
            return Err(err(KIND, line, format!("sentence {sentence}: {message}")));
        }
    }
    Ok(docs)
}

/// Coreference mentions: `doc<TAB>chain<TAB>start<TAB>end[<TAB>entity]`,
/// with inclusive token spans.
pub fn parse_coref(text: &str) -> Result<BTreeMap<String, Vec<Mention>>, IoError> {
    const KIND: &str = "coref";
    let mut out: BTreeMap<String, Vec<Mention>> = BTreeMap::new();
    for (line, f) in content_lines(text) {
        if f.len() != 4 && f.len() != 5 {
            return Err(err(
                KIND,
                line,
                "expected doc<TAB>chain<TAB>start<TAB>end[<TAB>entity]",
            ));
        }
        let start: usize = f[2].parse().map_err(|_| err(KIND, line, "bad start"))?;
        let end: usize = f[3].parse().map_err(|_| err(KIND, line, "bad end"))?;
        if start == 0 || end < start {
            return Err(err(KIND, line, format!("invalid span {start}-{end}")));
        }
        out.entry(f[0].to_string()).or_default().push(Mention {
            chain: f[1].to_string(),
            start,
            end,
            entity: f.get(4).and_then(|e| opt(e)),
        });
    }
    for v in out.values_mut() {
        v.sort();
    }
    Ok(out)
}

/// Signal list: `edge<TAB>major:subtype<TAB>tokens`, where `edge` is a node
/// id or `source-target`, and tokens are comma-separated (empty or `_` for
/// tokenless signals). `# newdoc id = X` lines switch documents; signals
/// before any such line are keyed by the empty string. Each signal keeps
/// its line number.
pub fn parse_signal_list(text: &str) -> Result<BTreeMap<String, Vec<(usize, Signal)>>, IoError> {
    const KIND: &str = "signals";
    let mut out: BTreeMap<String, Vec<(usize, Signal)>> = BTreeMap::new();
    let mut current = String::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim_end_matches('\r');
        if l.trim().is_empty() {
            continue;
        }
        if let Some(c) = l.strip_prefix('#') {
            if let Some(id) = c.trim().strip_prefix("newdoc id =") {
                current = id.trim().to_string();
                out.entry(current.clone()).or_default();
            }
            continue;
        }
        let f: Vec<&str> = l.split('\t').map(str::trim).collect();
        if f.len() != 2 && f.len() != 3 {
            return Err(err(
                KIND,
                line,
                "expected edge<TAB>major:subtype<TAB>tokens",
            ));
        }
        let edge: EdgeRef = f[0]
            .parse()
            .map_err(|_| err(KIND, line, format!("bad edge {:?}", f[0])))?;
        let label: SignalLabel = f[1].parse().map_err(|e| err(KIND, line, format!("{e}")))?;
        let mut tokens = Vec::new();
        for t in list(f.get(2).copied().unwrap_or("")) {
            if t == "_" {
                continue;
            }
            tokens.push(
                t.parse()
                    .map_err(|_| err(KIND, line, format!("bad token {t:?}")))?,
            );
        }
        out.entry(current.clone())
            .or_default()
            .push((line, Signal::new(edge, label, tokens)));
    }
    Ok(out)
}

/// Serializes signals in the signal-list format for one document.
pub fn write_signal_list(doc: &str, signals: &[Signal]) -> String {
    let mut out = format!("# newdoc id = {doc}\n");
    for s in signals {
        let tokens: Vec<String> = s.tokens.iter().map(|t| t.to_string()).collect();
        out.push_str(&format!("{}\t{}\t{}\n", s.edge, s.label, tokens.join(",")));
    }
    out
}

/// Genre overrides for statistics: `doc<TAB>genre`.
pub fn parse_genre_map(text: &str) -> Result<BTreeMap<String, String>, IoError> {
    const KIND: &str = "genre";
    let mut out = BTreeMap::new();
    for (line, f) in content_lines(text) {
        let [doc, genre] = f[..] else {
            return Err(err(KIND, line, "expected doc<TAB>genre"));
        };
        out.insert(doc.to_string(), genre.to_string());
    }
    Ok(out)
}
