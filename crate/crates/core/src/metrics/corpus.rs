use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::ops::AddAssign;

use super::{
    parseval, parseval_secondary, signal_counts, MetricsError, ParsevalCounts, SignalCounts,
};
use crate::model::{is_pseudo_relation, DocumentGraph, SignalMajor};
use crate::treeops::{binarize, extract_decisions, extract_secondary_decisions};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScoreOptions {
    /// Keep same-unit decisions in the Parseval counts.
    pub include_same_unit: bool,
}

impl Default for ScoreOptions {
    fn default() -> Self {
        ScoreOptions {
            include_same_unit: true,
        }
    }
}

/// Summable tallies for every metric.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Totals {
    pub primary: ParsevalCounts,
    pub secondary: ParsevalCounts,
    pub signals: SignalCounts,
    pub by_type: BTreeMap<SignalMajor, SignalCounts>,
}

impl AddAssign<&Totals> for Totals {
    fn add_assign(&mut self, o: &Totals) {
        self.primary += o.primary;
        self.secondary += o.secondary;
        self.signals += o.signals;
        for (m, c) in &o.by_type {
            *self.by_type.entry(*m).or_default() += *c;
        }
    }
}

impl Totals {
    /// Named metric values in a fixed order.
    pub fn metrics(&self, types: bool) -> Vec<(String, f64)> {
        let mut out = Vec::new();
        for (name, c) in [("primary", &self.primary), ("secondary", &self.secondary)] {
            let s = c.scores();
            out.push((format!("{name}.S"), s.s));
            out.push((format!("{name}.N"), s.n));
            out.push((format!("{name}.R"), s.r));
            out.push((format!("{name}.F"), s.f));
        }
        let sig = &self.signals;
        out.push(("signals.unanchored.S_P".into(), sig.s_p()));
        out.push(("signals.unanchored.S_R".into(), sig.s_r()));
        out.push(("signals.unanchored.F1".into(), sig.s_f1()));
        out.push(("signals.anchored.W_P".into(), sig.w_p()));
        out.push(("signals.anchored.W_R".into(), sig.w_r()));
        out.push(("signals.anchored.F1".into(), sig.w_f1()));
        if types {
            for major in SignalMajor::ALL {
                let c = self.by_type.get(&major).copied().unwrap_or_default();
                let t = major.short_name();
                out.push((format!("signals.{t}.S_P"), c.s_p()));
                out.push((format!("signals.{t}.S_R"), c.s_r()));
                out.push((format!("signals.{t}.S_F1"), c.s_f1()));
                out.push((format!("signals.{t}.W_P"), c.w_p()));
                out.push((format!("signals.{t}.W_R"), c.w_r()));
                out.push((format!("signals.{t}.W_F1"), c.w_f1()));
            }
        }
        out
    }

    /// Raw tallies in a fixed order.
    pub fn counts(&self) -> Vec<(String, u64)> {
        let mut out = Vec::new();
        for (name, c) in [("primary", &self.primary), ("secondary", &self.secondary)] {
            out.push((format!("counts.{name}.gold"), c.gold));
            out.push((format!("counts.{name}.pred"), c.pred));
            out.push((format!("counts.{name}.span"), c.span));
            out.push((format!("counts.{name}.nuclearity"), c.nuclearity));
            out.push((format!("counts.{name}.relation"), c.relation));
            out.push((format!("counts.{name}.full"), c.full));
        }
        let s = &self.signals;
        out.push(("counts.signals.gold".into(), s.gold));
        out.push(("counts.signals.pred".into(), s.pred));
        out.push(("counts.signals.matched".into(), s.matched));
        out.push(("counts.signals.gold_tokens".into(), s.gold_tokens));
        out.push(("counts.signals.pred_tokens".into(), s.pred_tokens));
        out.push(("counts.signals.matched_tokens".into(), s.matched_tokens));
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DocumentScore {
    pub id: String,
    pub totals: Totals,
}

fn same_tokens(gold: &DocumentGraph, pred: &DocumentGraph) -> bool {
    gold.tokens().len() == pred.tokens().len()
        && gold
            .tokens()
            .iter()
            .zip(pred.tokens())
            .all(|(a, b)| a.form == b.form)
}

fn same_segmentation(gold: &DocumentGraph, pred: &DocumentGraph) -> bool {
    gold.edus().len() == pred.edus().len()
        && gold
            .edus()
            .iter()
            .zip(pred.edus())
            .all(|(a, b)| (a.first_token, a.last_token) == (b.first_token, b.last_token))
}

/// Scores one predicted graph against its gold counterpart. Both are
/// binarized first, so n-ary and binary trees compare on equal terms.
pub fn score_document(
    gold: &DocumentGraph,
    pred: &DocumentGraph,
    options: &ScoreOptions,
) -> Result<DocumentScore, MetricsError> {
    let doc = gold.id().to_string();
    if !same_tokens(gold, pred) {
        return Err(MetricsError::TokenMismatch { doc });
    }
    if !same_segmentation(gold, pred) {
        return Err(MetricsError::Segmentation { doc });
    }
    let invalid = |side: &'static str, doc: &str| {
        let doc = doc.to_string();
        move |source| MetricsError::Invalid { doc, side, source }
    };
    let g = binarize(gold).map_err(invalid("gold", &doc))?;
    let p = binarize(pred).map_err(invalid("predicted", &doc))?;

    let mut gd = extract_decisions(&g).map_err(invalid("gold", &doc))?;
    let mut pd = extract_decisions(&p).map_err(invalid("predicted", &doc))?;
    let mut gs = extract_secondary_decisions(&g).map_err(invalid("gold", &doc))?;
    let mut ps = extract_secondary_decisions(&p).map_err(invalid("predicted", &doc))?;
    if !options.include_same_unit {
        gd.decisions.retain(|d| !is_pseudo_relation(&d.label));
        pd.decisions.retain(|d| !is_pseudo_relation(&d.label));
        gs.records.retain(|d| !is_pseudo_relation(&d.label));
        ps.records.retain(|d| !is_pseudo_relation(&d.label));
    }

    let mut totals = Totals {
        primary: parseval(&gd, &pd)?,
        secondary: parseval_secondary(&gs, &ps)?,
        signals: signal_counts(&g, &p, None),
        by_type: BTreeMap::new(),
    };
    for major in SignalMajor::ALL {
        totals
            .by_type
            .insert(major, signal_counts(&g, &p, Some(major)));
    }
    Ok(DocumentScore { id: doc, totals })
}

/// Corpus-level results: per-document scores plus bookkeeping for
/// documents that could not be paired or scored.
#[derive(Clone, Debug, Default)]
pub struct ScoreReport {
    pub documents: Vec<DocumentScore>,
    pub missing_in_pred: Vec<String>,
    pub missing_in_gold: Vec<String>,
    pub failures: Vec<(String, MetricsError)>,
}

impl ScoreReport {
    /// Pooled tallies over all scored documents.
    pub fn micro(&self) -> Totals {
        let mut t = Totals::default();
        for d in &self.documents {
            t += &d.totals;
        }
        t
    }

    /// Mean of per-document metric values.
    pub fn macro_metrics(&self, types: bool) -> Vec<(String, f64)> {
        let mut sums: Vec<(String, f64)> = Totals::default().metrics(types);
        for (_, v) in &mut sums {
            *v = 0.0;
        }
        for d in &self.documents {
            for (slot, (_, v)) in sums.iter_mut().zip(d.totals.metrics(types)) {
                slot.1 += v;
            }
        }
        let n = self.documents.len().max(1) as f64;
        for (_, v) in &mut sums {
            *v /= n;
        }
        sums
    }

    pub fn has_problems(&self) -> bool {
        !self.missing_in_gold.is_empty()
            || !self.missing_in_pred.is_empty()
            || !self.failures.is_empty()
    }

    /// `key<TAB>value` lines with stable field names.
    pub fn to_key_values(&self, per_doc: bool, types: bool) -> String {
        let mut out = String::new();
        let micro = self.micro();
        let _ = writeln!(out, "documents.scored\t{}", self.documents.len());
        let _ = writeln!(
            out,
            "documents.missing_in_pred\t{}",
            self.missing_in_pred.len()
        );
        let _ = writeln!(
            out,
            "documents.missing_in_gold\t{}",
            self.missing_in_gold.len()
        );
        let _ = writeln!(out, "documents.failed\t{}", self.failures.len());
        for (k, v) in micro.metrics(types) {
            let _ = writeln!(out, "{k}\t{v:.6}");
        }
        for (k, v) in self.macro_metrics(types) {
            let _ = writeln!(out, "macro.{k}\t{v:.6}");
        }
        for (k, v) in micro.counts() {
            let _ = writeln!(out, "{k}\t{v}");
        }
        if per_doc {
            for d in &self.documents {
                for (k, v) in d.totals.metrics(types) {
                    let _ = writeln!(out, "doc.{}.{k}\t{v:.6}", d.id);
                }
            }
        }
        out
    }

    /// Aligned human-readable table.
    pub fn to_table(&self, per_doc: bool, types: bool) -> String {
        let mut out = String::new();
        let micro = self.micro().metrics(types);
        let macro_ = self.macro_metrics(types);
        let width = micro.iter().map(|(k, _)| k.len()).max().unwrap_or(6);
        let _ = writeln!(out, "{:<width$}  {:>8}  {:>8}", "metric", "micro", "macro");
        for ((k, mi), (_, ma)) in micro.iter().zip(&macro_) {
            let _ = writeln!(out, "{k:<width$}  {:>8.4}  {:>8.4}", mi, ma);
        }
        if per_doc && !self.documents.is_empty() {
            let _ = writeln!(out);
            let _ = writeln!(
                out,
                "{:<24}  {:>6}  {:>6}  {:>6}  {:>6}  {:>6}  {:>6}  {:>6}  {:>6}",
                "document", "S", "N", "R", "F", "S_P", "S_R", "W_P", "W_R"
            );
            for d in &self.documents {
                let p = d.totals.primary.scores();
                let s = &d.totals.signals;
                let _ = writeln!(
                    out,
                    "{:<24}  {:>6.4}  {:>6.4}  {:>6.4}  {:>6.4}  {:>6.4}  {:>6.4}  {:>6.4}  {:>6.4}",
                    d.id,
                    p.s,
                    p.n,
                    p.r,
                    p.f,
                    s.s_p(),
                    s.s_r(),
                    s.w_p(),
                    s.w_r()
                );
            }
        }
        out
    }
}

/// Pairs documents by id and scores the intersection. Documents present on
/// one side only are listed in the report; per-document failures do not
/// stop the rest.
pub fn score_corpus(
    gold: &[DocumentGraph],
    pred: &[DocumentGraph],
    options: &ScoreOptions,
) -> ScoreReport {
    let pred_by_id: BTreeMap<&str, &DocumentGraph> = pred.iter().map(|g| (g.id(), g)).collect();
    let gold_ids: BTreeSet<&str> = gold.iter().map(|g| g.id()).collect();
    let mut report = ScoreReport::default();
    let mut sorted: Vec<&DocumentGraph> = gold.iter().collect();
    sorted.sort_by(|a, b| a.id().cmp(b.id()));
    for g in sorted {
        match pred_by_id.get(g.id()) {
            None => report.missing_in_pred.push(g.id().to_string()),
            Some(p) => match score_document(g, p, options) {
                Ok(s) => report.documents.push(s),
                Err(e) => report.failures.push((g.id().to_string(), e)),
            },
        }
    }
    report.missing_in_gold = pred_by_id
        .keys()
        .filter(|id| !gold_ids.contains(*id))
        .map(|id| id.to_string())
        .collect();
    report
}
