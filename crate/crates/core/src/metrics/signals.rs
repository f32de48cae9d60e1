use std::collections::{BTreeMap, BTreeSet};
use std::ops::AddAssign;

use super::assignment::max_weight_assignment;
use super::{f1, ratio};
use crate::index::EduRange;
use crate::model::{DocumentGraph, EdgeRef, Signal, SignalLabel, SignalMajor};

/// Edge identity independent of node ids: the secondary flag plus source and
/// target yields. A primary edge runs from the child to its parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeKey {
    pub secondary: bool,
    pub source: EduRange,
    pub target: EduRange,
}

pub fn edge_key(graph: &DocumentGraph, edge: EdgeRef) -> Option<EdgeKey> {
    match edge {
        EdgeRef::Primary(child) => {
            let parent = graph.node(child)?.parent()?;
            Some(EdgeKey {
                secondary: false,
                source: graph.yield_range(child)?,
                target: graph.yield_range(parent)?,
            })
        }
        EdgeRef::Secondary { source, target } => {
            graph.secondary_edge(source, target)?;
            Some(EdgeKey {
                secondary: true,
                source: graph.yield_range(source)?,
                target: graph.yield_range(target)?,
            })
        }
    }
}

/// Tallies behind S_P/S_R (signal detection) and W_P/W_R (anchoring).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SignalCounts {
    pub gold: u64,
    pub pred: u64,
    /// Sum over label-edge groups of min(|gold group|, |pred group|).
    pub matched: u64,
    pub gold_tokens: u64,
    pub pred_tokens: u64,
    /// Token overlap under the optimal gold-pred pairing.
    pub matched_tokens: u64,
}

impl SignalCounts {
    pub fn s_p(&self) -> f64 {
        ratio(self.matched, self.pred, self.gold)
    }

    pub fn s_r(&self) -> f64 {
        ratio(self.matched, self.gold, self.pred)
    }

    pub fn s_f1(&self) -> f64 {
        f1(self.s_p(), self.s_r())
    }

    pub fn w_p(&self) -> f64 {
        ratio(self.matched_tokens, self.pred_tokens, self.gold_tokens)
    }

    pub fn w_r(&self) -> f64 {
        ratio(self.matched_tokens, self.gold_tokens, self.pred_tokens)
    }

    pub fn w_f1(&self) -> f64 {
        f1(self.w_p(), self.w_r())
    }
}

impl AddAssign for SignalCounts {
    fn add_assign(&mut self, o: Self) {
        self.gold += o.gold;
        self.pred += o.pred;
        self.matched += o.matched;
        self.gold_tokens += o.gold_tokens;
        self.pred_tokens += o.pred_tokens;
        self.matched_tokens += o.matched_tokens;
    }
}

type Groups<'a> = BTreeMap<(EdgeKey, &'a SignalLabel), Vec<&'a BTreeSet<usize>>>;

/// Groups signals by (edge yields, label). Signals whose edge does not
/// resolve are returned separately; they can never match.
fn group<'a>(
    graph: &'a DocumentGraph,
    major: Option<SignalMajor>,
) -> (Groups<'a>, Vec<&'a Signal>) {
    let mut groups: Groups<'a> = BTreeMap::new();
    let mut loose = Vec::new();
    for sig in graph.signals() {
        if major.is_some_and(|m| sig.label.major != m) {
            continue;
        }
        match edge_key(graph, sig.edge) {
            Some(key) => groups
                .entry((key, &sig.label))
                .or_default()
                .push(&sig.tokens),
            None => loose.push(sig),
        }
    }
    (groups, loose)
}

/// Best total token overlap between two groups of token sets.
pub fn optimal_pair_overlap(gold: &[&BTreeSet<usize>], pred: &[&BTreeSet<usize>]) -> u64 {
    let weights: Vec<Vec<u64>> = gold
        .iter()
        .map(|g| {
            pred.iter()
                .map(|p| g.intersection(p).count() as u64)
                .collect()
        })
        .collect();
    max_weight_assignment(&weights).0
}

/// Signal counts for two graphs over the same tokens and EDUs, optionally
/// restricted to one major type.
pub fn signal_counts(
    gold: &DocumentGraph,
    pred: &DocumentGraph,
    major: Option<SignalMajor>,
) -> SignalCounts {
    let (g_groups, g_loose) = group(gold, major);
    let (p_groups, p_loose) = group(pred, major);
    let mut c = SignalCounts::default();
    let token_sum = |groups: &Groups, loose: &[&Signal]| -> u64 {
        groups
            .values()
            .flatten()
            .map(|t| t.len() as u64)
            .sum::<u64>()
            + loose.iter().map(|s| s.tokens.len() as u64).sum::<u64>()
    };
    c.gold = g_groups.values().map(|v| v.len() as u64).sum::<u64>() + g_loose.len() as u64;
    c.pred = p_groups.values().map(|v| v.len() as u64).sum::<u64>() + p_loose.len() as u64;
    c.gold_tokens = token_sum(&g_groups, &g_loose);
    c.pred_tokens = token_sum(&p_groups, &p_loose);
    for (key, g) in &g_groups {
        if let Some(p) = p_groups.get(key) {
            c.matched += g.len().min(p.len()) as u64;
            c.matched_tokens += optimal_pair_overlap(g, p);
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::GraphBuilder;

    fn base() -> GraphBuilder {
        GraphBuilder::new("d")
            .edu(1, "We stayed in")
            .edu(2, "because it rained .")
            .span(10)
            .nucleus(1, 10)
            .satellite(2, 10, "causal-cause")
    }

    #[test]
    fn group_overlap_uses_min_of_group_sizes() {
        let gold = base()
            .signal(EdgeRef::Primary(2), "dm:dm", &[4])
            .signal(EdgeRef::Primary(2), "dm:dm", &[6])
            .build();
        let pred = base().signal(EdgeRef::Primary(2), "dm:dm", &[4]).build();
        let c = signal_counts(&gold, &pred, None);
        assert_eq!((c.s_p(), c.s_r()), (1.0, 0.5));
    }

    #[test]
    fn optimal_pairing_over_tokens() {
        let gold = base()
            .signal(EdgeRef::Primary(2), "dm:dm", &[4])
            .signal(EdgeRef::Primary(2), "dm:dm", &[6])
            .build();
        let pred = base().signal(EdgeRef::Primary(2), "dm:dm", &[4, 6]).build();
        let c = signal_counts(&gold, &pred, None);
        assert_eq!((c.w_p(), c.w_r()), (0.5, 0.5));
    }

    #[test]
    fn empty_sides_follow_convention() {
        let g = base().build();
        let c = signal_counts(&g, &g, None);
        assert_eq!((c.s_p(), c.s_r(), c.w_p()), (1.0, 1.0, 1.0));
        let with = base().signal(EdgeRef::Primary(2), "dm:dm", &[4]).build();
        let c = signal_counts(&with, &g, None);
        assert_eq!((c.s_p(), c.s_r()), (0.0, 0.0));
    }
}
