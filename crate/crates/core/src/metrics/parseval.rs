use std::collections::HashSet;
use std::ops::AddAssign;

use super::{ratio, MetricsError};
use crate::index::EduRange;
use crate::treeops::{DecisionSequence, Direction, Nuclearity, SecondaryDecisions};

/// Tallies behind the four Parseval precision scores.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParsevalCounts {
    pub gold: u64,
    pub pred: u64,
    /// Predicted decisions whose span occurs in gold.
    pub span: u64,
    /// ... with matching nuclearity (direction for secondary edges).
    pub nuclearity: u64,
    /// ... with matching label.
    pub relation: u64,
    /// ... with matching nuclearity and label.
    pub full: u64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParsevalScores {
    pub s: f64,
    pub n: f64,
    pub r: f64,
    pub f: f64,
}

impl ParsevalCounts {
    pub fn scores(&self) -> ParsevalScores {
        ParsevalScores {
            s: ratio(self.span, self.pred, self.gold),
            n: ratio(self.nuclearity, self.pred, self.gold),
            r: ratio(self.relation, self.pred, self.gold),
            f: ratio(self.full, self.pred, self.gold),
        }
    }
}

impl AddAssign for ParsevalCounts {
    fn add_assign(&mut self, o: Self) {
        self.gold += o.gold;
        self.pred += o.pred;
        self.span += o.span;
        self.nuclearity += o.nuclearity;
        self.relation += o.relation;
        self.full += o.full;
    }
}

fn tally<S, N, L>(gold: &[(S, N, L)], pred: &[(S, N, L)]) -> ParsevalCounts
where
    S: Eq + std::hash::Hash + Clone,
    N: Eq + std::hash::Hash + Clone,
    L: Eq + std::hash::Hash + Clone,
{
    let spans: HashSet<&S> = gold.iter().map(|d| &d.0).collect();
    let sn: HashSet<(&S, &N)> = gold.iter().map(|d| (&d.0, &d.1)).collect();
    let sl: HashSet<(&S, &L)> = gold.iter().map(|d| (&d.0, &d.2)).collect();
    let all: HashSet<(&S, &N, &L)> = gold.iter().map(|d| (&d.0, &d.1, &d.2)).collect();
    let mut c = ParsevalCounts {
        gold: gold.len() as u64,
        pred: pred.len() as u64,
        ..ParsevalCounts::default()
    };
    for d in pred {
        c.span += spans.contains(&d.0) as u64;
        c.nuclearity += sn.contains(&(&d.0, &d.1)) as u64;
        c.relation += sl.contains(&(&d.0, &d.2)) as u64;
        c.full += all.contains(&(&d.0, &d.1, &d.2)) as u64;
    }
    c
}

/// Primary-tree Parseval: each predicted decision counts when a gold
/// decision has the same unordered span pair (plus nuclearity / label).
pub fn parseval(
    gold: &DecisionSequence,
    pred: &DecisionSequence,
) -> Result<ParsevalCounts, MetricsError> {
    if gold.edu_count != pred.edu_count {
        return Err(MetricsError::EduCount {
            gold: gold.edu_count,
            pred: pred.edu_count,
        });
    }
    fn key(s: &DecisionSequence) -> Vec<((EduRange, EduRange), Nuclearity, &str)> {
        s.decisions
            .iter()
            .map(|d| (d.span(), d.nuclearity, d.label.as_str()))
            .collect()
    }
    Ok(tally(&key(gold), &key(pred)))
}

/// Secondary-edge Parseval: direction takes the place of nuclearity.
pub fn parseval_secondary(
    gold: &SecondaryDecisions,
    pred: &SecondaryDecisions,
) -> Result<ParsevalCounts, MetricsError> {
    if gold.edu_count != pred.edu_count {
        return Err(MetricsError::EduCount {
            gold: gold.edu_count,
            pred: pred.edu_count,
        });
    }
    fn key(s: &SecondaryDecisions) -> Vec<((EduRange, EduRange), Direction, &str)> {
        s.records
            .iter()
            .map(|d| (d.span(), d.direction, d.label.as_str()))
            .collect()
    }
    Ok(tally(&key(gold), &key(pred)))
}
