//! Random valid graphs for property tests and benchmarks.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::model::{
    ArityKind, Attachment, DocumentGraph, EdgeRef, Edu, GraphParts, Node, NodeId, NodeKind,
    RelationInventory, SecondaryEdge, Signal, SignalLabel, SignalVocabulary, Token,
};

#[derive(Clone, Debug, PartialEq)]
pub struct SynthOptions {
    pub min_edus: usize,
    pub max_edus: usize,
    pub min_tokens_per_edu: usize,
    pub max_tokens_per_edu: usize,
    /// Chance that a group is multinuclear.
    pub multinuc_prob: f64,
    /// Multinuclear groups have exactly two children.
    pub binary: bool,
    /// Expected secondary edges per EDU.
    pub secondary_rate: f64,
    /// Chance that a primary relation carries a signal.
    pub signal_prob: f64,
}

impl Default for SynthOptions {
    fn default() -> Self {
        SynthOptions {
            min_edus: 1,
            max_edus: 8,
            min_tokens_per_edu: 1,
            max_tokens_per_edu: 6,
            multinuc_prob: 0.3,
            binary: false,
            secondary_rate: 0.1,
            signal_prob: 0.5,
        }
    }
}

const WORDS: &[&str] = &[
    "the", "report", "said", "because", "but", "then", "it", "was", "new", "plan", "to", "win",
    "and", "if", "however", "they", "met", "her", "good", "very", ",", ".", "?", "(", ")", "rain",
    "city", "later",
];

struct Gen<'r, R: Rng> {
    rng: &'r mut R,
    options: &'r SynthOptions,
    satellite_labels: Vec<String>,
    multinuc_labels: Vec<String>,
    nodes: Vec<Node>,
    next_id: NodeId,
}

impl<R: Rng> Gen<'_, R> {
    /// Builds a subtree over EDU ids `a..=b`, returning its root id.
    fn subtree(&mut self, a: NodeId, b: NodeId) -> NodeId {
        if a == b {
            return a;
        }
        let id = self.next_id;
        self.next_id += 1;
        let len = (b - a + 1) as usize;
        if self.rng.gen_bool(self.options.multinuc_prob) {
            let max_parts = if self.options.binary { 2 } else { len.min(4) };
            let parts = self.rng.gen_range(2..=max_parts);
            let cuts = self.cuts(a, b, parts);
            let label = self
                .multinuc_labels
                .choose(self.rng)
                .expect("labels")
                .clone();
            self.nodes.push(Node {
                id,
                kind: NodeKind::Multinuc,
                attachment: None,
            });
            for (x, y) in cuts {
                let child = self.subtree(x, y);
                self.attach(child, Attachment::multinuc_child(id, label.clone()));
            }
        } else {
            let k = self.rng.gen_range(a..b);
            self.nodes.push(Node {
                id,
                kind: NodeKind::Span,
                attachment: None,
            });
            let left = self.subtree(a, k);
            let right = self.subtree(k + 1, b);
            let label = self
                .satellite_labels
                .choose(self.rng)
                .expect("labels")
                .clone();
            let (nuc, sat) = if self.rng.gen_bool(0.5) {
                (left, right)
            } else {
                (right, left)
            };
            self.attach(nuc, Attachment::nucleus(id));
            self.attach(sat, Attachment::satellite(id, label));
        }
        id
    }

    /// Splits `a..=b` into `parts` non-empty contiguous ranges.
    fn cuts(&mut self, a: NodeId, b: NodeId, parts: usize) -> Vec<(NodeId, NodeId)> {
        let mut points: Vec<NodeId> = (a..b).collect();
        points.shuffle(self.rng);
        let mut chosen: Vec<NodeId> = points.into_iter().take(parts - 1).collect();
        chosen.sort();
        let mut out = Vec::new();
        let mut start = a;
        for c in chosen {
            out.push((start, c));
            start = c + 1;
        }
        out.push((start, b));
        out
    }

    fn attach(&mut self, child: NodeId, attachment: Attachment) {
        if let Some(n) = self.nodes.iter_mut().find(|n| n.id == child) {
            n.attachment = Some(attachment);
        }
    }
}

/// Random tokens and EDU segmentation.
pub fn random_segmentation<R: Rng>(rng: &mut R, options: &SynthOptions) -> (Vec<Token>, Vec<Edu>) {
    let n = rng.gen_range(options.min_edus.max(1)..=options.max_edus.max(options.min_edus.max(1)));
    let mut tokens = Vec::new();
    let mut edus = Vec::new();
    for e in 1..=n {
        let first = tokens.len() + 1;
        let len =
            rng.gen_range(options.min_tokens_per_edu.max(1)..=options.max_tokens_per_edu.max(1));
        for _ in 0..len {
            let index = tokens.len() + 1;
            tokens.push(Token::new(index, *WORDS.choose(rng).expect("words")));
        }
        edus.push(Edu {
            id: e as NodeId,
            first_token: first,
            last_token: tokens.len(),
        });
    }
    (tokens, edus)
}

/// A random graph over the given segmentation: valid under the default
/// policy, with every secondary edge signaled.
pub fn random_graph_over<R: Rng>(
    rng: &mut R,
    id: &str,
    tokens: Vec<Token>,
    edus: Vec<Edu>,
    options: &SynthOptions,
) -> DocumentGraph {
    let relations = RelationInventory::gum();
    let mut gen = Gen {
        satellite_labels: relations
            .iter()
            .filter(|(_, k)| *k == ArityKind::Satellite)
            .map(|(n, _)| n.to_string())
            .collect(),
        multinuc_labels: relations
            .iter()
            .filter(|(n, k)| *k == ArityKind::Multinuclear && *n != "same-unit")
            .map(|(n, _)| n.to_string())
            .collect(),
        rng,
        options,
        nodes: edus
            .iter()
            .map(|e| Node {
                id: e.id,
                kind: NodeKind::Edu,
                attachment: None,
            })
            .collect(),
        next_id: edus.len() as NodeId + 1,
    };
    let n = edus.len() as NodeId;
    gen.subtree(1, n);
    let Gen {
        rng,
        nodes,
        satellite_labels,
        ..
    } = gen;

    let vocab = SignalVocabulary::standard();
    let labels: Vec<SignalLabel> = vocab.labels().collect();
    let n_tokens = tokens.len();
    let mut signals = Vec::new();
    let random_tokens = |rng: &mut R| -> BTreeSet<usize> {
        let k = rng.gen_range(0..=3usize.min(n_tokens));
        (0..k).map(|_| rng.gen_range(1..=n_tokens)).collect()
    };
    for node in &nodes {
        let Some(att) = &node.attachment else {
            continue;
        };
        if att.relation.is_none() || !rng.gen_bool(options.signal_prob) {
            continue;
        }
        let count = rng.gen_range(1..=2);
        for _ in 0..count {
            let label = labels.choose(rng).expect("labels").clone();
            signals.push(Signal {
                edge: EdgeRef::Primary(node.id),
                label,
                tokens: random_tokens(rng),
            });
        }
    }

    let mut secondary = Vec::new();
    let ids: Vec<NodeId> = nodes.iter().map(|n| n.id).collect();
    let wanted = (options.secondary_rate * n as f64).round() as usize;
    let mut used = BTreeSet::new();
    for _ in 0..wanted * 3 {
        if secondary.len() >= wanted || ids.len() < 2 {
            break;
        }
        let s = *ids.choose(rng).expect("ids");
        let t = *ids.choose(rng).expect("ids");
        if s == t || !used.insert((s, t)) {
            continue;
        }
        let e = SecondaryEdge::new(s, t, satellite_labels.choose(rng).expect("labels").clone());
        let label = if rng.gen_bool(0.5) {
            SignalLabel::orphan()
        } else {
            labels.choose(rng).expect("labels").clone()
        };
        signals.push(Signal {
            edge: e.edge_ref(),
            label,
            tokens: random_tokens(rng),
        });
        secondary.push(e);
    }

    DocumentGraph::from_parts(GraphParts {
        id: id.to_string(),
        tokens,
        edus,
        nodes,
        secondary,
        relations,
        signal_types: vocab,
        signals,
    })
}

pub fn random_graph<R: Rng>(rng: &mut R, id: &str, options: &SynthOptions) -> DocumentGraph {
    let (tokens, edus) = random_segmentation(rng, options);
    random_graph_over(rng, id, tokens, edus, options)
}

/// A second random graph over the same tokens and EDUs, for scoring.
pub fn random_prediction<R: Rng>(
    rng: &mut R,
    gold: &DocumentGraph,
    options: &SynthOptions,
) -> DocumentGraph {
    random_graph_over(
        rng,
        gold.id(),
        gold.tokens().to_vec(),
        gold.edus().to_vec(),
        options,
    )
}

/// A seeded corpus of `docs` documents named `synth_{genre}_{i}`.
pub fn random_corpus(seed: u64, docs: usize, options: &SynthOptions) -> Vec<DocumentGraph> {
    let mut rng = StdRng::seed_from_u64(seed);
    let genres = ["news", "fiction", "academic", "interview"];
    (0..docs)
        .map(|i| {
            random_graph(
                &mut rng,
                &format!("synth_{}_{i:04}", genres[i % genres.len()]),
                options,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate::{validate, ValidationPolicy};

    #[test]
    fn generated_graphs_validate() {
        let mut rng = StdRng::seed_from_u64(7);
        for i in 0..200 {
            let opts = SynthOptions {
                secondary_rate: 0.4,
                ..SynthOptions::default()
            };
            let g = random_graph(&mut rng, &format!("g{i}"), &opts);
            let report = validate(&g, &ValidationPolicy::default());
            assert!(report.is_valid(), "{report}");
        }
    }

    #[test]
    fn corpus_is_seeded() {
        let opts = SynthOptions::default();
        assert_eq!(random_corpus(3, 5, &opts), random_corpus(3, 5, &opts));
    }
}
