//! Acceptance checks, one PASS/FAIL line each. Run with
//! `cargo test -p erst --test acceptance -- --nocapture` to see the lines
//! (they are printed either way; the process exits nonzero on any FAIL).

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use erst::align::{associate, detect_dms, AssociateOptions, DmStatus};
use erst::induce::{
    induce_all, induce_graphical, induce_reference_semantic, induce_syntactic_morphological,
    AuxAnnotations, EligibilityTable, IndicativeLexicon,
};
use erst::io::{read_document_str, write_document_string};
use erst::metrics::{
    optimal_pair_overlap, parseval, score_corpus, score_document, signal_counts, ParsevalCounts,
    ScoreOptions,
};
use erst::stats::{relation_counts, secondary_proportions, StatsOptions};
use erst::synth::{random_corpus, random_graph, random_prediction, SynthOptions};
use erst::treeops::{binarize, debinarize, extract_decisions, isomorphic, DebinarizeMode};
use erst::validate::codes;
use erst::{
    validate, DocumentGraph, EdgeRef, GraphBuilder, NodeId, Role, Signal, ValidationPolicy,
};

use common::*;

/// Absolute tolerance for floating-point comparisons.
const EPS: f64 = 1e-9;
const VALIDATOR_BUDGET: Duration = Duration::from_secs(1);
const PARSEVAL_BUDGET: Duration = Duration::from_secs(10);
const THROUGHPUT_BUDGET: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= EPS
}

// ---------------------------------------------------------------- validator

fn two_edus() -> GraphBuilder {
    GraphBuilder::new("v")
        .edu(1, "one two")
        .edu(2, "three four")
        .edu(3, "five six")
}

fn valid_base() -> GraphBuilder {
    two_edus()
        .span(4)
        .span(5)
        .nucleus(1, 4)
        .satellite(2, 4, "elaboration-additional")
        .nucleus(4, 5)
        .satellite(3, 5, "evaluation-comment")
}

fn invalid_fixtures() -> Vec<(&'static str, DocumentGraph)> {
    let sec = EdgeRef::Secondary {
        source: 3,
        target: 1,
    };
    let mut v = Vec::new();
    v.push((
        codes::EMPTY_HIERARCHY,
        two_edus()
            .span(4)
            .span(5)
            .span(6)
            .nucleus(1, 6)
            .nucleus(6, 4)
            .satellite(2, 4, "elaboration-additional")
            .nucleus(4, 5)
            .satellite(3, 5, "evaluation-comment")
            .build(),
    ));
    v.push((
        codes::SATELLITE_TIE,
        two_edus()
            .span(4)
            .nucleus(2, 4)
            .satellite(1, 4, "context-background")
            .satellite(3, 4, "evaluation-comment")
            .build(),
    ));
    v.push((
        codes::NON_PROJECTIVE,
        two_edus()
            .multinuc(4)
            .span(5)
            .multinuc_child(1, 4, "joint-list")
            .multinuc_child(3, 4, "joint-list")
            .nucleus(4, 5)
            .satellite(2, 5, "elaboration-additional")
            .build(),
    ));
    v.push((
        codes::MISSING_NUCLEUS,
        two_edus()
            .span(4)
            .span(5)
            .satellite(1, 4, "context-background")
            .satellite(2, 4, "elaboration-additional")
            .nucleus(4, 5)
            .satellite(3, 5, "evaluation-comment")
            .build(),
    ));
    let mut gap = valid_base();
    gap.parts_mut().edus[1].first_token = 4;
    v.push((codes::TOKEN_GAP, gap.build()));
    let mut overlap = valid_base();
    overlap.parts_mut().edus[1].first_token = 2;
    v.push((codes::TOKEN_OVERLAP, overlap.build()));
    v.push((
        codes::SECONDARY_SELF_LOOP,
        valid_base()
            .secondary(3, 3, "adversative-concession")
            .signal(
                EdgeRef::Secondary {
                    source: 3,
                    target: 3,
                },
                "orphan:orphan",
                &[5],
            )
            .build(),
    ));
    v.push((
        codes::DUPLICATE_SECONDARY,
        valid_base()
            .secondary(3, 1, "adversative-concession")
            .secondary(3, 1, "causal-cause")
            .signal(sec, "orphan:orphan", &[5])
            .build(),
    ));
    v.push((
        codes::SECONDARY_UNSIGNALED,
        valid_base()
            .secondary(3, 1, "adversative-concession")
            .build(),
    ));
    v.push((
        codes::DANGLING_SIGNAL,
        valid_base().signal(sec, "orphan:orphan", &[5]).build(),
    ));
    v.push((
        codes::UNKNOWN_RELATION,
        two_edus()
            .span(4)
            .span(5)
            .nucleus(1, 4)
            .satellite(2, 4, "made-up-relation")
            .nucleus(4, 5)
            .satellite(3, 5, "evaluation-comment")
            .build(),
    ));
    v.push((
        codes::MULTIPLE_ROOTS,
        two_edus()
            .span(4)
            .nucleus(1, 4)
            .satellite(2, 4, "elaboration-additional")
            .build(),
    ));
    v.push((
        codes::SIGNAL_TOKEN_RANGE,
        valid_base()
            .signal(EdgeRef::Primary(2), "dm:dm", &[99])
            .build(),
    ));
    v
}

fn binarized_fixture() -> DocumentGraph {
    let g = GraphBuilder::new("list")
        .edu(1, "a")
        .edu(2, "b")
        .edu(3, "c")
        .multinuc(4)
        .multinuc_child(1, 4, "joint-list")
        .multinuc_child(2, 4, "joint-list")
        .multinuc_child(3, 4, "joint-list")
        .build();
    binarize(&g).expect("binarize")
}

fn validator_suite() -> Outcome {
    let start = Instant::now();
    let policy = ValidationPolicy::default();
    let invalid = invalid_fixtures();
    for (code, g) in &invalid {
        let report = validate(g, &policy);
        let got = report.codes();
        ensure(got == BTreeSet::from([*code]), || {
            format!("{code} fixture reported {got:?}")
        })?;
    }
    let valid = vec![
        GraphBuilder::new("one").edu(1, "Hello .").build(),
        valid_base().build(),
        inco(),
        rainy_day(true),
        customers(),
        GraphBuilder::new("list")
            .edu(1, "a")
            .edu(2, "b")
            .edu(3, "c")
            .multinuc(4)
            .multinuc_child(1, 4, "joint-list")
            .multinuc_child(2, 4, "joint-list")
            .multinuc_child(3, 4, "joint-list")
            .build(),
        binarized_fixture(),
    ];
    for g in &valid {
        let report = validate(g, &policy);
        ensure(report.is_empty(), || {
            format!("valid fixture {} reported:\n{report}", g.id())
        })?;
    }
    let lenient = validate(
        &valid_base()
            .secondary(3, 1, "adversative-concession")
            .build(),
        &ValidationPolicy::lenient(),
    );
    ensure(lenient.is_valid() && !lenient.is_empty(), || {
        "lenient policy should warn only".into()
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < VALIDATOR_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} invalid fixtures with exact codes, {} valid, {elapsed:?} (< {VALIDATOR_BUDGET:?})",
        invalid.len(),
        valid.len()
    ))
}

// ---------------------------------------------------------------- parseval

/// Decision tuples computed straight from attachments: text-ordered child
/// yields as EDU-position bounds, nuclearity and label.
type OracleDecision = ((usize, usize), (usize, usize), &'static str, String);

fn oracle_decisions(g: &DocumentGraph) -> Vec<OracleDecision> {
    let mut order: Vec<_> = g.edus().to_vec();
    order.sort_by_key(|e| e.first_token);
    let pos: BTreeMap<NodeId, usize> = order
        .iter()
        .enumerate()
        .map(|(i, e)| (e.id, i + 1))
        .collect();
    let mut children: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
    for n in g.nodes() {
        if let Some(a) = &n.attachment {
            children.entry(a.parent).or_default().push(n.id);
        }
    }
    fn bounds(
        id: NodeId,
        children: &BTreeMap<NodeId, Vec<NodeId>>,
        pos: &BTreeMap<NodeId, usize>,
    ) -> (usize, usize) {
        match children.get(&id) {
            None => (pos[&id], pos[&id]),
            Some(kids) => kids
                .iter()
                .map(|k| bounds(*k, children, pos))
                .fold((usize::MAX, 0), |a, b| (a.0.min(b.0), a.1.max(b.1))),
        }
    }
    let mut out = Vec::new();
    for kids in children.values() {
        assert_eq!(kids.len(), 2, "oracle expects binary trees");
        let mut kids: Vec<(usize, usize, NodeId)> = kids
            .iter()
            .map(|k| {
                let b = bounds(*k, &children, &pos);
                (b.0, b.1, *k)
            })
            .collect();
        kids.sort();
        let a = g.node(kids[0].2).unwrap().attachment.clone().unwrap();
        let b = g.node(kids[1].2).unwrap().attachment.clone().unwrap();
        let (nuc, label) = match (a.role, b.role) {
            (Role::MultinucChild, _) => ("NN", a.relation.unwrap()),
            (Role::Nucleus, _) => ("NS", b.relation.unwrap()),
            _ => ("SN", a.relation.unwrap()),
        };
        out.push(((kids[0].0, kids[0].1), (kids[1].0, kids[1].1), nuc, label));
    }
    out
}

fn oracle_parseval(gold: &[OracleDecision], pred: &[OracleDecision]) -> ParsevalCounts {
    let mut c = ParsevalCounts {
        gold: gold.len() as u64,
        pred: pred.len() as u64,
        ..ParsevalCounts::default()
    };
    for p in pred {
        let span = |g: &&OracleDecision| g.0 == p.0 && g.1 == p.1;
        c.span += gold.iter().any(|g| span(&g)) as u64;
        c.nuclearity += gold.iter().any(|g| span(&g) && g.2 == p.2) as u64;
        c.relation += gold.iter().any(|g| span(&g) && g.3 == p.3) as u64;
        c.full += gold.iter().any(|g| span(&g) && g.2 == p.2 && g.3 == p.3) as u64;
    }
    c
}

fn binary_options() -> SynthOptions {
    SynthOptions {
        max_edus: 8,
        binary: true,
        secondary_rate: 0.0,
        ..SynthOptions::default()
    }
}

fn parseval_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let opts = binary_options();
    let start = Instant::now();
    let n = 500;
    for i in 0..n {
        let gold = random_graph(&mut rng, &format!("p{i}"), &opts);
        let pred = random_prediction(&mut rng, &gold, &opts);
        let got = parseval(
            &extract_decisions(&gold).unwrap(),
            &extract_decisions(&pred).unwrap(),
        )
        .unwrap();
        let want = oracle_parseval(&oracle_decisions(&gold), &oracle_decisions(&pred));
        ensure(got == want, || {
            format!("pair {i}: {got:?} != oracle {want:?}")
        })?;
        ensure(
            got.full <= got.nuclearity
                && got.nuclearity <= got.span
                && got.full <= got.relation
                && got.relation <= got.span,
            || format!("pair {i}: monotonicity violated {got:?}"),
        )?;
        let own = parseval(
            &extract_decisions(&gold).unwrap(),
            &extract_decisions(&gold).unwrap(),
        )
        .unwrap();
        ensure(own.scores().f == 1.0, || {
            format!("pair {i}: self-score below 1")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < PARSEVAL_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{n} random binary pairs (<= 8 EDUs) equal the brute-force oracle exactly; F<=N<=S, F<=R<=S; {elapsed:.2?} (< {PARSEVAL_BUDGET:?})"
    ))
}

// ---------------------------------------------------------------- pairing

fn brute_force_overlap(gold: &[BTreeSet<usize>], pred: &[BTreeSet<usize>]) -> u64 {
    let n = gold.len().max(pred.len());
    let empty = BTreeSet::new();
    let g = |i: usize| gold.get(i).unwrap_or(&empty);
    let p = |i: usize| pred.get(i).unwrap_or(&empty);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = 0;
    // Heap's algorithm over all n! pairings.
    fn visit(k: usize, perm: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if k <= 1 {
            f(perm);
            return;
        }
        visit(k - 1, perm, f);
        for i in 0..k - 1 {
            if k % 2 == 0 {
                perm.swap(i, k - 1);
            } else {
                perm.swap(0, k - 1);
            }
            visit(k - 1, perm, f);
        }
    }
    visit(n, &mut perm, &mut |pm| {
        let total: u64 = (0..n)
            .map(|i| g(i).intersection(p(pm[i])).count() as u64)
            .sum();
        best = best.max(total);
    });
    best
}

fn optimal_pairing() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 500;
    for i in 0..n {
        let group = |rng: &mut ChaCha8Rng| -> Vec<BTreeSet<usize>> {
            let size = rng.gen_range(0..=5);
            (0..size)
                .map(|_| {
                    (0..rng.gen_range(0..=4))
                        .map(|_| rng.gen_range(1..=8))
                        .collect()
                })
                .collect()
        };
        let gold = group(&mut rng);
        let pred = group(&mut rng);
        let gr: Vec<&BTreeSet<usize>> = gold.iter().collect();
        let pr: Vec<&BTreeSet<usize>> = pred.iter().collect();
        let got = optimal_pair_overlap(&gr, &pr);
        let want = brute_force_overlap(&gold, &pred);
        ensure(got == want, || {
            format!("case {i}: {got} != brute force {want} for {gold:?} / {pred:?}")
        })?;
    }
    Ok(format!(
        "{n} random groups (size <= 5) equal the permutation maximum"
    ))
}

// ---------------------------------------------------------------- symmetry

fn symmetry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let opts = SynthOptions {
        signal_prob: 0.8,
        secondary_rate: 0.3,
        ..SynthOptions::default()
    };
    let n = 200;
    for i in 0..n {
        let gold = random_graph(&mut rng, &format!("s{i}"), &opts);
        let pred = random_prediction(&mut rng, &gold, &opts);
        let gp = signal_counts(&gold, &pred, None);
        let pg = signal_counts(&pred, &gold, None);
        ensure(gp.s_p() == pg.s_r() && gp.s_r() == pg.s_p(), || {
            format!("pair {i}: S_P/S_R not symmetric")
        })?;
        ensure(gp.w_p() == pg.w_r() && gp.w_r() == pg.w_p(), || {
            format!("pair {i}: W_P/W_R not symmetric")
        })?;
        ensure(
            gp.matched_tokens <= gp.gold_tokens.min(gp.pred_tokens),
            || format!("pair {i}: overlap too large"),
        )?;
    }
    Ok(format!(
        "{n} random pairs: S_P(g,p)=S_R(p,g), W_P(g,p)=W_R(p,g) (exact)"
    ))
}

// ---------------------------------------------------------------- round trips

fn round_trips() -> Outcome {
    let policy = ValidationPolicy::default();
    let fixtures = vec![
        inco(),
        rainy_day(true),
        customers(),
        rained_and_snowed(),
        binarized_fixture(),
    ];
    for g in &fixtures {
        let text = write_document_string(g).map_err(|e| e.to_string())?;
        let back = read_document_str(&text, &policy).map_err(|e| e.to_string())?;
        ensure(isomorphic(g, &back), || {
            format!("{}: read(write(g)) differs", g.id())
        })?;
        let again = write_document_string(&back).map_err(|e| e.to_string())?;
        ensure(again == text, || {
            format!("{}: second write is not byte-identical", g.id())
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let opts = SynthOptions {
        max_edus: 10,
        multinuc_prob: 0.5,
        secondary_rate: 0.2,
        ..SynthOptions::default()
    };
    let n = 500;
    for i in 0..n {
        let g = random_graph(&mut rng, &format!("r{i}"), &opts);
        let b = binarize(&g).map_err(|e| format!("tree {i}: {e}"))?;
        let d = debinarize(&b, DebinarizeMode::Introduced).map_err(|e| format!("tree {i}: {e}"))?;
        ensure(isomorphic(&g, &d), || {
            format!("tree {i}: debinarize(binarize(g)) differs")
        })?;
        let text = write_document_string(&g).map_err(|e| e.to_string())?;
        let back = read_document_str(&text, &policy).map_err(|e| e.to_string())?;
        ensure(
            write_document_string(&back).map_err(|e| e.to_string())? == text,
            || format!("tree {i}: write is not stable"),
        )?;
    }
    Ok(format!(
        "{} fixtures and {n} random trees (<= 10 EDUs) round-trip; writes byte-identical",
        fixtures.len()
    ))
}

// ---------------------------------------------------------------- alignment

fn alignment() -> Outcome {
    let g = inco();
    let (lex, map) = inco_lexicon();
    let al = associate(
        &g,
        &detect_dms(&g, &lex),
        &map,
        &AssociateOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    let status = |a: &erst::align::Alignment, s: &str| {
        a.occurrences
            .iter()
            .find(|o| o.surface == s)
            .map(|o| o.status)
    };
    ensure(
        status(&al, "then") == Some(DmStatus::Attached(EdgeRef::Primary(31))),
        || format!("then: {:?}", status(&al, "then")),
    )?;
    ensure(
        status(&al, "but") == Some(DmStatus::Orphan { edge: None }),
        || format!("but: {:?}", status(&al, "but")),
    )?;

    let g = customers();
    let (lex, map) = customers_lexicon();
    let al = associate(
        &g,
        &detect_dms(&g, &lex),
        &map,
        &AssociateOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    let ifs: Vec<_> = al
        .occurrences
        .iter()
        .filter(|o| o.surface == "if")
        .map(|o| o.status)
        .collect();
    ensure(
        ifs == vec![
            DmStatus::Attached(EdgeRef::Primary(1)),
            DmStatus::Orphan { edge: None },
        ],
        || format!("if statuses {ifs:?}"),
    )?;
    Ok("then attached to temporal-after, but orphaned; second if trapped with no edge".into())
}

// ---------------------------------------------------------------- self-score

fn self_score() -> Outcome {
    let corpus = random_corpus(
        29,
        60,
        &SynthOptions {
            secondary_rate: 0.3,
            ..SynthOptions::default()
        },
    );
    let report = score_corpus(&corpus, &corpus, &ScoreOptions::default());
    ensure(!report.has_problems(), || {
        "self-scoring reported problems".into()
    })?;
    let micro = report.micro();
    for (name, value) in micro.metrics(true) {
        ensure(value == 1.0, || format!("micro {name} = {value}"))?;
    }
    for (name, value) in report.macro_metrics(true) {
        ensure(value == 1.0, || format!("macro {name} = {value}"))?;
    }
    Ok(format!(
        "{} documents scored against themselves: every metric 1.0",
        corpus.len()
    ))
}

// ---------------------------------------------------------------- stats

/// 438 EDUs in a left-branching chain of causal-result satellites, plus 72
/// signaled secondary causal-result edges from EDU i to EDU i+2.
fn proportion_fixture() -> DocumentGraph {
    let n: NodeId = 438;
    let mut b = GraphBuilder::new("chain");
    for i in 1..=n {
        b = b.edu(i, "w .");
    }
    let span = |k: NodeId| 1000 + k;
    for k in 1..n {
        b = b.span(span(k));
        let left = if k == 1 { 1 } else { span(k - 1) };
        b = b
            .nucleus(left, span(k))
            .satellite(k + 1, span(k), "causal-result");
    }
    for i in 1..=72 {
        b = b.secondary(i, i + 2, "causal-result").signal(
            EdgeRef::Secondary {
                source: i,
                target: i + 2,
            },
            "orphan:orphan",
            &[2 * i as usize - 1],
        );
    }
    b.build()
}

fn stats() -> Outcome {
    let g = proportion_fixture();
    ensure(
        validate(&g, &ValidationPolicy::default()).is_empty(),
        || "fixture invalid".into(),
    )?;
    let rows = relation_counts(std::slice::from_ref(&g), &StatsOptions::default());
    ensure(rows.len() == 1, || format!("{rows:?}"))?;
    let r = &rows[0];
    ensure((r.primary, r.secondary) == (437, 72), || {
        format!("counts {} / {}", r.primary, r.secondary)
    })?;
    let shown = format!("{:.1}", r.secondary_percent());
    ensure(shown == "14.1", || format!("%secondary shown as {shown}"))?;

    let al = {
        let g = inco();
        let (lex, map) = inco_lexicon();
        associate(
            &g,
            &detect_dms(&g, &lex),
            &map,
            &AssociateOptions::default(),
        )
        .unwrap()
        .apply(&g)
    };
    let corpus = [al, rainy_day(true), customers()];
    let rows = erst::stats::relation_marking_stats(
        &corpus,
        erst::stats::GroupBy::None,
        &StatsOptions::default(),
    );
    let all = &rows[0];
    ensure(
        (all.dms, all.orphans, all.relations, all.secedges) == (1, 1, 9, 1),
        || format!("{all:?}"),
    )?;
    ensure(close(all.secedge_percent(), 100.0 / 9.0), || {
        format!("{}", all.secedge_percent())
    })?;
    let props = secondary_proportions(&corpus, 0, &StatsOptions::default());
    let got: Vec<(&str, usize, usize)> = props
        .iter()
        .map(|r| (r.relation.as_str(), r.primary, r.secondary))
        .collect();
    ensure(got == vec![("adversative-concession", 0, 1)], || {
        format!("secondary proportions {got:?}")
    })?;
    Ok("437 primary + 72 secondary -> 14.1 %secondary; 3-doc corpus matches hand counts".into())
}

// ---------------------------------------------------------------- induction

fn signal_set(signals: &[Signal]) -> BTreeSet<String> {
    signals
        .iter()
        .map(|s| {
            let toks: Vec<String> = s.tokens.iter().map(|t| t.to_string()).collect();
            format!("{} {} {}", s.edge, s.label, toks.join(","))
        })
        .collect()
}

fn expect(signals: &[Signal], want: &[&str]) -> Result<(), String> {
    let got = signal_set(signals);
    let want: BTreeSet<String> = want.iter().map(|s| s.to_string()).collect();
    ensure(got == want, || format!("got {got:?}, want {want:?}"))
}

fn induction() -> Outcome {
    let table = EligibilityTable::standard();
    let lexicon = IndicativeLexicon::standard();
    let (g, a) = plan_to_win();
    let out = induce_syntactic_morphological(&g, &a, &table).map_err(|e| e.to_string())?;
    expect(
        &out.signals,
        &[
            "2 syntactic:modified-head 4",
            "2 syntactic:relative-or-infinitival 5",
        ],
    )?;

    let (g, a) = had_i_known();
    let out = induce_syntactic_morphological(&g, &a, &table).map_err(|e| e.to_string())?;
    expect(
        &out.signals,
        &[
            "1 morphological:mood 6",
            "1 syntactic:subject-auxiliary-inversion 1",
        ],
    )?;

    let (g, a) = did_you("topic-question");
    expect(
        &induce_graphical(&g, &a, &table)
            .map_err(|e| e.to_string())?
            .signals,
        &["1 graphical:question-mark 3"],
    )?;
    let (g, a) = did_you("elaboration-additional");
    expect(
        &induce_graphical(&g, &a, &table)
            .map_err(|e| e.to_string())?
            .signals,
        &[],
    )?;

    let (g, a) = kind_of_pretty();
    expect(
        &induce_all(&g, &a, &table, &lexicon)
            .map_err(|e| e.to_string())?
            .signals,
        &["2 lexical:indicative-word 10"],
    )?;

    let g = rained_and_snowed();
    let a = AuxAnnotations::from_forms(g.tokens().iter().map(|t| t.form.as_str()));
    expect(
        &induce_graphical(&g, &a, &table)
            .map_err(|e| e.to_string())?
            .signals,
        &["2 graphical:parentheses 3,8"],
    )?;

    let (g, a) = kim_and_bolden();
    let out = induce_reference_semantic(&g, &a, &table).map_err(|e| e.to_string())?;
    expect(
        &out.signals,
        &[
            "2 reference:personal 3,5",
            "3 semantic:attribution-source 9",
        ],
    )?;

    let empty = EligibilityTable::default();
    let (g, a) = kim_and_bolden();
    let out = induce_all(&g, &a, &empty, &lexicon).map_err(|e| e.to_string())?;
    ensure(out.signals.is_empty(), || {
        "ineligible relations produced signals".into()
    })?;
    Ok("6 fixtures give exact signal sets; an empty eligibility table yields nothing".into())
}

// ---------------------------------------------------------------- throughput

fn throughput() -> Outcome {
    let opts = SynthOptions {
        min_edus: 200,
        max_edus: 200,
        min_tokens_per_edu: 5,
        max_tokens_per_edu: 5,
        secondary_rate: 0.1,
        ..SynthOptions::default()
    };
    let gold = random_corpus(41, 200, &opts);
    let mut rng = rand::rngs::StdRng::seed_from_u64(43);
    let pred: Vec<DocumentGraph> = gold
        .iter()
        .map(|g| random_prediction(&mut rng, g, &opts))
        .collect();
    let tokens: usize = gold.iter().map(|g| g.tokens().len()).sum();
    ensure(tokens >= 200_000, || format!("only {tokens} tokens"))?;

    let start = Instant::now();
    let policy = ValidationPolicy::default();
    for g in gold.iter().chain(&pred) {
        ensure(validate(g, &policy).is_valid(), || {
            format!("{} invalid", g.id())
        })?;
    }
    let mut scored = 0;
    for (g, p) in gold.iter().zip(&pred) {
        score_document(g, p, &ScoreOptions::default()).map_err(|e| e.to_string())?;
        scored += 1;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < THROUGHPUT_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} docs / {tokens} tokens validated and {scored} scored in {elapsed:.2?} (< {THROUGHPUT_BUDGET:?})",
        gold.len()
    ))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("validator-fixtures", validator_suite),
        ("parseval-oracle", parseval_oracle),
        ("optimal-signal-pairing", optimal_pairing),
        ("signal-metric-symmetry", symmetry),
        ("round-trips", round_trips),
        ("dm-alignment", alignment),
        ("self-score", self_score),
        ("corpus-statistics", stats),
        ("signal-induction", induction),
        ("throughput", throughput),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
