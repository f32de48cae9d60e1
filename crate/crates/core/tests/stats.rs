mod common;

use std::collections::BTreeMap;

use erst::align::{associate, detect_dms, AssociateOptions};
use erst::induce::{induce_all, EligibilityTable, IndicativeLexicon};
use erst::stats::{
    extract, genre_of, marking_table, relation_counts, relation_marking_stats,
    secondary_proportions, signal_distribution, top_markers, DistributionBy, GroupBy, MarkerKind,
    Query, StatsOptions,
};
use erst::{DocumentGraph, SignalMajor};

use common::*;

fn aligned_inco() -> DocumentGraph {
    let g = inco();
    let (lex, map) = inco_lexicon();
    let dms = detect_dms(&g, &lex);
    associate(&g, &dms, &map, &AssociateOptions::default())
        .unwrap()
        .apply(&g)
}

/// inco: 2 relations, 1 dm. rainy: 5 relations (2 multinuc pairs, 2
/// satellites, 1 secondary), 1 orphan. customers: 2 relations, no signals.
fn corpus() -> Vec<DocumentGraph> {
    vec![aligned_inco(), rainy_day(true), customers()]
}

fn genres() -> StatsOptions {
    StatsOptions {
        genres: BTreeMap::from([
            ("inco".to_string(), "news".to_string()),
            ("rainy".to_string(), "fiction".to_string()),
            ("customers".to_string(), "news".to_string()),
        ]),
        ..StatsOptions::default()
    }
}

#[test]
fn marking_counts_by_hand() {
    let rows = relation_marking_stats(&corpus(), GroupBy::Document, &StatsOptions::default());
    let got: Vec<(&str, usize, usize, usize, usize)> = rows
        .iter()
        .map(|r| (r.group.as_str(), r.dms, r.orphans, r.relations, r.secedges))
        .collect();
    assert_eq!(
        got,
        vec![
            ("customers", 0, 0, 2, 0),
            ("inco", 1, 0, 2, 0),
            ("rainy", 0, 1, 5, 1),
            ("all", 1, 1, 9, 1),
        ]
    );
    let all = rows.last().unwrap();
    assert!((all.markers_per_relation() - 2.0 / 9.0).abs() < 1e-12);
    assert!((all.secedge_percent() - 100.0 / 9.0).abs() < 1e-12);
    let table = marking_table(&rows).to_tsv();
    assert!(
        table.lines().last().unwrap().ends_with("\t0.22\t1\t11.11"),
        "{table}"
    );
}

#[test]
fn marking_by_genre_uses_overrides() {
    let rows = relation_marking_stats(&corpus(), GroupBy::Genre, &genres());
    let groups: Vec<(&str, usize)> = rows
        .iter()
        .map(|r| (r.group.as_str(), r.relations))
        .collect();
    assert_eq!(groups, vec![("fiction", 5), ("news", 4), ("all", 9)]);
    assert!(relation_marking_stats(&[], GroupBy::Genre, &genres()).is_empty());
    assert_eq!(genre_of("GUM_news_iodine", &BTreeMap::new()), "news");
    assert_eq!(genre_of("plain", &BTreeMap::new()), "other");
}

#[test]
fn distribution_by_class() {
    let rows = signal_distribution(&corpus(), DistributionBy::Class, &StatsOptions::default());
    let get = |c: &str| rows.iter().find(|r| r.group == c).unwrap();
    assert_eq!(get("joint").instances, 2);
    assert_eq!(get("adversative").instances, 2);
    assert_eq!(get("adversative").any, 1);
    assert!((get("adversative").fraction(SignalMajor::Orphan) - 0.5).abs() < 1e-12);
    assert_eq!(get("temporal").any, 1);
    assert_eq!(get("causal").any, 0);
    assert_eq!(rows.iter().map(|r| r.instances).sum::<usize>(), 9);
}

#[test]
fn secondary_share_per_relation() {
    let counts = relation_counts(&corpus(), &StatsOptions::default());
    let conc = counts
        .iter()
        .find(|r| r.relation == "adversative-concession")
        .unwrap();
    assert_eq!((conc.primary, conc.secondary), (0, 1));
    assert_eq!(conc.secondary_percent(), 100.0);
    let rows = secondary_proportions(&corpus(), 0, &StatsOptions::default());
    assert_eq!(rows.len(), 1);
    assert!(secondary_proportions(&corpus(), 1, &StatsOptions::default()).is_empty());
}

#[test]
fn top_connectives_for_a_class() {
    let top = top_markers(
        &corpus(),
        "adversative",
        MarkerKind::Dm,
        5,
        None,
        &StatsOptions::default(),
    );
    assert_eq!(top, vec![("but".to_string(), 1)]);
    let top = top_markers(
        &corpus(),
        "temporal-after",
        MarkerKind::Dm,
        5,
        None,
        &StatsOptions::default(),
    );
    assert_eq!(top, vec![("then".to_string(), 1)]);
    assert!(top_markers(
        &corpus(),
        "causal",
        MarkerKind::Dm,
        5,
        None,
        &StatsOptions::default()
    )
    .is_empty());
}

#[test]
fn top_markers_rank_by_frequency_then_name() {
    let mut docs = Vec::new();
    for (i, word) in ["good", "very", "good", "nice", "very", "good"]
        .iter()
        .enumerate()
    {
        let (_, mut a) = kind_of_pretty();
        let text = format!("She 's kind of {word} .");
        let g = erst::GraphBuilder::new(format!("d{i}"))
            .edu(1, "I met her sister .")
            .edu(2, &text)
            .span(3)
            .nucleus(1, 3)
            .satellite(2, 3, "evaluation-comment")
            .build();
        a.tokens[9].form = word.to_string();
        a.tokens[9].lemma = Some(word.to_string());
        a.tokens[9].pos = Some(if *word == "very" { "RB" } else { "JJ" }.to_string());
        let induced = induce_all(
            &g,
            &a,
            &EligibilityTable::standard(),
            &IndicativeLexicon::standard(),
        )
        .unwrap();
        docs.push(induced.apply(&g));
    }
    let top = top_markers(
        &docs,
        "evaluation",
        MarkerKind::Lexical,
        2,
        None,
        &StatsOptions::default(),
    );
    assert_eq!(top, vec![("good".to_string(), 3), ("very".to_string(), 2)]);
}

#[test]
fn extract_with_attribution() {
    let (g, a) = kim_and_bolden();
    let induced = induce_all(
        &g,
        &a,
        &EligibilityTable::standard(),
        &IndicativeLexicon::standard(),
    )
    .unwrap();
    let g = induced.apply(&g);
    let aux = BTreeMap::from([(g.id().to_string(), a)]);
    let query = Query {
        relation: Some("attribution".into()),
        attribution: true,
        ..Query::default()
    };
    let records = extract(std::slice::from_ref(&g), &query, Some(&aux));
    assert_eq!(records.len(), 1);
    let bundle = records[0].attribution.as_ref().unwrap();
    assert_eq!(bundle.source.iter().copied().collect::<Vec<_>>(), vec![9]);
    assert!(bundle.predicate.contains(&10));

    let query = Query {
        major: Some(SignalMajor::Reference),
        surface: Some("She kim".into()),
        ..Query::default()
    };
    let records = extract(std::slice::from_ref(&g), &query, Some(&aux));
    assert!(records.is_empty());
    let query = Query {
        major: Some(SignalMajor::Reference),
        surface: Some("Kim She".into()),
        ..Query::default()
    };
    let records = extract(std::slice::from_ref(&g), &query, Some(&aux));
    assert_eq!(records.len(), 1);
    assert_eq!(records[0].relation, "elaboration-additional");
}
