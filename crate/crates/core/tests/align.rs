mod common;

use erst::align::{
    associate, detect_dms, enumerate_secedge_candidates, AssociateOptions, DmLexicon,
    DmRelationMap, DmStatus, LexiconEntry,
};
use erst::{validate, EdgeRef, SignalLabel, ValidationPolicy};

use common::*;

#[test]
fn then_attaches_and_but_is_orphaned() {
    let g = inco();
    let (lex, map) = inco_lexicon();
    let dms = detect_dms(&g, &lex);
    let surfaces: Vec<(&str, &[usize])> = dms
        .iter()
        .map(|d| (d.surface.as_str(), d.tokens.as_slice()))
        .collect();
    assert_eq!(surfaces, vec![("but", &[12][..]), ("then", &[13][..])]);

    let al = associate(&g, &dms, &map, &AssociateOptions::default()).unwrap();
    let status = |s: &str| {
        al.occurrences
            .iter()
            .find(|o| o.surface == s)
            .unwrap()
            .status
    };
    assert_eq!(status("then"), DmStatus::Attached(EdgeRef::Primary(31)));
    assert_eq!(status("but"), DmStatus::Orphan { edge: None });
    assert_eq!(al.unreferenced_orphans().count(), 1);

    let applied = al.apply(&g);
    assert!(applied
        .signals()
        .iter()
        .any(|s| s.edge == EdgeRef::Primary(31)
            && s.label == SignalLabel::dm()
            && s.tokens.contains(&13)));
    assert!(validate(&applied, &ValidationPolicy::default()).is_valid());
}

#[test]
fn second_if_is_trapped() {
    let g = customers();
    let (lex, map) = customers_lexicon();
    let dms = detect_dms(&g, &lex);
    let al = associate(&g, &dms, &map, &AssociateOptions::default()).unwrap();
    let ifs: Vec<_> = al
        .occurrences
        .iter()
        .filter(|o| o.surface == "if")
        .collect();
    assert_eq!(ifs.len(), 2);
    assert_eq!(ifs[0].status, DmStatus::Attached(EdgeRef::Primary(1)));
    assert_eq!(ifs[1].status, DmStatus::Orphan { edge: None });
    let than = al.occurrences.iter().find(|o| o.surface == "than").unwrap();
    assert_eq!(than.status, DmStatus::Attached(EdgeRef::Primary(3)));
}

#[test]
fn orphan_references_an_existing_secondary_edge() {
    let g = rainy_day(true);
    let lex = DmLexicon::new([LexiconEntry::contiguous("but")]);
    let mut map = DmRelationMap::new();
    map.insert("but", ["adversative"]);
    let dms = detect_dms(&g, &lex);
    let al = associate(&g, &dms, &map, &AssociateOptions::default()).unwrap();
    assert_eq!(
        al.occurrences[0].status,
        DmStatus::Orphan {
            edge: Some(EdgeRef::Secondary {
                source: 27,
                target: 28
            })
        }
    );
    assert!(al.signals.iter().any(|s| s.label == SignalLabel::orphan()));
}

#[test]
fn candidates_include_the_missing_concession() {
    let g = rainy_day(false);
    let lex = DmLexicon::new([LexiconEntry::contiguous("but")]);
    let mut map = DmRelationMap::new();
    map.insert("but", ["adversative"]);
    let dms = detect_dms(&g, &lex);
    let al = associate(&g, &dms, &map, &AssociateOptions::default()).unwrap();
    let orphans: Vec<_> = al.orphans().cloned().collect();
    assert_eq!(orphans.len(), 1);
    let cands = enumerate_secedge_candidates(&g, &orphans, &map, None);
    assert!(cands.iter().any(|c| c.edge.source == 27
        && c.edge.target == 28
        && c.edge.relation == "adversative-concession"));
    for c in &cands {
        assert_ne!(c.edge.source, c.edge.target);
        assert!(c.edge.relation.starts_with("adversative"));
    }
}

#[test]
fn discontinuous_entries_are_detected() {
    let g = customers();
    let lex = DmLexicon::new([LexiconEntry::discontinuous("if", "it")]);
    let dms = detect_dms(&g, &lex);
    assert!(dms.iter().any(|d| d.tokens == vec![1, 11]), "{dms:?}");
}

#[test]
fn association_is_deterministic() {
    let g = inco();
    let (lex, map) = inco_lexicon();
    let mut dms = detect_dms(&g, &lex);
    let a = associate(&g, &dms, &map, &AssociateOptions::default()).unwrap();
    dms.reverse();
    let b = associate(&g, &dms, &map, &AssociateOptions::default()).unwrap();
    let mut sa = a.signals.clone();
    let mut sb = b.signals.clone();
    sa.sort();
    sb.sort();
    assert_eq!(sa, sb);
}
