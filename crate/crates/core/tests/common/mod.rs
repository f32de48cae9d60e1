#![allow(dead_code)]

use erst::align::{DmLexicon, DmRelationMap, LexiconEntry};
use erst::induce::{AuxAnnotations, AuxToken, Mention};
use erst::{ArityKind, DocumentGraph, EdgeRef, GraphBuilder, RelationInventory};

/// Three-EDU fragment: "then" belongs to the temporal relation, "but" has
/// no compatible relation on its chain.
pub fn inco() -> DocumentGraph {
    let mut inv = RelationInventory::new();
    inv.insert("temporal-after", ArityKind::Satellite);
    inv.insert("consequence", ArityKind::Satellite);
    inv.insert("adversative-concession", ArityKind::Satellite);
    GraphBuilder::new("inco")
        .relations(inv)
        .edu(29, "Inco raised its bid .")
        .edu(30, "The offer lifted the stock ,")
        .edu(31, "but then on a single day Inco lifted the price again .")
        .span(40)
        .span(41)
        .nucleus(30, 40)
        .satellite(31, 40, "temporal-after")
        .nucleus(29, 41)
        .satellite(40, 41, "consequence")
        .build()
}

pub fn inco_lexicon() -> (DmLexicon, DmRelationMap) {
    let lex = DmLexicon::new([
        LexiconEntry::contiguous("but"),
        LexiconEntry::contiguous("then"),
    ]);
    let mut map = DmRelationMap::new();
    map.insert("then", ["temporal"]);
    map.insert("but", ["adversative", "contrast", "concession"]);
    (lex, map)
}

/// Rainy-day fragment: EDU 27 evaluates 23-26; a secondary concession runs
/// from 27 to the first sentence (node 28) and is licensed by "but".
pub fn rainy_day(with_secondary: bool) -> DocumentGraph {
    let mut b = GraphBuilder::new("rainy")
        .edu(23, "It rained all day")
        .edu(24, "and the streets flooded .")
        .edu(25, "We stayed inside")
        .edu(26, "and played cards .")
        .edu(27, "But it was actually nice .")
        .multinuc(28)
        .multinuc(29)
        .span(30)
        .span(31)
        .multinuc_child(23, 28, "joint-list")
        .multinuc_child(24, 28, "joint-list")
        .multinuc_child(25, 29, "joint-sequence")
        .multinuc_child(26, 29, "joint-sequence")
        .nucleus(28, 30)
        .satellite(29, 30, "causal-result")
        .nucleus(30, 31)
        .satellite(27, 31, "evaluation-comment");
    if with_secondary {
        b = b.secondary(27, 28, "adversative-concession").signal(
            EdgeRef::Secondary {
                source: 27,
                target: 28,
            },
            "orphan:orphan",
            &[17],
        );
    }
    b.build()
}

/// Trapped orphan: the second "if" cannot head an argument span.
pub fn customers() -> DocumentGraph {
    GraphBuilder::new("customers")
        .edu(1, "If you live in or near a big city ,")
        .edu(2, "it is easier to attract enough customers")
        .edu(3, "than if you live in a sparsely populated rural area .")
        .span(4)
        .span(5)
        .nucleus(2, 5)
        .satellite(1, 5, "contingency-condition")
        .nucleus(5, 4)
        .satellite(3, 4, "adversative-antithesis")
        .build()
}

pub fn customers_lexicon() -> (DmLexicon, DmRelationMap) {
    let lex = DmLexicon::new([
        LexiconEntry::contiguous("if"),
        LexiconEntry::contiguous("than"),
    ]);
    let mut map = DmRelationMap::new();
    map.insert("if", ["contingency"]);
    map.insert("than", ["adversative"]);
    (lex, map)
}

/// Builds an annotation layer from `form lemma tag head deprel` rows,
/// numbered from 1, one sentence per slice.
pub fn aux(sentences: &[&[(&str, &str, &str, usize, &str)]]) -> AuxAnnotations {
    let mut a = AuxAnnotations::default();
    for s in sentences {
        let start = a.tokens.len() + 1;
        for &(form, lemma, pos, head, deprel) in s.iter() {
            a.tokens.push(AuxToken {
                form: form.into(),
                lemma: Some(lemma.into()),
                pos: Some(pos.into()),
                head: Some(head),
                deprel: Some(deprel.into()),
            });
        }
        a.sentences.push((start, a.tokens.len()));
    }
    a
}

pub fn mention(chain: &str, start: usize, end: usize) -> Mention {
    Mention {
        chain: chain.into(),
        start,
        end,
        entity: None,
    }
}

/// "We need a plan to win ." with a purpose-attribute satellite.
pub fn plan_to_win() -> (DocumentGraph, AuxAnnotations) {
    let g = GraphBuilder::new("plan")
        .edu(1, "We need a plan")
        .edu(2, "to win .")
        .span(3)
        .nucleus(1, 3)
        .satellite(2, 3, "purpose-attribute")
        .build();
    let a = aux(&[&[
        ("We", "we", "PRP", 2, "nsubj"),
        ("need", "need", "VBP", 0, "root"),
        ("a", "a", "DT", 4, "det"),
        ("plan", "plan", "NN", 2, "obj"),
        ("to", "to", "TO", 6, "mark"),
        ("win", "win", "VB", 4, "acl"),
        (".", ".", ".", 2, "punct"),
    ]]);
    (g, a)
}

/// "Had I known , I would have left ." with a condition satellite.
pub fn had_i_known() -> (DocumentGraph, AuxAnnotations) {
    let g = GraphBuilder::new("known")
        .edu(1, "Had I known ,")
        .edu(2, "I would have left .")
        .span(3)
        .nucleus(2, 3)
        .satellite(1, 3, "contingency-condition")
        .build();
    let a = aux(&[&[
        ("Had", "have", "VBD", 3, "aux"),
        ("I", "I", "PRP", 3, "nsubj"),
        ("known", "know", "VBN", 8, "advcl"),
        (",", ",", ",", 3, "punct"),
        ("I", "I", "PRP", 8, "nsubj"),
        ("would", "would", "MD", 8, "aux"),
        ("have", "have", "VB", 8, "aux"),
        ("left", "leave", "VBN", 0, "root"),
        (".", ".", ".", 8, "punct"),
    ]]);
    (g, a)
}

/// "Did you ? No ." with the question as satellite under `relation`.
pub fn did_you(relation: &str) -> (DocumentGraph, AuxAnnotations) {
    let g = GraphBuilder::new("question")
        .edu(1, "Did you ?")
        .edu(2, "No .")
        .span(3)
        .nucleus(2, 3)
        .satellite(1, 3, relation)
        .build();
    let a = aux(&[
        &[
            ("Did", "do", "VBD", 2, "aux"),
            ("you", "you", "PRP", 0, "root"),
            ("?", "?", ".", 2, "punct"),
        ],
        &[("No", "no", "UH", 0, "root"), (".", ".", ".", 4, "punct")],
    ]);
    (g, a)
}

/// "I met her sister . She 's kind of pretty ." with an evaluation satellite;
/// "kind" is tagged as an adverb.
pub fn kind_of_pretty() -> (DocumentGraph, AuxAnnotations) {
    let g = GraphBuilder::new("pretty")
        .edu(1, "I met her sister .")
        .edu(2, "She 's kind of pretty .")
        .span(3)
        .nucleus(1, 3)
        .satellite(2, 3, "evaluation-comment")
        .build();
    let a = aux(&[
        &[
            ("I", "I", "PRP", 2, "nsubj"),
            ("met", "meet", "VBD", 0, "root"),
            ("her", "her", "PRP$", 4, "nmod:poss"),
            ("sister", "sister", "NN", 2, "obj"),
            (".", ".", ".", 2, "punct"),
        ],
        &[
            ("She", "she", "PRP", 10, "nsubj"),
            ("'s", "be", "VBZ", 10, "cop"),
            ("kind", "kind", "RB", 10, "advmod"),
            ("of", "of", "RB", 8, "fixed"),
            ("pretty", "pretty", "JJ", 0, "root"),
            (".", ".", ".", 10, "punct"),
        ],
    ]);
    (g, a)
}

/// "it rained ( and snowed a bit )" with the parenthetical as elaboration.
pub fn rained_and_snowed() -> DocumentGraph {
    GraphBuilder::new("snow")
        .edu(1, "it rained")
        .edu(2, "( and snowed a bit )")
        .span(3)
        .nucleus(1, 3)
        .satellite(2, 3, "elaboration-additional")
        .build()
}

/// "They met Kim . She was happy ." with coreference and an attribution
/// "Bolden said that it worked ." for source detection.
pub fn kim_and_bolden() -> (DocumentGraph, AuxAnnotations) {
    let g = GraphBuilder::new("kim")
        .edu(1, "They met Kim .")
        .edu(2, "She was happy .")
        .edu(3, "Bolden said")
        .edu(4, "that it worked .")
        .span(5)
        .span(6)
        .multinuc(7)
        .nucleus(1, 5)
        .satellite(2, 5, "elaboration-additional")
        .nucleus(4, 6)
        .satellite(3, 6, "attribution-positive")
        .multinuc_child(5, 7, "joint-list")
        .multinuc_child(6, 7, "joint-list")
        .build();
    let mut a = aux(&[
        &[
            ("They", "they", "PRP", 2, "nsubj"),
            ("met", "meet", "VBD", 0, "root"),
            ("Kim", "Kim", "NNP", 2, "obj"),
            (".", ".", ".", 2, "punct"),
        ],
        &[
            ("She", "she", "PRP", 7, "nsubj"),
            ("was", "be", "VBD", 7, "cop"),
            ("happy", "happy", "JJ", 0, "root"),
            (".", ".", ".", 7, "punct"),
        ],
        &[
            ("Bolden", "Bolden", "NNP", 10, "nsubj"),
            ("said", "say", "VBD", 0, "root"),
            ("that", "that", "IN", 13, "mark"),
            ("it", "it", "PRP", 13, "nsubj"),
            ("worked", "work", "VBD", 10, "ccomp"),
            (".", ".", ".", 10, "punct"),
        ],
    ]);
    a.mentions = vec![
        mention("kim", 3, 3),
        mention("kim", 5, 5),
        mention("bolden", 9, 9),
    ];
    (g, a)
}
