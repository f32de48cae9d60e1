mod common;

use erst::io::{
    parse_aux, parse_coref, parse_document, parse_eligibility, parse_genre_map, parse_indicative,
    parse_lexicon, parse_map, parse_signal_list, read_document, read_document_str, write_document,
    write_document_string, write_signal_list, IoError,
};
use erst::treeops::isomorphic;
use erst::validate::codes;
use erst::{validate, EdgeRef, GraphBuilder, NodeKind, SignalLabel, ValidationPolicy};

use common::*;

const MINIMAL: &str = r#"<?xml version="1.0" encoding="UTF-8"?>
<erst format-version="1" doc="tiny">
  <header>
    <relations>
      <rel name="causal-cause" type="satellite"/>
    </relations>
    <sigtypes>
      <sig major="dm" subtypes="dm"/>
    </sigtypes>
  </header>
  <body>
    <segment id="1" parent="3" relname="span">It broke</segment>
    <segment id="2" parent="3" relname="causal-cause">because it fell .</segment>
    <group id="3" type="span"/>
    <signal source="2" type="dm" subtype="dm" tokens="3"/>
  </body>
</erst>
"#;

#[test]
fn reads_a_minimal_document() {
    let g = read_document_str(MINIMAL, &ValidationPolicy::default()).unwrap();
    assert_eq!(g.id(), "tiny");
    assert_eq!(g.tokens().len(), 6);
    assert_eq!(g.token_form(3), Some("because"));
    assert_eq!(g.edus()[1].first_token, 3);
    assert_eq!(g.node(3).unwrap().kind, NodeKind::Span);
    assert_eq!(g.signals().len(), 1);
    assert_eq!(g.signals()[0].edge, EdgeRef::Primary(2));
}

#[test]
fn write_then_read_round_trips() {
    for g in [rainy_day(true), inco(), customers(), rained_and_snowed()] {
        let text = write_document_string(&g).unwrap();
        let back = read_document_str(&text, &ValidationPolicy::default()).unwrap();
        assert!(isomorphic(&g, &back), "{}", g.id());
        assert_eq!(back.tokens(), g.tokens());
        let mut a = g.signals().to_vec();
        let mut b = back.signals().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(write_document_string(&back).unwrap(), text);
    }
}

#[test]
fn writes_to_disk_and_reads_back() {
    let dir = std::env::temp_dir().join(format!("erst-io-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rainy.xml");
    let g = rainy_day(true);
    write_document(&g, &path).unwrap();
    let back = read_document(&path).unwrap();
    assert!(isomorphic(&g, &back));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn dangling_signal_names_the_element() {
    let text = write_document_string(&rainy_day(true)).unwrap().replace(
        "source=\"27-28\" type=\"orphan\"",
        "source=\"12-99\" type=\"orphan\"",
    );
    let err = read_document_str(&text, &ValidationPolicy::default()).unwrap_err();
    match &err {
        IoError::Format {
            element,
            message,
            line,
        } => {
            assert_eq!(element, "signal");
            assert!(message.contains("12-99"), "{message}");
            assert!(*line > 0);
        }
        other => panic!("unexpected error {other}"),
    }
    assert!(err.to_string().contains("<signal>"));
}

#[test]
fn structural_parse_keeps_invalid_graphs_for_the_validator() {
    let text = MINIMAL.replace("relname=\"causal-cause\"", "relname=\"span\"");
    let g = parse_document(&text).unwrap();
    let report = validate(&g, &ValidationPolicy::default());
    assert!(
        report.codes().contains(codes::EMPTY_HIERARCHY)
            || report.codes().contains(codes::DANGLING_SIGNAL)
    );
    let err = read_document_str(&text, &ValidationPolicy::default()).unwrap_err();
    assert!(matches!(
        err,
        IoError::Format { .. } | IoError::Invalid { .. }
    ));
}

#[test]
fn malformed_xml_reports_a_line() {
    let err = read_document_str(
        "<erst format-version=\"1\" doc=\"x\">\n<body>\n</erst>",
        &ValidationPolicy::default(),
    )
    .unwrap_err();
    assert!(matches!(err, IoError::Xml { line: 3, .. }), "{err}");
}

#[test]
fn unsupported_version_is_rejected() {
    let text = MINIMAL.replace("format-version=\"1\"", "format-version=\"9\"");
    let err = read_document_str(&text, &ValidationPolicy::default()).unwrap_err();
    assert!(err.to_string().contains("format-version"));
}

#[test]
fn tokenless_layout_signal_round_trips() {
    let g = GraphBuilder::new("heading")
        .edu(1, "Results")
        .edu(2, "Everything worked .")
        .span(3)
        .nucleus(2, 3)
        .satellite(1, 3, "organization-heading")
        .signal(EdgeRef::Primary(1), "graphical:layout", &[])
        .build();
    let text = write_document_string(&g).unwrap();
    assert!(text.contains("tokens=\"\""), "{text}");
    let back = read_document_str(&text, &ValidationPolicy::default()).unwrap();
    assert_eq!(back.signals(), g.signals());
    assert!(back.signals()[0].tokens.is_empty());
}

#[test]
fn writer_escapes_markup() {
    let g = GraphBuilder::new("amp")
        .edu(1, "A & B said \"<no>\"")
        .build();
    let text = write_document_string(&g).unwrap();
    assert!(
        text.contains("A &amp; B said &quot;&lt;no&gt;&quot;"),
        "{text}"
    );
    let back = read_document_str(&text, &ValidationPolicy::default()).unwrap();
    assert_eq!(back.token_form(5), Some("\"<no>\""));
}

#[test]
fn writer_refuses_invalid_graphs() {
    let g = GraphBuilder::new("bad")
        .edu(1, "a")
        .edu(2, "b")
        .span(3)
        .nucleus(1, 3)
        .nucleus(2, 3)
        .build();
    assert!(matches!(
        write_document_string(&g),
        Err(IoError::Invalid { .. })
    ));
}

#[test]
fn connective_lexicon_and_map() {
    let lex = parse_lexicon(
        "# connectives\nbecause\nif ... then\tDISCONT\nUS\tCASED\n@modifier\tjust only\n",
    )
    .unwrap();
    assert_eq!(lex.len(), 3);
    let map = parse_map("because\tcausal,explanation\nthen\ttemporal\n").unwrap();
    assert!(map.compatible("because", "causal-cause"));
    assert!(map.compatible("then", "temporal-after"));
    assert!(!map.compatible("then", "causal-cause"));
    let err = parse_map("because\n").unwrap_err();
    assert!(
        matches!(
            err,
            IoError::Sidecar {
                kind: "map",
                line: 1,
                ..
            }
        ),
        "{err}"
    );
}

#[test]
fn eligibility_and_indicative_tables() {
    let table =
        parse_eligibility("graphical:colon\telaboration\n@nucleus-marking\ttopic-solutionhood\n")
            .unwrap();
    let colon: SignalLabel = "graphical:colon".parse().unwrap();
    assert!(table.is_eligible(&colon, "elaboration-additional"));
    assert!(!table.is_eligible(&colon, "joint-list"));
    assert!(table.nucleus_marks("topic-solutionhood"));

    let lex = parse_indicative("good\tJJ\tevaluation\n").unwrap();
    assert!(lex.indicates("good", "JJR", "evaluation-comment"));
    assert!(!lex.indicates("good", "NN", "evaluation-comment"));
}

#[test]
fn aux_columns_with_layout_and_documents() {
    let text = "# newdoc id = a\n# layout\theading\t1\t1\n1\tResults\tresult\tNNS\t0\troot\n\n2\tIt\tit\tPRP\t3\tnsubj\n3\tworked\twork\tVBD\t0\troot\n\n# newdoc id = b\n1\tHi\t_\t_\t_\t_\n";
    let docs = parse_aux(text).unwrap();
    let a = &docs["a"];
    assert_eq!(a.tokens.len(), 3);
    assert_eq!(a.sentences, vec![(1, 1), (2, 3)]);
    assert_eq!(a.layout.len(), 1);
    assert_eq!(a.head(2), Some(3));
    let b = &docs["b"];
    assert_eq!(b.tokens[0].lemma, None);
    assert_eq!(b.tokens[0].head, None);
}

#[test]
fn aux_cycle_names_the_sentence() {
    let text = "1\tA\ta\tDT\t0\troot\n\n2\tB\tb\tNN\t3\tdep\n3\tC\tc\tNN\t2\tdep\n";
    let err = parse_aux(text).unwrap_err();
    match err {
        IoError::Sidecar {
            kind,
            line,
            message,
        } => {
            assert_eq!(kind, "aux");
            assert_eq!(line, 3);
            assert!(message.contains("sentence 2"), "{message}");
        }
        other => panic!("unexpected error {other}"),
    }
}

#[test]
fn aux_index_must_be_sequential() {
    let err = parse_aux("1\tA\ta\tDT\t0\troot\n3\tB\tb\tNN\t1\tdep\n").unwrap_err();
    assert!(matches!(err, IoError::Sidecar { line: 2, .. }), "{err}");
}

#[test]
fn coref_and_genres() {
    let m = parse_coref("d1\tkim\t3\t3\n d1\tkim\t5\t5\tperson\n").unwrap();
    assert_eq!(m["d1"].len(), 2);
    assert!(parse_coref("d1\tkim\t5\t3\n").is_err());
    let g = parse_genre_map("GUM_x_1\tnews\n").unwrap();
    assert_eq!(g["GUM_x_1"], "news");
}

#[test]
fn signal_list_round_trips() {
    let g = rainy_day(true);
    let text = write_signal_list(g.id(), g.signals());
    let parsed = parse_signal_list(&text).unwrap();
    let signals: Vec<_> = parsed["rainy"].iter().map(|(_, s)| s.clone()).collect();
    assert_eq!(signals, g.signals());
    assert_eq!(parsed["rainy"][0].0, 2);

    let tokenless = parse_signal_list("1\tgraphical:layout\t_\n2\tgraphical:layout\n").unwrap();
    assert!(tokenless[""].iter().all(|(_, s)| s.tokens.is_empty()));
    assert!(parse_signal_list("1\tnot-a-label\t3\n").is_err());
}
