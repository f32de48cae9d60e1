use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Result};

use erst::align::{
    associate, detect_dms, enumerate_secedge_candidates, AssociateOptions, DmStatus,
};
use erst::induce::{
    induce_all, ingest_external_signals, AuxAnnotations, EligibilityTable, IndicativeLexicon,
};
use erst::io::{
    parse_aux, parse_coref, parse_eligibility, parse_genre_map, parse_indicative, parse_lexicon,
    parse_map, parse_signal_list, write_document,
};
use erst::metrics::{score_document, ScoreOptions, ScoreReport};
use erst::render::{render_svg, render_text, RenderOptions};
use erst::stats::{
    distribution_table, extract as extract_records, extract_table, marking_table,
    proportions_table, relation_marking_stats, secondary_proportions, signal_distribution,
    top_markers, top_markers_table, DistributionBy, GroupBy, MarkerKind, Query, StatsOptions,
    Table,
};
use erst::treeops::binarize as binarize_graph;
use erst::{coarse_class, DocumentGraph, SignalLabel, SignalMajor, ValidationPolicy};

use crate::input::{
    check, expand, file_name, load, load_all, par_map, read_sidecar, report_error, report_warning,
};
use crate::{
    AlignArgs, By, ExtractArgs, InduceArgs, Kind, RenderArgs, Report, StatsArgs, EXIT_INVALID,
    EXIT_MISMATCH, EXIT_OK, EXIT_USAGE,
};

fn usage(message: impl std::fmt::Display) -> u8 {
    report_error("usage", message);
    EXIT_USAGE
}

fn expand_or_report(paths: &[PathBuf]) -> Option<Vec<PathBuf>> {
    match expand(paths) {
        Ok(p) => Some(p),
        Err(e) => {
            report_error("input", e);
            None
        }
    }
}

fn tokens(ts: &[usize]) -> String {
    let s: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
    s.join(",")
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| anyhow!("cannot create {}: {e}", dir.display()))
}

pub fn validate(docs: &[PathBuf], strict: bool) -> u8 {
    let Some(paths) = expand_or_report(docs) else {
        return EXIT_INVALID;
    };
    let policy = if strict {
        ValidationPolicy::strict()
    } else {
        ValidationPolicy::lenient()
    };
    let results = par_map(&paths, |p| check(p, &policy));
    let mut out = String::new();
    let mut failed = false;
    for (p, r) in paths.iter().zip(results) {
        let place = p.display().to_string();
        match r {
            Ok(report) => {
                for v in &report.violations {
                    eprintln!("{place}\t{v}");
                }
                let ok = report.is_valid();
                failed |= !ok;
                let _ = writeln!(out, "{place}\t{}", if ok { "ok" } else { "invalid" });
            }
            Err(e) => {
                failed = true;
                report_error(&place, e);
                let _ = writeln!(out, "{place}\tunreadable");
            }
        }
    }
    print!("{out}");
    if failed {
        EXIT_INVALID
    } else {
        EXIT_OK
    }
}

pub fn binarize(input: &Path, out_dir: &Path) -> u8 {
    let Some(paths) = expand_or_report(&[input.to_path_buf()]) else {
        return EXIT_INVALID;
    };
    if let Err(e) = create_dir(out_dir) {
        report_error(&out_dir.display().to_string(), e);
        return EXIT_INVALID;
    }
    let results = par_map(&paths, |p| -> Result<PathBuf> {
        let graph = load(p)?;
        let binary = binarize_graph(&graph)?;
        let target = out_dir.join(file_name(p));
        write_document(&binary, &target)?;
        Ok(target)
    });
    let mut failed = false;
    for (p, r) in paths.iter().zip(results) {
        match r {
            Ok(target) => println!("{}\t{}", p.display(), target.display()),
            Err(e) => {
                failed = true;
                report_error(&p.display().to_string(), e);
            }
        }
    }
    if failed {
        EXIT_INVALID
    } else {
        EXIT_OK
    }
}

fn by_file_name(dir: &Path) -> Result<BTreeMap<String, PathBuf>> {
    if !dir.is_dir() {
        return Err(anyhow!("{} is not a directory", dir.display()));
    }
    Ok(expand(&[dir.to_path_buf()])?
        .into_iter()
        .map(|p| (file_name(&p), p))
        .collect())
}

/// Pairing is by file name, so the graph id becomes the file stem.
fn renamed(graph: DocumentGraph, path: &Path) -> DocumentGraph {
    let mut parts = graph.into_parts();
    parts.id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    DocumentGraph::from_parts(parts)
}

pub fn score(gold_dir: &Path, pred_dir: &Path, per_doc: bool, types: bool) -> u8 {
    let (gold, pred) = match (by_file_name(gold_dir), by_file_name(pred_dir)) {
        (Ok(g), Ok(p)) => (g, p),
        (Err(e), _) | (_, Err(e)) => {
            report_error("input", e);
            return EXIT_INVALID;
        }
    };
    let mut report = ScoreReport::default();
    let mut pairs = Vec::new();
    for (name, g) in &gold {
        match pred.get(name) {
            Some(p) => pairs.push((name.clone(), g.clone(), p.clone())),
            None => {
                report_warning(
                    &g.display().to_string(),
                    "no prediction with this name; skipped",
                );
                report.missing_in_pred.push(name.clone());
            }
        }
    }
    for (name, p) in &pred {
        if !gold.contains_key(name) {
            report_warning(
                &p.display().to_string(),
                "no gold document with this name; skipped",
            );
            report.missing_in_gold.push(name.clone());
        }
    }

    let options = ScoreOptions::default();
    let results = par_map(&pairs, |(_, g, p)| {
        let gold = load(g).map_err(|e| (g.clone(), e))?;
        let pred = load(p).map_err(|e| (p.clone(), e))?;
        Ok(score_document(
            &renamed(gold, g),
            &renamed(pred, p),
            &options,
        ))
    });
    let mut unreadable = false;
    let mut mismatch = pairs.is_empty();
    for ((name, _, _), r) in pairs.iter().zip(results) {
        match r {
            Ok(Ok(s)) => report.documents.push(s),
            Ok(Err(e)) => {
                mismatch |= e.is_mismatch();
                unreadable |= !e.is_mismatch();
                report_error(name, &e);
                report.failures.push((name.clone(), e));
            }
            Err((path, e)) => {
                unreadable = true;
                report_error(&path.display().to_string(), e);
            }
        }
    }
    print!("{}", report.to_key_values(per_doc, types));
    if mismatch {
        EXIT_MISMATCH
    } else if unreadable {
        EXIT_INVALID
    } else {
        EXIT_OK
    }
}

fn write_updated(out_dir: Option<&Path>, source: &Path, graph: &DocumentGraph) -> Result<()> {
    if let Some(dir) = out_dir {
        write_document(graph, &dir.join(file_name(source)))?;
    }
    Ok(())
}

pub fn align(args: &AlignArgs) -> u8 {
    let sidecars = read_sidecar(&args.lexicon, parse_lexicon).and_then(|lex| {
        let map = read_sidecar(&args.map, parse_map)?;
        let aux = match &args.aux {
            Some(p) => Some(read_sidecar(p, parse_aux)?),
            None => None,
        };
        Ok((lex, map, aux))
    });
    let (lex, map, aux) = match sidecars {
        Ok(s) => s,
        Err(e) => {
            report_error("input", e);
            return EXIT_INVALID;
        }
    };
    let Some(paths) = expand_or_report(&args.docs) else {
        return EXIT_INVALID;
    };
    if let Some(dir) = &args.out_dir {
        if let Err(e) = create_dir(dir) {
            report_error(&dir.display().to_string(), e);
            return EXIT_INVALID;
        }
    }

    let results = par_map(&paths, |p| -> Result<(String, String)> {
        let graph = load(p)?;
        let dms = detect_dms(&graph, &lex);
        let alignment = associate(&graph, &dms, &map, &AssociateOptions::default())?;
        let doc = graph.id().to_string();
        let mut rows = String::new();
        for o in &alignment.occurrences {
            let edge = match o.status {
                DmStatus::Attached(e) | DmStatus::Orphan { edge: Some(e) } => e.to_string(),
                _ => "-".into(),
            };
            let _ = writeln!(
                rows,
                "{doc}\t{}\t{}\t{}\t{edge}",
                tokens(&o.tokens),
                o.surface,
                o.status.as_str()
            );
        }
        let mut candidates = String::new();
        if args.emit_candidates {
            let orphans: Vec<_> = alignment.orphans().cloned().collect();
            let sentences = aux
                .as_ref()
                .and_then(|a| a.get(graph.id()))
                .map(|a| a.sentences.as_slice())
                .filter(|s| !s.is_empty());
            for c in enumerate_secedge_candidates(&graph, &orphans, &map, sentences) {
                let o = &orphans[c.orphan];
                let _ = writeln!(
                    candidates,
                    "{doc}\t{}\t{}\t{}\t{}\t{}\t{}",
                    tokens(&o.tokens),
                    o.surface,
                    c.edge.source,
                    c.edge.target,
                    c.edge.relation,
                    c.kind.as_str()
                );
            }
        }
        write_updated(args.out_dir.as_deref(), p, &alignment.apply(&graph))?;
        Ok((rows, candidates))
    });

    let mut rows = String::from("doc\ttokens\tsurface\tstatus\tedge\n");
    let mut candidates = String::from("doc\ttokens\tsurface\tsource\ttarget\trelation\tkind\n");
    let mut failed = false;
    for (p, r) in paths.iter().zip(results) {
        match r {
            Ok((a, c)) => {
                rows.push_str(&a);
                candidates.push_str(&c);
            }
            Err(e) => {
                failed = true;
                report_error(&p.display().to_string(), e);
            }
        }
    }
    print!("{rows}");
    if args.emit_candidates {
        print!("\n{candidates}");
    }
    if failed {
        EXIT_INVALID
    } else {
        EXIT_OK
    }
}

pub fn induce(args: &InduceArgs) -> u8 {
    let sidecars = (|| -> Result<_> {
        let aux = read_sidecar(&args.aux, parse_aux)?;
        let coref = read_sidecar(&args.coref, parse_coref)?;
        let table = match &args.eligibility {
            Some(p) => read_sidecar(p, parse_eligibility)?,
            None => EligibilityTable::standard(),
        };
        let lexicon = match &args.indicative {
            Some(p) => read_sidecar(p, parse_indicative)?,
            None => IndicativeLexicon::standard(),
        };
        let ingest = match &args.ingest {
            Some(p) => read_sidecar(p, parse_signal_list)?,
            None => BTreeMap::new(),
        };
        Ok((aux, coref, table, lexicon, ingest))
    })();
    let (aux, coref, table, lexicon, ingest) = match sidecars {
        Ok(s) => s,
        Err(e) => {
            report_error("input", e);
            return EXIT_INVALID;
        }
    };
    let Some(paths) = expand_or_report(&args.docs) else {
        return EXIT_INVALID;
    };
    if let Some(dir) = &args.out_dir {
        if let Err(e) = create_dir(dir) {
            report_error(&dir.display().to_string(), e);
            return EXIT_INVALID;
        }
    }

    let results = par_map(&paths, |p| -> Result<String> {
        let graph = load(p)?;
        let doc = graph.id().to_string();
        let mut annotations: AuxAnnotations = aux
            .get(&doc)
            .or_else(|| aux.get(""))
            .cloned()
            .ok_or_else(|| anyhow!("no token annotation for document {doc}"))?;
        annotations.mentions = coref.get(&doc).cloned().unwrap_or_default();
        let induced = induce_all(&graph, &annotations, &table, &lexicon)?;
        let mut updated = induced.apply(&graph);
        if let Some(external) = ingest.get(&doc) {
            updated = ingest_external_signals(&updated, external, &ValidationPolicy::lenient())?;
        }

        let mut rows = String::new();
        for s in &induced.signals {
            let _ = writeln!(
                rows,
                "{doc}\tsignal\t{}\t{}\t{}",
                s.edge,
                s.label,
                tokens(&s.tokens.iter().copied().collect::<Vec<_>>())
            );
        }
        for r in &induced.review {
            let _ = writeln!(
                rows,
                "{doc}\treview\t{}\t{}:{}\t{}\t{}",
                r.edge,
                r.relation,
                r.kind,
                tokens(&r.tokens),
                r.note
            );
        }
        for s in &induced.skipped {
            let missing: Vec<&str> = s.missing.iter().map(|l| l.as_str()).collect();
            let _ = writeln!(rows, "{doc}\tskipped\t{}\t{}", s.family, missing.join(","));
        }
        write_updated(args.out_dir.as_deref(), p, &updated)?;
        Ok(rows)
    });

    let mut failed = false;
    let mut out = String::new();
    for (p, r) in paths.iter().zip(results) {
        match r {
            Ok(rows) => out.push_str(&rows),
            Err(e) => {
                failed = true;
                report_error(&p.display().to_string(), e);
            }
        }
    }
    print!("{out}");
    if failed {
        EXIT_INVALID
    } else {
        EXIT_OK
    }
}

fn load_corpus(docs: &[PathBuf]) -> Option<(Vec<DocumentGraph>, bool)> {
    let paths = expand_or_report(docs)?;
    let (loaded, failed) = load_all(&paths);
    Some((loaded.into_iter().map(|(_, g)| g).collect(), failed))
}

fn optional_aux(path: Option<&Path>) -> Result<Option<BTreeMap<String, AuxAnnotations>>> {
    path.map(|p| read_sidecar(p, parse_aux)).transpose()
}

fn emit(table: &Table, pretty: bool) {
    if pretty {
        print!("{}", table.to_pretty());
    } else {
        print!("{}", table.to_tsv());
    }
}

pub fn stats(args: &StatsArgs) -> u8 {
    let table_kind = match (args.report, args.by) {
        (Report::Marking, Some(By::Class)) => return usage("marking cannot be grouped by class"),
        (Report::Signals, Some(By::Document)) => {
            return usage("signals can be grouped by class or genre")
        }
        (Report::TopMarkers | Report::Secondary, Some(_)) => {
            return usage("--by applies to the marking and signals reports")
        }
        (Report::TopMarkers, None) if args.class.is_none() => {
            return usage("top-markers needs --class")
        }
        (r, by) => (r, by),
    };
    let mut options = StatsOptions {
        include_same_unit: args.include_same_unit,
        ..StatsOptions::default()
    };
    let aux = match args
        .genres
        .as_deref()
        .map(|p| read_sidecar(p, parse_genre_map))
        .transpose()
        .and_then(|g| Ok((g, optional_aux(args.aux.as_deref())?)))
    {
        Ok((genres, aux)) => {
            options.genres = genres.unwrap_or_default();
            aux
        }
        Err(e) => {
            report_error("input", e);
            return EXIT_INVALID;
        }
    };
    let Some((corpus, failed)) = load_corpus(&args.docs) else {
        return EXIT_INVALID;
    };

    let table = match table_kind {
        (Report::Marking, by) => {
            let group = match by {
                Some(By::Document) => GroupBy::Document,
                Some(By::Genre) => GroupBy::Genre,
                _ => GroupBy::None,
            };
            marking_table(&relation_marking_stats(&corpus, group, &options))
        }
        (Report::Signals, by) => {
            let group = match by {
                Some(By::Genre) => DistributionBy::Genre,
                _ => DistributionBy::Class,
            };
            distribution_table(&signal_distribution(&corpus, group, &options))
        }
        (Report::TopMarkers, _) => {
            let kind = match args.kind {
                Kind::Dm => MarkerKind::Dm,
                Kind::Lexical => MarkerKind::Lexical,
            };
            let class = args.class.as_deref().unwrap_or_default();
            top_markers_table(&top_markers(
                &corpus,
                class,
                kind,
                args.n,
                aux.as_ref(),
                &options,
            ))
        }
        (Report::Secondary, _) => {
            proportions_table(&secondary_proportions(&corpus, args.threshold, &options))
        }
    };
    emit(&table, args.pretty);
    if failed {
        EXIT_INVALID
    } else {
        EXIT_OK
    }
}

fn parse_signal_type(text: &str) -> Result<(SignalMajor, Option<String>)> {
    if text.contains(':') {
        let label: SignalLabel = text.parse().map_err(|e| anyhow!("{e}"))?;
        Ok((label.major, Some(label.subtype)))
    } else {
        let major: SignalMajor = text.parse().map_err(|e| anyhow!("{e}"))?;
        Ok((major, None))
    }
}

pub fn extract(args: &ExtractArgs) -> u8 {
    let (major, subtype) = match args
        .signal_type
        .as_deref()
        .map(parse_signal_type)
        .transpose()
    {
        Ok(Some((m, s))) => (Some(m), s),
        Ok(None) => (None, None),
        Err(e) => return usage(e),
    };
    let aux = match optional_aux(args.aux.as_deref()) {
        Ok(a) => a,
        Err(e) => {
            report_error("input", e);
            return EXIT_INVALID;
        }
    };
    let Some((corpus, failed)) = load_corpus(&args.docs) else {
        return EXIT_INVALID;
    };
    let query = Query {
        relation: Some(args.relation.clone()),
        major,
        subtype,
        surface: args.surface.clone(),
        attribution: coarse_class(&args.relation) == "attribution",
    };
    emit(
        &extract_table(&extract_records(&corpus, &query, aux.as_ref())),
        args.pretty,
    );
    if failed {
        EXIT_INVALID
    } else {
        EXIT_OK
    }
}

pub fn render(args: &RenderArgs) -> u8 {
    let place = args.doc.display().to_string();
    let graph = match load(&args.doc) {
        Ok(g) => g,
        Err(e) => {
            report_error(&place, e);
            return EXIT_INVALID;
        }
    };
    if let Some(svg_path) = &args.output.svg {
        let written = render_svg(&graph, &RenderOptions::default())
            .map_err(anyhow::Error::from)
            .and_then(|svg| {
                std::fs::write(svg_path, svg)
                    .map_err(|e| anyhow!("cannot write {}: {e}", svg_path.display()))
            });
        if let Err(e) = written {
            report_error(&place, e);
            return EXIT_INVALID;
        }
    } else {
        print!("{}", render_text(&graph));
    }
    EXIT_OK
}
