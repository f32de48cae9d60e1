//! `erst` command-line tool.
//!
//! Exit codes: 0 success, 1 usage error, 2 validation or input failure,
//! 3 scoring input mismatch.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(
    name = "erst",
    version,
    about = "Validate, score, align, annotate and analyze discourse graphs"
)]
struct Cli {
    /// Worker threads for per-document work (0 = one per core).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check documents against every structural constraint.
    Validate {
        #[arg(required = true)]
        docs: Vec<PathBuf>,
        /// Treat secondary edges without signals as errors.
        #[arg(long)]
        strict_secedge_signals: bool,
    },
    /// Write binary (right-branching) versions of documents.
    Binarize { input: PathBuf, out_dir: PathBuf },
    /// Score predicted documents against gold documents with the same file names.
    Score {
        gold_dir: PathBuf,
        pred_dir: PathBuf,
        /// Add per-document lines.
        #[arg(long)]
        per_doc: bool,
        /// Add per-signal-type metrics.
        #[arg(long)]
        types: bool,
    },
    /// Attach connectives to relations and report orphans.
    Align(AlignArgs),
    /// Add rule-derived signals from annotation layers.
    Induce(InduceArgs),
    /// Corpus statistics as tab-separated tables.
    Stats(StatsArgs),
    /// List relation instances matching a query.
    Extract(ExtractArgs),
    /// Draw a document as SVG or as an indented outline.
    Render(RenderArgs),
}

#[derive(Args)]
struct AlignArgs {
    #[arg(required = true)]
    docs: Vec<PathBuf>,
    /// Connective lexicon.
    #[arg(long)]
    lexicon: PathBuf,
    /// Connective-to-relation map.
    #[arg(long)]
    map: PathBuf,
    /// Also list secondary-edge candidates for orphans.
    #[arg(long)]
    emit_candidates: bool,
    /// Token annotation; its sentence boundaries add adjacent-sentence candidates.
    #[arg(long)]
    aux: Option<PathBuf>,
    /// Write updated documents here.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct InduceArgs {
    #[arg(required = true)]
    docs: Vec<PathBuf>,
    /// Token annotation columns (lemma, tag, dependencies, sentences, layout).
    #[arg(long)]
    aux: PathBuf,
    /// Coreference mentions.
    #[arg(long)]
    coref: PathBuf,
    /// Signal eligibility table (default: built in).
    #[arg(long)]
    eligibility: Option<PathBuf>,
    /// Indicative-word lexicon (default: built in).
    #[arg(long)]
    indicative: Option<PathBuf>,
    /// Externally produced signals to merge.
    #[arg(long)]
    ingest: Option<PathBuf>,
    /// Write updated documents here.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Report {
    Marking,
    Signals,
    TopMarkers,
    Secondary,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum By {
    Genre,
    Class,
    Document,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Dm,
    Lexical,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(required = true)]
    docs: Vec<PathBuf>,
    #[arg(long, value_enum)]
    report: Report,
    #[arg(long, value_enum)]
    by: Option<By>,
    /// Relation class or label for top-markers.
    #[arg(long)]
    class: Option<String>,
    #[arg(long, value_enum, default_value_t = Kind::Dm)]
    kind: Kind,
    /// Number of top markers.
    #[arg(long, default_value_t = 10)]
    n: usize,
    /// Minimum secondary count (exclusive) for the secondary report.
    #[arg(long, default_value_t = 0)]
    threshold: usize,
    /// Aligned columns instead of tab-separated.
    #[arg(long)]
    pretty: bool,
    #[arg(long)]
    include_same_unit: bool,
    /// Document-to-genre overrides.
    #[arg(long)]
    genres: Option<PathBuf>,
    /// Token annotation for lemma lookup.
    #[arg(long)]
    aux: Option<PathBuf>,
}

#[derive(Args)]
struct ExtractArgs {
    #[arg(required = true)]
    docs: Vec<PathBuf>,
    /// Relation label or class.
    #[arg(long)]
    relation: String,
    /// Signal type (`major` or `major:subtype`).
    #[arg(long)]
    signal_type: Option<String>,
    /// Anchored words.
    #[arg(long)]
    surface: Option<String>,
    /// Token annotation for lemma lookup.
    #[arg(long)]
    aux: Option<PathBuf>,
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "output")]
struct RenderOutput {
    #[arg(long, group = "output")]
    svg: Option<PathBuf>,
    #[arg(long, group = "output")]
    text: bool,
}

#[derive(Args)]
struct RenderArgs {
    doc: PathBuf,
    #[command(flatten)]
    output: RenderOutput,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build_global()
    {
        eprintln!("error\t-\t{e}");
        return ExitCode::from(EXIT_USAGE);
    }
    let code = match cli.command {
        Command::Validate {
            docs,
            strict_secedge_signals,
        } => commands::validate(&docs, strict_secedge_signals),
        Command::Binarize { input, out_dir } => commands::binarize(&input, &out_dir),
        Command::Score {
            gold_dir,
            pred_dir,
            per_doc,
            types,
        } => commands::score(&gold_dir, &pred_dir, per_doc, types),
        Command::Align(a) => commands::align(&a),
        Command::Induce(a) => commands::induce(&a),
        Command::Stats(a) => commands::stats(&a),
        Command::Extract(a) => commands::extract(&a),
        Command::Render(a) => commands::render(&a),
    };
    ExitCode::from(code)
}
