mod config;
mod pipeline;
mod report;
mod review;

use clap::{Parser, Subcommand};

/// Build clean, annotated web corpora and compare corpus versions.
#[derive(Debug, Parser)]
#[command(name = "forge", version)]
struct Cli {
    /// Log debug detail to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Crawl a national TLD from seed URLs into a page-record file.
    Crawl(pipeline::CrawlArgs),
    /// Convert a page-record file to raw JSONL.
    Ingest(pipeline::IngestArgs),
    /// Extract boilerplate-free documents from raw pages.
    Extract(pipeline::ExtractArgs),
    /// Train language identification models from the bundled seeds.
    Train(pipeline::TrainArgs),
    /// Route documents to a national corpus by language.
    Langid(pipeline::LangidArgs),
    /// Remove exact, number-masked and repeated-paragraph duplicates.
    Dedup(pipeline::DedupArgs),
    /// Length filtering, removal list and genre/topic labels.
    Refine(pipeline::RefineArgs),
    /// Export documents in vertical format.
    Vert(pipeline::VertArgs),
    /// Corpus size and label distribution.
    Stats(report::StatsArgs),
    /// Compare two corpus versions.
    Diff(report::DiffArgs),
    /// Domain review service.
    Review {
        #[command(subcommand)]
        command: review::ReviewCommand,
    },
    /// Deterministic stand-in classifier speaking the refine protocol on stdin/stdout.
    ClassifyStub(pipeline::StubArgs),
    /// Write the bundled 50-page test crawl.
    Fixture(pipeline::FixtureArgs),
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    tracing_subscriber::fmt()
        .with_writer(std::io::stderr)
        .with_max_level(if cli.verbose {
            tracing::Level::DEBUG
        } else {
            tracing::Level::INFO
        })
        .with_target(false)
        .with_ansi(std::io::IsTerminal::is_terminal(&std::io::stderr()))
        .init();
    match cli.command {
        Command::Crawl(a) => pipeline::crawl(a),
        Command::Ingest(a) => pipeline::ingest(a),
        Command::Extract(a) => pipeline::extract(a),
        Command::Train(a) => pipeline::train(a),
        Command::Langid(a) => pipeline::langid(a),
        Command::Dedup(a) => pipeline::dedup(a),
        Command::Refine(a) => pipeline::refine(a),
        Command::Vert(a) => pipeline::vert(a),
        Command::Stats(a) => report::stats(a),
        Command::Diff(a) => report::diff(a),
        Command::Review { command } => review::run(command),
        Command::ClassifyStub(a) => pipeline::classify_stub(a),
        Command::Fixture(a) => pipeline::fixture(a),
    }
}

/// Buffered writer for `path`, creating parent directories.
pub(crate) fn create(path: &std::path::Path) -> anyhow::Result<std::io::BufWriter<std::fs::File>> {
    use anyhow::Context;
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let f = std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(std::io::BufWriter::new(f))
}

pub(crate) fn open(path: &std::path::Path) -> anyhow::Result<std::io::BufReader<std::fs::File>> {
    use anyhow::Context;
    let f = std::fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(std::io::BufReader::new(f))
}

pub(crate) fn read_docs(path: &std::path::Path) -> anyhow::Result<Vec<forge_core::Document>> {
    use anyhow::Context;
    forge_core::corpus::read_documents(open(path)?).with_context(|| format!("reading {}", path.display()))
}

pub(crate) fn write_docs(path: &std::path::Path, docs: &[forge_core::Document]) -> anyhow::Result<()> {
    use std::io::Write;
    let mut out = create(path)?;
    forge_core::corpus::write_documents(&mut out, docs)?;
    out.flush()?;
    Ok(())
}

/// Corpus id of a JSONL file: its file stem.
pub(crate) fn corpus_id(path: &std::path::Path) -> String {
    path.file_stem()
        .map_or_else(|| "corpus".to_string(), |s| s.to_string_lossy().into_owned())
}
