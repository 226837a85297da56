use anyhow::{Context, Result};
use clap::Subcommand;
use forge_review::{router, router_with_ui, Corpus, ReviewState, VerdictLog};
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;
use std::sync::Arc;

use crate::{corpus_id, read_docs};

#[derive(Debug, Subcommand)]
pub enum ReviewCommand {
    /// Serve the triage API and UI.
    Serve {
        /// Corpus JSONL (repeatable; the file stem is the corpus id).
        #[arg(long, required = true)]
        corpus: Vec<PathBuf>,
        /// Append-only verdict log; replayed on start.
        #[arg(long)]
        log: PathBuf,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        /// Static UI bundle served at `/` instead of the built-in page.
        #[arg(long)]
        ui: Option<PathBuf>,
    },
}

pub fn run(cmd: ReviewCommand) -> Result<()> {
    let ReviewCommand::Serve {
        corpus,
        log,
        port,
        host,
        ui,
    } = cmd;
    let corpora = corpus
        .iter()
        .map(|p| Ok(Corpus::new(corpus_id(p), read_docs(p)?)))
        .collect::<Result<Vec<_>>>()?;
    let (log, records) = VerdictLog::open(&log).with_context(|| format!("opening {}", log.display()))?;
    tracing::info!(verdicts = records.len(), "verdict log replayed");
    let state = Arc::new(ReviewState::new(corpora, log, &records)?);
    let app = match ui {
        Some(dir) => router_with_ui(state, dir),
        None => router(state),
    };
    let rt = tokio::runtime::Runtime::new()?;
    rt.block_on(forge_review::serve(app, SocketAddr::new(host, port)))?;
    Ok(())
}
