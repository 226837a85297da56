use anyhow::{bail, Context, Result};
use clap::Args;
use forge_core::corpus::export_vert;
use forge_core::crawler::{
    ingest_warc, write_record, Crawl, HttpFetcher, PageRecord, Politeness, RawPage, ScopeRule, USER_AGENT,
};
use forge_core::dedup::{dedup_exact, dedup_paragraphs, write_signatures, MinHasher, SignatureSet};
use forge_core::extract::{extract_page, ExtractionParams, StopwordList};
use forge_core::langid::{parse_wordlist, LangidModels, WordlistNB, HBS_ORDER};
use forge_core::refine::{
    annotate_corpus, apply_removal_list, filter_short, Classifier, ClassifyRequest, FilterOutcome, LabelSchema,
    RemovalList, StubClassifier, StubMode, SubprocessClassifier, MIN_PARAGRAPH_CHARS, MIN_WORDS, SCHEMA_ENV,
};
use forge_core::{Document, Language, Schema};
use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use crate::config::ExtractConfig;
use crate::{create, open, read_docs, write_docs};

#[derive(Debug, Args)]
pub struct CrawlArgs {
    /// File with one seed URL per line.
    #[arg(long)]
    seeds: PathBuf,
    /// National top-level domain, e.g. `si`.
    #[arg(long)]
    tld: String,
    /// Seconds between requests to one host (at least 1).
    #[arg(long, default_value_t = 5.0)]
    delay: f64,
    #[arg(long, default_value_t = 1000)]
    max_pages: usize,
    #[arg(long, default_value_t = 10)]
    max_depth: usize,
    /// In-scope pages that must link to a generic-TLD domain before it is admitted.
    #[arg(long, default_value_t = 3)]
    link_threshold: u32,
    /// Generic-TLD domain admitted unconditionally (repeatable).
    #[arg(long = "allow-domain")]
    allow_domains: Vec<String>,
    /// Per-request timeout in seconds.
    #[arg(long, default_value_t = 30)]
    timeout: u64,
    #[arg(long)]
    out: PathBuf,
}

pub fn crawl(a: CrawlArgs) -> Result<()> {
    let seeds: Vec<String> = open(&a.seeds)?
        .lines()
        .collect::<std::io::Result<Vec<_>>>()?
        .into_iter()
        .map(|l| l.trim().to_string())
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    if a.delay.is_nan() || a.delay < 0.0 {
        bail!("--delay must be a non-negative number of seconds");
    }
    let rule = ScopeRule::new(&a.tld, a.link_threshold)?.with_generic_domains(a.allow_domains);
    let politeness = Politeness {
        delay: Duration::from_secs_f64(a.delay),
        max_pages: a.max_pages,
        max_depth: a.max_depth,
    };
    let fetcher = HttpFetcher::new(USER_AGENT, Duration::from_secs(a.timeout));
    let crawl = Crawl::new(fetcher, &seeds, rule, politeness)?;
    let mut out = create(&a.out)?;
    let mut n = 0usize;
    for page in crawl {
        write_record(&mut out, &page)?;
        n += 1;
        tracing::info!(url = %page.url, status = page.http_status, "fetched");
    }
    out.flush()?;
    tracing::info!(records = n, out = %a.out.display(), "crawl finished");
    Ok(())
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

pub fn ingest(a: IngestArgs) -> Result<()> {
    let mut out = create(&a.out)?;
    let mut n = 0usize;
    for rec in ingest_warc(&a.input)? {
        let rec = rec.with_context(|| format!("reading {}", a.input.display()))?;
        serde_json::to_writer(&mut out, &RawPage::from(&rec))?;
        out.write_all(b"\n")?;
        n += 1;
    }
    out.flush()?;
    tracing::info!(records = n, "ingested");
    Ok(())
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    /// Raw page JSONL from `forge ingest`.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Extraction parameters (TOML); defaults apply when absent.
    #[arg(long)]
    params: Option<PathBuf>,
    /// Language of the bundled stopword list when the parameters name none.
    #[arg(long, default_value = "sl")]
    lang: Language,
}

pub fn extract(a: ExtractArgs) -> Result<()> {
    let params: ExtractionParams = match &a.params {
        Some(p) => ExtractConfig::load(p)?.params(a.lang, p.parent().unwrap_or(Path::new(".")))?,
        None => ExtractionParams::with_stopwords(StopwordList::bundled(a.lang)),
    };
    let mut out = create(&a.out)?;
    let (mut pages, mut docs) = (0usize, 0usize);
    for (i, line) in open(&a.input)?.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawPage =
            serde_json::from_str(&line).with_context(|| format!("{} line {}", a.input.display(), i + 1))?;
        pages += 1;
        if let Some(doc) = extract_page(&PageRecord::from(raw), &params) {
            forge_core::corpus::write_document(&mut out, &doc)?;
            docs += 1;
        }
    }
    out.flush()?;
    tracing::info!(pages, docs, "extracted");
    Ok(())
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Directory receiving the model files.
    #[arg(long)]
    out: PathBuf,
    /// Directory with `bs.tsv`, `cnr.tsv`, `hr.tsv`, `sr.tsv` wordlists
    /// (`word<TAB>count`) replacing the bundled discriminator.
    #[arg(long)]
    wordlists: Option<PathBuf>,
}

pub fn train(a: TrainArgs) -> Result<()> {
    let mut models = LangidModels::train_bundled()?;
    if let Some(dir) = &a.wordlists {
        let mut counts = BTreeMap::new();
        for lang in HBS_ORDER {
            let path = dir.join(format!("{lang}.tsv"));
            let list = parse_wordlist(open(&path)?).with_context(|| format!("reading {}", path.display()))?;
            counts.insert(lang, list);
        }
        models.hbs = WordlistNB::from_counts(&counts)?;
    }
    models.save(&a.out)?;
    tracing::info!(dir = %a.out.display(), "models written");
    Ok(())
}

#[derive(Debug, Args)]
pub struct LangidArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Corpus language to keep.
    #[arg(long)]
    target: Language,
    /// Model directory from `forge train`; bundled models are trained in memory when absent.
    #[arg(long)]
    models: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

pub fn langid(a: LangidArgs) -> Result<()> {
    if !Language::CORPORA.contains(&a.target) {
        bail!("--target must be one of bs, bg, hr, mk, cnr, sr, sl");
    }
    let models = match &a.models {
        Some(dir) => LangidModels::load(dir).with_context(|| format!("loading models from {}", dir.display()))?,
        None => LangidModels::train_bundled()?,
    };
    let docs = read_docs(&a.input)?;
    let n_in = docs.len();
    let kept: Vec<Document> = docs.into_iter().filter_map(|d| models.process(d, a.target)).collect();
    write_docs(&a.out, &kept)?;
    tracing::info!(input = n_in, routed = kept.len(), target = %a.target, "routed");
    Ok(())
}

#[derive(Debug, Args)]
pub struct DedupArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// MinHash signature sidecar for the kept documents.
    #[arg(long)]
    sigs: Option<PathBuf>,
}

pub fn dedup(a: DedupArgs) -> Result<()> {
    let docs = read_docs(&a.input)?;
    let n_in = docs.len();
    let exact = dedup_exact(docs);
    let n_exact = exact.len();
    let kept = dedup_paragraphs(exact);
    write_docs(&a.out, &kept)?;
    tracing::info!(
        input = n_in,
        exact_dropped = n_in - n_exact,
        paragraph_dropped = n_exact - kept.len(),
        kept = kept.len(),
        "deduplicated"
    );
    if let Some(path) = &a.sigs {
        let hasher = MinHasher::default();
        let entries = forge_core::diff::signatures_for(&kept, &hasher);
        let mut out = create(path)?;
        write_signatures(&mut out, &SignatureSet { hasher, entries })?;
        out.flush()?;
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct RefineArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Curated removal list (TSV).
    #[arg(long)]
    removal: Option<PathBuf>,
    /// Shell command classifying JSONL requests on stdin; labels are skipped when absent.
    #[arg(long)]
    classifier_cmd: Option<String>,
    #[arg(long, default_value_t = 64)]
    batch_size: usize,
    #[arg(long, default_value_t = MIN_WORDS)]
    min_words: usize,
    #[arg(long, default_value_t = MIN_PARAGRAPH_CHARS)]
    min_paragraph_chars: usize,
    /// Genre label set, one per line.
    #[arg(long)]
    genre_labels: Option<PathBuf>,
    /// Topic label set, one per line.
    #[arg(long)]
    topic_labels: Option<PathBuf>,
}

fn labels(schema: Schema, path: Option<&Path>) -> Result<LabelSchema> {
    Ok(match path {
        Some(p) => LabelSchema::load(schema, p)?,
        None => LabelSchema::for_schema(schema),
    })
}

pub fn refine(a: RefineArgs) -> Result<()> {
    let docs = read_docs(&a.input)?;
    let n_in = docs.len();
    let mut drops: BTreeMap<String, usize> = BTreeMap::new();
    let mut kept = Vec::with_capacity(docs.len());
    for d in docs {
        match filter_short(&d, a.min_words, a.min_paragraph_chars) {
            FilterOutcome::Keep => kept.push(d),
            FilterOutcome::Drop(reason) => *drops.entry(reason.to_string()).or_default() += 1,
        }
    }
    for (reason, n) in &drops {
        tracing::info!(reason = %reason, dropped = n, "length filter");
    }
    if let Some(path) = &a.removal {
        let list = RemovalList::parse(open(path)?).with_context(|| format!("reading {}", path.display()))?;
        let (rest, report) = apply_removal_list(kept, &list);
        for row in &report.rows {
            tracing::info!(domain = %row.domain, verdict = %row.verdict, dropped = row.dropped, "removal list");
        }
        kept = rest;
    }
    if let Some(cmd) = &a.classifier_cmd {
        let genre = labels(Schema::Genre, a.genre_labels.as_deref())?;
        let topic = labels(Schema::Topic, a.topic_labels.as_deref())?;
        let mut classifier = SubprocessClassifier::new(cmd.clone());
        let (docs, stats) = annotate_corpus(kept, &mut classifier, &genre, &topic, a.batch_size);
        tracing::info!(
            genre = stats.genre_assigned,
            topic = stats.topic_assigned,
            genre_failed = stats.genre_failed,
            topic_failed = stats.topic_failed,
            "labelled"
        );
        kept = docs;
    }
    write_docs(&a.out, &kept)?;
    tracing::info!(input = n_in, kept = kept.len(), "refined");
    Ok(())
}

#[derive(Debug, Args)]
pub struct VertArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

pub fn vert(a: VertArgs) -> Result<()> {
    let docs = read_docs(&a.input)?;
    let mut out = create(&a.out)?;
    let mut skipped = 0usize;
    for d in &docs {
        match export_vert(d, None) {
            Ok(v) => out.write_all(v.as_bytes())?,
            Err(forge_core::corpus::CorpusError::NothingToExport(id)) => {
                tracing::warn!(%id, "no retained text; skipped");
                skipped += 1;
            }
            Err(e) => return Err(e.into()),
        }
    }
    out.flush()?;
    tracing::info!(docs = docs.len() - skipped, skipped, "vert written");
    Ok(())
}

#[derive(Debug, Args)]
pub struct StubArgs {
    /// `hashed`, `uniform` or `onehot:LABEL`.
    #[arg(long, default_value = "hashed")]
    mode: String,
}

pub fn classify_stub(a: StubArgs) -> Result<()> {
    let mode = match a.mode.as_str() {
        "hashed" => StubMode::Hashed,
        "uniform" => StubMode::Uniform,
        m => match m.strip_prefix("onehot:") {
            Some(label) => StubMode::OneHot(label.to_string()),
            None => bail!("unknown stub mode `{m}`"),
        },
    };
    let schema = match std::env::var(SCHEMA_ENV).as_deref() {
        Ok("topic") => Schema::Topic,
        Ok("genre") | Err(_) => Schema::Genre,
        Ok(other) => bail!("unknown {SCHEMA_ENV} `{other}`"),
    };
    let mut requests = Vec::new();
    for line in std::io::stdin().lock().lines() {
        let line = line?;
        if !line.trim().is_empty() {
            requests.push(serde_json::from_str::<ClassifyRequest>(&line)?);
        }
    }
    let responses = StubClassifier::new(mode).classify(schema, &requests)?;
    let mut out = std::io::BufWriter::new(std::io::stdout().lock());
    for r in responses {
        serde_json::to_writer(&mut out, &r)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Debug, Args)]
pub struct FixtureArgs {
    #[arg(long)]
    out: PathBuf,
}

pub fn fixture(a: FixtureArgs) -> Result<()> {
    let (pages, _) = forge_core::fixture::fixture_pages();
    let mut out = create(&a.out)?;
    for p in &pages {
        write_record(&mut out, p)?;
    }
    out.flush()?;
    tracing::info!(records = pages.len(), "fixture written");
    Ok(())
}
