use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use forge_core::corpus::build_manifest;
use forge_core::dedup::MinHasher;
use forge_core::diff::{
    compare_versions, distribution_report, domain_report, write_report, FREQUENCY_FLOOR, TOP_DOMAINS,
};
use forge_core::{Document, Schema};
use serde_json::json;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::{corpus_id, create, read_docs};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SchemaArg {
    Genre,
    Topic,
}

impl From<SchemaArg> for Schema {
    fn from(s: SchemaArg) -> Self {
        match s {
            SchemaArg::Genre => Schema::Genre,
            SchemaArg::Topic => Schema::Topic,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Labelled corpus JSONL (repeatable; the file stem names the corpus).
    #[arg(long = "in", required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "genre")]
    schema: SchemaArg,
    /// Count only documents with this genre label (e.g. `News` for topics).
    #[arg(long)]
    restrict_genre: Option<String>,
    #[arg(long, default_value_t = FREQUENCY_FLOOR)]
    floor: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn stats(a: StatsArgs) -> Result<()> {
    let corpora: Vec<(String, Vec<Document>)> = a
        .inputs
        .iter()
        .map(|p| Ok((corpus_id(p), read_docs(p)?)))
        .collect::<Result<_>>()?;
    let refs: Vec<(&str, &[Document])> = corpora.iter().map(|(n, d)| (n.as_str(), d.as_slice())).collect();
    let dist = distribution_report(&refs, a.schema.into(), a.restrict_genre.as_deref(), a.floor)?;
    let text = match a.format {
        Format::Json => {
            let manifests = corpora
                .iter()
                .map(|(n, d)| build_manifest(n, d))
                .collect::<Result<Vec<_>, _>>()?;
            let mut s = serde_json::to_string_pretty(&json!({ "manifests": manifests, "distribution": dist }))?;
            s.push('\n');
            s
        }
        Format::Tsv => {
            let mut s = String::from("corpus\tlabel\tpercentage\tfrequent\n");
            for c in &dist.corpora {
                for (label, pct) in &c.percentages {
                    let frequent = dist.frequent.contains(label);
                    writeln!(s, "{}\t{label}\t{pct:.4}\t{frequent}", c.corpus).expect("writing to String");
                }
            }
            s
        }
    };
    match &a.out {
        Some(p) => {
            let mut f = create(p)?;
            f.write_all(text.as_bytes())?;
            f.flush()?;
        }
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct DiffArgs {
    /// Version A: a directory of `<corpus>.jsonl` files or one file.
    #[arg(long)]
    a: PathBuf,
    /// Version B, laid out like version A.
    #[arg(long)]
    b: PathBuf,
    /// Minimum estimated Jaccard similarity for a near-duplicate match.
    #[arg(long, default_value_t = forge_core::dedup::DEFAULT_THRESHOLD)]
    threshold: f64,
    /// Report directory.
    #[arg(long)]
    out: PathBuf,
}

/// Corpus files of one version keyed by corpus id.
fn version_files(path: &Path) -> Result<BTreeMap<String, PathBuf>> {
    let mut out = BTreeMap::new();
    if path.is_dir() {
        for entry in std::fs::read_dir(path).with_context(|| format!("listing {}", path.display()))? {
            let p = entry?.path();
            if p.extension().is_some_and(|e| e == "jsonl") {
                out.insert(corpus_id(&p), p);
            }
        }
    } else {
        out.insert(corpus_id(path), path.to_path_buf());
    }
    if out.is_empty() {
        bail!("no .jsonl corpora in {}", path.display());
    }
    Ok(out)
}

fn domains_tsv(docs: &[Document]) -> String {
    let mut s = String::from("rank\tdomain\ttexts\twords\tshare_pct\tsample_ids\n");
    for (i, r) in domain_report(docs, TOP_DOMAINS).iter().enumerate() {
        writeln!(
            s,
            "{}\t{}\t{}\t{}\t{:.4}\t{}",
            i + 1,
            r.domain,
            r.texts,
            r.words,
            r.share_pct,
            r.sample_ids.join(",")
        )
        .expect("writing to String");
    }
    s
}

pub fn diff(a: DiffArgs) -> Result<()> {
    if !(0.0..=1.0).contains(&a.threshold) {
        bail!("--threshold must lie in [0, 1]");
    }
    let (files_a, mut files_b) = (version_files(&a.a)?, version_files(&a.b)?);
    let mut triples = Vec::new();
    for (id, pa) in files_a {
        let Some(pb) = files_b.remove(&id) else {
            tracing::warn!(corpus = %id, "only in version A; skipped");
            continue;
        };
        triples.push((id, read_docs(&pa)?, read_docs(&pb)?));
    }
    for id in files_b.keys() {
        tracing::warn!(corpus = %id, "only in version B; skipped");
    }
    if triples.is_empty() {
        bail!("the two versions share no corpus id");
    }
    let cmp = compare_versions(&triples, a.threshold, &MinHasher::default())?;
    write_report(&a.out, &cmp)?;
    for (id, _, b) in &triples {
        std::fs::write(a.out.join(format!("domains_{id}.tsv")), domains_tsv(b))?;
    }
    for schema in [Schema::Genre, Schema::Topic] {
        let mut refs: Vec<(String, &[Document])> = Vec::new();
        for (id, va, vb) in &triples {
            refs.push((format!("{id}/a"), va));
            refs.push((format!("{id}/b"), vb));
        }
        let refs: Vec<(&str, &[Document])> = refs.iter().map(|(n, d)| (n.as_str(), *d)).collect();
        match distribution_report(&refs, schema, None, FREQUENCY_FLOOR) {
            Ok(d) => std::fs::write(
                a.out.join(format!("{schema}.json")),
                serde_json::to_string_pretty(&d)? + "\n",
            )?,
            Err(e) => tracing::info!(%schema, "no distribution report: {e}"),
        }
    }
    for p in &cmp.pairs {
        tracing::info!(
            corpus = %p.corpus,
            unique_in_a = format!("{:.2}%", p.overlap.unique_in_a_pct),
            unique_in_b = format!("{:.2}%", p.overlap.unique_in_b_pct),
            url_overlap_b = format!("{:.2}%", p.overlap.url_overlap_b_pct),
            merged_total = p.overlap.merged_total,
            "compared"
        );
    }
    Ok(())
}
