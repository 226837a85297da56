use super::{CorpusError, Document, LabelAssignment, Language, Paragraph, Quality, Schema};
use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

#[derive(Serialize, Deserialize)]
struct ParagraphRecord {
    text: String,
    quality: Quality,
    retained: bool,
    #[serde(default)]
    link_density: f64,
    #[serde(default)]
    stopword_density: f64,
}

#[derive(Serialize, Deserialize)]
struct DocumentRecord {
    id: String,
    url: String,
    domain: String,
    tld: String,
    crawl_time: DateTime<Utc>,
    language: Language,
    genre: Option<String>,
    genre_p: Option<f64>,
    topic: Option<String>,
    topic_p: Option<f64>,
    paragraphs: Vec<ParagraphRecord>,
    word_count: usize,
}

fn label(schema: Schema, label: Option<String>, p: Option<f64>) -> Option<LabelAssignment> {
    label.map(|label| LabelAssignment {
        label,
        probability: p.unwrap_or(0.0),
        schema,
    })
}

impl From<DocumentRecord> for Document {
    fn from(r: DocumentRecord) -> Self {
        Document {
            id: r.id,
            url: r.url,
            domain: r.domain,
            tld: r.tld,
            crawl_time: r.crawl_time,
            language: r.language,
            genre: label(Schema::Genre, r.genre, r.genre_p),
            topic: label(Schema::Topic, r.topic, r.topic_p),
            paragraphs: r
                .paragraphs
                .into_iter()
                .map(|p| Paragraph {
                    char_count: p.text.chars().count(),
                    text: p.text,
                    quality: p.quality,
                    retained: p.retained,
                    link_density: p.link_density,
                    stopword_density: p.stopword_density,
                })
                .collect(),
            word_count: r.word_count,
        }
    }
}

impl From<&Document> for DocumentRecord {
    fn from(d: &Document) -> Self {
        DocumentRecord {
            id: d.id.clone(),
            url: d.url.clone(),
            domain: d.domain.clone(),
            tld: d.tld.clone(),
            crawl_time: d.crawl_time,
            language: d.language,
            genre: d.genre.as_ref().map(|g| g.label.clone()),
            genre_p: d.genre.as_ref().map(|g| g.probability),
            topic: d.topic.as_ref().map(|t| t.label.clone()),
            topic_p: d.topic.as_ref().map(|t| t.probability),
            paragraphs: d
                .paragraphs
                .iter()
                .map(|p| ParagraphRecord {
                    text: p.text.clone(),
                    quality: p.quality,
                    retained: p.retained,
                    link_density: p.link_density,
                    stopword_density: p.stopword_density,
                })
                .collect(),
            word_count: d.word_count,
        }
    }
}

/// Streaming reader over a JSONL corpus. Blank lines are skipped; unknown keys
/// are accepted and ignored.
pub struct DocumentReader<R> {
    inner: R,
    line: usize,
    buf: String,
}

impl<R: BufRead> DocumentReader<R> {
    pub fn new(inner: R) -> Self {
        Self {
            inner,
            line: 0,
            buf: String::new(),
        }
    }
}

impl<R: BufRead> Iterator for DocumentReader<R> {
    type Item = Result<Document, CorpusError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            self.buf.clear();
            match self.inner.read_line(&mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => return Some(Err(e.into())),
            }
            self.line += 1;
            let line = self.buf.trim();
            if line.is_empty() {
                continue;
            }
            return Some(
                serde_json::from_str::<DocumentRecord>(line)
                    .map(Document::from)
                    .map_err(|source| CorpusError::Json {
                        line: self.line,
                        source,
                    }),
            );
        }
    }
}

pub fn read_documents<R: BufRead>(reader: R) -> Result<Vec<Document>, CorpusError> {
    DocumentReader::new(reader).collect()
}

pub fn write_document<W: Write>(mut out: W, doc: &Document) -> Result<(), CorpusError> {
    serde_json::to_writer(&mut out, &DocumentRecord::from(doc))
        .map_err(|source| CorpusError::Json { line: 0, source })?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn write_documents<'a, W: Write>(
    mut out: W,
    docs: impl IntoIterator<Item = &'a Document>,
) -> Result<(), CorpusError> {
    for doc in docs {
        write_document(&mut out, doc)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::TimeZone;
    use proptest::prelude::*;

    fn arb_paragraph() -> impl Strategy<Value = Paragraph> {
        (
            "[a-zA-ZčšžćđČŠŽ0-9 .,!?\"<>&]{0,60}",
            prop_oneof![
                Just(Quality::Good),
                Just(Quality::NearGood),
                Just(Quality::Bad),
                Just(Quality::Short)
            ],
            any::<bool>(),
            0.0f64..=1.0,
            0.0f64..=1.0,
        )
            .prop_map(|(text, quality, retained, ld, sd)| {
                let mut p = Paragraph::new(text, quality, retained);
                p.link_density = ld;
                p.stopword_density = sd;
                p
            })
    }

    fn arb_label(schema: Schema) -> impl Strategy<Value = Option<LabelAssignment>> {
        proptest::option::of(
            ("[A-Za-z/ ,]{1,20}", 0.0f64..=1.0).prop_map(move |(label, p)| LabelAssignment {
                label,
                probability: p,
                schema,
            }),
        )
    }

    prop_compose! {
        fn arb_document()(
            id in "[0-9a-f]{16}",
            host in "[a-z]{1,10}",
            tld in prop_oneof![Just("si"), Just("hr"), Just("com")],
            secs in 0i64..2_000_000_000,
            paragraphs in proptest::collection::vec(arb_paragraph(), 0..5),
            lang in proptest::sample::select(Language::CORPORA.to_vec()),
            genre in arb_label(Schema::Genre),
            topic in arb_label(Schema::Topic),
        ) -> Document {
            let domain = format!("{host}.{tld}");
            let mut d = Document {
                id,
                url: format!("https://{domain}/page"),
                domain,
                tld: tld.to_string(),
                crawl_time: Utc.timestamp_opt(secs, 0).unwrap(),
                paragraphs,
                language: lang,
                genre,
                topic,
                word_count: 0,
            };
            d.refresh_word_count();
            d
        }
    }

    proptest! {
        #[test]
        fn jsonl_round_trip(docs in proptest::collection::vec(arb_document(), 0..4)) {
            let mut buf = Vec::new();
            write_documents(&mut buf, &docs).unwrap();
            let back = read_documents(buf.as_slice()).unwrap();
            prop_assert_eq!(back, docs);
        }
    }

    #[test]
    fn unknown_fields_and_blank_lines_tolerated() {
        let line = r#"{"id":"a","url":"https://x.si/","domain":"x.si","tld":"si","crawl_time":"2024-03-01T00:00:00Z","language":"sl","genre":"News","genre_p":0.9,"topic":null,"topic_p":null,"paragraphs":[{"text":"Dober dan","quality":"good","retained":true}],"word_count":2,"extra":{"k":1}}"#;
        let input = format!("\n{line}\n\n");
        let docs = read_documents(input.as_bytes()).unwrap();
        assert_eq!(docs.len(), 1);
        assert_eq!(docs[0].paragraphs[0].char_count, 9);
        assert_eq!(docs[0].genre.as_ref().unwrap().label, "News");
        let mut out = Vec::new();
        write_document(&mut out, &docs[0]).unwrap();
        assert!(!String::from_utf8(out).unwrap().contains("extra"));
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = read_documents("{}\n".as_bytes()).unwrap_err();
        assert!(matches!(err, CorpusError::Json { line: 1, .. }));
    }
}
