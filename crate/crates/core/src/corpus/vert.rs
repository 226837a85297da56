use super::tokenize::{split_sentences, tokenize};
use super::{CorpusError, Document};
use std::fmt::Write;

/// Lemma and morphosyntactic tag for one token, supplied by an external annotator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenAnnotation {
    pub lemma: String,
    pub msd: String,
}

fn escape_attr(value: &str) -> String {
    let mut out = String::with_capacity(value.len());
    for c in value.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

/// Render one document in VERT. Every line, including `</doc>`, ends with `\n`.
///
/// `annotations`, when given, must hold one row per token over the retained
/// paragraphs in order; otherwise lemma and tag columns are `_`.
pub fn export_vert(doc: &Document, annotations: Option<&[TokenAnnotation]>) -> Result<String, CorpusError> {
    let paragraphs: Vec<Vec<Vec<&str>>> = doc
        .retained_paragraphs()
        .map(|p| split_sentences(&tokenize(&p.text)))
        .collect();
    if paragraphs.is_empty() {
        return Err(CorpusError::NothingToExport(doc.id.clone()));
    }
    let n_tokens: usize = paragraphs.iter().flatten().map(Vec::len).sum();
    if let Some(rows) = annotations {
        if rows.len() != n_tokens {
            return Err(CorpusError::AnnotationMismatch {
                tokens: n_tokens,
                annotations: rows.len(),
            });
        }
    }

    let label = |l: &Option<super::LabelAssignment>| l.as_ref().map(|a| escape_attr(&a.label)).unwrap_or_default();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<doc id=\"{}\" url=\"{}\" domain=\"{}\" genre=\"{}\" topic=\"{}\">",
        escape_attr(&doc.id),
        escape_attr(&doc.url),
        escape_attr(&doc.domain),
        label(&doc.genre),
        label(&doc.topic),
    );
    let mut rows = annotations.map(|a| a.iter());
    for sentences in &paragraphs {
        out.push_str("<p>\n");
        for sentence in sentences {
            out.push_str("<s>\n");
            for token in sentence {
                match rows.as_mut().and_then(Iterator::next) {
                    Some(a) => {
                        let _ = writeln!(out, "{token}\t{}\t{}", a.lemma, a.msd);
                    }
                    None => {
                        let _ = writeln!(out, "{token}\t_\t_");
                    }
                }
            }
            out.push_str("</s>\n");
        }
        out.push_str("</p>\n");
    }
    out.push_str("</doc>\n");
    Ok(out)
}
