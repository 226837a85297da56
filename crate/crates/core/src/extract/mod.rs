//! HTML → cleaned, boilerplate-classified paragraphs.

mod classify;
mod clean;
mod segment;
mod stopwords;

pub use classify::{classify_paragraph, smooth_classes, stopword_density, ExtractionParams, ParamsError};
pub use clean::clean_text;
pub use segment::{segment_paragraphs, Segment};
pub use stopwords::{bundled_seed, StopwordList};

use crate::corpus::{host_of, registrable_domain, tld_of_host, Document, Language, Paragraph, Quality};
use crate::crawler::PageRecord;
use crate::hash::doc_id_for_url;

/// Paragraphs of one page, classified and context-smoothed.
///
/// A paragraph is retained when smoothing marks it good and its own class is
/// good or near-good.
pub fn extract_paragraphs(html: &[u8], params: &ExtractionParams) -> Vec<Paragraph> {
    let mut paragraphs: Vec<Paragraph> = segment_paragraphs(html)
        .into_iter()
        .filter_map(|seg| {
            let text = clean_text(&seg.text);
            if text.is_empty() {
                return None;
            }
            let quality = classify_paragraph(&text, seg.link_density, params);
            let mut p = Paragraph::new(text, quality, false);
            p.link_density = seg.link_density;
            p.stopword_density = stopword_density(&p.text, &params.stopwords);
            Some(p)
        })
        .collect();
    let classes: Vec<Quality> = paragraphs.iter().map(|p| p.quality).collect();
    for (p, smoothed) in paragraphs.iter_mut().zip(smooth_classes(&classes)) {
        p.retained = smoothed == Quality::Good && matches!(p.quality, Quality::Good | Quality::NearGood);
    }
    paragraphs
}

/// Build a document from a fetched page. Returns `None` for non-200 or
/// non-HTML records and for URLs without a host.
pub fn extract_page(page: &PageRecord, params: &ExtractionParams) -> Option<Document> {
    if page.http_status != 200 || !page.is_html() {
        return None;
    }
    let url = url::Url::parse(&page.url).ok()?;
    let host = host_of(&url)?;
    let mut doc = Document {
        id: doc_id_for_url(&page.url),
        url: page.url.clone(),
        domain: registrable_domain(&host),
        tld: tld_of_host(&host).to_string(),
        crawl_time: page.fetch_time,
        paragraphs: extract_paragraphs(&page.raw_body, params),
        language: Language::Other,
        genre: None,
        topic: None,
        word_count: 0,
    };
    doc.refresh_word_count();
    Some(doc)
}
