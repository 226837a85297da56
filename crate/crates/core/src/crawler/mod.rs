//! TLD-scoped crawling and ingestion of pre-crawled page archives.

mod crawl;
mod fetch;
mod robots;
mod warc;

pub use crawl::{Crawl, CrawlError, FetchEvent, HostState, Politeness, USER_AGENT};
pub use fetch::{FetchError, FetchResponse, Fetcher, HttpFetcher};
pub use robots::RobotsRules;
pub use warc::{ingest_warc, write_record, WarcError, WarcReader};

use crate::corpus::{host_of, registrable_domain, tld_of_host};
use crate::html::{attribute, Lexer, Token};
use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};
use url::Url;

pub const GENERIC_TLDS: [&str; 5] = ["com", "net", "org", "info", "eu"];

#[derive(Debug, thiserror::Error)]
pub enum ScopeError {
    #[error("`{url}` is not an absolute URL: {source}")]
    Unparseable {
        url: String,
        #[source]
        source: url::ParseError,
    },
    #[error("`{0}` has no host")]
    NoHost(String),
    #[error("invalid scope rule: {0}")]
    InvalidRule(&'static str),
}

/// Which hosts a crawl may visit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScopeRule {
    national_tld: String,
    pub allowed_generic_domains: BTreeSet<String>,
    link_threshold: u32,
}

impl ScopeRule {
    pub fn new(national_tld: &str, link_threshold: u32) -> Result<Self, ScopeError> {
        let tld = national_tld.trim_start_matches('.').to_lowercase();
        if tld.is_empty() {
            return Err(ScopeError::InvalidRule("national TLD is empty"));
        }
        if link_threshold == 0 {
            return Err(ScopeError::InvalidRule("link threshold must be at least 1"));
        }
        Ok(Self {
            national_tld: tld,
            allowed_generic_domains: BTreeSet::new(),
            link_threshold,
        })
    }

    pub fn with_generic_domains<I, S>(mut self, domains: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.allowed_generic_domains
            .extend(domains.into_iter().map(|d| d.into().to_lowercase()));
        self
    }

    pub fn national_tld(&self) -> &str {
        &self.national_tld
    }

    pub fn link_threshold(&self) -> u32 {
        self.link_threshold
    }
}

pub(crate) fn parse_absolute(url: &str) -> Result<Url, ScopeError> {
    let parsed = Url::parse(url).map_err(|source| ScopeError::Unparseable {
        url: url.to_string(),
        source,
    })?;
    if parsed.host_str().is_none() {
        return Err(ScopeError::NoHost(url.to_string()));
    }
    Ok(parsed)
}

/// Whether `url` may be crawled under `rule`, given how many distinct
/// in-scope pages link to its domain.
pub fn in_scope(url: &str, rule: &ScopeRule, inlink_count: u32) -> Result<bool, ScopeError> {
    let parsed = parse_absolute(url)?;
    Ok(url_in_scope(&parsed, rule, inlink_count))
}

pub(crate) fn url_in_scope(url: &Url, rule: &ScopeRule, inlink_count: u32) -> bool {
    let Some(host) = host_of(url) else {
        return false;
    };
    let tld = tld_of_host(&host);
    if tld == rule.national_tld {
        return true;
    }
    if rule.allowed_generic_domains.contains(&registrable_domain(&host)) {
        return true;
    }
    GENERIC_TLDS.contains(&tld) && inlink_count >= rule.link_threshold
}

/// All anchor targets in `html`, resolved against `base`, fragment-free and
/// deduplicated in first-seen order. Non-HTTP schemes are dropped.
pub fn extract_links(html: &[u8], base: &Url) -> Vec<String> {
    let text = String::from_utf8_lossy(html);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for token in Lexer::new(&text) {
        let Token::Start { name, attrs, .. } = token else {
            continue;
        };
        if name != "a" && name != "area" {
            continue;
        }
        let Some(href) = attribute(attrs, "href") else {
            continue;
        };
        let href = href.trim();
        if href.is_empty() {
            continue;
        }
        let Ok(mut resolved) = base.join(href) else {
            continue;
        };
        if !matches!(resolved.scheme(), "http" | "https") {
            continue;
        }
        resolved.set_fragment(None);
        let s = resolved.to_string();
        if seen.insert(s.clone()) {
            out.push(s);
        }
    }
    out
}

/// One fetched page.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageRecord {
    pub url: String,
    pub fetch_time: DateTime<Utc>,
    pub http_status: u16,
    pub content_type: String,
    pub raw_body: Vec<u8>,
}

impl PageRecord {
    pub fn is_html(&self) -> bool {
        self.content_type.to_ascii_lowercase().contains("html")
    }
}

/// JSONL form of a [`PageRecord`] with the body decoded as (lossy) UTF-8.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawPage {
    pub url: String,
    pub fetch_time: DateTime<Utc>,
    pub http_status: u16,
    pub content_type: String,
    pub body: String,
}

impl From<&PageRecord> for RawPage {
    fn from(p: &PageRecord) -> Self {
        RawPage {
            url: p.url.clone(),
            fetch_time: p.fetch_time,
            http_status: p.http_status,
            content_type: p.content_type.clone(),
            body: String::from_utf8_lossy(&p.raw_body).into_owned(),
        }
    }
}

impl From<RawPage> for PageRecord {
    fn from(p: RawPage) -> Self {
        PageRecord {
            url: p.url,
            fetch_time: p.fetch_time,
            http_status: p.http_status,
            content_type: p.content_type,
            raw_body: p.body.into_bytes(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn national_tld_in_scope() {
        let si = ScopeRule::new("si", 3).unwrap();
        assert!(in_scope("https://example.si/a", &si, 0).unwrap());
        assert!(!in_scope("https://example.de/a", &si, 99).unwrap());
    }

    #[test]
    fn generic_threshold() {
        let si = ScopeRule::new(".SI", 3).unwrap();
        assert_eq!(si.national_tld(), "si");
        assert!(in_scope("https://blog.com/x", &si, 3).unwrap());
        assert!(!in_scope("https://blog.com/x", &si, 2).unwrap());
        let si = si.with_generic_domains(["blog.com"]);
        assert!(in_scope("https://www.blog.com/x", &si, 0).unwrap());
    }

    #[test]
    fn scope_errors() {
        let si = ScopeRule::new("si", 3).unwrap();
        assert!(matches!(
            in_scope("/relative", &si, 0),
            Err(ScopeError::Unparseable { .. })
        ));
        assert!(matches!(in_scope("mailto:a@b.si", &si, 0), Err(ScopeError::NoHost(_))));
        assert!(ScopeRule::new("si", 0).is_err());
        assert!(ScopeRule::new("", 1).is_err());
    }

    #[test]
    fn resolves_relative_links() {
        let base = Url::parse("https://x.si/a").unwrap();
        assert_eq!(extract_links(br#"<a href="/b">b</a>"#, &base), vec!["https://x.si/b"]);
        assert!(extract_links(b"<p>no anchors</p>", &base).is_empty());
    }

    #[test]
    fn strips_fragments_and_dedups() {
        let base = Url::parse("https://x.si/dir/page.html").unwrap();
        let html = br#"<a href="c#top">1</a><a href='c'>2</a><a href="mailto:x@y.si">m</a>
            <a href="javascript:void(0)">j</a><a href="">e</a><a>none</a>"#;
        assert_eq!(extract_links(html, &base), vec!["https://x.si/dir/c"]);
    }
}
