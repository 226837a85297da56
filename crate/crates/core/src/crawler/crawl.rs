use super::{extract_links, url_in_scope, FetchResponse, Fetcher, PageRecord, RobotsRules, ScopeRule};
use crate::corpus::{host_of, registrable_domain, tld_of_host};
use chrono::{DateTime, Utc};
use std::collections::{HashMap, HashSet, VecDeque};
use std::time::{Duration, Instant};
use tracing::{debug, warn};
use url::Url;

const MAX_FAILURES: u32 = 3;
pub const USER_AGENT: &str = concat!("forge/", env!("CARGO_PKG_VERSION"));

#[derive(Debug, thiserror::Error)]
pub enum CrawlError {
    #[error("politeness delay must be at least one second, got {0:?}")]
    DelayTooShort(Duration),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Politeness {
    pub delay: Duration,
    pub max_pages: usize,
    pub max_depth: usize,
}

impl Default for Politeness {
    fn default() -> Self {
        Self {
            delay: Duration::from_secs(5),
            max_pages: 1000,
            max_depth: 10,
        }
    }
}

#[derive(Debug, Clone)]
pub struct HostState {
    pub host: String,
    pub next_allowed_fetch: Instant,
    pub robots: Option<RobotsRules>,
    pub failure_count: u32,
}

/// One network request, robots.txt included.
#[derive(Debug, Clone)]
pub struct FetchEvent {
    pub host: String,
    pub url: String,
    pub at: Instant,
    pub time: DateTime<Utc>,
}

/// Breadth-first polite crawl, consumed as an iterator of fetched HTML pages.
///
/// One request per host per `delay`; robots.txt is fetched once per host
/// before its first page. Generic-TLD domains are admitted once
/// `link_threshold` distinct in-scope pages link to them; links seen before
/// that are parked and released on admission.
pub struct Crawl<F> {
    fetcher: F,
    rule: ScopeRule,
    politeness: Politeness,
    frontier: VecDeque<(Url, usize)>,
    enqueued: HashSet<String>,
    hosts: HashMap<String, HostState>,
    inlinks: HashMap<String, HashSet<String>>,
    parked: HashMap<String, Vec<(Url, usize)>>,
    emitted: usize,
    log: Vec<FetchEvent>,
}

impl<F: Fetcher> Crawl<F> {
    pub fn new(fetcher: F, seeds: &[String], rule: ScopeRule, politeness: Politeness) -> Result<Self, CrawlError> {
        if politeness.delay < Duration::from_secs(1) {
            return Err(CrawlError::DelayTooShort(politeness.delay));
        }
        Ok(Self::with_any_delay(fetcher, seeds, rule, politeness))
    }

    /// Like [`Crawl::new`] without the one-second floor on the delay.
    pub fn with_any_delay(fetcher: F, seeds: &[String], rule: ScopeRule, politeness: Politeness) -> Self {
        let mut crawl = Self {
            fetcher,
            rule,
            politeness,
            frontier: VecDeque::new(),
            enqueued: HashSet::new(),
            hosts: HashMap::new(),
            inlinks: HashMap::new(),
            parked: HashMap::new(),
            emitted: 0,
            log: Vec::new(),
        };
        for seed in seeds {
            match Url::parse(seed) {
                Ok(mut url) if url_in_scope(&url, &crawl.rule, 0) => {
                    url.set_fragment(None);
                    crawl.enqueue(url, 0);
                }
                Ok(_) => warn!(seed, "seed outside crawl scope, skipped"),
                Err(e) => warn!(seed, error = %e, "unparseable seed, skipped"),
            }
        }
        crawl
    }

    pub fn fetch_log(&self) -> &[FetchEvent] {
        &self.log
    }

    pub fn host_states(&self) -> impl Iterator<Item = &HostState> {
        self.hosts.values()
    }

    fn enqueue(&mut self, url: Url, depth: usize) {
        if self.enqueued.insert(url.to_string()) {
            self.frontier.push_back((url, depth));
        }
    }

    /// Issue one request to `host`, waiting out the politeness delay first.
    fn polite_fetch(&mut self, host: &str, url: &Url) -> Result<FetchResponse, ()> {
        let delay = self.politeness.delay;
        let state = self.hosts.entry(host.to_string()).or_insert_with(|| HostState {
            host: host.to_string(),
            next_allowed_fetch: Instant::now(),
            robots: None,
            failure_count: 0,
        });
        let now = Instant::now();
        if state.next_allowed_fetch > now {
            std::thread::sleep(state.next_allowed_fetch - now);
        }
        let at = Instant::now();
        self.log.push(FetchEvent {
            host: host.to_string(),
            url: url.to_string(),
            at,
            time: Utc::now(),
        });
        let result = self.fetcher.fetch(url);
        let state = self.hosts.get_mut(host).expect("host state inserted above");
        state.next_allowed_fetch = Instant::now().max(at) + delay;
        match result {
            Ok(r) => Ok(r),
            Err(e) => {
                state.failure_count += 1;
                warn!(error = %e, failures = state.failure_count, "fetch failed");
                Err(())
            }
        }
    }

    fn robots_allows(&mut self, host: &str, url: &Url) -> bool {
        let known = self.hosts.get(host).and_then(|h| h.robots.as_ref()).is_some();
        if !known {
            let mut robots_url = url.clone();
            robots_url.set_path("/robots.txt");
            robots_url.set_query(None);
            let rules = match self.polite_fetch(host, &robots_url) {
                Ok(r) if r.status == 200 => RobotsRules::parse(&String::from_utf8_lossy(&r.body), USER_AGENT),
                _ => RobotsRules::default(),
            };
            if let Some(state) = self.hosts.get_mut(host) {
                state.robots = Some(rules);
            }
        }
        let mut path = url.path().to_string();
        if let Some(q) = url.query() {
            path.push('?');
            path.push_str(q);
        }
        self.hosts
            .get(host)
            .and_then(|h| h.robots.as_ref())
            .is_none_or(|r| r.allows(&path))
    }

    fn follow_links(&mut self, page: &Url, body: &[u8], depth: usize) {
        if depth >= self.politeness.max_depth {
            return;
        }
        let source = page.to_string();
        for link in extract_links(body, page) {
            let Ok(url) = Url::parse(&link) else { continue };
            let Some(host) = host_of(&url) else { continue };
            if self.enqueued.contains(url.as_str()) {
                continue;
            }
            let domain = registrable_domain(&host);
            let tld = tld_of_host(&host).to_string();
            let count = if tld == self.rule.national_tld() {
                0
            } else {
                let sources = self.inlinks.entry(domain.clone()).or_default();
                sources.insert(source.clone());
                sources.len() as u32
            };
            if url_in_scope(&url, &self.rule, count) {
                self.enqueue(url, depth + 1);
                if let Some(parked) = self.parked.remove(&domain) {
                    for (u, d) in parked {
                        self.enqueue(u, d);
                    }
                }
            } else if super::GENERIC_TLDS.contains(&tld.as_str()) {
                self.parked.entry(domain).or_default().push((url, depth + 1));
            }
        }
    }
}

impl<F: Fetcher> Iterator for Crawl<F> {
    type Item = PageRecord;

    fn next(&mut self) -> Option<PageRecord> {
        while self.emitted < self.politeness.max_pages {
            let (url, depth) = self.frontier.pop_front()?;
            let Some(host) = url.host_str().map(str::to_ascii_lowercase) else {
                continue;
            };
            if self.hosts.get(&host).is_some_and(|h| h.failure_count >= MAX_FAILURES) {
                debug!(%url, "host exceeded failure budget, skipped");
                continue;
            }
            if !self.robots_allows(&host, &url) {
                debug!(%url, "disallowed by robots.txt");
                continue;
            }
            let Ok(resp) = self.polite_fetch(&host, &url) else {
                continue;
            };
            if !resp.content_type.to_ascii_lowercase().contains("html") {
                debug!(%url, content_type = resp.content_type, "non-HTML content skipped");
                continue;
            }
            self.follow_links(&url, &resp.body, depth);
            self.emitted += 1;
            return Some(PageRecord {
                url: url.to_string(),
                fetch_time: Utc::now(),
                http_status: resp.status,
                content_type: resp.content_type,
                raw_body: resp.body,
            });
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crawler::FetchError;
    use std::cell::RefCell;

    /// In-memory web: url → (status, content type, body).
    struct MapFetcher {
        pages: HashMap<String, (u16, &'static str, String)>,
        calls: RefCell<Vec<String>>,
    }

    impl Fetcher for MapFetcher {
        fn fetch(&self, url: &Url) -> Result<FetchResponse, FetchError> {
            self.calls.borrow_mut().push(url.to_string());
            match self.pages.get(url.as_str()) {
                Some((status, ct, body)) => Ok(FetchResponse {
                    status: *status,
                    content_type: ct.to_string(),
                    body: body.clone().into_bytes(),
                }),
                None if url.path() == "/robots.txt" => Ok(FetchResponse {
                    status: 404,
                    content_type: "text/plain".into(),
                    body: Vec::new(),
                }),
                None => Err(FetchError {
                    url: url.to_string(),
                    message: "unreachable".into(),
                }),
            }
        }
    }

    fn web(pages: &[(&str, &str)]) -> MapFetcher {
        MapFetcher {
            pages: pages
                .iter()
                .map(|(u, b)| (u.to_string(), (200, "text/html; charset=utf-8", b.to_string())))
                .collect(),
            calls: RefCell::new(Vec::new()),
        }
    }

    fn fast(max_pages: usize, max_depth: usize) -> Politeness {
        Politeness {
            delay: Duration::from_millis(1),
            max_pages,
            max_depth,
        }
    }

    fn run(f: MapFetcher, seeds: &[&str], rule: ScopeRule, p: Politeness) -> Vec<String> {
        let seeds: Vec<String> = seeds.iter().map(|s| s.to_string()).collect();
        Crawl::with_any_delay(f, &seeds, rule, p).map(|r| r.url).collect()
    }

    #[test]
    fn rejects_sub_second_delay() {
        let r = Crawl::new(web(&[]), &[], ScopeRule::new("si", 3).unwrap(), fast(1, 1));
        assert!(matches!(r, Err(CrawlError::DelayTooShort(_))));
    }

    #[test]
    fn depth_zero_fetches_only_seeds() {
        let f = web(&[("https://a.si/", r#"<a href="/b">b</a>"#), ("https://a.si/b", "")]);
        let got = run(f, &["https://a.si/"], ScopeRule::new("si", 3).unwrap(), fast(10, 0));
        assert_eq!(got, vec!["https://a.si/"]);
    }

    #[test]
    fn generic_domain_admitted_after_threshold() {
        let link = r#"<a href="https://blog.com/x">x</a>"#;
        let f = web(&[
            (
                "https://a.si/",
                r#"<a href="/1">1</a><a href="/2">2</a><a href="https://blog.com/x">x</a>"#,
            ),
            ("https://a.si/1", link),
            ("https://a.si/2", link),
            ("https://blog.com/x", "generic"),
        ]);
        let got = run(f, &["https://a.si/"], ScopeRule::new("si", 3).unwrap(), fast(10, 5));
        assert_eq!(got.last().unwrap(), "https://blog.com/x");

        let f = web(&[
            (
                "https://a.si/",
                r#"<a href="/1">1</a><a href="https://blog.com/x">x</a>"#,
            ),
            ("https://a.si/1", link),
            ("https://blog.com/x", "generic"),
        ]);
        let got = run(f, &["https://a.si/"], ScopeRule::new("si", 3).unwrap(), fast(10, 5));
        assert!(!got.contains(&"https://blog.com/x".to_string()));
    }

    #[test]
    fn skips_non_html_and_failing_hosts() {
        let mut f = web(&[(
            "https://a.si/",
            r#"<a href="/img">i</a><a href="https://down.si/1">d</a><a href="https://down.si/2">d</a><a href="https://down.si/3">d</a><a href="https://down.si/4">d</a>"#,
        )]);
        f.pages
            .insert("https://a.si/img".into(), (200, "image/png", "PNG".into()));
        let seeds = vec!["https://a.si/".to_string()];
        let mut crawl = Crawl::with_any_delay(f, &seeds, ScopeRule::new("si", 3).unwrap(), fast(10, 5));
        let got: Vec<_> = crawl.by_ref().map(|r| r.url).collect();
        assert_eq!(got, vec!["https://a.si/"]);
        // robots.txt + three page attempts, then the host is abandoned
        let down = crawl.fetch_log().iter().filter(|e| e.host == "down.si").count();
        assert_eq!(down, 4);
    }

    #[test]
    fn max_pages_bounds_output() {
        let pages: Vec<(String, String)> = (0..20)
            .map(|i| {
                (
                    format!("https://a.si/{i}"),
                    format!(r#"<a href="/{}">n</a><a href="/{}">m</a>"#, i + 1, i + 2),
                )
            })
            .collect();
        let refs: Vec<(&str, &str)> = pages.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        for max in [0, 1, 7] {
            let got = run(
                web(&refs),
                &["https://a.si/0"],
                ScopeRule::new("si", 3).unwrap(),
                fast(max, 50),
            );
            assert_eq!(got.len(), max);
        }
    }
}
