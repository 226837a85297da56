//! Deterministic 50-page crawl fixture.
//!
//! Mostly Slovenian news-like pages on seven `.si` domains, wrapped in
//! navigation and footer boilerplate, plus planted cases with a known fate:
//! an exact copy, a copy with every number changed, a short page, a `.com`
//! page in Slovenian, a `.com` and a `.hr` page in Croatian, a 404 and a page
//! with one Croatian paragraph.

use crate::corpus::Language;
use crate::crawler::PageRecord;
use crate::extract::bundled_seed;
use chrono::{DateTime, Duration, TimeZone, Utc};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FIXTURE_SEED: u64 = 20240501;
pub const FIXTURE_PAGES: usize = 50;
pub const FIXTURE_DOMAINS: [&str; 7] = [
    "novice.si",
    "sport.si",
    "kultura.si",
    "trgovina.si",
    "forum.si",
    "vreme.si",
    "zdravje.si",
];
/// Pages built the ordinary way; the planted cases follow.
pub const REGULAR_PAGES: usize = 42;

/// URLs of the planted cases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureTruth {
    pub exact_copy: (String, String),
    pub numbers_copy: (String, String),
    pub short: String,
    pub com_slovenian: String,
    pub com_croatian: String,
    pub hr_croatian: String,
    pub not_found: String,
    pub mixed_croatian: String,
}

fn sentences(lang: Language) -> Vec<&'static str> {
    bundled_seed(lang)
        .split_inclusive(['.', '!', '?'])
        .map(str::trim)
        .filter(|s| s.split_whitespace().count() >= 4)
        .collect()
}

struct Builder {
    rng: ChaCha8Rng,
    base: DateTime<Utc>,
}

impl Builder {
    fn paragraph(&mut self, pool: &[&str], n: usize, with_number: bool) -> String {
        let mut parts: Vec<String> = pool.choose_multiple(&mut self.rng, n).map(|s| s.to_string()).collect();
        if with_number {
            let n: u32 = self.rng.random_range(10..5000);
            parts.push(format!("Po podatkih organizatorjev se je dogodka udeležilo {n} ljudi."));
        }
        parts.join(" ")
    }

    fn page(&mut self, url: &str, title: &str, paragraphs: &[String], index: usize) -> PageRecord {
        let host = url.split('/').nth(2).unwrap_or_default();
        let mut body = format!(
            "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>{title}</title>\
             <script>var x = 1;</script></head>\n<body>\n<nav><a href=\"/\">Domov</a> | \
             <a href=\"/novice\">Novice</a> | <a href=\"/kontakt\">Kontakt</a></nav>\n\
             <h1>{title}</h1>\n"
        );
        for p in paragraphs {
            body.push_str(&format!("<p>{p}</p>\n"));
        }
        body.push_str(&format!(
            "<div class=\"share\"><a href=\"https://facebook.com/share\">Deli</a> \
             <a href=\"/tisk\">Natisni</a></div>\n<footer>© 2024 {host}. Vse pravice pridržane.</footer>\n\
             </body></html>\n"
        ));
        PageRecord {
            url: url.to_string(),
            fetch_time: self.base + Duration::seconds(7 * index as i64),
            http_status: 200,
            content_type: "text/html; charset=utf-8".into(),
            raw_body: body.into_bytes(),
        }
    }
}

/// Replace every digit run with a different number of the same magnitude.
fn change_numbers(text: &str) -> String {
    let mut out = String::new();
    let mut run = String::new();
    let flush = |run: &mut String, out: &mut String| {
        if !run.is_empty() {
            let n: u64 = run.parse().unwrap_or(0);
            out.push_str(&(n + 1).to_string());
            run.clear();
        }
    };
    for c in text.chars() {
        if c.is_ascii_digit() {
            run.push(c);
        } else {
            flush(&mut run, &mut out);
            out.push(c);
        }
    }
    flush(&mut run, &mut out);
    out
}

/// Generate the fixture pages together with the planted-case URLs.
pub fn fixture_pages() -> (Vec<PageRecord>, FixtureTruth) {
    let sl = sentences(Language::Sl);
    let hr = sentences(Language::Hr);
    let mut b = Builder {
        rng: ChaCha8Rng::seed_from_u64(FIXTURE_SEED),
        base: Utc.with_ymd_and_hms(2024, 5, 1, 10, 0, 0).unwrap(),
    };
    let mut pages = Vec::with_capacity(FIXTURE_PAGES);
    let mut bodies: Vec<Vec<String>> = Vec::new();
    for i in 0..REGULAR_PAGES {
        let domain = FIXTURE_DOMAINS[i % FIXTURE_DOMAINS.len()];
        let n_par = b.rng.random_range(3..=4);
        let paras: Vec<String> = (0..n_par).map(|k| b.paragraph(&sl, 3, k == 0)).collect();
        let url = format!("https://www.{domain}/clanek/{}", 100 + i);
        let page = b.page(&url, &format!("Članek {}", 100 + i), &paras, i);
        pages.push(page);
        bodies.push(paras);
    }
    let mut i = REGULAR_PAGES;
    let mut next = |b: &mut Builder, url: String, title: &str, paras: &[String]| {
        let p = b.page(&url, title, paras, i);
        i += 1;
        p
    };

    let exact_copy = format!("https://www.{}/arhiv/103", FIXTURE_DOMAINS[3]);
    pages.push(next(&mut b, exact_copy.clone(), "Članek 103", &bodies[3]));

    let renumbered: Vec<String> = bodies[5].iter().map(|p| change_numbers(p)).collect();
    let numbers_copy = format!("https://www.{}/clanek/105-posodobljeno", FIXTURE_DOMAINS[5]);
    pages.push(next(&mut b, numbers_copy.clone(), "Članek 105", &renumbered));

    let short = format!("https://www.{}/kratko", FIXTURE_DOMAINS[0]);
    let short_par = b.paragraph(&sl, 2, false);
    pages.push(next(&mut b, short.clone(), "Kratko", &[short_par]));

    let com_slovenian = "https://www.slovenci-po-svetu.com/zgodbe/1".to_string();
    let paras: Vec<String> = (0..3).map(|_| b.paragraph(&sl, 3, false)).collect();
    pages.push(next(&mut b, com_slovenian.clone(), "Zgodbe", &paras));

    let com_croatian = "https://www.jadran-vijesti.com/vijesti/7".to_string();
    let paras: Vec<String> = (0..3).map(|_| b.paragraph(&hr, 3, false)).collect();
    pages.push(next(&mut b, com_croatian.clone(), "Vijesti", &paras));

    let not_found = format!("https://www.{}/izbrisano", FIXTURE_DOMAINS[1]);
    let mut p404 = next(
        &mut b,
        not_found.clone(),
        "Ni najdeno",
        &["Stran ne obstaja.".to_string()],
    );
    p404.http_status = 404;
    pages.push(p404);

    let hr_croatian = "https://www.dnevnik-zagreb.hr/clanak/12".to_string();
    let paras: Vec<String> = (0..3).map(|_| b.paragraph(&hr, 3, false)).collect();
    pages.push(next(&mut b, hr_croatian.clone(), "Članak", &paras));

    let mixed_croatian = format!("https://www.{}/clanek/mednarodno", FIXTURE_DOMAINS[2]);
    let mut paras: Vec<String> = (0..3).map(|_| b.paragraph(&sl, 3, false)).collect();
    paras.insert(1, b.paragraph(&hr, 3, false));
    pages.push(next(&mut b, mixed_croatian.clone(), "Mednarodno", &paras));

    debug_assert_eq!(pages.len(), FIXTURE_PAGES);
    let truth = FixtureTruth {
        exact_copy: (pages[3].url.clone(), exact_copy),
        numbers_copy: (pages[5].url.clone(), numbers_copy),
        short,
        com_slovenian,
        com_croatian,
        hr_croatian,
        not_found,
        mixed_croatian,
    };
    (pages, truth)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_sized() {
        let (a, ta) = fixture_pages();
        let (b, tb) = fixture_pages();
        assert_eq!(a, b);
        assert_eq!(ta, tb);
        assert_eq!(a.len(), FIXTURE_PAGES);
        let urls: std::collections::BTreeSet<&str> = a.iter().map(|p| p.url.as_str()).collect();
        assert_eq!(urls.len(), FIXTURE_PAGES);
    }

    #[test]
    fn number_changes() {
        assert_eq!(change_numbers("a 9 b 123, 4"), "a 10 b 124, 5");
    }
}
