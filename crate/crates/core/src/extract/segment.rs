use crate::html::{Lexer, Token};

/// A text block and the fraction of its characters inside links.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub text: String,
    pub link_density: f64,
}

const BLOCK: &[&str] = &[
    "p",
    "div",
    "li",
    "h1",
    "h2",
    "h3",
    "h4",
    "h5",
    "h6",
    "td",
    "th",
    "blockquote",
    "tr",
    "ul",
    "ol",
    "dl",
    "dt",
    "dd",
    "table",
    "section",
    "article",
    "main",
    "aside",
    "pre",
    "hr",
    "body",
    "html",
    "center",
    "address",
    "figcaption",
];

const DROPPED: &[&str] = &[
    "script", "style", "nav", "header", "footer", "form", "head", "noscript", "template", "svg", "iframe", "select",
    "textarea", "title",
];

#[derive(Default)]
struct Builder {
    chars: Vec<(char, bool)>,
    pending_space: Option<bool>,
    out: Vec<Segment>,
}

impl Builder {
    fn push_text(&mut self, text: &str, in_link: bool) {
        for c in text.chars() {
            if c.is_whitespace() {
                if self.pending_space.is_none() {
                    self.pending_space = Some(in_link);
                }
            } else {
                if let Some(link) = self.pending_space.take() {
                    if !self.chars.is_empty() {
                        self.chars.push((' ', link));
                    }
                }
                self.chars.push((c, in_link));
            }
        }
    }

    fn flush(&mut self) {
        self.pending_space = None;
        if self.chars.is_empty() {
            return;
        }
        let total = self.chars.len();
        let linked = self.chars.iter().filter(|(_, l)| *l).count();
        let text: String = self.chars.iter().map(|(c, _)| *c).collect();
        self.chars.clear();
        self.out.push(Segment {
            text,
            link_density: linked as f64 / total as f64,
        });
    }
}

/// Split HTML into block-level text segments.
///
/// Block elements delimit segments; contents of script, style, nav, header,
/// footer, form (and a few other non-content elements) are dropped. Entities
/// are decoded and whitespace collapsed. Never yields an empty segment.
pub fn segment_paragraphs(html: &[u8]) -> Vec<Segment> {
    let src = String::from_utf8_lossy(html);
    let mut b = Builder::default();
    let mut dropped_depth = 0usize;
    let mut link_depth = 0usize;
    for token in Lexer::new(&src) {
        match token {
            Token::Text(t) => {
                if dropped_depth == 0 {
                    let decoded = html_escape::decode_html_entities(t);
                    b.push_text(&decoded, link_depth > 0);
                }
            }
            Token::Start { name, self_closing, .. } => {
                let n = name.as_str();
                if DROPPED.contains(&n) {
                    if !self_closing {
                        dropped_depth += 1;
                    }
                } else if dropped_depth > 0 {
                } else if BLOCK.contains(&n) {
                    b.flush();
                } else if n == "a" && !self_closing {
                    link_depth += 1;
                } else if n == "br" {
                    b.push_text(" ", link_depth > 0);
                }
            }
            Token::End { name } => {
                let n = name.as_str();
                if DROPPED.contains(&n) {
                    dropped_depth = dropped_depth.saturating_sub(1);
                } else if dropped_depth > 0 {
                } else if BLOCK.contains(&n) {
                    b.flush();
                } else if n == "a" {
                    link_depth = link_depth.saturating_sub(1);
                }
            }
        }
    }
    b.flush();
    b.out
}
