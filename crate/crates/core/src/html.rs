//! Forgiving HTML tokenizer.
//!
//! Produces a flat stream of text runs and tags. No tree is built; callers
//! track element nesting themselves. Raw-text elements (`script`, `style`,
//! `textarea`, `title`) swallow everything up to their closing tag.

use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token<'a> {
    Text(&'a str),
    Start {
        name: String,
        attrs: &'a str,
        self_closing: bool,
    },
    End {
        name: String,
    },
}

const RAW_TEXT: &[&str] = &["script", "style", "textarea", "title"];

pub struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    pending: VecDeque<Token<'a>>,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str) -> Self {
        Self {
            src,
            pos: 0,
            pending: VecDeque::new(),
        }
    }

    fn find_from(&self, needle: &str, from: usize) -> Option<usize> {
        self.src[from..].find(needle).map(|i| i + from)
    }

    /// Byte offset of the `>` closing a tag starting at `start`, honoring quotes.
    fn tag_end(&self, start: usize) -> Option<usize> {
        let bytes = self.src.as_bytes();
        let mut quote: Option<u8> = None;
        for (i, &b) in bytes.iter().enumerate().skip(start) {
            match quote {
                Some(q) if b == q => quote = None,
                Some(_) => {}
                None if b == b'"' || b == b'\'' => quote = Some(b),
                None if b == b'>' => return Some(i),
                None => {}
            }
        }
        None
    }

    /// (start of the closing tag, end of the closing tag) for a raw-text element.
    fn raw_text_end(&self, name: &str, from: usize) -> (usize, usize) {
        let needle = format!("</{name}");
        let hay = &self.src.as_bytes()[from..];
        let found = hay
            .windows(needle.len())
            .position(|w| w.eq_ignore_ascii_case(needle.as_bytes()));
        match found {
            Some(i) => {
                let close_start = from + i;
                let close_end = self
                    .find_from(">", close_start)
                    .map(|j| j + 1)
                    .unwrap_or(self.src.len());
                (close_start, close_end)
            }
            None => (self.src.len(), self.src.len()),
        }
    }

    fn lex_one(&mut self) -> Option<Token<'a>> {
        let src = self.src;
        loop {
            if self.pos >= src.len() {
                return None;
            }
            let rest = &src[self.pos..];
            if !rest.starts_with('<') {
                let end = rest.find('<').map(|i| self.pos + i).unwrap_or(src.len());
                let text = &src[self.pos..end];
                self.pos = end;
                return Some(Token::Text(text));
            }
            if rest.starts_with("<!--") {
                self.pos = self.find_from("-->", self.pos + 4).map(|i| i + 3).unwrap_or(src.len());
                continue;
            }
            if rest.starts_with("<!") || rest.starts_with("<?") {
                self.pos = self.find_from(">", self.pos).map(|i| i + 1).unwrap_or(src.len());
                continue;
            }
            let after = &rest[1..];
            let is_end = after.starts_with('/');
            let name_start = if is_end { &after[1..] } else { after };
            if !name_start.starts_with(|c: char| c.is_ascii_alphabetic()) {
                // stray '<' is text
                let end = rest[1..].find('<').map(|i| self.pos + 1 + i).unwrap_or(src.len());
                let text = &src[self.pos..end];
                self.pos = end;
                return Some(Token::Text(text));
            }
            let Some(close) = self.tag_end(self.pos) else {
                self.pos = src.len();
                return None;
            };
            let inner = &src[self.pos + 1 + usize::from(is_end)..close];
            self.pos = close + 1;
            let (name, attrs) = split_tag_name(inner);
            if is_end {
                return Some(Token::End { name });
            }
            let self_closing = attrs.trim_end().ends_with('/');
            if RAW_TEXT.contains(&name.as_str()) && !self_closing {
                let (body_end, close_end) = self.raw_text_end(&name, self.pos);
                let body = &src[self.pos..body_end];
                self.pos = close_end;
                if !body.is_empty() {
                    self.pending.push_back(Token::Text(body));
                }
                self.pending.push_back(Token::End { name: name.clone() });
            }
            return Some(Token::Start {
                name,
                attrs,
                self_closing,
            });
        }
    }
}

fn split_tag_name(s: &str) -> (String, &str) {
    let end = s
        .find(|c: char| c.is_whitespace() || c == '/' || c == '>')
        .unwrap_or(s.len());
    (s[..end].to_ascii_lowercase(), &s[end..])
}

impl<'a> Iterator for Lexer<'a> {
    type Item = Token<'a>;

    fn next(&mut self) -> Option<Token<'a>> {
        if let Some(t) = self.pending.pop_front() {
            return Some(t);
        }
        self.lex_one()
    }
}

/// Value of attribute `name` in a raw attribute string, entity-decoded.
pub fn attribute(attrs: &str, name: &str) -> Option<String> {
    let mut rest = attrs;
    loop {
        rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == '/');
        if rest.is_empty() {
            return None;
        }
        let key_end = rest
            .find(|c: char| c.is_whitespace() || c == '=' || c == '/')
            .unwrap_or(rest.len());
        let key = &rest[..key_end];
        rest = rest[key_end..].trim_start();
        let mut value = None;
        if let Some(r) = rest.strip_prefix('=') {
            let r = r.trim_start();
            let (v, remaining) = match r.chars().next() {
                Some(q @ ('"' | '\'')) => {
                    let body = &r[1..];
                    match body.find(q) {
                        Some(i) => (&body[..i], &body[i + 1..]),
                        None => (body, ""),
                    }
                }
                _ => {
                    let end = r.find(char::is_whitespace).unwrap_or(r.len());
                    (&r[..end], &r[end..])
                }
            };
            value = Some(v);
            rest = remaining;
        }
        if key.eq_ignore_ascii_case(name) {
            return Some(html_escape::decode_html_entities(value.unwrap_or("")).into_owned());
        }
    }
}
