use crate::hash::stable_hash_str;

fn is_url_token(token: &str) -> bool {
    let lower = token.to_lowercase();
    lower.contains("://") || lower.starts_with("www.")
}

/// Normalize a paragraph so that texts differing only in numbers, punctuation,
/// links, case or spacing compare equal.
pub fn mask_paragraph(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for token in text.split_whitespace() {
        let mut masked = String::new();
        if is_url_token(token) {
            masked.push_str("URL");
        } else {
            let mut in_digits = false;
            // punctuation is dropped before digit runs are collapsed, so
            // "3,5" and "12" mask alike
            for c in token
                .chars()
                .filter(|c| !(c.is_ascii_punctuation() || is_punctuation(*c)))
            {
                if c.is_numeric() {
                    if !in_digits {
                        masked.push('0');
                    }
                    in_digits = true;
                    continue;
                }
                in_digits = false;
                if c.is_alphabetic() {
                    masked.extend(c.to_lowercase());
                } else {
                    masked.push(c);
                }
            }
        }
        if !masked.is_empty() {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(&masked);
        }
    }
    out
}

fn is_punctuation(c: char) -> bool {
    matches!(
        c,
        '«' | '»' | '„' | '“' | '”' | '‘' | '’' | '‚' | '–' | '—' | '…' | '·' | '¡' | '¿' | '•'
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MaskedFingerprint(pub u64);

impl MaskedFingerprint {
    pub fn of(text: &str) -> Self {
        Self::of_masked(&mask_paragraph(text))
    }

    pub fn of_masked(masked: &str) -> Self {
        Self(stable_hash_str(masked, 0))
    }
}
