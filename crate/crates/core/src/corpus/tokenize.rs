//! Whitespace tokenizer and rule-based sentence splitter used for word counts
//! and VERT export.

const TERMINAL: &[char] = &['.', ',', '!', '?', ';', ':', '…'];
const SENTENCE_END: &[&str] = &[".", "!", "?", "…"];

/// Split on Unicode whitespace; trailing terminal punctuation becomes
/// separate one-character tokens.
pub fn tokenize(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    for word in text.split_whitespace() {
        let stem_end = word
            .char_indices()
            .rev()
            .take_while(|(_, c)| TERMINAL.contains(c))
            .last()
            .map(|(i, _)| i)
            .unwrap_or(word.len());
        if stem_end > 0 {
            out.push(&word[..stem_end]);
        }
        let tail = &word[stem_end..];
        let mut idx = tail.char_indices().peekable();
        while let Some((i, _)) = idx.next() {
            let j = idx.peek().map(|(j, _)| *j).unwrap_or(tail.len());
            out.push(&tail[i..j]);
        }
    }
    out
}

/// Group tokens into sentences. A boundary follows a `.`, `!`, `?` or `…`
/// token when the next token starts with an uppercase letter or a digit.
pub fn split_sentences<'a>(tokens: &[&'a str]) -> Vec<Vec<&'a str>> {
    let mut sentences = Vec::new();
    let mut current = Vec::new();
    for (i, tok) in tokens.iter().enumerate() {
        current.push(*tok);
        let boundary = SENTENCE_END.contains(tok)
            && tokens
                .get(i + 1)
                .and_then(|next| next.chars().next())
                .is_some_and(|c| c.is_uppercase() || c.is_numeric());
        if boundary {
            sentences.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        sentences.push(current);
    }
    sentences
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_terminal_punctuation() {
        assert_eq!(tokenize("Dobar dan."), vec!["Dobar", "dan", "."]);
        assert_eq!(
            tokenize("Kaj?! Ja, res..."),
            vec!["Kaj", "?", "!", "Ja", ",", "res", ".", ".", "."]
        );
        assert_eq!(tokenize("  "), Vec::<&str>::new());
        assert_eq!(tokenize("3.5 km"), vec!["3.5", "km"]);
    }

    #[test]
    fn sentence_boundaries() {
        let toks = tokenize("Prvi stavek. Drugi stavek! tretji ni nov. 2024 je leto");
        let s = split_sentences(&toks);
        assert_eq!(s.len(), 3);
        assert_eq!(s[0], vec!["Prvi", "stavek", "."]);
        assert_eq!(s[2][0], "2024");
    }
}
