use super::{HbsDecision, Identification};
use crate::corpus::{Document, Language};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Corpus(Language),
    Reject,
}

/// Corpus for a national TLD, if it is one of the seven.
pub fn national_corpus(tld: &str) -> Option<Language> {
    Some(match tld {
        "ba" => Language::Bs,
        "bg" => Language::Bg,
        "hr" => Language::Hr,
        "mk" => Language::Mk,
        "me" => Language::Cnr,
        "rs" => Language::Sr,
        "si" => Language::Sl,
        _ => return None,
    })
}

/// Assign a document to a corpus.
///
/// National TLDs route unconditionally. Everything else needs both voters to
/// agree: on the HBS macro-language the discriminator decides, on bg/mk/sl
/// the voters decide, otherwise the document is rejected.
pub fn route_document(doc: &Document, ids: Option<&Identification>, hbs: Option<&HbsDecision>) -> Route {
    if let Some(lang) = national_corpus(&doc.tld.to_ascii_lowercase()) {
        return Route::Corpus(lang);
    }
    match ids {
        Some(Identification {
            language: Language::Hbs,
            agreed: true,
        }) => hbs.map_or(Route::Reject, |d| Route::Corpus(d.language)),
        Some(Identification {
            language: lang @ (Language::Bg | Language::Mk | Language::Sl),
            agreed: true,
        }) => Route::Corpus(*lang),
        _ => Route::Reject,
    }
}
