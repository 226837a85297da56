//! Exact, paragraph-level and MinHash near-duplicate removal.

mod lsh;
mod mask;
mod minhash;
mod near;
mod paragraphs;
mod sidecar;

pub use lsh::{LshIndex, DEFAULT_BANDS, DEFAULT_ROWS};
pub use mask::{mask_paragraph, MaskedFingerprint};
pub use minhash::{
    estimate_jaccard, minhash_signature, shingles, MinHashSignature, MinHasher, DEFAULT_K, DEFAULT_SEED, SHINGLE_WIDTH,
};
pub use near::{find_near_duplicates, NearDuplicate, DEFAULT_THRESHOLD};
pub use paragraphs::{dedup_exact, dedup_paragraphs, ExactDedup, ParagraphDedup, DROP_FRACTION};
pub use sidecar::{read_signatures, write_signatures, SignatureSet};

#[derive(Debug, thiserror::Error)]
pub enum DedupError {
    #[error("text has {0} word tokens; at least {SHINGLE_WIDTH} needed to form a shingle")]
    TooFewWords(usize),
    #[error("signatures are not comparable: {0}")]
    Incompatible(String),
    #[error("LSH layout {bands}x{rows} does not cover k={k}")]
    BadLayout { bands: usize, rows: usize, k: usize },
    #[error("k must be positive")]
    ZeroK,
    #[error("signature sidecar: {0}")]
    Sidecar(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
