use super::{mask_paragraph, DedupError};
use crate::hash::{splitmix64, stable_hash};

pub const DEFAULT_K: usize = 128;
pub const SHINGLE_WIDTH: usize = 4;
pub const DEFAULT_SEED: u64 = 0x00C0_FFEE_5EED_0001;

/// Word 4-grams over the masked, lowercased token stream, joined by a space.
pub fn shingles(text: &str) -> Vec<String> {
    let masked = mask_paragraph(text).to_lowercase();
    let words: Vec<&str> = masked.split(' ').filter(|w| !w.is_empty()).collect();
    words.windows(SHINGLE_WIDTH).map(|w| w.join(" ")).collect()
}

/// Seeded hash family: permutation `i` is XXH64 keyed by `seeds[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinHasher {
    seeds: Vec<u64>,
    digest: u64,
}

impl MinHasher {
    /// `k` seeds expanded from `master` with SplitMix64.
    pub fn new(k: usize, master: u64) -> Result<Self, DedupError> {
        let mut state = master;
        Self::from_seeds((0..k).map(|_| splitmix64(&mut state)).collect())
    }

    pub fn from_seeds(seeds: Vec<u64>) -> Result<Self, DedupError> {
        if seeds.is_empty() {
            return Err(DedupError::ZeroK);
        }
        let bytes: Vec<u8> = seeds.iter().flat_map(|s| s.to_le_bytes()).collect();
        Ok(Self {
            digest: stable_hash(&bytes, 0),
            seeds,
        })
    }

    pub fn k(&self) -> usize {
        self.seeds.len()
    }

    pub fn seeds(&self) -> &[u64] {
        &self.seeds
    }

    pub fn sign(&self, text: &str) -> Result<MinHashSignature, DedupError> {
        minhash_signature(text, self)
    }

    /// Signature of an explicit shingle set.
    pub fn sign_shingles<S: AsRef<[u8]>>(&self, shingles: &[S]) -> MinHashSignature {
        let minima = self
            .seeds
            .iter()
            .map(|seed| {
                shingles
                    .iter()
                    .map(|s| stable_hash(s.as_ref(), *seed))
                    .min()
                    .unwrap_or(u64::MAX)
            })
            .collect();
        MinHashSignature {
            minima,
            shingle_width: SHINGLE_WIDTH as u32,
            seed_digest: self.digest,
        }
    }
}

impl Default for MinHasher {
    fn default() -> Self {
        Self::new(DEFAULT_K, DEFAULT_SEED).expect("k > 0")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinHashSignature {
    pub minima: Vec<u64>,
    pub shingle_width: u32,
    /// Hash of the seed list; signatures from different hash families are
    /// refused by [`estimate_jaccard`].
    pub seed_digest: u64,
}

pub fn minhash_signature(text: &str, hasher: &MinHasher) -> Result<MinHashSignature, DedupError> {
    let sh = shingles(text);
    if sh.is_empty() {
        let words = mask_paragraph(text).split(' ').filter(|w| !w.is_empty()).count();
        return Err(DedupError::TooFewWords(words));
    }
    Ok(hasher.sign_shingles(&sh))
}

pub fn estimate_jaccard(a: &MinHashSignature, b: &MinHashSignature) -> Result<f64, DedupError> {
    if a.minima.len() != b.minima.len() {
        return Err(DedupError::Incompatible(format!(
            "k={} vs k={}",
            a.minima.len(),
            b.minima.len()
        )));
    }
    if a.seed_digest != b.seed_digest || a.shingle_width != b.shingle_width {
        return Err(DedupError::Incompatible("different seed lists".into()));
    }
    let same = a.minima.iter().zip(&b.minima).filter(|(x, y)| x == y).count();
    Ok(same as f64 / a.minima.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn brute_jaccard(a: &str, b: &str) -> f64 {
        let sa: BTreeSet<String> = shingles(a).into_iter().collect();
        let sb: BTreeSet<String> = shingles(b).into_iter().collect();
        sa.intersection(&sb).count() as f64 / sa.union(&sb).count() as f64
    }

    #[test]
    fn shingle_construction() {
        assert_eq!(shingles("A b, c d E"), vec!["a b c d", "b c d e"]);
        assert!(shingles("one two three").is_empty());
    }

    #[test]
    fn too_short_is_error() {
        let h = MinHasher::default();
        assert!(matches!(h.sign("one two three"), Err(DedupError::TooFewWords(3))));
        assert!(h.sign("one two three four").is_ok());
    }

    #[test]
    fn identical_texts_identical_signatures() {
        let h = MinHasher::default();
        let t = "the quick brown fox jumps over the lazy dog";
        assert_eq!(h.sign(t).unwrap(), h.sign(t).unwrap());
        assert_eq!(estimate_jaccard(&h.sign(t).unwrap(), &h.sign(t).unwrap()).unwrap(), 1.0);
    }

    #[test]
    fn last_word_change_tracks_brute_force() {
        let h = MinHasher::default();
        let base =
            "alpha beta gamma delta epsilon zeta eta theta iota kappa lambda mu nu xi omicron pi rho sigma tau upsilon";
        let changed = base.replace("upsilon", "omega");
        let est = estimate_jaccard(&h.sign(base).unwrap(), &h.sign(&changed).unwrap()).unwrap();
        assert!((est - brute_jaccard(base, &changed)).abs() <= 0.1, "{est}");
    }

    #[test]
    fn mismatched_families_rejected() {
        let t = "one two three four five";
        let a = MinHasher::new(128, 1).unwrap().sign(t).unwrap();
        let b = MinHasher::new(128, 2).unwrap().sign(t).unwrap();
        let c = MinHasher::new(64, 1).unwrap().sign(t).unwrap();
        assert!(matches!(estimate_jaccard(&a, &b), Err(DedupError::Incompatible(_))));
        assert!(matches!(estimate_jaccard(&a, &c), Err(DedupError::Incompatible(_))));
        assert!(matches!(MinHasher::from_seeds(vec![]), Err(DedupError::ZeroK)));
    }

    #[test]
    fn disjoint_vocabularies_estimate_near_zero() {
        let h = MinHasher::default();
        let a: Vec<String> = (0..200).map(|i| format!("a{i}")).collect();
        let b: Vec<String> = (0..200).map(|i| format!("b{i}")).collect();
        let est = estimate_jaccard(&h.sign_shingles(&a), &h.sign_shingles(&b)).unwrap();
        assert!(est <= 0.05);
    }

    proptest! {
        #[test]
        fn estimate_symmetric_and_bounded(
            a in proptest::collection::vec("[a-d]{1,2}", 4..30),
            b in proptest::collection::vec("[a-d]{1,2}", 4..30),
        ) {
            let h = MinHasher::new(32, 7).unwrap();
            let (sa, sb) = (h.sign(&a.join(" ")).unwrap(), h.sign(&b.join(" ")).unwrap());
            let ab = estimate_jaccard(&sa, &sb).unwrap();
            prop_assert_eq!(ab, estimate_jaccard(&sb, &sa).unwrap());
            prop_assert!((0.0..=1.0).contains(&ab));
        }
    }
}
