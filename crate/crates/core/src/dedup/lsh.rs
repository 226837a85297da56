use super::{DedupError, MinHashSignature};
use crate::hash::stable_hash;
use std::collections::{BTreeSet, HashMap};

pub const DEFAULT_BANDS: usize = 16;
pub const DEFAULT_ROWS: usize = 8;

/// Banded LSH over MinHash signatures. Values are caller-chosen indices.
#[derive(Debug, Clone)]
pub struct LshIndex {
    bands: usize,
    rows: usize,
    buckets: HashMap<(usize, u64), Vec<usize>>,
    len: usize,
}

impl LshIndex {
    pub fn new(bands: usize, rows: usize, k: usize) -> Result<Self, DedupError> {
        if bands == 0 || rows == 0 || bands * rows != k {
            return Err(DedupError::BadLayout { bands, rows, k });
        }
        Ok(Self {
            bands,
            rows,
            buckets: HashMap::new(),
            len: 0,
        })
    }

    pub fn with_defaults() -> Self {
        Self::new(DEFAULT_BANDS, DEFAULT_ROWS, DEFAULT_BANDS * DEFAULT_ROWS).expect("16x8=128")
    }

    fn band_keys<'a>(
        &'a self,
        sig: &'a MinHashSignature,
    ) -> Result<impl Iterator<Item = (usize, u64)> + 'a, DedupError> {
        if sig.minima.len() != self.bands * self.rows {
            return Err(DedupError::BadLayout {
                bands: self.bands,
                rows: self.rows,
                k: sig.minima.len(),
            });
        }
        Ok(sig.minima.chunks(self.rows).enumerate().map(|(band, rows)| {
            let bytes: Vec<u8> = rows.iter().flat_map(|v| v.to_le_bytes()).collect();
            (band, stable_hash(&bytes, band as u64))
        }))
    }

    pub fn insert(&mut self, value: usize, sig: &MinHashSignature) -> Result<(), DedupError> {
        let keys: Vec<_> = self.band_keys(sig)?.collect();
        for key in keys {
            self.buckets.entry(key).or_default().push(value);
        }
        self.len += 1;
        Ok(())
    }

    /// Every inserted value sharing at least one band bucket with `sig`.
    pub fn candidates(&self, sig: &MinHashSignature) -> Result<BTreeSet<usize>, DedupError> {
        let mut out = BTreeSet::new();
        for key in self.band_keys(sig)? {
            if let Some(v) = self.buckets.get(&key) {
                out.extend(v.iter().copied());
            }
        }
        Ok(out)
    }

    /// Number of buckets holding `value`.
    pub fn bucket_count(&self, value: usize) -> usize {
        self.buckets
            .values()
            .map(|v| v.iter().filter(|x| **x == value).count())
            .sum()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}
