//! Stable 64-bit hashing shared by document ids, fingerprints and MinHash.
//!
//! XXH64 is platform independent, so every value derived here is reproducible
//! across runs and machines.

use xxhash_rust::xxh64::xxh64;

pub fn stable_hash(bytes: &[u8], seed: u64) -> u64 {
    xxh64(bytes, seed)
}

pub fn stable_hash_str(text: &str, seed: u64) -> u64 {
    xxh64(text.as_bytes(), seed)
}

/// Document identifier derived from its URL: 16 lowercase hex digits.
pub fn doc_id_for_url(url: &str) -> String {
    format!("{:016x}", xxh64(url.as_bytes(), 0))
}

/// SplitMix64 step, used to expand one master seed into a seed list.
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
