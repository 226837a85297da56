//! Binary signature sidecar.
//!
//! Little-endian layout: magic `FSIG`, u32 version, u32 k, u32 shingle width,
//! k × u64 seeds, u64 document count, then per document a u32 id length, the
//! UTF-8 id bytes and k × u64 minima.

use super::{DedupError, MinHashSignature, MinHasher};
use std::io::{Read, Write};

const MAGIC: &[u8; 4] = b"FSIG";
const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct SignatureSet {
    pub hasher: MinHasher,
    pub entries: Vec<(String, MinHashSignature)>,
}

pub fn write_signatures<W: Write>(mut out: W, set: &SignatureSet) -> Result<(), DedupError> {
    let k = set.hasher.k();
    out.write_all(MAGIC)?;
    out.write_all(&VERSION.to_le_bytes())?;
    out.write_all(&(k as u32).to_le_bytes())?;
    out.write_all(&(super::SHINGLE_WIDTH as u32).to_le_bytes())?;
    for s in set.hasher.seeds() {
        out.write_all(&s.to_le_bytes())?;
    }
    out.write_all(&(set.entries.len() as u64).to_le_bytes())?;
    for (id, sig) in &set.entries {
        if sig.minima.len() != k {
            return Err(DedupError::Incompatible(format!(
                "{id}: k={} in a k={k} set",
                sig.minima.len()
            )));
        }
        out.write_all(&(id.len() as u32).to_le_bytes())?;
        out.write_all(id.as_bytes())?;
        for m in &sig.minima {
            out.write_all(&m.to_le_bytes())?;
        }
    }
    Ok(())
}

fn read_array<const N: usize, R: Read>(r: &mut R) -> Result<[u8; N], DedupError> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf).map_err(|e| match e.kind() {
        std::io::ErrorKind::UnexpectedEof => DedupError::Sidecar("truncated file".into()),
        _ => DedupError::Io(e),
    })?;
    Ok(buf)
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32, DedupError> {
    Ok(u32::from_le_bytes(read_array(r)?))
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64, DedupError> {
    Ok(u64::from_le_bytes(read_array(r)?))
}

pub fn read_signatures<R: Read>(mut r: R) -> Result<SignatureSet, DedupError> {
    if &read_array::<4, _>(&mut r)? != MAGIC {
        return Err(DedupError::Sidecar("bad magic".into()));
    }
    let version = read_u32(&mut r)?;
    if version != VERSION {
        return Err(DedupError::Sidecar(format!("unsupported version {version}")));
    }
    let k = read_u32(&mut r)? as usize;
    let width = read_u32(&mut r)?;
    if width as usize != super::SHINGLE_WIDTH {
        return Err(DedupError::Sidecar(format!("unsupported shingle width {width}")));
    }
    let seeds = (0..k).map(|_| read_u64(&mut r)).collect::<Result<Vec<_>, _>>()?;
    let hasher = MinHasher::from_seeds(seeds)?;
    let n = read_u64(&mut r)?;
    let mut entries = Vec::new();
    for _ in 0..n {
        let len = read_u32(&mut r)? as usize;
        let mut id = vec![0u8; len];
        r.read_exact(&mut id)?;
        let id = String::from_utf8(id).map_err(|_| DedupError::Sidecar("id is not UTF-8".into()))?;
        let minima = (0..k).map(|_| read_u64(&mut r)).collect::<Result<Vec<_>, _>>()?;
        let mut sig = hasher.sign_shingles::<&[u8]>(&[]);
        sig.minima = minima;
        entries.push((id, sig));
    }
    Ok(SignatureSet { hasher, entries })
}
