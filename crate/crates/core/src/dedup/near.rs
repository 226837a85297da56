use super::{estimate_jaccard, DedupError, LshIndex, MinHashSignature, DEFAULT_BANDS, DEFAULT_ROWS};

pub const DEFAULT_THRESHOLD: f64 = 0.7;

#[derive(Debug, Clone, PartialEq)]
pub struct NearDuplicate {
    pub id_a: String,
    pub id_b: String,
    pub estimate: f64,
}

/// Match documents of `a` against `b`.
///
/// Candidates come from LSH band collisions and are kept when their estimated
/// Jaccard reaches `threshold`. Pairs are then assigned greedily by descending
/// estimate (ties by ids) so every document appears in at most one pair.
pub fn find_near_duplicates(
    a: &[(String, MinHashSignature)],
    b: &[(String, MinHashSignature)],
    threshold: f64,
) -> Result<Vec<NearDuplicate>, DedupError> {
    let k = match a.first().or(b.first()) {
        Some((_, s)) => s.minima.len(),
        None => return Ok(Vec::new()),
    };
    let (bands, rows) = if k == DEFAULT_BANDS * DEFAULT_ROWS {
        (DEFAULT_BANDS, DEFAULT_ROWS)
    } else {
        (k, 1)
    };
    let mut index = LshIndex::new(bands, rows, k)?;
    for (j, (_, sig)) in b.iter().enumerate() {
        index.insert(j, sig)?;
    }
    let mut pairs = Vec::new();
    for (i, (_, sig)) in a.iter().enumerate() {
        for j in index.candidates(sig)? {
            let est = estimate_jaccard(sig, &b[j].1)?;
            if est >= threshold {
                pairs.push((i, j, est));
            }
        }
    }
    pairs.sort_by(|x, y| {
        y.2.total_cmp(&x.2)
            .then_with(|| a[x.0].0.cmp(&a[y.0].0))
            .then_with(|| b[x.1].0.cmp(&b[y.1].0))
    });
    let mut used_a = vec![false; a.len()];
    let mut used_b = vec![false; b.len()];
    let mut out = Vec::new();
    for (i, j, est) in pairs {
        if used_a[i] || used_b[j] {
            continue;
        }
        used_a[i] = true;
        used_b[j] = true;
        out.push(NearDuplicate {
            id_a: a[i].0.clone(),
            id_b: b[j].0.clone(),
            estimate: est,
        });
    }
    Ok(out)
}
