use super::special::student_t_two_sided_p;
use super::StatsError;
use num_traits::Float;

/// Pearson coefficient with its two-sided t-test p-value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationResult<T> {
    pub r: T,
    pub n: usize,
    pub p: T,
}

/// Two-sided p-value for a Pearson `r` over `n` samples, using
/// `t = r·√(n−2)/√(1−r²)` with `n − 2` degrees of freedom.
pub fn p_from_r<T: Float>(r: T, n: usize) -> Result<T, StatsError> {
    if n < 3 {
        return Err(StatsError::TooFewPoints { needed: 3, got: n });
    }
    let df = T::from(n - 2).expect("df representable");
    let one = T::one();
    let r = r.max(-one).min(one);
    let denom = (one - r * r).sqrt();
    if denom == T::zero() {
        return Ok(T::zero());
    }
    let t = r * df.sqrt() / denom;
    Ok(student_t_two_sided_p(t, df))
}

pub fn pearson_with_p<T: Float>(points: &[(T, T)]) -> Result<CorrelationResult<T>, StatsError> {
    let n = points.len();
    if n < 3 {
        return Err(StatsError::TooFewPoints { needed: 3, got: n });
    }
    let nf = T::from(n).expect("n representable");
    let (sx, sy) = points
        .iter()
        .fold((T::zero(), T::zero()), |(ax, ay), (x, y)| (ax + *x, ay + *y));
    let (mx, my) = (sx / nf, sy / nf);
    let (mut sxx, mut syy, mut sxy) = (T::zero(), T::zero(), T::zero());
    for (x, y) in points {
        let dx = *x - mx;
        let dy = *y - my;
        sxx = sxx + dx * dx;
        syy = syy + dy * dy;
        sxy = sxy + dx * dy;
    }
    if sxx == T::zero() {
        return Err(StatsError::ZeroVariance("x"));
    }
    if syy == T::zero() {
        return Err(StatsError::ZeroVariance("y"));
    }
    let one = T::one();
    let r = (sxy / (sxx.sqrt() * syy.sqrt())).max(-one).min(one);
    let p = p_from_r(r, n)?;
    Ok(CorrelationResult { r, n, p })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_line() {
        let pts: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, 3.0 * i as f64 - 1.0)).collect();
        let c = pearson_with_p(&pts).unwrap();
        assert!((c.r - 1.0).abs() < 1e-12);
        assert!(c.p < 1e-12);
        assert_eq!(p_from_r(1.0f64, 5).unwrap(), 0.0);
    }

    #[test]
    fn published_significance() {
        let p = p_from_r(0.908f64, 7).unwrap();
        assert!((p - 0.0047).abs() <= 0.0002, "{p}");
    }

    #[test]
    fn zero_variance_rejected() {
        let pts = [(1.0, 2.0), (1.0, 3.0), (1.0, 4.0)];
        assert_eq!(pearson_with_p(&pts).unwrap_err(), StatsError::ZeroVariance("x"));
        let pts = [(1.0, 2.0), (2.0, 2.0), (3.0, 2.0)];
        assert_eq!(pearson_with_p(&pts).unwrap_err(), StatsError::ZeroVariance("y"));
        assert!(pearson_with_p(&[(1.0, 2.0), (2.0, 3.0)]).is_err());
    }
}
