use super::{Scalar, StatsError};

/// Published URL-overlap → text-overlap intercept.
pub const PUBLISHED_INTERCEPT: f64 = 1.3476;
/// Published URL-overlap → text-overlap slope.
pub const PUBLISHED_SLOPE: f64 = 1.2161;

/// Weighted least-squares line `y = intercept + slope * x`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionModel<T> {
    pub intercept: T,
    pub slope: T,
    /// Weights the model was fitted with; empty for the published defaults.
    pub weights: Vec<T>,
}

impl<T: Scalar> RegressionModel<T> {
    /// The published overlap estimator (`textOverlap = 1.3476 + 1.2161 * URLOverlap`).
    pub fn published() -> Self {
        Self {
            intercept: T::from_f64(PUBLISHED_INTERCEPT).expect("intercept representable"),
            slope: T::from_f64(PUBLISHED_SLOPE).expect("slope representable"),
            weights: Vec::new(),
        }
    }

    pub fn predict(&self, x: T) -> T {
        self.intercept + self.slope * x
    }
}

impl<T: Scalar> Default for RegressionModel<T> {
    fn default() -> Self {
        Self::published()
    }
}

/// Closed-form weighted least squares for a single regressor with intercept.
///
/// Minimizes `Σ wᵢ (yᵢ − a − b·xᵢ)²`. Requires at least two distinct x values
/// and strictly positive weights.
pub fn fit_weighted_line<T: Scalar>(points: &[(T, T)], weights: &[T]) -> Result<RegressionModel<T>, StatsError> {
    if points.len() != weights.len() {
        return Err(StatsError::LengthMismatch {
            points: points.len(),
            weights: weights.len(),
        });
    }
    if points.len() < 2 {
        return Err(StatsError::TooFewPoints {
            needed: 2,
            got: points.len(),
        });
    }
    if let Some(i) = weights.iter().position(|w| *w <= T::zero()) {
        return Err(StatsError::NonPositiveWeight(i));
    }
    let x0 = points[0].0;
    if points.iter().all(|(x, _)| *x == x0) {
        return Err(StatsError::Singular);
    }

    // Center on the weighted means: numerically kinder than the raw normal
    // equations and exact for rationals either way.
    let sw = weights.iter().fold(T::zero(), |acc, w| acc + *w);
    let (swx, swy) = points
        .iter()
        .zip(weights)
        .fold((T::zero(), T::zero()), |(ax, ay), ((x, y), w)| {
            (ax + *w * *x, ay + *w * *y)
        });
    let mean_x = swx / sw;
    let mean_y = swy / sw;
    let (sxx, sxy) = points
        .iter()
        .zip(weights)
        .fold((T::zero(), T::zero()), |(axx, axy), ((x, y), w)| {
            let dx = *x - mean_x;
            (axx + *w * dx * dx, axy + *w * dx * (*y - mean_y))
        });
    if sxx == T::zero() {
        return Err(StatsError::Singular);
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    Ok(RegressionModel {
        intercept,
        slope,
        weights: weights.to_vec(),
    })
}

/// Scale positive sizes so they sum to one.
pub fn normalize_weights<T: Scalar>(sizes: &[T]) -> Result<Vec<T>, StatsError> {
    if let Some(i) = sizes.iter().position(|s| *s <= T::zero()) {
        return Err(StatsError::NonPositiveWeight(i));
    }
    let total = sizes.iter().fold(T::zero(), |acc, s| acc + *s);
    Ok(sizes.iter().map(|s| *s / total).collect())
}

/// Estimated text-overlap percentage, clamped into `[0, 100]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction<T> {
    pub value: T,
    pub clamped: bool,
}

/// Apply an overlap estimator; `None` uses the published coefficients.
pub fn predict_overlap<T: Scalar>(url_overlap_pct: T, model: Option<&RegressionModel<T>>) -> Prediction<T> {
    let raw = match model {
        Some(m) => m.predict(url_overlap_pct),
        None => RegressionModel::<T>::published().predict(url_overlap_pct),
    };
    let hundred = T::from_u8(100).expect("100 representable");
    if raw < T::zero() {
        Prediction {
            value: T::zero(),
            clamped: true,
        }
    } else if raw > hundred {
        Prediction {
            value: hundred,
            clamped: true,
        }
    } else {
        Prediction {
            value: raw,
            clamped: false,
        }
    }
}

/// `100 · (new − old) / old`.
pub fn percent_change<T: Scalar>(old_count: T, new_count: T) -> Result<T, StatsError> {
    if old_count == T::zero() {
        return Err(StatsError::ZeroBaseline);
    }
    let hundred = T::from_u8(100).expect("100 representable");
    Ok(hundred * (new_count - old_count) / old_count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn two_points_interpolate() {
        let m = fit_weighted_line(&[(0.0, 1.0), (1.0, 3.0)], &[0.3, 7.0]).unwrap();
        assert_eq!(m.intercept, 1.0);
        assert_eq!(m.slope, 2.0);
    }

    #[test]
    fn all_x_equal_is_singular() {
        let err = fit_weighted_line(&[(2.0, 1.0), (2.0, 3.0), (2.0, 5.0)], &[1.0; 3]).unwrap_err();
        assert_eq!(err, StatsError::Singular);
    }

    #[test]
    fn rejects_bad_weights_and_lengths() {
        assert_eq!(
            fit_weighted_line(&[(0.0, 1.0), (1.0, 3.0)], &[1.0, 0.0]).unwrap_err(),
            StatsError::NonPositiveWeight(1)
        );
        assert!(matches!(
            fit_weighted_line(&[(0.0, 1.0), (1.0, 3.0)], &[1.0]),
            Err(StatsError::LengthMismatch { .. })
        ));
        assert!(matches!(
            fit_weighted_line(&[(0.0, 1.0)], &[1.0]),
            Err(StatsError::TooFewPoints { .. })
        ));
    }

    #[test]
    fn exact_rational_fit() {
        let r = |n: i64| Ratio::from_integer(n);
        let pts = [(r(0), r(0)), (r(1), r(1)), (r(2), r(0))];
        let m = fit_weighted_line(&pts, &[r(1), r(4), r(1)]).unwrap();
        assert_eq!(m.slope, r(0));
        assert_eq!(m.intercept, Ratio::new(2, 3));
    }

    #[test]
    fn published_predictions() {
        for (x, want) in [(0.0, 1.3476), (10.0, 13.5086), (50.0, 62.1526)] {
            let p = predict_overlap(x, None::<&RegressionModel<f64>>);
            assert!((p.value - want).abs() < 1e-9, "{x}: {}", p.value);
            assert!(!p.clamped);
        }
        let p = predict_overlap(100.0, None);
        assert_eq!(p.value, 100.0);
        assert!(p.clamped);
    }

    #[test]
    fn percent_change_cases() {
        assert_eq!(percent_change(100.0, 150.0).unwrap(), 50.0);
        assert_eq!(percent_change(100.0, 100.0).unwrap(), 0.0);
        assert_eq!(percent_change(200.0, 390.0).unwrap(), 95.0);
        assert_eq!(percent_change(0.0, 5.0), Err(StatsError::ZeroBaseline));
        assert_eq!(percent_change(4i64, 5i64).unwrap(), 25);
    }

    #[test]
    fn normalized_weights_sum_to_one() {
        let w = normalize_weights(&[1.0, 3.0]).unwrap();
        assert_eq!(w, vec![0.25, 0.75]);
        assert!(normalize_weights(&[1.0, -1.0]).is_err());
    }
}
