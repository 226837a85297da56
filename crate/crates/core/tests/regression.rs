use forge_core::stats::{
    fit_weighted_line, normalize_weights, p_from_r, pearson_with_p, percent_change, predict_overlap, StatsError,
};
use forge_core::RegressionModel;
use num_rational::Ratio;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Solve the 2x2 weighted normal equations by Gaussian elimination over
/// exact rationals.
fn normal_equations(points: &[(i64, i64)], weights: &[i64]) -> (Ratio<i64>, Ratio<i64>) {
    let r = Ratio::from_integer;
    let (mut sw, mut swx, mut swxx, mut swy, mut swxy) = (r(0), r(0), r(0), r(0), r(0));
    for (&(x, y), &w) in points.iter().zip(weights) {
        sw += r(w);
        swx += r(w * x);
        swxx += r(w * x * x);
        swy += r(w * y);
        swxy += r(w * x * y);
    }
    // [sw swx; swx swxx] [a; b] = [swy; swxy]
    let f = swx / sw;
    let b = (swxy - f * swy) / (swxx - f * swx);
    let a = (swy - swx * b) / sw;
    (a, b)
}

#[test]
fn exact_fits_match_normal_equations() {
    type Case<'a> = (&'a [(i64, i64)], &'a [i64]);
    let cases: [Case; 3] = [
        (&[(0, 1), (1, 3)], &[5, 2]),
        (&[(0, 0), (1, 1), (2, 0)], &[1, 4, 1]),
        (&[(0, 2), (3, 1), (4, 7), (9, 4)], &[3, 1, 2, 5]),
    ];
    for (pts, ws) in cases {
        let points: Vec<(Ratio<i64>, Ratio<i64>)> = pts
            .iter()
            .map(|&(x, y)| (Ratio::from_integer(x), Ratio::from_integer(y)))
            .collect();
        let weights: Vec<Ratio<i64>> = ws.iter().map(|&w| Ratio::from_integer(w)).collect();
        let m = fit_weighted_line(&points, &weights).unwrap();
        assert_eq!((m.intercept, m.slope), normal_equations(pts, ws));
    }
    let m = fit_weighted_line(&[(0.0, 1.0), (1.0, 3.0)], &[0.3, 7.0]).unwrap();
    assert_eq!((m.intercept, m.slope), (1.0, 2.0));
}

#[test]
fn recovers_published_line_with_random_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..50 {
        let points: Vec<(f64, f64)> = [2.0, 8.5, 15.0, 21.0, 40.0]
            .iter()
            .map(|&x| (x, 1.3476 + 1.2161 * x))
            .collect();
        let weights: Vec<f64> = (0..5).map(|_| rng.random_range(0.01..100.0)).collect();
        let m = fit_weighted_line(&points, &weights).unwrap();
        assert!((m.intercept - 1.3476).abs() < 1e-9);
        assert!((m.slope - 1.2161).abs() < 1e-9);
        for (x, y) in &points {
            assert!((predict_overlap(*x, Some(&m)).value - y).abs() < 1e-9);
        }
    }
}

#[test]
fn published_predictions() {
    for (x, want) in [(0.0f64, 1.3476), (10.0, 13.5086), (50.0, 62.1526)] {
        let p = predict_overlap(x, None);
        assert!((p.value - want).abs() < 1e-4 && !p.clamped);
    }
    let p = predict_overlap(100.0, Some(&RegressionModel::published()));
    assert_eq!((p.value, p.clamped), (100.0, true));
}

#[test]
fn pearson_matches_definition() {
    let pts = [(0.0f64, 0.0), (1.0, 2.0), (2.0, 1.0), (3.0, 3.0)];
    // spreadsheet-style: means 1.5 and 1.5; Sxy = 4, Sxx = 5, Syy = 5
    let c = pearson_with_p(&pts).unwrap();
    assert!((c.r - 0.8).abs() < 1e-12);
    assert!((c.p - p_from_r(0.8f64, 4).unwrap()).abs() < 1e-15);
    let p = p_from_r(0.908f64, 7).unwrap();
    assert!((p - 0.0047).abs() <= 0.0002);
    assert!(matches!(
        pearson_with_p(&[(1.0, 1.0), (1.0, 2.0), (1.0, 3.0)]),
        Err(StatsError::ZeroVariance(_))
    ));
}

#[test]
fn percent_changes() {
    assert_eq!(percent_change(100.0, 150.0).unwrap(), 50.0);
    assert_eq!(percent_change(100.0, 100.0).unwrap(), 0.0);
    assert_eq!(percent_change(200.0, 390.0).unwrap(), 95.0);
    assert!(matches!(percent_change(0.0, 1.0), Err(StatsError::ZeroBaseline)));
}

proptest! {
    #[test]
    fn weight_scaling_invariance(
        ys in proptest::collection::vec(-50.0f64..50.0, 4),
        ws in proptest::collection::vec(0.01f64..10.0, 4),
        c in 0.001f64..1000.0,
    ) {
        let points: Vec<(f64, f64)> = ys.iter().enumerate().map(|(i, y)| (i as f64 * 3.0, *y)).collect();
        let m1 = fit_weighted_line(&points, &ws).unwrap();
        let scaled: Vec<f64> = ws.iter().map(|w| w * c).collect();
        let m2 = fit_weighted_line(&points, &scaled).unwrap();
        prop_assert!((m1.intercept - m2.intercept).abs() < 1e-9 * (1.0 + m1.intercept.abs()));
        prop_assert!((m1.slope - m2.slope).abs() < 1e-9 * (1.0 + m1.slope.abs()));
        let norm = normalize_weights(&ws).unwrap();
        prop_assert!((norm.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn residuals_orthogonal(
        ys in proptest::collection::vec(-50.0f64..50.0, 5),
        ws in proptest::collection::vec(0.01f64..10.0, 5),
    ) {
        let points: Vec<(f64, f64)> = ys.iter().enumerate().map(|(i, y)| (i as f64, *y)).collect();
        let m = fit_weighted_line(&points, &ws).unwrap();
        let (mut s0, mut s1) = (0.0, 0.0);
        for ((x, y), w) in points.iter().zip(&ws) {
            let r = y - m.predict(*x);
            s0 += w * r;
            s1 += w * r * x;
        }
        prop_assert!(s0.abs() < 1e-9 && s1.abs() < 1e-9);
    }
}
