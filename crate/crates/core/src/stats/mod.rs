//! Scalar-generic statistics used by the corpus comparison reports.
//!
//! Regression only needs field arithmetic, so it works over exact rationals as
//! well as floats. Correlation needs square roots and the Student-t tail, so it
//! is restricted to [`num_traits::Float`].

mod correlation;
mod regression;
mod special;

pub use correlation::{p_from_r, pearson_with_p, CorrelationResult};
pub use regression::{
    fit_weighted_line, normalize_weights, percent_change, predict_overlap, Prediction, RegressionModel,
    PUBLISHED_INTERCEPT, PUBLISHED_SLOPE,
};
pub use special::{ln_gamma, regularized_incomplete_beta, student_t_two_sided_p};

use num_traits::{FromPrimitive, Num};
use std::fmt::Debug;

/// Field-like scalar accepted by the regression routines.
pub trait Scalar: Num + Copy + PartialOrd + FromPrimitive + Debug {}

impl<T> Scalar for T where T: Num + Copy + PartialOrd + FromPrimitive + Debug {}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StatsError {
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("points and weights differ in length ({points} vs {weights})")]
    LengthMismatch { points: usize, weights: usize },
    #[error("weight at index {0} is not strictly positive")]
    NonPositiveWeight(usize),
    #[error("all x values are equal; the weighted normal equations are singular")]
    Singular,
    #[error("zero variance in {0}")]
    ZeroVariance(&'static str),
    #[error("baseline count is zero")]
    ZeroBaseline,
    #[error("value {0} cannot be represented in the target scalar type")]
    Unrepresentable(f64),
}
