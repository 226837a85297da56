//! Building clean, annotated web corpora from TLD-scoped crawls and comparing
//! corpus versions.
//!
//! Pipeline stages map onto modules: [`crawler`] → [`extract`] → [`langid`] →
//! [`dedup`] → [`refine`], with [`corpus`] holding the shared document model
//! and [`diff`] comparing two corpus versions.

pub mod corpus;
pub mod crawler;
pub mod dedup;
pub mod diff;
pub mod extract;
pub mod fixture;
pub mod hash;
pub mod html;
pub mod langid;
pub mod refine;
pub mod stats;

pub use corpus::{Document, LabelAssignment, Language, Paragraph, Quality, Schema};

/// Overlap estimator over `f64`.
pub type RegressionModel = stats::RegressionModel<f64>;
/// Overlap estimator over exact rationals.
pub type ExactRegressionModel = stats::RegressionModel<num_rational::Ratio<i64>>;
pub type CorrelationResult = stats::CorrelationResult<f64>;
