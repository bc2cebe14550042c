//! Classical baseline machinery: HOG descriptors, intensity-normalized
//! patch vectors, OT-MACH correlation filters designed per-frequency in the
//! Fourier domain, and a deterministic linear-SVM trainer for the
//! one-vs-one deciders.

pub mod fft;
mod hog;
mod mach;
mod normalize;
mod svm;

pub use hog::{hog, HogGeometry};
pub use mach::{
    correlate, correlate_feature_grid, correlate_map, otmach_design, otmach_hog_design,
    pair_filters, pair_scores_from_responses, MachFilter,
};
pub use normalize::intensity_normalize;
pub use svm::{geometric_margin, train_linear_svm, SvmTrainConfig};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BaselineError {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("filter design error: {0}")]
    Design(String),
}

pub type Result<T> = std::result::Result<T, BaselineError>;
