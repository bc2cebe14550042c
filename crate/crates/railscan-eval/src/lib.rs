//! Detection metrics.
//!
//! ROC curves follow the positive-equals-defective convention with higher
//! scores meaning "more positive". Tied scores are grouped (no threshold
//! may fall between ties), counts stay in integers, and the AUC is the
//! integer trapezoid sum divided by `2 P N`, which makes it identical to
//! the Mann-Whitney U statistic over `P N`.

mod confusion;
mod roc;
mod severity;

pub use confusion::{confusion_matrix, ConfusionMatrix};
pub use roc::{fp_per_mile, pd_at_fp_rate, roc, RocCurve, RocPoint, IMAGES_PER_MILE};
pub use severity::{filter_by_severity, CondItem};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("empty input: {0}")]
    Empty(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid value: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, EvalError>;
