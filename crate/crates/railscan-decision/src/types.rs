use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DecisionError {
    #[error("dimension mismatch: {0}")]
    Dim(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("empty input: {0}")]
    Empty(String),
}

/// A linear score `w . x + b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearClassifier {
    pub w: Vec<f64>,
    pub b: f64,
}

impl LinearClassifier {
    pub fn new(w: Vec<f64>, b: f64) -> Self {
        Self { w, b }
    }

    #[inline]
    pub fn score(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(self.w.len(), x.len());
        self.w.iter().zip(x).map(|(w, x)| w * x).sum::<f64>() + self.b
    }
}

/// The two detectors trained for one object category: class-vs-background
/// (`b_c`) and class-vs-other-classes (`f_c`). Both consume the same
/// feature space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifierPair {
    pub class_id: usize,
    pub vs_background: LinearClassifier,
    pub vs_rest: LinearClassifier,
}

impl ClassifierPair {
    pub fn dim(&self) -> usize {
        self.vs_background.w.len()
    }
}

/// The set of feature vectors extracted within a search region, stored as
/// a dense `(cells x dim)` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureGrid {
    pub rows: usize,
    pub cols: usize,
    pub dim: usize,
    pub data: Vec<f64>,
}

impl FeatureGrid {
    pub fn new(rows: usize, cols: usize, dim: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols * dim);
        Self {
            rows,
            cols,
            dim,
            data,
        }
    }

    pub fn from_cells(cells: Vec<Vec<f64>>) -> Self {
        let dim = cells.first().map(|c| c.len()).unwrap_or(0);
        let rows = cells.len();
        let mut data = Vec::with_capacity(rows * dim);
        for c in &cells {
            assert_eq!(c.len(), dim);
            data.extend_from_slice(c);
        }
        Self {
            rows,
            cols: 1,
            dim,
            data,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn cell(&self, idx: usize) -> &[f64] {
        &self.data[idx * self.dim..(idx + 1) * self.dim]
    }
}

/// Per-class linear responses evaluated at every grid cell. The network
/// path gets these from its SVM heads, the correlation baselines from
/// filter responses; the decision math downstream is shared.
#[derive(Debug, Clone, PartialEq)]
pub struct PairScores {
    pub class_id: usize,
    /// `b_c . x` per cell.
    pub vs_background: Vec<f64>,
    /// `f_c . x` per cell.
    pub vs_rest: Vec<f64>,
}
