use railscan_decision::LinearClassifier;

use crate::{BaselineError, Result};

/// Deterministic full-batch subgradient training of a linear SVM on the
/// Pegasos objective `(1/n) sum hinge + (lambda/2)||w||^2`. The bias is
/// unregularized; the weight vector is projected onto the Pegasos ball.
#[derive(Debug, Clone, Copy)]
pub struct SvmTrainConfig {
    pub lambda: f64,
    pub iterations: usize,
}

impl Default for SvmTrainConfig {
    fn default() -> Self {
        Self {
            lambda: 1e-3,
            iterations: 4000,
        }
    }
}

pub fn train_linear_svm(
    xs: &[Vec<f64>],
    ys: &[f64],
    cfg: &SvmTrainConfig,
) -> Result<LinearClassifier> {
    if xs.is_empty() || xs.len() != ys.len() {
        return Err(BaselineError::Shape(format!(
            "{} samples vs {} labels",
            xs.len(),
            ys.len()
        )));
    }
    let dim = xs[0].len();
    if xs.iter().any(|x| x.len() != dim) {
        return Err(BaselineError::Shape("ragged samples".into()));
    }
    if ys.iter().any(|&y| y != 1.0 && y != -1.0) {
        return Err(BaselineError::Shape("labels must be +/-1".into()));
    }
    if !(cfg.lambda > 0.0) {
        return Err(BaselineError::Design("lambda must be positive".into()));
    }

    let n = xs.len() as f64;
    let radius = 1.0 / cfg.lambda.sqrt();
    let mut w = vec![0.0; dim];
    let mut b = 0.0;
    for t in 0..cfg.iterations {
        let eta = 1.0 / (cfg.lambda * (t as f64 + 1.0) + 1.0);
        let mut gw: Vec<f64> = w.iter().map(|&wi| cfg.lambda * wi).collect();
        let mut gb = 0.0;
        for (x, &y) in xs.iter().zip(ys) {
            let score = w.iter().zip(x).map(|(a, c)| a * c).sum::<f64>() + b;
            if y * score < 1.0 {
                for (g, &xi) in gw.iter_mut().zip(x) {
                    *g -= y * xi / n;
                }
                gb -= y / n;
            }
        }
        for (wi, g) in w.iter_mut().zip(&gw) {
            *wi -= eta * g;
        }
        b -= eta * gb;
        let norm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > radius {
            let s = radius / norm;
            for wi in &mut w {
                *wi *= s;
            }
        }
    }
    Ok(LinearClassifier::new(w, b))
}

/// Geometric margin of a classifier on a labeled set:
/// `min_i y_i (w.x_i + b) / ||w||`. Negative when any sample is
/// misclassified.
pub fn geometric_margin(clf: &LinearClassifier, xs: &[Vec<f64>], ys: &[f64]) -> f64 {
    let norm = clf.w.iter().map(|v| v * v).sum::<f64>().sqrt();
    xs.iter()
        .zip(ys)
        .map(|(x, &y)| y * clf.score(x) / norm)
        .fold(f64::INFINITY, f64::min)
}
