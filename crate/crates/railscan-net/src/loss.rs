use crate::{NetError, Result};

/// Log-sum-exp stable softmax cross-entropy. Returns the loss and the
/// gradient `softmax(logits) - onehot(label)`.
pub fn softmax_xent(logits: &[f64], label: usize) -> Result<(f64, Vec<f64>)> {
    if label >= logits.len() {
        return Err(NetError::Shape(format!(
            "label {label} out of range for {} logits",
            logits.len()
        )));
    }
    let max = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut grad: Vec<f64> = logits.iter().map(|&z| (z - max).exp()).collect();
    let sum: f64 = grad.iter().sum();
    let log_sum = sum.ln() + max;
    let loss = log_sum - logits[label];
    for g in &mut grad {
        *g /= sum;
    }
    grad[label] -= 1.0;
    Ok((loss, grad))
}

/// A binary max-margin head: one weight vector over the feature layer it
/// consumes, plus bias and L2 regularization weight.
#[derive(Debug, Clone, PartialEq)]
pub struct SvmHead {
    pub w: Vec<f64>,
    pub b: f64,
    pub lambda: f64,
}

impl SvmHead {
    pub fn zeros(dim: usize, lambda: f64) -> Self {
        Self {
            w: vec![0.0; dim],
            b: 0.0,
            lambda,
        }
    }

    pub fn score(&self, x: &[f64]) -> f64 {
        self.w.iter().zip(x).map(|(w, x)| w * x).sum::<f64>() + self.b
    }
}

#[derive(Debug, Clone)]
pub struct HingeResult {
    pub loss: f64,
    pub margin: f64,
    pub d_w: Vec<f64>,
    pub d_b: f64,
    pub d_x: Vec<f64>,
}

/// Regularized hinge loss `max(0, 1 - y (w.x + b)) + (lambda/2) ||w||^2`
/// with its three gradients. The margin-violation indicator is 1 when
/// `y (w.x + b) < 1` and 0 otherwise.
pub fn hinge_forward_backward(head: &SvmHead, x: &[f64], y: f64) -> Result<HingeResult> {
    if y != 1.0 && y != -1.0 {
        return Err(NetError::Shape(format!("label must be +/-1, got {y}")));
    }
    if x.len() != head.w.len() {
        return Err(NetError::Shape(format!(
            "feature dim {} does not match head dim {}",
            x.len(),
            head.w.len()
        )));
    }
    let margin = y * head.score(x);
    let violated = margin < 1.0;
    let reg: f64 = 0.5 * head.lambda * head.w.iter().map(|w| w * w).sum::<f64>();
    let loss = if violated { 1.0 - margin } else { 0.0 } + reg;

    let mut d_w: Vec<f64> = head.w.iter().map(|w| head.lambda * w).collect();
    let mut d_b = 0.0;
    let mut d_x = vec![0.0; x.len()];
    if violated {
        for i in 0..x.len() {
            d_w[i] -= y * x[i];
            d_x[i] = -y * head.w[i];
        }
        d_b = -y;
    }
    Ok(HingeResult {
        loss,
        margin,
        d_w,
        d_b,
        d_x,
    })
}
