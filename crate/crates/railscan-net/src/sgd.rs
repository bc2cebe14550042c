use crate::{NetError, Result};

/// One SGD-with-momentum update over a single parameter tensor:
/// `v <- momentum v - lr (g + wd w); w <- w + v`.
///
/// `weight_decay` is the effective decay for this tensor, i.e. the global
/// decay times the layer multiplier; callers pass 0 for biases. Non-finite
/// gradients abort with the offending index so the trainer can name the
/// batch.
pub fn sgd_step(
    param: &mut [f64],
    grad: &[f64],
    velocity: &mut [f64],
    lr: f64,
    momentum: f64,
    weight_decay: f64,
) -> Result<()> {
    if !(lr > 0.0) {
        return Err(NetError::Numeric(format!("learning rate must be > 0, got {lr}")));
    }
    if param.len() != grad.len() || param.len() != velocity.len() {
        return Err(NetError::Shape(format!(
            "param/grad/velocity lengths differ: {} / {} / {}",
            param.len(),
            grad.len(),
            velocity.len()
        )));
    }
    for (i, &g) in grad.iter().enumerate() {
        if !g.is_finite() {
            return Err(NetError::Numeric(format!(
                "non-finite gradient {g} at element {i}"
            )));
        }
    }
    for i in 0..param.len() {
        let v = momentum * velocity[i] - lr * (grad[i] + weight_decay * param[i]);
        velocity[i] = v;
        param[i] += v;
    }
    Ok(())
}

/// Step decay: `lr = base * decay^floor(iter / step_iters)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LrSchedule {
    pub base: f64,
    pub decay: f64,
    pub step_iters: u64,
}

impl Default for LrSchedule {
    fn default() -> Self {
        Self {
            base: 0.01,
            decay: 0.5,
            step_iters: 30_000,
        }
    }
}

impl LrSchedule {
    pub fn at(&self, iteration: u64) -> f64 {
        self.base * self.decay.powi((iteration / self.step_iters) as i32)
    }
}
