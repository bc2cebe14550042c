use crate::{BaselineError, Result};

/// Subtract the mean and scale to unit L2 norm. Constant patches have no
/// direction and are rejected.
pub fn intensity_normalize(patch: &[f64]) -> Result<Vec<f64>> {
    if patch.is_empty() {
        return Err(BaselineError::Shape("empty patch".into()));
    }
    let mean = patch.iter().sum::<f64>() / patch.len() as f64;
    let mut out: Vec<f64> = patch.iter().map(|&v| v - mean).collect();
    let norm = out.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(BaselineError::Degenerate("constant patch".into()));
    }
    for v in &mut out {
        *v /= norm;
    }
    Ok(out)
}
