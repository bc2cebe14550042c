use crate::types::DecisionError;
use crate::Result;

/// Per-site defect score `S_b(x,y) = max_{i not in B} Phi_i(x,y) - Phi_b(x,y)`
/// for defect channel `b`. Both defect channels are excluded from the max.
pub fn material_site_score(
    channels: &[Vec<f64>],
    defect_channel: usize,
    defect_set: &[usize],
) -> Result<Vec<f64>> {
    if channels.is_empty() {
        return Err(DecisionError::Empty("score maps".into()));
    }
    if defect_channel >= channels.len() || !defect_set.contains(&defect_channel) {
        return Err(DecisionError::Config(format!(
            "defect channel {defect_channel} not in the defect set"
        )));
    }
    let sites = channels[0].len();
    if channels.iter().any(|c| c.len() != sites) {
        return Err(DecisionError::Dim("ragged score maps".into()));
    }
    let mut out = vec![f64::NEG_INFINITY; sites];
    for (i, ch) in channels.iter().enumerate() {
        if defect_set.contains(&i) {
            continue;
        }
        for (o, &v) in out.iter_mut().zip(ch) {
            if v > *o {
                *o = v;
            }
        }
    }
    for (o, &d) in out.iter_mut().zip(&channels[defect_channel]) {
        *o -= d;
    }
    Ok(out)
}

/// Average of the empirical quantile function over `(alpha, beta]`:
/// `(1/(beta-alpha)) * integral of F^-1(t) dt`, with the left-continuous
/// convention `F^-1(t) = k`-th order statistic for `t in ((k-1)/n, k/n]`.
///
/// The integral is taken exactly over the piecewise-constant quantile
/// function; cells fully inside the band contribute whole order statistics
/// so clean bands like (0.9, 1] on n = 1000 reduce to a plain average of
/// the top 100.
pub fn tie_condition_score(site_scores: &[f64], alpha: f64, beta: f64) -> Result<f64> {
    if site_scores.is_empty() {
        return Err(DecisionError::Empty("site scores".into()));
    }
    if !(0.0..1.0).contains(&alpha) || !(alpha < beta) || beta > 1.0 {
        return Err(DecisionError::Config(format!(
            "need 0 <= alpha < beta <= 1, got ({alpha}, {beta})"
        )));
    }
    let n = site_scores.len();
    let mut sorted = site_scores.to_vec();
    sorted.sort_by(f64::total_cmp);

    // Work in index space: integrate x_ceil(t) over t in (a, b], a = alpha n.
    let a = alpha * n as f64;
    let b = beta * n as f64;
    let lo_cell = a.ceil();
    let hi_cell = b.floor();

    let mut acc = 0.0;
    // Full cells (k-1, k] for k in [lo_cell+1, hi_cell], 1-based.
    let first_full = lo_cell as usize + 1;
    let last_full = hi_cell as usize;
    for k in first_full..=last_full.min(n) {
        acc += sorted[k - 1];
    }
    // Partial cell below: (a, lo_cell] belongs to order statistic lo_cell.
    if lo_cell > a && lo_cell >= 1.0 {
        acc += (lo_cell - a) * sorted[lo_cell as usize - 1];
    }
    // Partial cell above: (hi_cell, b] belongs to order statistic hi_cell+1.
    if b > hi_cell {
        acc += (b - hi_cell) * sorted[hi_cell as usize];
    }
    Ok(acc / (b - a))
}
