//! Central finite-difference gradient checking.
//!
//! Relative error uses `max(|analytic|, |numeric|, 1e-8)` as denominator so
//! near-zero gradients do not blow up the ratio.

/// Probe `f` around `point` with central differences and compare against
/// `analytic`. Returns the maximum relative error over all coordinates.
pub fn finite_diff_check(
    f: &mut dyn FnMut(&[f64]) -> f64,
    point: &[f64],
    analytic: &[f64],
    eps: f64,
) -> f64 {
    assert_eq!(point.len(), analytic.len());
    let mut x = point.to_vec();
    let mut worst = 0.0f64;
    for i in 0..x.len() {
        let orig = x[i];
        x[i] = orig + eps;
        let fp = f(&x);
        x[i] = orig - eps;
        let fm = f(&x);
        x[i] = orig;
        let numeric = (fp - fm) / (2.0 * eps);
        let denom = analytic[i].abs().max(numeric.abs()).max(1e-8);
        let rel = (analytic[i] - numeric).abs() / denom;
        if rel > worst {
            worst = rel;
        }
    }
    worst
}
