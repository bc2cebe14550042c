use crate::{EvalError, Result};

/// Images per track mile assumed when converting FPR to FP/mile.
pub const IMAGES_PER_MILE: f64 = 1e4;

/// One sweep point: everything with score >= `threshold` is called
/// positive. Counts are integers; rates are derived views.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RocPoint {
    pub threshold: f64,
    pub fp: u64,
    pub tp: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RocCurve {
    /// From (0,0) at threshold +inf to (1,1), one point per distinct score.
    pub points: Vec<RocPoint>,
    pub p: u64,
    pub n: u64,
}

impl RocCurve {
    pub fn fpr(&self, pt: &RocPoint) -> f64 {
        pt.fp as f64 / self.n as f64
    }

    pub fn tpr(&self, pt: &RocPoint) -> f64 {
        pt.tp as f64 / self.p as f64
    }

    /// Trapezoid area accumulated in integers, divided once by `2 P N`.
    pub fn auc(&self) -> f64 {
        let mut acc: u128 = 0;
        for w in self.points.windows(2) {
            let dfp = (w[1].fp - w[0].fp) as u128;
            acc += dfp * (w[1].tp + w[0].tp) as u128;
        }
        acc as f64 / (2.0 * self.p as f64 * self.n as f64)
    }
}

/// Exact threshold sweep over the distinct scores, ties grouped.
pub fn roc(scores: &[f64], labels: &[bool]) -> Result<RocCurve> {
    if scores.len() != labels.len() {
        return Err(EvalError::Shape(format!(
            "{} scores vs {} labels",
            scores.len(),
            labels.len()
        )));
    }
    if scores.iter().any(|s| s.is_nan()) {
        return Err(EvalError::Invalid("NaN score".into()));
    }
    let p = labels.iter().filter(|&&l| l).count() as u64;
    let n = labels.len() as u64 - p;
    if p == 0 || n == 0 {
        return Err(EvalError::Empty(
            "need at least one positive and one negative".into(),
        ));
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));

    let mut points = vec![RocPoint {
        threshold: f64::INFINITY,
        fp: 0,
        tp: 0,
    }];
    let mut tp = 0u64;
    let mut fp = 0u64;
    let mut i = 0;
    while i < order.len() {
        let v = scores[order[i]];
        while i < order.len() && scores[order[i]] == v {
            if labels[order[i]] {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        points.push(RocPoint {
            threshold: v,
            fp,
            tp,
        });
    }
    Ok(RocCurve { points, p, n })
}

/// FPR expressed as false positives per mile of track.
pub fn fp_per_mile(fpr: f64) -> f64 {
    fpr * IMAGES_PER_MILE
}

/// Largest TPR attainable at FPR <= `fp_per_mile_target / 10^4`
/// (step-function readout, no interpolation).
pub fn pd_at_fp_rate(curve: &RocCurve, fp_per_mile_target: f64) -> f64 {
    let max_fpr = fp_per_mile_target / IMAGES_PER_MILE;
    let mut best_tp = 0u64;
    for pt in &curve.points {
        if curve.fpr(pt) <= max_fpr && pt.tp > best_tp {
            best_tp = pt.tp;
        }
    }
    best_tp as f64 / curve.p as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn perfectly_separated_scores_auc_one() {
        let scores = [5.0, 4.0, 3.0, 1.0, 0.5, 0.1];
        let labels = [true, true, true, false, false, false];
        let c = roc(&scores, &labels).unwrap();
        assert_eq!(c.auc(), 1.0);
        assert_eq!(pd_at_fp_rate(&c, 0.0), 1.0);
    }

    #[test]
    fn hand_computed_six_point_fixture() {
        let scores = [0.9, 0.8, 0.8, 0.6, 0.4, 0.2];
        let labels = [true, true, false, true, false, false];
        let c = roc(&scores, &labels).unwrap();
        let pts: Vec<(u64, u64)> = c.points.iter().map(|p| (p.fp, p.tp)).collect();
        assert_eq!(pts, vec![(0, 0), (0, 1), (1, 2), (1, 3), (2, 3), (3, 3)]);
        assert_eq!(c.auc(), 15.0 / 18.0);
    }

    #[test]
    fn random_labels_auc_near_half() {
        let n = 100_000;
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let scores: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        let labels: Vec<bool> = (0..n).map(|_| rng.gen::<bool>()).collect();
        let c = roc(&scores, &labels).unwrap();
        assert!((c.auc() - 0.5).abs() < 0.01, "auc {}", c.auc());
    }

    #[test]
    fn auc_equals_mann_whitney_u_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let n = rng.gen_range(4..40);
            // Quantized scores force plenty of ties.
            let scores: Vec<f64> = (0..n)
                .map(|_| (rng.gen_range(0..8) as f64) / 4.0)
                .collect();
            let labels: Vec<bool> = (0..n).map(|_| rng.gen::<bool>()).collect();
            let p = labels.iter().filter(|&&l| l).count();
            let neg = n - p;
            if p == 0 || neg == 0 {
                continue;
            }
            let c = roc(&scores, &labels).unwrap();

            // 2 U accumulated in integers: 2 per win, 1 per tie.
            let mut twice_u: u128 = 0;
            for i in 0..n {
                if !labels[i] {
                    continue;
                }
                for j in 0..n {
                    if labels[j] {
                        continue;
                    }
                    if scores[i] > scores[j] {
                        twice_u += 2;
                    } else if scores[i] == scores[j] {
                        twice_u += 1;
                    }
                }
            }
            let u_auc = twice_u as f64 / (2.0 * p as f64 * neg as f64);
            assert_eq!(c.auc(), u_auc);
        }
    }

    #[test]
    fn roc_invariant_under_monotone_transform() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let scores: Vec<f64> = (0..200).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let labels: Vec<bool> = (0..200).map(|_| rng.gen::<bool>()).collect();
        let c1 = roc(&scores, &labels).unwrap();
        let warped: Vec<f64> = scores.iter().map(|&s| (0.5 * s).exp() + 1.0).collect();
        let c2 = roc(&warped, &labels).unwrap();
        let pts1: Vec<(u64, u64)> = c1.points.iter().map(|p| (p.fp, p.tp)).collect();
        let pts2: Vec<(u64, u64)> = c2.points.iter().map(|p| (p.fp, p.tp)).collect();
        assert_eq!(pts1, pts2);
        assert_eq!(c1.auc(), c2.auc());
    }

    #[test]
    fn fp_per_mile_reference_points() {
        assert_eq!(fp_per_mile(0.001), 10.0);
        assert_eq!(fp_per_mile(0.0), 0.0);
        assert_eq!(fp_per_mile(0.0002), 2.0);
    }

    #[test]
    fn pd_readout_conventions() {
        let scores = [0.9, 0.7, 0.5, 0.3];
        let labels = [true, false, true, false];
        let c = roc(&scores, &labels).unwrap();
        // Beyond the max FPR the readout is the curve end.
        assert_eq!(pd_at_fp_rate(&c, 1e9), 1.0);
        // Target 0 only admits the origin here.
        assert_eq!(pd_at_fp_rate(&c, 0.0), 0.5);

        // Cross-check against a direct threshold scan.
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let scores: Vec<f64> = (0..500).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let labels: Vec<bool> = scores
            .iter()
            .map(|&s| s + rng.gen_range(-0.8..0.8) > 0.0)
            .collect();
        if labels.iter().any(|&l| l) && labels.iter().any(|&l| !l) {
            let c = roc(&scores, &labels).unwrap();
            for target in [0.0, 2.0, 10.0, 100.0, 5000.0] {
                let max_fpr = target / IMAGES_PER_MILE;
                let p = labels.iter().filter(|&&l| l).count() as f64;
                let n = labels.len() as f64 - p;
                let mut best = 0.0f64;
                // Scan every distinct score as a candidate threshold.
                for &t in &scores {
                    let tp = scores
                        .iter()
                        .zip(&labels)
                        .filter(|(s, &l)| **s >= t && l)
                        .count() as f64;
                    let fp = scores
                        .iter()
                        .zip(&labels)
                        .filter(|(s, &l)| **s >= t && !l)
                        .count() as f64;
                    if fp / n <= max_fpr {
                        best = best.max(tp / p);
                    }
                }
                assert_eq!(pd_at_fp_rate(&c, target), best, "target {target}");
            }
        }
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert!(roc(&[1.0], &[true]).is_err());
        assert!(roc(&[1.0, 2.0], &[true, true]).is_err());
        assert!(roc(&[f64::NAN, 2.0], &[true, false]).is_err());
    }
}
