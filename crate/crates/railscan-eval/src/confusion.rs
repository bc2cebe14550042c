use crate::{EvalError, Result};

/// K x K counts, rows = truth, columns = prediction.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfusionMatrix {
    pub k: usize,
    pub counts: Vec<u64>,
}

impl ConfusionMatrix {
    #[inline]
    pub fn at(&self, truth: usize, pred: usize) -> u64 {
        self.counts[truth * self.k + pred]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn accuracy(&self) -> f64 {
        let trace: u64 = (0..self.k).map(|i| self.at(i, i)).sum();
        trace as f64 / self.total() as f64
    }

    /// Rows as CSV lines, prefixed by the truth class index.
    pub fn to_csv(&self, class_names: &[String]) -> String {
        let mut out = String::from("truth");
        for name in class_names {
            out.push(',');
            out.push_str(name);
        }
        out.push('\n');
        for t in 0..self.k {
            out.push_str(&class_names[t]);
            for p in 0..self.k {
                out.push_str(&format!(",{}", self.at(t, p)));
            }
            out.push('\n');
        }
        out
    }
}

pub fn confusion_matrix(
    predictions: &[usize],
    truths: &[usize],
    k: usize,
) -> Result<ConfusionMatrix> {
    if predictions.len() != truths.len() {
        return Err(EvalError::Shape(format!(
            "{} predictions vs {} truths",
            predictions.len(),
            truths.len()
        )));
    }
    if predictions.is_empty() {
        return Err(EvalError::Empty("no samples".into()));
    }
    let mut counts = vec![0u64; k * k];
    for (&p, &t) in predictions.iter().zip(truths) {
        if p >= k || t >= k {
            return Err(EvalError::Invalid(format!(
                "class out of range: pred {p}, truth {t}, k {k}"
            )));
        }
        counts[t * k + p] += 1;
    }
    Ok(ConfusionMatrix { k, counts })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_predictions_are_diagonal() {
        let truths = vec![0, 1, 2, 1, 0, 2, 2];
        let cm = confusion_matrix(&truths, &truths, 3).unwrap();
        assert_eq!(cm.accuracy(), 1.0);
        for t in 0..3 {
            for p in 0..3 {
                if t != p {
                    assert_eq!(cm.at(t, p), 0);
                }
            }
        }
    }

    #[test]
    fn constant_predictor_fills_one_column() {
        let truths = vec![0, 1, 2, 2];
        let preds = vec![1, 1, 1, 1];
        let cm = confusion_matrix(&preds, &truths, 3).unwrap();
        for t in 0..3 {
            assert_eq!(cm.at(t, 0), 0);
            assert_eq!(cm.at(t, 2), 0);
        }
        assert_eq!(cm.at(0, 1), 1);
        assert_eq!(cm.at(2, 1), 2);
        assert_eq!(cm.accuracy(), 0.25);
    }

    #[test]
    fn hand_counted_fixture() {
        // truth:  0 0 1 1 1 2
        // pred:   0 1 1 1 2 2
        let truths = vec![0, 0, 1, 1, 1, 2];
        let preds = vec![0, 1, 1, 1, 2, 2];
        let cm = confusion_matrix(&preds, &truths, 3).unwrap();
        assert_eq!(cm.at(0, 0), 1);
        assert_eq!(cm.at(0, 1), 1);
        assert_eq!(cm.at(1, 1), 2);
        assert_eq!(cm.at(1, 2), 1);
        assert_eq!(cm.at(2, 2), 1);
        assert_eq!(cm.total(), 6);
        assert_eq!(cm.accuracy(), 4.0 / 6.0);
    }

    #[test]
    fn out_of_range_class_rejected() {
        assert!(confusion_matrix(&[3], &[0], 3).is_err());
    }
}
