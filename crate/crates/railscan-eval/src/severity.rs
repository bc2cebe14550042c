use serde::{Deserialize, Serialize};

/// One evaluation unit (a tie quarter-image) for condition detection:
/// its detection score and, when the ground truth marks a defect there,
/// the defect kind and its severity (defect area over inspectable area).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CondItem {
    pub score: f64,
    pub defect: Option<(usize, f64)>,
}

/// Build the evaluation subset for one defect kind at a severity level.
///
/// Items whose defect matches `target_kind` with severity >= `level` are
/// positives. Clean items are negatives. Everything else is neutral and
/// dropped: sub-level defects of the target kind must not count as false
/// positives when detected, and neither do defects of the other kind
/// (chipped/crumbling confusion carries no penalty).
pub fn filter_by_severity(
    items: &[CondItem],
    target_kind: usize,
    level: f64,
) -> (Vec<f64>, Vec<bool>) {
    let mut scores = Vec::new();
    let mut labels = Vec::new();
    for item in items {
        match item.defect {
            Some((kind, severity)) if kind == target_kind && severity >= level => {
                scores.push(item.score);
                labels.push(true);
            }
            Some(_) => {} // neutral
            None => {
                scores.push(item.score);
                labels.push(false);
            }
        }
    }
    (scores, labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn item(score: f64, defect: Option<(usize, f64)>) -> CondItem {
        CondItem { score, defect }
    }

    #[test]
    fn level_zero_keeps_all_target_defects() {
        let items = vec![
            item(1.0, Some((0, 0.02))),
            item(2.0, Some((0, 0.90))),
            item(3.0, None),
        ];
        let (scores, labels) = filter_by_severity(&items, 0, 0.0);
        assert_eq!(scores.len(), 3);
        assert_eq!(labels, vec![true, true, false]);
    }

    #[test]
    fn level_one_keeps_only_full_coverage() {
        let items = vec![
            item(1.0, Some((0, 0.99))),
            item(2.0, Some((0, 1.0))),
            item(3.0, None),
        ];
        let (_, labels) = filter_by_severity(&items, 0, 1.0);
        assert_eq!(labels, vec![true, false]);
    }

    #[test]
    fn mixed_fixture_membership_by_area_arithmetic() {
        // Severities from pixel counts: 120/1000, 80/1000, 300/1000.
        let items = vec![
            item(0.1, Some((0, 120.0 / 1000.0))),
            item(0.2, Some((0, 80.0 / 1000.0))),
            item(0.3, Some((1, 300.0 / 1000.0))), // other kind: neutral
            item(0.4, None),
            item(0.5, None),
        ];
        let (scores, labels) = filter_by_severity(&items, 0, 0.1);
        // The 8% defect and the other-kind defect drop out entirely.
        assert_eq!(scores, vec![0.1, 0.4, 0.5]);
        assert_eq!(labels, vec![true, false, false]);
    }

    #[test]
    fn raising_level_never_adds_positives() {
        let items: Vec<CondItem> = (0..50)
            .map(|i| {
                let sev = i as f64 / 50.0;
                item(i as f64, if i % 3 == 0 { Some((0, sev)) } else { None })
            })
            .collect();
        let mut prev = usize::MAX;
        for lvl in [0.0, 0.1, 0.25, 0.5, 0.9, 1.0] {
            let (_, labels) = filter_by_severity(&items, 0, lvl);
            let pos = labels.iter().filter(|&&l| l).count();
            assert!(pos <= prev);
            prev = pos;
        }
    }
}
