use std::collections::BTreeMap;

use crate::types::{DecisionError, LinearClassifier};
use crate::Result;

/// One-vs-one classifier bank over a class set. The stored classifier for
/// `(i, j)` with `i < j` scores positive when the sample looks like `i`.
#[derive(Debug, Clone, Default)]
pub struct PairwiseSvm {
    clfs: BTreeMap<(usize, usize), LinearClassifier>,
}

impl PairwiseSvm {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, i: usize, j: usize, clf: LinearClassifier) {
        assert_ne!(i, j, "pairwise classifier needs two distinct classes");
        if i < j {
            self.clfs.insert((i, j), clf);
        } else {
            // Store canonically; flip the orientation.
            let flipped = LinearClassifier::new(clf.w.iter().map(|w| -w).collect(), -clf.b);
            self.clfs.insert((j, i), flipped);
        }
    }

    /// Score oriented so positive favors `i` over `j`.
    pub fn score(&self, i: usize, j: usize, x: &[f64]) -> Result<f64> {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        let clf = self.clfs.get(&(a, b)).ok_or_else(|| {
            DecisionError::Config(format!("missing pairwise classifier ({a}, {b})"))
        })?;
        let s = clf.score(x);
        Ok(if i < j { s } else { -s })
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        let key = if i < j { (i, j) } else { (j, i) };
        self.clfs.contains_key(&key)
    }
}

/// Two-stage DAG-SVM: first gate each class against the background; when
/// every gate is non-positive the sample is background (`None`). Otherwise
/// eliminate pairwise from the (first, last) ends of the candidate list
/// until one class remains. A zero pairwise score keeps the lower class.
pub fn dag_svm_classify(
    gates: &[(usize, LinearClassifier)],
    pairwise: &PairwiseSvm,
    x: &[f64],
) -> Result<Option<usize>> {
    if gates.is_empty() {
        return Err(DecisionError::Config("no background gates".into()));
    }
    if gates.iter().all(|(_, g)| g.score(x) <= 0.0) {
        return Ok(None);
    }
    let mut candidates: Vec<usize> = gates.iter().map(|(c, _)| *c).collect();
    candidates.sort_unstable();
    Ok(Some(dag_eliminate(&mut candidates, pairwise, x)?))
}

/// Pairwise elimination over an explicit candidate list.
pub(crate) fn dag_eliminate(
    candidates: &mut Vec<usize>,
    pairwise: &PairwiseSvm,
    x: &[f64],
) -> Result<usize> {
    if candidates.is_empty() {
        return Err(DecisionError::Config("empty candidate list".into()));
    }
    while candidates.len() > 1 {
        let first = candidates[0];
        let last = *candidates.last().unwrap();
        let s = pairwise.score(first, last, x)?;
        if s >= 0.0 {
            candidates.pop();
        } else {
            candidates.remove(0);
        }
    }
    Ok(candidates[0])
}

/// Run every one-vs-one contest among `classes` (callers include the
/// background id as an ordinary class) and return the class with the most
/// votes. Vote ties break toward the lowest class index.
pub fn majority_vote_classify(
    classes: &[usize],
    pairwise: &PairwiseSvm,
    x: &[f64],
) -> Result<usize> {
    if classes.is_empty() {
        return Err(DecisionError::Config("no classes to vote over".into()));
    }
    let mut sorted = classes.to_vec();
    sorted.sort_unstable();
    let mut votes: BTreeMap<usize, usize> = sorted.iter().map(|&c| (c, 0)).collect();
    for a in 0..sorted.len() {
        for b in (a + 1)..sorted.len() {
            let (i, j) = (sorted[a], sorted[b]);
            let s = pairwise.score(i, j, x)?;
            let winner = if s >= 0.0 { i } else { j };
            *votes.get_mut(&winner).unwrap() += 1;
        }
    }
    // BTreeMap iterates in ascending class order, so strict > keeps the
    // lowest index on ties.
    let mut best_class = sorted[0];
    let mut best_votes = 0usize;
    for (&c, &v) in &votes {
        if v > best_votes {
            best_votes = v;
            best_class = c;
        }
    }
    Ok(best_class)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decider {
    DagSvm,
    MajorityVote,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaselineScores {
    pub s_m: f64,
    pub s_b: f64,
    pub s: f64,
    pub most_likely_good: usize,
    pub most_likely_broken: usize,
}

/// Score construction for the one-vs-one baselines: pick the most likely
/// class in G and in B with the chosen decider, then `S_b` is the
/// good-vs-broken contest between them and `S_m` the gate of the good pick
/// against the background.
pub fn baseline_pair_scores(
    good: &[usize],
    broken: &[usize],
    gates: &[(usize, LinearClassifier)],
    pairwise: &PairwiseSvm,
    decider: Decider,
    x: &[f64],
) -> Result<BaselineScores> {
    if good.is_empty() || broken.is_empty() {
        return Err(DecisionError::Config(
            "good and broken class sets must be non-empty".into(),
        ));
    }
    let pick = |set: &[usize]| -> Result<usize> {
        let mut cand = set.to_vec();
        cand.sort_unstable();
        match decider {
            Decider::DagSvm => dag_eliminate(&mut cand, pairwise, x),
            Decider::MajorityVote => majority_vote_classify(&cand, pairwise, x),
        }
    };
    let g_hat = pick(good)?;
    let b_hat = pick(broken)?;
    let s_b = pairwise.score(g_hat, b_hat, x)?;
    let s_m = gates
        .iter()
        .find(|(c, _)| *c == g_hat)
        .ok_or_else(|| DecisionError::Config(format!("no background gate for class {g_hat}")))?
        .1
        .score(x);
    Ok(BaselineScores {
        s_m,
        s_b,
        s: s_m.min(s_b),
        most_likely_good: g_hat,
        most_likely_broken: b_hat,
    })
}
