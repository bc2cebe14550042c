use crate::types::{ClassifierPair, DecisionError, FeatureGrid, PairScores};
use crate::Result;

/// Likelihood that a single sample belongs to the pair's class:
/// `L_c(x) = b_c . x + min(0, f_c . x)` with biases folded into the dots.
pub fn class_likelihood(pair: &ClassifierPair, x: &[f64]) -> Result<f64> {
    if x.len() != pair.dim() {
        return Err(DecisionError::Dim(format!(
            "feature dim {} vs classifier dim {}",
            x.len(),
            pair.dim()
        )));
    }
    let b = pair.vs_background.score(x);
    let f = pair.vs_rest.score(x);
    Ok(cell_likelihood(b, f))
}

#[inline]
pub(crate) fn cell_likelihood(b_score: f64, f_score: f64) -> f64 {
    b_score + f_score.min(0.0)
}

/// Evaluate both detectors of every pair at every cell of the grid.
pub fn score_grids(pairs: &[ClassifierPair], grid: &FeatureGrid) -> Result<Vec<PairScores>> {
    if grid.is_empty() {
        return Err(DecisionError::Empty("feature grid".into()));
    }
    pairs
        .iter()
        .map(|pair| {
            if grid.dim != pair.dim() {
                return Err(DecisionError::Dim(format!(
                    "grid dim {} vs classifier dim {} (class {})",
                    grid.dim,
                    pair.dim(),
                    pair.class_id
                )));
            }
            let mut b = Vec::with_capacity(grid.len());
            let mut f = Vec::with_capacity(grid.len());
            for i in 0..grid.len() {
                let x = grid.cell(i);
                b.push(pair.vs_background.score(x));
                f.push(pair.vs_rest.score(x));
            }
            Ok(PairScores {
                class_id: pair.class_id,
                vs_background: b,
                vs_rest: f,
            })
        })
        .collect()
}

/// Region-level likelihood: the max of `L_c(x)` over the grid, with the
/// winning cell. Ties go to the lowest cell index.
pub fn region_likelihood(pair: &ClassifierPair, grid: &FeatureGrid) -> Result<(f64, usize)> {
    if grid.is_empty() {
        return Err(DecisionError::Empty("feature grid".into()));
    }
    let scores = score_grids(std::slice::from_ref(pair), grid)?;
    Ok(region_likelihood_scored(&scores[0]))
}

pub(crate) fn region_likelihood_scored(scores: &PairScores) -> (f64, usize) {
    let mut best = f64::NEG_INFINITY;
    let mut best_cell = 0;
    for i in 0..scores.vs_background.len() {
        let l = cell_likelihood(scores.vs_background[i], scores.vs_rest[i]);
        if l > best {
            best = l;
            best_cell = i;
        }
    }
    (best, best_cell)
}

/// The classification rule: argmax of region likelihoods when the best one
/// is positive, otherwise the background/missing class (`None`). Argmax
/// ties break toward the lowest class index.
pub fn classify_roi(pairs: &[ClassifierPair], grid: &FeatureGrid) -> Result<Option<usize>> {
    if pairs.is_empty() {
        return Err(DecisionError::Config("no classifier pairs".into()));
    }
    let scores = score_grids(pairs, grid)?;
    Ok(classify_roi_scored(&scores))
}

pub(crate) fn classify_roi_scored(scores: &[PairScores]) -> Option<usize> {
    let mut best = f64::NEG_INFINITY;
    let mut best_class = None;
    for s in scores {
        let (l, _) = region_likelihood_scored(s);
        if l > best {
            best = l;
            best_class = Some(s.class_id);
        }
    }
    if best > 0.0 {
        best_class
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FastenerScores {
    /// Score for rejecting the missing-fastener hypothesis.
    pub s_m: f64,
    /// Score for rejecting the broken-fastener hypothesis.
    pub s_b: f64,
    /// Fused score, `min(s_m, s_b)`.
    pub s: f64,
    /// Class achieving `s_m` and the cell where it peaked.
    pub best_good_class: usize,
    pub best_cell: usize,
}

/// Fused fastener scoring over a region:
/// `S_m = max_{c in G} L_c`, `S_b = -max_{c in B} max_x f_c . x`,
/// `S = min(S_m, S_b)`. Only the `f` detectors enter `S_b`; confusing
/// missing with broken carries no penalty.
pub fn fastener_score(
    pairs: &[ClassifierPair],
    grid: &FeatureGrid,
    good: &[usize],
    broken: &[usize],
) -> Result<FastenerScores> {
    let scores = score_grids(pairs, grid)?;
    fastener_score_scored(&scores, good, broken)
}

pub fn fastener_score_scored(
    scores: &[PairScores],
    good: &[usize],
    broken: &[usize],
) -> Result<FastenerScores> {
    if good.is_empty() || broken.is_empty() {
        return Err(DecisionError::Config(
            "good and broken class sets must be non-empty".into(),
        ));
    }
    let find = |class_id: usize| -> Result<&PairScores> {
        scores
            .iter()
            .find(|s| s.class_id == class_id)
            .ok_or_else(|| DecisionError::Config(format!("no scores for class {class_id}")))
    };

    let mut s_m = f64::NEG_INFINITY;
    let mut best_good_class = good[0];
    let mut best_cell = 0;
    for &c in good {
        let (l, cell) = region_likelihood_scored(find(c)?);
        if l > s_m {
            s_m = l;
            best_good_class = c;
            best_cell = cell;
        }
    }

    let mut broken_response = f64::NEG_INFINITY;
    for &c in broken {
        let s = find(c)?;
        for &f in &s.vs_rest {
            if f > broken_response {
                broken_response = f;
            }
        }
    }
    let s_b = -broken_response;

    Ok(FastenerScores {
        s_m,
        s_b,
        s: s_m.min(s_b),
        best_good_class,
        best_cell,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Verdict {
    Good,
    Defective,
}

/// Report good only when `S > tau`; the boundary itself is defective.
pub fn decide(s: f64, tau: f64) -> Verdict {
    if s > tau {
        Verdict::Good
    } else {
        Verdict::Defective
    }
}
