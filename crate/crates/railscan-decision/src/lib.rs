//! The decision layer: per-class dual-SVM likelihoods, region fusion, the
//! classification rule, missing/broken rejection scores and their fused
//! minimum, the quantile tie-condition score, and the DAG / majority-vote
//! multiclass deciders used by the classical baselines.
//!
//! Everything is a pure function over immutable classifier sets. Argmax
//! ties break toward the lowest class index everywhere so replays are
//! deterministic.

mod likelihood;
mod material;
mod multiclass;
mod types;
mod verdict;

pub use likelihood::{
    classify_roi, class_likelihood, decide, fastener_score, region_likelihood, score_grids,
    FastenerScores, Verdict,
};
pub use material::{material_site_score, tie_condition_score};
pub use multiclass::{
    baseline_pair_scores, dag_svm_classify, majority_vote_classify, BaselineScores, Decider,
    PairwiseSvm,
};
pub use types::{ClassifierPair, DecisionError, FeatureGrid, LinearClassifier, PairScores};
pub use verdict::{
    tie_verdict, RoiOutcome, RoiVerdict, TieVerdict, ROI_CSV_HEADER, ROI_NAMES, TIE_CSV_HEADER,
    VERDICT_SCHEMA,
};

pub type Result<T> = std::result::Result<T, DecisionError>;
