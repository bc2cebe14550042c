use serde::{Deserialize, Serialize};

use crate::likelihood::Verdict;
use crate::types::DecisionError;
use crate::Result;

/// One of the four fastener regions of a tie: left/right x field/gage.
pub const ROI_NAMES: [&str; 4] = ["left_field", "left_gage", "right_gage", "right_field"];

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "status")]
pub enum RoiOutcome {
    /// The region was scored by the detector.
    Scored {
        /// Detected class name, or "missing" for the background decision.
        class: String,
        /// Peak cell of the winning likelihood, row-major in the grid.
        cell: usize,
        s_m: f64,
        s_b: f64,
        s: f64,
        verdict: Verdict,
    },
    /// Fully occluded region; carried through to reports but excluded
    /// from clear-tie statistics.
    Uninspectable,
}

/// Schema version written with every verdict record.
pub const VERDICT_SCHEMA: &str = "verdict-v1";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RoiVerdict {
    pub schema: String,
    pub strip_id: String,
    pub tie_id: u64,
    /// One of [`ROI_NAMES`].
    pub roi: String,
    #[serde(flatten)]
    pub outcome: RoiOutcome,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TieVerdict {
    pub schema: String,
    pub strip_id: String,
    pub tie_id: u64,
    /// Min of the scored ROI fused scores; absent when no ROI was scorable.
    pub score: Option<f64>,
    pub verdict: Option<Verdict>,
    pub s_crumble: f64,
    pub s_chip: f64,
    pub turnout: bool,
    pub covered: bool,
    pub uninspectable: bool,
}

pub const ROI_CSV_HEADER: &str = "strip_id,tie_id,roi,status,class,cell,s_m,s_b,s,verdict";
pub const TIE_CSV_HEADER: &str =
    "strip_id,tie_id,score,verdict,s_crumble,s_chip,turnout,covered,uninspectable";

impl RoiVerdict {
    pub fn csv_row(&self) -> String {
        match &self.outcome {
            RoiOutcome::Scored {
                class,
                cell,
                s_m,
                s_b,
                s,
                verdict,
            } => format!(
                "{},{},{},scored,{},{},{:.17e},{:.17e},{:.17e},{}",
                self.strip_id,
                self.tie_id,
                self.roi,
                class,
                cell,
                s_m,
                s_b,
                s,
                verdict_str(*verdict)
            ),
            RoiOutcome::Uninspectable => format!(
                "{},{},{},uninspectable,,,,,,",
                self.strip_id, self.tie_id, self.roi
            ),
        }
    }
}

impl TieVerdict {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.17e},{:.17e},{},{},{}",
            self.strip_id,
            self.tie_id,
            self.score.map(|s| format!("{s:.17e}")).unwrap_or_default(),
            self.verdict.map(verdict_str).unwrap_or(""),
            self.s_crumble,
            self.s_chip,
            self.turnout,
            self.covered,
            self.uninspectable
        )
    }
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Good => "good",
        Verdict::Defective => "defective",
    }
}

/// Aggregate the four ROI verdicts of one tie: the tie score is the
/// minimum fused score across scored regions and the tie is defective when
/// any region is. Uninspectable flags propagate; a fully occluded tie has
/// no score at all.
pub fn tie_verdict(
    strip_id: &str,
    tie_id: u64,
    rois: &[RoiVerdict],
    s_crumble: f64,
    s_chip: f64,
    tau: f64,
    turnout: bool,
    covered: bool,
) -> Result<TieVerdict> {
    if rois.len() != 4 {
        return Err(DecisionError::Config(format!(
            "a tie has exactly 4 ROIs, got {}",
            rois.len()
        )));
    }
    let mut score: Option<f64> = None;
    let mut any_uninspectable = false;
    for r in rois {
        match &r.outcome {
            RoiOutcome::Scored { s, .. } => {
                score = Some(match score {
                    Some(cur) => cur.min(*s),
                    None => *s,
                });
            }
            RoiOutcome::Uninspectable => any_uninspectable = true,
        }
    }
    let verdict = score.map(|s| crate::decide(s, tau));
    Ok(TieVerdict {
        schema: VERDICT_SCHEMA.to_string(),
        strip_id: strip_id.to_string(),
        tie_id,
        score,
        verdict,
        s_crumble,
        s_chip,
        turnout,
        covered,
        uninspectable: any_uninspectable || covered,
    })
}
