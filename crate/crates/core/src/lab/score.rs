//! Error measures and the join of responses against their trials.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::trials::{Task, TrialSpec};
use super::LabError;
use crate::render::ChartDesign;

/// Longest time a participant had for one question.
pub const TIME_LIMIT_S: f64 = 90.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorScore {
    /// `|1 - response / correct|`
    pub abs_rel: f64,
    /// `|log10(response / correct)|`, with a zero response read as 1.
    pub log_rel_abs: f64,
}

/// Both error measures for one answer. `correct` must be positive.
pub fn score(response: f64, correct: f64) -> ErrorScore {
    debug_assert!(correct > 0.0);
    let effective = if response == 0.0 { 1.0 } else { response };
    ErrorScore { abs_rel: (1.0 - response / correct).abs(), log_rel_abs: (effective / correct).log10().abs() }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResponseRecord {
    pub participant: u32,
    pub design: ChartDesign,
    pub dataset_id: u32,
    pub trial_index: u32,
    pub response: f64,
    pub time_s: f64,
    pub confidence: u8,
}

impl ResponseRecord {
    pub fn check(&self) -> Result<(), LabError> {
        let bad = |why: String| Err(LabError::InvalidRecord(why));
        if !self.response.is_finite() || self.response < 0.0 {
            return bad(format!("response {} is not a non-negative number", self.response));
        }
        if !(self.time_s > 0.0 && self.time_s <= TIME_LIMIT_S) {
            return bad(format!("time {} s outside (0, {TIME_LIMIT_S}]", self.time_s));
        }
        if !(1..=5).contains(&self.confidence) {
            return bad(format!("confidence {} outside 1..=5", self.confidence));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredRecord {
    pub participant: u32,
    pub design: ChartDesign,
    pub dataset_id: u32,
    pub trial_index: u32,
    pub task: Task,
    pub response: f64,
    pub correct: f64,
    pub time_s: f64,
    pub confidence: u8,
    pub abs_rel: f64,
    pub log_rel_abs: f64,
}

/// Score every response against the trial it answers, matched on
/// `(dataset_id, trial_index)`.
pub fn score_records(responses: &[ResponseRecord], trials: &[TrialSpec]) -> Result<Vec<ScoredRecord>, LabError> {
    let by_key: HashMap<(u32, u32), &TrialSpec> = trials.iter().map(|t| ((t.dataset_id, t.index), t)).collect();
    responses
        .iter()
        .map(|r| {
            r.check()?;
            let trial = by_key
                .get(&(r.dataset_id, r.trial_index))
                .ok_or(LabError::UnknownTrial { dataset: r.dataset_id, trial: r.trial_index })?;
            let s = score(r.response, trial.correct);
            Ok(ScoredRecord {
                participant: r.participant,
                design: r.design,
                dataset_id: r.dataset_id,
                trial_index: r.trial_index,
                task: trial.task,
                response: r.response,
                correct: trial.correct,
                time_s: r.time_s,
                confidence: r.confidence,
                abs_rel: s.abs_rel,
                log_rel_abs: s.log_rel_abs,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn absolute_relative_error_is_asymmetric() {
        assert_abs_diff_eq!(score(10.0, 100.0).abs_rel, 0.9, epsilon = 1e-12);
        assert_abs_diff_eq!(score(100.0, 10.0).abs_rel, 9.0, epsilon = 1e-12);
    }

    #[test]
    fn log_error_is_symmetric() {
        assert_abs_diff_eq!(score(10.0, 100.0).log_rel_abs, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(score(100.0, 10.0).log_rel_abs, 1.0, epsilon = 1e-12);
        let a = score(2.0, 1.0).log_rel_abs;
        let b = score(9.0, 8.0).log_rel_abs;
        assert_abs_diff_eq!(a, 2f64.log10(), epsilon = 1e-12);
        assert_abs_diff_eq!(b, (9.0f64 / 8.0).log10(), epsilon = 1e-12);
    }

    #[test]
    fn zero_response_counts_as_one() {
        let s = score(0.0, 1000.0);
        assert_abs_diff_eq!(s.log_rel_abs, 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.abs_rel, 1.0, epsilon = 1e-12);
        assert_eq!(score(0.0, 1.0).log_rel_abs, 0.0);
    }

    fn record(dataset_id: u32, trial_index: u32) -> ResponseRecord {
        ResponseRecord {
            participant: 0,
            design: ChartDesign::Facet,
            dataset_id,
            trial_index,
            response: 20.0,
            time_s: 12.0,
            confidence: 3,
        }
    }

    #[test]
    fn join_matches_on_dataset_and_index() {
        let trial = TrialSpec {
            dataset_id: 4,
            index: 7,
            task: Task::DifferenceSame,
            targets: vec!["A".into(), "B".into()],
            operands: vec![30.0, 20.0],
            correct: 10.0,
        };
        let scored = score_records(&[record(4, 7)], std::slice::from_ref(&trial)).unwrap();
        assert_eq!(scored[0].task, Task::DifferenceSame);
        assert_abs_diff_eq!(scored[0].abs_rel, 1.0, epsilon = 1e-12);
        assert!(matches!(
            score_records(&[record(4, 8)], &[trial]),
            Err(LabError::UnknownTrial { dataset: 4, trial: 8 })
        ));
    }

    #[test]
    fn invalid_records_rejected() {
        let mut r = record(0, 0);
        r.time_s = 91.0;
        assert!(r.check().is_err());
        let mut r = record(0, 0);
        r.confidence = 0;
        assert!(r.check().is_err());
        let mut r = record(0, 0);
        r.response = -1.0;
        assert!(r.check().is_err());
    }
}
