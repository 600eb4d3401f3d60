//! Two-stage summaries: each participant's four trials are reduced first,
//! then participants are pooled per design and task.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::score::ScoredRecord;
use super::trials::{Task, TRIALS_PER_TASK};
use super::LabError;
use crate::render::ChartDesign;

/// Shift applied before taking logs of error medians, which can be zero.
pub const ERROR_EPSILON: f64 = 1e-6;

fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// Sum in ascending order so the result does not depend on input order.
fn ordered_sum(values: &[f64]) -> f64 {
    sorted(values).iter().sum()
}

pub fn mean(values: &[f64]) -> f64 {
    ordered_sum(values) / values.len() as f64
}

pub fn median(values: &[f64]) -> f64 {
    let v = sorted(values);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

/// Geometric mean of positive values.
pub fn geomean(values: &[f64]) -> f64 {
    let logs: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    mean(&logs).exp()
}

/// `exp(mean(ln(x + eps))) - eps`, defined for non-negative values.
pub fn shifted_geomean(values: &[f64], eps: f64) -> f64 {
    let shifted: Vec<f64> = values.iter().map(|v| v + eps).collect();
    geomean(&shifted) - eps
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskSummary {
    pub design: ChartDesign,
    pub task: Task,
    /// Participant ids, ascending; the per-participant vectors follow this order.
    pub participants: Vec<u32>,
    pub error_medians: Vec<f64>,
    pub abs_rel_medians: Vec<f64>,
    pub time_geomeans: Vec<f64>,
    pub confidence_means: Vec<f64>,
    /// Geometric mean of the log-error medians.
    pub error: f64,
    pub abs_rel: f64,
    pub time_s: f64,
    pub confidence: f64,
}

#[derive(Default)]
struct Cell {
    log_err: Vec<f64>,
    abs_rel: Vec<f64>,
    time: Vec<f64>,
    confidence: Vec<f64>,
}

/// Summaries for every `(design, task)` present, in that order.
pub fn aggregate(records: &[ScoredRecord]) -> Result<Vec<TaskSummary>, LabError> {
    let mut participants: BTreeMap<ChartDesign, BTreeSet<u32>> = BTreeMap::new();
    let mut tasks: BTreeMap<ChartDesign, BTreeSet<Task>> = BTreeMap::new();
    let mut cells: BTreeMap<(ChartDesign, Task, u32), Cell> = BTreeMap::new();
    for r in records {
        participants.entry(r.design).or_default().insert(r.participant);
        tasks.entry(r.design).or_default().insert(r.task);
        let cell = cells.entry((r.design, r.task, r.participant)).or_default();
        cell.log_err.push(r.log_rel_abs);
        cell.abs_rel.push(r.abs_rel);
        cell.time.push(r.time_s);
        cell.confidence.push(r.confidence as f64);
    }

    let mut out = Vec::new();
    for (design, ids) in &participants {
        for &task in &tasks[design] {
            let mut summary = TaskSummary {
                design: *design,
                task,
                participants: Vec::with_capacity(ids.len()),
                error_medians: Vec::with_capacity(ids.len()),
                abs_rel_medians: Vec::with_capacity(ids.len()),
                time_geomeans: Vec::with_capacity(ids.len()),
                confidence_means: Vec::with_capacity(ids.len()),
                error: 0.0,
                abs_rel: 0.0,
                time_s: 0.0,
                confidence: 0.0,
            };
            for &p in ids {
                let cell = cells.get(&(*design, task, p));
                let found = cell.map_or(0, |c| c.log_err.len());
                if found != TRIALS_PER_TASK {
                    return Err(LabError::MissingTrials { design: design.to_string(), participant: p, task, found });
                }
                let cell = cell.expect("checked above");
                summary.participants.push(p);
                summary.error_medians.push(median(&cell.log_err));
                summary.abs_rel_medians.push(median(&cell.abs_rel));
                summary.time_geomeans.push(geomean(&cell.time));
                summary.confidence_means.push(mean(&cell.confidence));
            }
            summary.error = shifted_geomean(&summary.error_medians, ERROR_EPSILON);
            summary.abs_rel = shifted_geomean(&summary.abs_rel_medians, ERROR_EPSILON);
            summary.time_s = geomean(&summary.time_geomeans);
            summary.confidence = mean(&summary.confidence_means);
            out.push(summary);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn rec(p: u32, task: Task, log_err: f64, time_s: f64, confidence: u8) -> ScoredRecord {
        ScoredRecord {
            participant: p,
            design: ChartDesign::Log,
            dataset_id: p,
            trial_index: 0,
            task,
            response: 1.0,
            correct: 1.0,
            time_s,
            confidence,
            abs_rel: log_err,
            log_rel_abs: log_err,
        }
    }

    #[test]
    fn basic_statistics() {
        assert_relative_eq!(geomean(&[1.0, 10.0, 100.0]), 10.0, max_relative = 1e-12);
        assert_eq!(median(&[3.0, 1.0, 2.0, 10.0]), 2.5);
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert!(shifted_geomean(&[0.0, 0.0], 1e-6).abs() < 1e-15);
        assert_relative_eq!(shifted_geomean(&[0.2; 5], 1e-6), 0.2, max_relative = 1e-12);
    }

    #[test]
    fn constant_medians_aggregate_to_the_constant() {
        let mut records = Vec::new();
        for p in 0..5 {
            for (i, e) in [0.1, 0.3, 0.3, 0.9].into_iter().enumerate() {
                records.push(rec(p, Task::Value, e, 10f64.powi(i as i32 % 3), 4));
            }
        }
        let s = aggregate(&records).unwrap();
        assert_eq!(s.len(), 1);
        assert_relative_eq!(s[0].error, 0.3, max_relative = 1e-9);
        assert_eq!(s[0].confidence, 4.0);
        // per participant times {1, 10, 100, 1}
        assert_relative_eq!(s[0].time_s, 1000f64.powf(0.25), max_relative = 1e-12);
    }

    #[test]
    fn missing_trials_reported() {
        let mut records: Vec<_> = (0..4).map(|_| rec(0, Task::Value, 0.1, 5.0, 3)).collect();
        records.extend((0..3).map(|_| rec(1, Task::Value, 0.1, 5.0, 3)));
        assert!(matches!(aggregate(&records), Err(LabError::MissingTrials { participant: 1, found: 3, .. })));
        // a participant absent from one task entirely
        let mut records: Vec<_> = (0..4).map(|_| rec(0, Task::Value, 0.1, 5.0, 3)).collect();
        records.extend((0..4).map(|_| rec(1, Task::RatioSame, 0.1, 5.0, 3)));
        assert!(matches!(aggregate(&records), Err(LabError::MissingTrials { found: 0, .. })));
    }
}
