//! Interval report over aggregated summaries.

use serde::{Deserialize, Serialize};

use super::aggregate::{aggregate, TaskSummary};
use super::bootstrap::{bootstrap_ci, bootstrap_diff_ci, Statistic};
use super::rng::{derive_seed, Purpose};
use super::score::ScoredRecord;
use super::trials::Task;
use super::LabError;
use crate::render::ChartDesign;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    /// A design name, or `a-b` for a pairwise difference.
    pub design: String,
    pub task: Task,
    pub statistic: String,
    pub point: f64,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisOptions {
    pub reps: usize,
    pub level: f64,
    pub seed: u64,
}

impl AnalysisOptions {
    pub fn new(reps: usize, seed: u64) -> Self {
        Self { reps, level: 0.95, seed }
    }
}

type Measure = (&'static str, Statistic, fn(&TaskSummary) -> &[f64]);

const MEASURES: [Measure; 3] = [
    ("error", Statistic::ShiftedGeoMean, |s| &s.error_medians),
    ("time", Statistic::GeoMean, |s| &s.time_geomeans),
    ("confidence", Statistic::Mean, |s| &s.confidence_means),
];

/// Designs compared pairwise; the linear chart is reported on its own only.
pub const COMPARED: [ChartDesign; 4] = [ChartDesign::Log, ChartDesign::Ssb, ChartDesign::Eplusm, ChartDesign::Facet];

/// Per-design intervals for error, time and confidence, then pairwise
/// differences among [`COMPARED`] designs for error and time.
pub fn analyze(records: &[ScoredRecord], opts: AnalysisOptions) -> Result<Vec<ReportRow>, LabError> {
    let summaries = aggregate(records)?;
    let mut rows = Vec::new();
    let mut next_seed = {
        let mut i = 0u64;
        move || {
            i += 1;
            derive_seed(opts.seed, Purpose::Analysis, i)
        }
    };

    for s in &summaries {
        for (name, stat, get) in MEASURES {
            let samples = get(s);
            let (lo, hi) = bootstrap_ci(samples, stat, opts.level, opts.reps, next_seed())?;
            rows.push(ReportRow {
                design: s.design.to_string(),
                task: s.task,
                statistic: name.to_string(),
                point: stat.point(samples),
                lo,
                hi,
            });
        }
    }

    for task in Task::ALL {
        let find = |d: ChartDesign| summaries.iter().find(|s| s.design == d && s.task == task);
        for (i, &a) in COMPARED.iter().enumerate() {
            for &b in &COMPARED[i + 1..] {
                let (Some(sa), Some(sb)) = (find(a), find(b)) else {
                    continue;
                };
                for (name, stat, get) in &MEASURES[..2] {
                    let (lo, hi) = bootstrap_diff_ci(get(sa), get(sb), *stat, opts.level, opts.reps, next_seed())?;
                    rows.push(ReportRow {
                        design: format!("{a}-{b}"),
                        task,
                        statistic: name.to_string(),
                        point: stat.point(get(sa)) - stat.point(get(sb)),
                        lo,
                        hi,
                    });
                }
            }
        }
    }
    Ok(rows)
}

/// Geometric mean over the seven task-level errors of one design.
pub fn overall_error(summaries: &[TaskSummary], design: ChartDesign) -> Option<f64> {
    let errors: Vec<f64> = summaries.iter().filter(|s| s.design == design).map(|s| s.error).collect();
    (!errors.is_empty()).then(|| super::aggregate::shifted_geomean(&errors, super::aggregate::ERROR_EPSILON))
}
