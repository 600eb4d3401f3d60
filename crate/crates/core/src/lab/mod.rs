//! Experiment harness: datasets, trials, scoring, aggregation, bootstrap
//! intervals and simulated respondents.

pub mod aggregate;
pub mod bootstrap;
pub mod dataset;
pub mod io;
pub mod report;
pub mod rng;
pub mod score;
pub mod simulate;
pub mod trials;

use thiserror::Error;

use crate::omv::OmvError;

pub use aggregate::{aggregate, geomean, shifted_geomean, TaskSummary};
pub use bootstrap::{bootstrap_ci, bootstrap_diff_ci, Statistic};
pub use dataset::{gallery_dataset, gen_dataset, gen_datasets, Dataset, Row};
pub use report::{analyze, overall_error, AnalysisOptions, ReportRow};
pub use score::{score, score_records, ErrorScore, ResponseRecord, ScoredRecord};
pub use simulate::{simulate, DesignNoise, FlipDirection, NoiseModel, Simulation};
pub use trials::{build_trials, build_trials_with, Task, TaskKind, TrialOptions, TrialSpec};

#[derive(Debug, Error)]
pub enum LabError {
    #[error("dataset {id}: {why}")]
    InvalidDataset { id: u32, why: String },
    #[error("only {available} candidate targets for {task}, need 4")]
    InsufficientPairs { task: Task, available: usize },
    #[error("participant {participant} has {found} {task} trials under {design}, need 4")]
    MissingTrials { design: String, participant: u32, task: Task, found: usize },
    #[error("bootstrap needs at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error("bootstrap needs at least 1000 replicates, got {0}")]
    InvalidReps(usize),
    #[error("confidence level {0} outside (0, 1)")]
    InvalidLevel(f64),
    #[error("no trial {trial} for dataset {dataset}")]
    UnknownTrial { dataset: u32, trial: u32 },
    #[error("invalid record: {0}")]
    InvalidRecord(String),
    #[error(transparent)]
    Omv(#[from] OmvError),
}
