//! Trial construction: 28 questions per dataset in fixed block order.

use std::fmt;

use rand::seq::index;
use serde::{Deserialize, Serialize};

use super::dataset::Dataset;
use super::rng::{self, Purpose};
use super::LabError;
use crate::omv::{self, HybridUnit, OmvError};

pub const TRIALS_PER_TASK: usize = 4;

/// Significant digits a reader can take off the charts (mantissa to two
/// decimals).
pub const VISUAL_PRECISION: u32 = 3;

/// Decimal places of the answer field's count.
pub const ANSWER_DECIMALS: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TaskKind {
    Value,
    Difference,
    Ratio,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    None,
    Same,
    Neighboring,
    Distant,
}

impl Relation {
    fn admits(self, exponent_gap: i32) -> bool {
        match self {
            Relation::None => true,
            Relation::Same => exponent_gap == 0,
            Relation::Neighboring => exponent_gap == 1,
            Relation::Distant => exponent_gap >= 2,
        }
    }
}

/// The seven tasks, in presentation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Value,
    DifferenceSame,
    DifferenceNeighboring,
    DifferenceDistant,
    RatioSame,
    RatioNeighboring,
    RatioDistant,
}

impl Task {
    pub const ALL: [Task; 7] = [
        Task::Value,
        Task::DifferenceSame,
        Task::DifferenceNeighboring,
        Task::DifferenceDistant,
        Task::RatioSame,
        Task::RatioNeighboring,
        Task::RatioDistant,
    ];

    pub fn kind(self) -> TaskKind {
        match self {
            Task::Value => TaskKind::Value,
            Task::DifferenceSame | Task::DifferenceNeighboring | Task::DifferenceDistant => TaskKind::Difference,
            _ => TaskKind::Ratio,
        }
    }

    pub fn relation(self) -> Relation {
        match self {
            Task::Value => Relation::None,
            Task::DifferenceSame | Task::RatioSame => Relation::Same,
            Task::DifferenceNeighboring | Task::RatioNeighboring => Relation::Neighboring,
            Task::DifferenceDistant | Task::RatioDistant => Relation::Distant,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Task::Value => "value",
            Task::DifferenceSame => "difference-same",
            Task::DifferenceNeighboring => "difference-neighboring",
            Task::DifferenceDistant => "difference-distant",
            Task::RatioSame => "ratio-same",
            Task::RatioNeighboring => "ratio-neighboring",
            Task::RatioDistant => "ratio-distant",
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How a ratio question orders its operands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RatioOrder {
    /// Larger value divided by smaller.
    #[default]
    LargerOverSmaller,
    /// First target divided by second, in sampled order.
    AsSampled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialSpec {
    pub dataset_id: u32,
    pub index: u32,
    pub task: Task,
    pub targets: Vec<String>,
    /// Visually correct values of the targets, in target order.
    pub operands: Vec<f64>,
    pub correct: f64,
}

impl TrialSpec {
    pub fn kind(&self) -> TaskKind {
        self.task.kind()
    }

    pub fn relation(&self) -> Relation {
        self.task.relation()
    }
}

/// The value as read off a chart: mantissa rounded to two decimals.
pub fn visually_correct(value: f64) -> Result<f64, OmvError> {
    let om = omv::decompose(value, VISUAL_PRECISION)?;
    omv::compose(om.mantissa(), om.exponent())
}

/// What the answer field can hold for an absolute quantity. Values below 1
/// cannot be typed and become 0; values past 999 billion keep the billions
/// unit with a larger count.
pub fn answer_granularity(value: f64) -> f64 {
    if value < 1.0 {
        0.0
    } else {
        omv::hybrid_quantize(value, ANSWER_DECIMALS).unwrap_or_else(|_| {
            let b = HybridUnit::B.multiplier();
            omv::round_decimals(value / b, ANSWER_DECIMALS) * b
        })
    }
}

/// The exact answer to `task` for operands in target order. Differences are
/// expressed at answer-field granularity; ratios are plain decimals.
pub fn answer(task: Task, operands: &[f64], order: RatioOrder) -> f64 {
    match task.kind() {
        TaskKind::Value => answer_granularity(operands[0]),
        TaskKind::Difference => answer_granularity((operands[0] - operands[1]).abs()),
        TaskKind::Ratio => {
            let (a, b) = (operands[0], operands[1]);
            match order {
                RatioOrder::LargerOverSmaller => a.max(b) / a.min(b),
                RatioOrder::AsSampled => a / b,
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TrialOptions {
    pub ratio_order: RatioOrder,
}

pub fn build_trials(d: &Dataset, seed: u64) -> Result<Vec<TrialSpec>, LabError> {
    build_trials_with(d, seed, TrialOptions::default())
}

struct Item<'a> {
    label: &'a str,
    visual: f64,
    exponent: i32,
}

/// 28 trials: value (4), then difference and ratio, each for same,
/// neighboring and distant magnitudes (4 each). Targets within a task are
/// sampled without replacement; pairs are unordered and never repeat.
pub fn build_trials_with(d: &Dataset, seed: u64, opts: TrialOptions) -> Result<Vec<TrialSpec>, LabError> {
    let items = d
        .rows
        .iter()
        .map(|r| {
            let visual = visually_correct(r.value)?;
            Ok(Item { label: &r.label, visual, exponent: omv::decompose(visual, VISUAL_PRECISION)?.exponent() })
        })
        .collect::<Result<Vec<_>, OmvError>>()?;

    let mut trials = Vec::with_capacity(Task::ALL.len() * TRIALS_PER_TASK);
    for (task_index, task) in Task::ALL.into_iter().enumerate() {
        let mut rng = rng::stream(seed, Purpose::Trials, (d.id as u64) << 8 | task_index as u64);
        let picks: Vec<Vec<usize>> = if task.kind() == TaskKind::Value {
            if items.len() < TRIALS_PER_TASK {
                return Err(LabError::InsufficientPairs { task, available: items.len() });
            }
            index::sample(&mut rng, items.len(), TRIALS_PER_TASK).into_iter().map(|i| vec![i]).collect()
        } else {
            let mut pairs = Vec::new();
            for i in 0..items.len() {
                for j in i + 1..items.len() {
                    let gap = (items[i].exponent - items[j].exponent).abs();
                    let distinct = items[i].visual != items[j].visual;
                    if task.relation().admits(gap) && (task.kind() != TaskKind::Difference || distinct) {
                        pairs.push((i, j));
                    }
                }
            }
            if pairs.len() < TRIALS_PER_TASK {
                return Err(LabError::InsufficientPairs { task, available: pairs.len() });
            }
            index::sample(&mut rng, pairs.len(), TRIALS_PER_TASK)
                .into_iter()
                .map(|k| {
                    let (i, j) = pairs[k];
                    // larger first
                    if items[i].visual >= items[j].visual {
                        vec![i, j]
                    } else {
                        vec![j, i]
                    }
                })
                .collect()
        };

        for pick in picks {
            let operands: Vec<f64> = pick.iter().map(|&i| items[i].visual).collect();
            trials.push(TrialSpec {
                dataset_id: d.id,
                index: trials.len() as u32,
                task,
                targets: pick.iter().map(|&i| items[i].label.to_string()).collect(),
                correct: answer(task, &operands, opts.ratio_order),
                operands,
            });
        }
    }
    Ok(trials)
}
