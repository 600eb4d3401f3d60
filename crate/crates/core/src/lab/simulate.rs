//! Simulated respondents.
//!
//! A respondent reads each target as its visually correct value, with the
//! mantissa perturbed by truncated Gaussian noise and the exponent misread by
//! one decade with some probability, then answers through the same
//! arithmetic and input granularity as the real answer field.

use std::collections::BTreeMap;

use rand::Rng;
use rand_distr::{Distribution, LogNormal, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dataset::{gen_dataset, Dataset};
use super::rng::{self, Purpose};
use super::score::{ResponseRecord, TIME_LIMIT_S};
use super::trials::{self, build_trials_with, TrialOptions, TrialSpec, VISUAL_PRECISION};
use super::LabError;
use crate::omv;
use crate::render::ChartDesign;

/// Shortest simulated answer time.
pub const MIN_TIME_S: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignNoise {
    /// Standard deviation of the mantissa read, in mantissa units.
    pub mantissa_sigma: f64,
    /// Probability that an operand's exponent is read one decade off.
    pub exponent_flip_prob: f64,
    pub log_time_mu: f64,
    pub log_time_sigma: f64,
    pub confidence_mean: f64,
    pub confidence_sigma: f64,
}

impl DesignNoise {
    /// A respondent that never misreads.
    pub fn exact() -> Self {
        Self {
            mantissa_sigma: 0.0,
            exponent_flip_prob: 0.0,
            log_time_mu: 20f64.ln(),
            log_time_sigma: 0.0,
            confidence_mean: 3.0,
            confidence_sigma: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlipDirection {
    #[default]
    Both,
    Up,
    Down,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub designs: BTreeMap<ChartDesign, DesignNoise>,
    #[serde(default)]
    pub flip: FlipDirection,
    #[serde(default)]
    pub ratio_order: trials::RatioOrder,
}

impl NoiseModel {
    /// The same noise for every design.
    pub fn uniform(noise: DesignNoise) -> Self {
        Self {
            designs: ChartDesign::ALL.into_iter().map(|d| (d, noise)).collect(),
            flip: FlipDirection::Both,
            ratio_order: Default::default(),
        }
    }

    pub fn get(&self, design: ChartDesign) -> Option<&DesignNoise> {
        self.designs.get(&design)
    }
}

impl Default for NoiseModel {
    /// Illustrative magnitudes only; they are not fitted to any study.
    fn default() -> Self {
        let n = |sigma, p_e, time: f64, conf| DesignNoise {
            mantissa_sigma: sigma,
            exponent_flip_prob: p_e,
            log_time_mu: time.ln(),
            log_time_sigma: 0.5,
            confidence_mean: conf,
            confidence_sigma: 0.8,
        };
        let designs = BTreeMap::from([
            (ChartDesign::Lin, n(1.5, 0.35, 30.0, 2.0)),
            (ChartDesign::Log, n(0.6, 0.2, 28.0, 2.8)),
            (ChartDesign::Ssb, n(0.4, 0.05, 32.0, 3.2)),
            (ChartDesign::Eplusm, n(0.4, 0.04, 25.0, 3.4)),
            (ChartDesign::Facet, n(0.3, 0.02, 22.0, 3.6)),
        ]);
        Self { designs, flip: FlipDirection::Both, ratio_order: Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Simulation {
    pub design: ChartDesign,
    pub datasets: Vec<Dataset>,
    pub trials: Vec<TrialSpec>,
    pub responses: Vec<ResponseRecord>,
}

fn read_operand<R: Rng>(rng: &mut R, visual: f64, noise: &DesignNoise, flip: FlipDirection) -> f64 {
    let om = omv::decompose(visual, VISUAL_PRECISION).expect("visual values are positive");
    let mut m = om.mantissa();
    if noise.mantissa_sigma > 0.0 {
        let normal = Normal::new(m, noise.mantissa_sigma).expect("finite sigma");
        // truncate to the band by rejection; fall back to the true reading
        m = (0..64).map(|_| normal.sample(rng)).find(|x| (1.0..10.0).contains(x)).unwrap_or(m);
        m = omv::round_decimals(m, 2).clamp(1.0, 9.99);
    }
    let mut e = om.exponent();
    if rng.random_bool(noise.exponent_flip_prob) {
        let up = match flip {
            FlipDirection::Up => true,
            FlipDirection::Down => false,
            FlipDirection::Both => rng.random_bool(0.5),
        };
        e += if up { 1 } else { -1 };
    }
    omv::compose(m, e).expect("mantissa kept in [1,10)")
}

fn respond(
    participant: u32,
    design: ChartDesign,
    trials: &[TrialSpec],
    noise: &DesignNoise,
    model: &NoiseModel,
    seed: u64,
) -> Vec<ResponseRecord> {
    let mut rng = rng::stream(seed, Purpose::Respond, participant as u64);
    let time = LogNormal::new(noise.log_time_mu, noise.log_time_sigma).expect("finite parameters");
    let conf = Normal::new(noise.confidence_mean, noise.confidence_sigma).expect("finite parameters");
    trials
        .iter()
        .map(|t| {
            let reads: Vec<f64> = t.operands.iter().map(|&v| read_operand(&mut rng, v, noise, model.flip)).collect();
            ResponseRecord {
                participant,
                design,
                dataset_id: t.dataset_id,
                trial_index: t.index,
                response: trials::answer(t.task, &reads, model.ratio_order),
                time_s: time.sample(&mut rng).clamp(MIN_TIME_S, TIME_LIMIT_S),
                confidence: conf.sample(&mut rng).round().clamp(1.0, 5.0) as u8,
            }
        })
        .collect()
}

/// Run `participants` simulated respondents on `design`. Participant `p`
/// sees dataset `p` and its 28 trials.
pub fn simulate(design: ChartDesign, participants: u32, model: &NoiseModel, seed: u64) -> Result<Simulation, LabError> {
    let noise =
        model.get(design).ok_or_else(|| LabError::InvalidRecord(format!("noise model has no entry for {design}")))?;
    if !(0.0..=1.0).contains(&noise.exponent_flip_prob) || noise.mantissa_sigma < 0.0 {
        return Err(LabError::InvalidRecord(format!("invalid noise parameters for {design}")));
    }
    let opts = TrialOptions { ratio_order: model.ratio_order };
    let per_participant = (0..participants)
        .into_par_iter()
        .map(|p| {
            let d = gen_dataset(p, seed);
            let trials = build_trials_with(&d, seed, opts)?;
            let responses = respond(p, design, &trials, noise, model, seed);
            Ok((d, trials, responses))
        })
        .collect::<Result<Vec<_>, LabError>>()?;

    let mut sim = Simulation {
        design,
        datasets: Vec::with_capacity(participants as usize),
        trials: Vec::new(),
        responses: Vec::new(),
    };
    for (d, t, r) in per_participant {
        sim.datasets.push(d);
        sim.trials.extend(t);
        sim.responses.extend(r);
    }
    Ok(sim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::score::score_records;
    use crate::lab::trials::TaskKind;

    #[test]
    fn exact_respondent_scores_zero() {
        let sim = simulate(ChartDesign::Facet, 10, &NoiseModel::uniform(DesignNoise::exact()), 7).unwrap();
        assert_eq!(sim.responses.len(), 280);
        let scored = score_records(&sim.responses, &sim.trials).unwrap();
        assert!(scored.iter().all(|s| s.log_rel_abs == 0.0 && s.abs_rel == 0.0));
    }

    #[test]
    fn upward_flips_are_one_decade_off() {
        let mut noise = DesignNoise::exact();
        noise.exponent_flip_prob = 1.0;
        let mut model = NoiseModel::uniform(noise);
        model.flip = FlipDirection::Up;
        let sim = simulate(ChartDesign::Log, 10, &model, 3).unwrap();
        let scored = score_records(&sim.responses, &sim.trials).unwrap();
        let values: Vec<_> = scored.iter().filter(|s| s.task.kind() == TaskKind::Value).collect();
        assert_eq!(values.len(), 40);
        for s in values {
            assert!((s.log_rel_abs - 1.0).abs() < 1e-12, "{}", s.log_rel_abs);
        }
    }

    #[test]
    fn records_are_valid_and_reproducible() {
        let model = NoiseModel::default();
        let a = simulate(ChartDesign::Eplusm, 6, &model, 11).unwrap();
        assert_eq!(a, simulate(ChartDesign::Eplusm, 6, &model, 11).unwrap());
        for r in &a.responses {
            r.check().unwrap();
        }
    }

    #[test]
    fn missing_design_is_an_error() {
        let model = NoiseModel { designs: BTreeMap::new(), flip: FlipDirection::Both, ratio_order: Default::default() };
        assert!(simulate(ChartDesign::Lin, 1, &model, 0).is_err());
    }

    #[test]
    fn noise_model_json_round_trip() {
        let model = NoiseModel::default();
        let json = serde_json::to_string(&model).unwrap();
        assert!(json.contains("\"facet\""));
        let back: NoiseModel = serde_json::from_str(&json).unwrap();
        assert_eq!(back, model);
    }
}
