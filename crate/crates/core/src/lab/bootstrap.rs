//! Percentile bootstrap intervals.
//!
//! Replicates are drawn in chunks of [`CHUNK`], each from its own stream, so
//! the interval depends only on the seed and not on the thread count.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::aggregate::ERROR_EPSILON;
use super::rng::{self, Purpose};
use super::LabError;

pub const MIN_REPS: usize = 1000;
const CHUNK: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Statistic {
    Mean,
    GeoMean,
    /// Geometric mean after shifting by `ERROR_EPSILON`, for data with zeros.
    ShiftedGeoMean,
}

impl Statistic {
    fn forward(self, x: f64) -> f64 {
        match self {
            Statistic::Mean => x,
            Statistic::GeoMean => x.ln(),
            Statistic::ShiftedGeoMean => (x + ERROR_EPSILON).ln(),
        }
    }

    fn back(self, m: f64) -> f64 {
        match self {
            Statistic::Mean => m,
            Statistic::GeoMean => m.exp(),
            Statistic::ShiftedGeoMean => m.exp() - ERROR_EPSILON,
        }
    }

    /// The statistic of `samples` itself.
    pub fn point(self, samples: &[f64]) -> f64 {
        let t: Vec<f64> = samples.iter().map(|&x| self.forward(x)).collect();
        self.back(super::aggregate::mean(&t))
    }
}

fn check(n: usize, level: f64, reps: usize) -> Result<(), LabError> {
    if n < 2 {
        return Err(LabError::TooFewSamples(n));
    }
    if reps < MIN_REPS {
        return Err(LabError::InvalidReps(reps));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(LabError::InvalidLevel(level));
    }
    Ok(())
}

fn resample_mean<R: Rng>(rng: &mut R, t: &[f64]) -> f64 {
    let n = t.len();
    let mut sum = 0.0;
    for _ in 0..n {
        sum += t[rng.random_range(0..n)];
    }
    sum / n as f64
}

/// Linear interpolation between order statistics.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

fn interval(mut stats: Vec<f64>, level: f64) -> (f64, f64) {
    stats.sort_by(f64::total_cmp);
    let alpha = (1.0 - level) / 2.0;
    (quantile(&stats, alpha), quantile(&stats, 1.0 - alpha))
}

fn replicate<F>(reps: usize, seed: u64, f: F) -> Vec<f64>
where
    F: Fn(&mut rand_chacha::ChaCha8Rng) -> f64 + Sync,
{
    let chunks = reps.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut rng = rng::stream(seed, Purpose::Bootstrap, c as u64);
            let len = CHUNK.min(reps - c * CHUNK);
            (0..len).map(|_| f(&mut rng)).collect::<Vec<_>>()
        })
        .collect()
}

/// Percentile interval for `statistic` over `samples`.
pub fn bootstrap_ci(
    samples: &[f64],
    statistic: Statistic,
    level: f64,
    reps: usize,
    seed: u64,
) -> Result<(f64, f64), LabError> {
    check(samples.len(), level, reps)?;
    let t: Vec<f64> = samples.iter().map(|&x| statistic.forward(x)).collect();
    let stats = replicate(reps, seed, |rng| statistic.back(resample_mean(rng, &t)));
    Ok(interval(stats, level))
}

/// Percentile interval for `statistic(a) - statistic(b)`, resampling the two
/// groups independently.
pub fn bootstrap_diff_ci(
    a: &[f64],
    b: &[f64],
    statistic: Statistic,
    level: f64,
    reps: usize,
    seed: u64,
) -> Result<(f64, f64), LabError> {
    check(a.len().min(b.len()), level, reps)?;
    let ta: Vec<f64> = a.iter().map(|&x| statistic.forward(x)).collect();
    let tb: Vec<f64> = b.iter().map(|&x| statistic.forward(x)).collect();
    let stats = replicate(reps, seed, |rng| {
        let sa = statistic.back(resample_mean(rng, &ta));
        let sb = statistic.back(resample_mean(rng, &tb));
        sa - sb
    });
    Ok(interval(stats, level))
}
