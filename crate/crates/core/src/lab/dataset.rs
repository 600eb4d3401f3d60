//! Synthetic budget-like datasets: fourteen lettered categories, two per
//! exponent from 4 to 10, with two-decimal mantissas.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rng::{self, Purpose};
use super::LabError;
use crate::omv;

pub const MIN_EXPONENT: i32 = 4;
pub const MAX_EXPONENT: i32 = 10;
pub const ROWS_PER_EXPONENT: usize = 2;
pub const STANDARD_ROWS: usize = 14;
pub const DEFAULT_DATASETS: usize = 500;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub label: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub id: u32,
    pub seed: u64,
    pub rows: Vec<Row>,
}

impl Dataset {
    pub fn from_rows(id: u32, seed: u64, rows: Vec<Row>) -> Self {
        Self { id, seed, rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&Row> {
        self.rows.iter().find(|r| r.label == label)
    }

    /// Row count per exponent.
    pub fn exponent_histogram(&self) -> Result<BTreeMap<i32, usize>, LabError> {
        let mut hist = BTreeMap::new();
        for row in &self.rows {
            let e = omv::decompose(row.value, omv::DEFAULT_PRECISION)?.exponent();
            *hist.entry(e).or_insert(0) += 1;
        }
        Ok(hist)
    }

    /// Check the shape every generated dataset has: 14 unique single-letter
    /// labels, two rows per exponent 4..=10, two-decimal mantissas.
    pub fn check_standard(&self) -> Result<(), LabError> {
        let bad = |why: String| Err(LabError::InvalidDataset { id: self.id, why });
        if self.rows.len() != STANDARD_ROWS {
            return bad(format!("{} rows, expected {STANDARD_ROWS}", self.rows.len()));
        }
        let mut labels: Vec<&str> = self.rows.iter().map(|r| r.label.as_str()).collect();
        labels.sort_unstable();
        labels.dedup();
        if labels.len() != self.rows.len() {
            return bad("duplicate labels".into());
        }
        for row in &self.rows {
            let om = omv::decompose(row.value, omv::DEFAULT_PRECISION)?;
            let hundredths = om.mantissa() * 100.0;
            if (hundredths - hundredths.round()).abs() > 1e-6 || !(1.0..10.0).contains(&om.mantissa()) {
                return bad(format!("mantissa of {} is not a two-decimal value in [1,10)", row.label));
            }
        }
        let hist = self.exponent_histogram()?;
        let expected: BTreeMap<i32, usize> = (MIN_EXPONENT..=MAX_EXPONENT).map(|e| (e, ROWS_PER_EXPONENT)).collect();
        if hist != expected {
            return bad(format!("exponent histogram {hist:?}"));
        }
        Ok(())
    }
}

/// Label for row `i`: `A`, `B`, ...
pub fn letter(i: usize) -> String {
    char::from(b'A' + i as u8).to_string()
}

/// One dataset from its own random stream. Exponents are shuffled across the
/// letters; each mantissa is uniform over the two-decimal values 1.00..=9.99.
pub fn gen_dataset(id: u32, seed: u64) -> Dataset {
    let mut rng = rng::stream(seed, Purpose::Dataset, id as u64);
    let mut exponents: Vec<i32> =
        (MIN_EXPONENT..=MAX_EXPONENT).flat_map(|e| std::iter::repeat_n(e, ROWS_PER_EXPONENT)).collect();
    exponents.shuffle(&mut rng);
    let rows = exponents
        .into_iter()
        .enumerate()
        .map(|(i, e)| {
            let hundredths: u32 = rng.random_range(100..=999);
            let mantissa = hundredths as f64 / 100.0;
            Row { label: letter(i), value: omv::compose(mantissa, e).expect("mantissa in [1,10)") }
        })
        .collect();
    Dataset { id, seed, rows }
}

/// `n` datasets with ids `0..n`.
pub fn gen_datasets(n: usize, seed: u64) -> Vec<Dataset> {
    (0..n as u32).into_par_iter().map(|id| gen_dataset(id, seed)).collect()
}

/// Seven rows, one per exponent 4..=10, labeled `A`..`G`; the default data
/// for gallery panels.
pub fn gallery_dataset() -> Dataset {
    const MANTISSAS: [f64; 7] = [2.4, 7.1, 1.6, 4.8, 9.2, 3.3, 5.7];
    let rows = MANTISSAS
        .iter()
        .zip(MIN_EXPONENT..=MAX_EXPONENT)
        .enumerate()
        .map(|(i, (&m, e))| Row { label: letter(i), value: omv::compose(m, e).expect("mantissa in [1,10)") })
        .collect();
    Dataset::from_rows(0, 0, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_datasets_are_standard() {
        let sets = gen_datasets(50, 11);
        assert_eq!(sets.len(), 50);
        for (i, d) in sets.iter().enumerate() {
            assert_eq!(d.id as usize, i);
            d.check_standard().unwrap();
            assert_eq!(d.rows[0].label, "A");
            assert_eq!(d.rows[13].label, "N");
        }
    }

    #[test]
    fn same_seed_same_data() {
        assert_eq!(gen_datasets(5, 3), gen_datasets(5, 3));
        assert_ne!(gen_datasets(5, 3), gen_datasets(5, 4));
        // a dataset does not depend on how many siblings were generated
        assert_eq!(gen_datasets(2, 3)[1], gen_datasets(9, 3)[1]);
    }

    #[test]
    fn check_standard_rejects_bad_shapes() {
        let mut d = gen_dataset(0, 1);
        d.rows.pop();
        assert!(d.check_standard().is_err());
        let mut d = gen_dataset(0, 1);
        d.rows[1].label = d.rows[0].label.clone();
        assert!(d.check_standard().is_err());
        let mut d = gen_dataset(0, 1);
        d.rows[0].value *= 1.0001;
        assert!(d.check_standard().is_err());
    }

    #[test]
    fn gallery_dataset_spans_seven_decades() {
        let d = gallery_dataset();
        let hist = d.exponent_histogram().unwrap();
        assert_eq!(hist.len(), 7);
        assert!(hist.values().all(|&n| n == 1));
    }
}
