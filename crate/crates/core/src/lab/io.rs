//! File formats: dataset CSV plus manifest, JSON-lines records and the CSV
//! interval report.

use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::dataset::{Dataset, Row};
use super::report::ReportRow;

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("{0}")]
    Format(String),
}

pub fn write_dataset_csv<W: Write>(d: &Dataset, out: W) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    for row in &d.rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Read `label,value` rows; `id` and `seed` come from the manifest, or are
/// zero for a free-standing file.
pub fn read_dataset_csv<R: Read>(input: R, id: u32, seed: u64) -> Result<Dataset, IoError> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let rows = r.deserialize::<Row>().collect::<Result<Vec<_>, _>>()?;
    for row in &rows {
        if !(row.value.is_finite() && row.value > 0.0) {
            return Err(IoError::Format(format!("row {}: value {} is not positive", row.label, row.value)));
        }
    }
    Ok(Dataset::from_rows(id, seed, rows))
}

pub fn load_dataset(path: &Path) -> Result<Dataset, IoError> {
    read_dataset_csv(File::open(path)?, 0, 0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: u32,
    pub seed: u64,
    pub file: String,
}

pub const MANIFEST: &str = "manifest.json";

pub fn dataset_file_name(id: u32) -> String {
    format!("dataset-{id:03}.csv")
}

/// Write each dataset to `dir` and list them in `manifest.json`.
pub fn write_datasets(dir: &Path, datasets: &[Dataset]) -> Result<Vec<ManifestEntry>, IoError> {
    fs::create_dir_all(dir)?;
    let mut manifest = Vec::with_capacity(datasets.len());
    for d in datasets {
        let file = dataset_file_name(d.id);
        write_dataset_csv(d, BufWriter::new(File::create(dir.join(&file))?))?;
        manifest.push(ManifestEntry { id: d.id, seed: d.seed, file });
    }
    let json = serde_json::to_string_pretty(&manifest).map_err(|source| IoError::Json { line: 0, source })?;
    fs::write(dir.join(MANIFEST), json + "\n")?;
    Ok(manifest)
}

pub fn read_datasets(dir: &Path) -> Result<Vec<Dataset>, IoError> {
    let text = fs::read_to_string(dir.join(MANIFEST))?;
    let manifest: Vec<ManifestEntry> =
        serde_json::from_str(&text).map_err(|source| IoError::Json { line: 0, source })?;
    manifest.iter().map(|e| read_dataset_csv(File::open(dir.join(&e.file))?, e.id, e.seed)).collect()
}

pub fn write_jsonl<T: Serialize, W: Write>(items: &[T], out: W) -> Result<(), IoError> {
    let mut out = BufWriter::new(out);
    for item in items {
        serde_json::to_writer(&mut out, item).map_err(|source| IoError::Json { line: 0, source })?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

/// One record per non-blank line; errors carry the 1-based line number.
pub fn read_jsonl<T: DeserializeOwned, R: Read>(input: R) -> Result<Vec<T>, IoError> {
    let mut items = Vec::new();
    for (i, line) in BufReader::new(input).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        items.push(serde_json::from_str(&line).map_err(|source| IoError::Json { line: i + 1, source })?);
    }
    Ok(items)
}

pub fn write_report_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["design", "task", "statistic", "point", "lo", "hi"])?;
    for r in rows {
        w.write_record([
            r.design.clone(),
            r.task.to_string(),
            r.statistic.clone(),
            format!("{:.6}", r.point),
            format!("{:.6}", r.lo),
            format!("{:.6}", r.hi),
        ])?;
    }
    w.flush()?;
    Ok(())
}
