//! UCR-style text dataset ingestion, single-series files, and the seeded
//! synthetic dataset generator used for self-contained experiments.
//!
//! One instance per line: the first field is the class label (kept as an
//! exact token), the remaining fields are observations. Comma or tab
//! separation is detected per file. Datasets containing NaN or missing
//! values are rejected.

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::series::{Dataset, LabeledInstance, TimeSeries};

fn detect_separator(text: &str) -> char {
    match text.lines().find(|l| !l.trim().is_empty()) {
        Some(line) if line.contains('\t') => '\t',
        _ => ',',
    }
}

fn parse_value(token: &str, line: usize) -> Result<f64> {
    let trimmed = token.trim();
    if trimmed.is_empty() || trimmed == "?" {
        return Err(Error::MissingValue { line });
    }
    let value: f64 = trimmed.parse().map_err(|_| Error::InvalidField {
        line,
        token: trimmed.to_string(),
    })?;
    if value.is_nan() {
        return Err(Error::MissingValue { line });
    }
    Ok(value)
}

/// Parse UCR-format text into a Dataset.
pub fn parse_ucr(text: &str) -> Result<Dataset> {
    let sep = detect_separator(text);
    let mut expected: Option<usize> = None;
    let mut instances = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(sep).collect();
        match expected {
            None => {
                if fields.len() < 2 {
                    return Err(Error::NonuniformLength {
                        line: line_no,
                        expected: 2,
                        got: fields.len(),
                    });
                }
                expected = Some(fields.len());
            }
            Some(n) if fields.len() != n => {
                return Err(Error::NonuniformLength {
                    line: line_no,
                    expected: n,
                    got: fields.len(),
                });
            }
            Some(_) => {}
        }
        let label = fields[0].trim().to_string();
        let values: Vec<f64> = fields[1..]
            .iter()
            .map(|t| parse_value(t, line_no))
            .collect::<Result<_>>()?;
        instances.push(LabeledInstance::new(TimeSeries::new(values)?, label));
    }
    Dataset::new(instances)
}

pub fn load_ucr(path: impl AsRef<Path>) -> Result<Dataset> {
    parse_ucr(&std::fs::read_to_string(path)?)
}

/// Render a dataset back into comma-separated UCR text. Values round-trip
/// exactly through the shortest decimal representation.
pub fn format_ucr(ds: &Dataset) -> String {
    let mut out = String::new();
    for inst in ds.instances() {
        out.push_str(&inst.label);
        for v in inst.series.values() {
            out.push(',');
            out.push_str(&format!("{v}"));
        }
        out.push('\n');
    }
    out
}

pub fn write_ucr(ds: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    Ok(std::fs::write(path, format_ucr(ds))?)
}

/// Load a single unlabeled series: numbers separated by commas, tabs,
/// whitespace, or newlines.
pub fn load_series(path: impl AsRef<Path>) -> Result<TimeSeries> {
    let text = std::fs::read_to_string(path)?;
    let mut values = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        for token in line.split([',', '\t', ' ']).filter(|t| !t.trim().is_empty()) {
            values.push(parse_value(token, idx + 1)?);
        }
    }
    TimeSeries::new(values)
}

/// Parameters of the synthetic multi-class generator: class c sits at base
/// level c * separation with unit-variance Gaussian noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthConfig {
    pub classes: usize,
    pub per_class: usize,
    pub length: usize,
    pub separation: f64,
    pub seed: u64,
}

pub fn synth_dataset(cfg: &SynthConfig) -> Result<Dataset> {
    if cfg.classes < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 classes, got {}",
            cfg.classes
        )));
    }
    if cfg.per_class == 0 {
        return Err(Error::InvalidParameter("need at least 1 instance per class".into()));
    }
    if cfg.length < 3 {
        return Err(Error::InvalidParameter(format!(
            "series length must be at least 3, got {}",
            cfg.length
        )));
    }
    if !cfg.separation.is_finite() || cfg.separation <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "separation must be a positive real, got {}",
            cfg.separation
        )));
    }

    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
    let noise = Normal::new(0.0, 1.0).expect("valid normal");
    let mut instances = Vec::with_capacity(cfg.classes * cfg.per_class);
    for class in 0..cfg.classes {
        let base = class as f64 * cfg.separation;
        for _ in 0..cfg.per_class {
            let values: Vec<f64> = (0..cfg.length)
                .map(|_| base + noise.sample(&mut rng))
                .collect();
            instances.push(LabeledInstance::new(
                TimeSeries::new(values)?,
                (class + 1).to_string(),
            ));
        }
    }
    Dataset::new(instances)
}
