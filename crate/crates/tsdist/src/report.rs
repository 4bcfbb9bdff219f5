//! Run reports and table serialization.
//!
//! A report echoes every parameter needed to reproduce the run; wall-clock
//! timings live in their own field and are excluded from the determinism
//! contract.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::measure::DistanceSpec;

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Timing {
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    pub dataset: String,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_rate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contamination_score: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub imprecision_score: Option<f64>,
    /// Parameter echo sufficient to reproduce the run exactly.
    pub params: BTreeMap<String, String>,
    pub timing: Timing,
}

impl EvalReport {
    pub fn new(dataset: impl Into<String>, method: impl Into<String>) -> Self {
        EvalReport {
            dataset: dataset.into(),
            method: method.into(),
            error_rate: None,
            contamination_score: None,
            imprecision_score: None,
            params: BTreeMap::new(),
            timing: Timing::default(),
        }
    }
}

/// One output row: a dataset name plus (column, value) cells.
pub type TableRow = (String, Vec<(String, f64)>);

/// Render rows as CSV with method columns in the canonical table order
/// (Ensemble, Euc, DTW, Log, ED, EDR); unknown columns follow alphabetically.
/// Column names may carry a `:suffix` (for example `Euc:imprecision`), which
/// is ignored for ordering.
pub fn csv_table(rows: &[TableRow]) -> String {
    let mut columns: Vec<String> = rows
        .iter()
        .flat_map(|(_, cells)| cells.iter().map(|(c, _)| c.clone()))
        .collect();
    columns.sort_by(|a, b| {
        let stem = |s: &str| DistanceSpec::canonical_index(s.split(':').next().unwrap_or(s));
        stem(a).cmp(&stem(b)).then_with(|| a.cmp(b))
    });
    columns.dedup();

    let mut out = String::from("dataset");
    for c in &columns {
        out.push(',');
        out.push_str(c);
    }
    out.push('\n');
    for (dataset, cells) in rows {
        out.push_str(dataset);
        for c in &columns {
            out.push(',');
            if let Some((_, v)) = cells.iter().find(|(name, _)| name == c) {
                out.push_str(&format!("{v:.4}"));
            }
        }
        out.push('\n');
    }
    out
}
