//! Closed enumeration of the distance functions under comparison, with their
//! parameters, display names, and a single dispatch point used by the
//! classification and robustness experiments.

use crate::elastic::{dtw, edr, DtwConfig, EdrConfig};
use crate::ensemble::{ensemble_distance, EnsembleConfig};
use crate::error::Result;
use crate::lockstep::{edit_distance, euclidean, log_distance};
use crate::series::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistanceSpec {
    Ensemble(EnsembleConfig),
    Euclidean,
    Log,
    Edit,
    Edr(EdrConfig),
    Dtw(DtwConfig),
}

impl DistanceSpec {
    /// Column order used by every emitted table.
    pub const CANONICAL_ORDER: [&'static str; 6] = ["Ensemble", "Euc", "DTW", "Log", "ED", "EDR"];

    pub fn evaluate(&self, x: &TimeSeries, y: &TimeSeries) -> Result<f64> {
        match self {
            DistanceSpec::Ensemble(cfg) => ensemble_distance(x, y, cfg),
            DistanceSpec::Euclidean => euclidean(x, y),
            DistanceSpec::Log => log_distance(x, y),
            DistanceSpec::Edit => edit_distance(x, y).map(|d| d as f64),
            DistanceSpec::Edr(cfg) => edr(x, y, cfg).map(|d| d as f64),
            DistanceSpec::Dtw(cfg) => dtw(x, y, cfg),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DistanceSpec::Ensemble(_) => "Ensemble",
            DistanceSpec::Euclidean => "Euc",
            DistanceSpec::Dtw(_) => "DTW",
            DistanceSpec::Log => "Log",
            DistanceSpec::Edit => "ED",
            DistanceSpec::Edr(_) => "EDR",
        }
    }

    /// DTW and EDR are the two comparison functions that are not metrics.
    pub fn is_metric(&self) -> bool {
        !matches!(self, DistanceSpec::Dtw(_) | DistanceSpec::Edr(_))
    }

    /// Position of a method name in [`Self::CANONICAL_ORDER`]; unknown names
    /// sort after the known columns.
    pub fn canonical_index(name: &str) -> usize {
        Self::CANONICAL_ORDER
            .iter()
            .position(|m| *m == name)
            .unwrap_or(Self::CANONICAL_ORDER.len())
    }
}
