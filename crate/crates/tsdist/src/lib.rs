//! Robust time-series distances: a six-member ensemble metric built from
//! three lockstep metrics and their sliding-median counterparts, the DTW and
//! EDR comparison functions, 1-NN classification, and the robustness
//! evaluation harness (contamination tolerance, imprecision invariance,
//! Friedman/Nemenyi rank statistics).

pub mod dataset_io;
pub mod elastic;
pub mod ensemble;
pub mod error;
pub mod knn;
pub mod lockstep;
pub mod measure;
pub mod ranks;
pub mod report;
pub mod robustness;
pub mod series;
pub mod sliding_median;

pub use elastic::{dtw, edr, DtwConfig, EdrConfig, EdrTolerance};
pub use ensemble::{
    ensemble_components, ensemble_distance, scale, EnsembleComponents, EnsembleConfig,
    ScaledDistance, WindowRule,
};
pub use error::{Error, Result};
pub use lockstep::{edit_distance, euclidean, log_distance};
pub use measure::DistanceSpec;
pub use series::{mad, median, Dataset, LabeledInstance, TimeSeries};
pub use sliding_median::{naive_sliding_median, sliding_median, WindowConfig};
