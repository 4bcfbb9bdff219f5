//! Core time-series value types and the order-statistics primitives
//! (median, median absolute deviation) shared by every distance function.
//!
//! Observations are plain `f64` values. NaN is rejected at construction so
//! the metric axioms stay testable downstream; IEEE infinities are legal
//! observations because the contamination experiments inject them, and they
//! order as extremes (`-inf < finite < +inf`).

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// An ordered sequence of real observations.
///
/// Invariants: non-empty, and every value is finite or an IEEE infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(position) = values.iter().position(|v| v.is_nan()) {
            return Err(Error::NanObservation { position });
        }
        Ok(TimeSeries { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // n >= 1 by construction
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}

impl AsRef<[f64]> for TimeSeries {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// A time series paired with its class label.
///
/// Labels are opaque tokens kept exactly as read from file, so `1` and `1.0`
/// remain distinct classes if a source file mixes them.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledInstance {
    pub series: TimeSeries,
    pub label: String,
}

impl LabeledInstance {
    pub fn new(series: TimeSeries, label: impl Into<String>) -> Self {
        LabeledInstance {
            series,
            label: label.into(),
        }
    }
}

/// A collection of labeled instances sharing one series length.
///
/// Uniform length is required by every lockstep distance and is enforced at
/// construction. Class count requirements (r >= 2) belong to the experiments,
/// not the container.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    instances: Vec<LabeledInstance>,
    series_len: usize,
}

impl Dataset {
    pub fn new(instances: Vec<LabeledInstance>) -> Result<Self> {
        let first = instances.first().ok_or(Error::EmptyFile)?;
        let series_len = first.series.len();
        for (i, inst) in instances.iter().enumerate() {
            if inst.series.len() != series_len {
                return Err(Error::NonuniformLength {
                    line: i + 1,
                    expected: series_len,
                    got: inst.series.len(),
                });
            }
        }
        Ok(Dataset {
            instances,
            series_len,
        })
    }

    pub fn instances(&self) -> &[LabeledInstance] {
        &self.instances
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    /// Shared length n of every series in the dataset.
    pub fn series_len(&self) -> usize {
        self.series_len
    }

    pub fn classes(&self) -> BTreeSet<&str> {
        self.instances.iter().map(|i| i.label.as_str()).collect()
    }

    pub fn class_count(&self) -> usize {
        self.classes().len()
    }
}

/// Sorts a copy of the sample under the IEEE total order.
fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_unstable_by(f64::total_cmp);
    v
}

/// Median of a non-empty sample: the middle order statistic for odd counts,
/// the mean of the two middle order statistics for even counts. Infinities
/// order as extremes.
pub fn median(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    let v = sorted(values);
    let n = v.len();
    let mid = n / 2;
    if n % 2 == 1 {
        Ok(v[mid])
    } else {
        Ok((v[mid - 1] + v[mid]) / 2.0)
    }
}

/// Median absolute deviation: median of {|v_i - median(v)|}.
///
/// A value equal to the median has deviation exactly 0, which also keeps the
/// deviation defined when both are the same infinity (contaminated samples
/// flow through here when resolving EDR tolerances).
pub fn mad(values: &[f64]) -> Result<f64> {
    let m = median(values)?;
    let deviations: Vec<f64> = values
        .iter()
        .map(|&v| if v == m { 0.0 } else { (v - m).abs() })
        .collect();
    median(&deviations)
}
