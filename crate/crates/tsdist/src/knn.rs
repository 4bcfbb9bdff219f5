//! 1-Nearest-Neighbor classification and error-rate computation.
//!
//! Query evaluations are independent and parallelize over the test set;
//! results are collected in input order, so output is deterministic
//! regardless of scheduling. Ties break toward the lowest training index.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measure::DistanceSpec;
use crate::series::{Dataset, TimeSeries};

/// Outcome of classifying one query.
#[derive(Debug, Clone, PartialEq)]
pub struct Classified {
    pub label: String,
    pub nn_index: usize,
    pub distance: f64,
}

/// Predictions aligned with the test set, plus the aggregate error rate.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationResult {
    pub predictions: Vec<String>,
    pub error_rate: f64,
    pub per_instance_nn_index: Vec<usize>,
}

/// 1-NN under an arbitrary distance function.
pub fn nn1_classify_with<F>(train: &Dataset, query: &TimeSeries, dist: F) -> Result<Classified>
where
    F: Fn(&TimeSeries, &TimeSeries) -> Result<f64>,
{
    if train.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    let mut best: Option<(usize, f64)> = None;
    for (i, inst) in train.instances().iter().enumerate() {
        let d = dist(query, &inst.series)?;
        match best {
            Some((_, bd)) if d >= bd => {}
            _ => best = Some((i, d)),
        }
    }
    let (nn_index, distance) = best.expect("training set is non-empty");
    Ok(Classified {
        label: train.instances()[nn_index].label.clone(),
        nn_index,
        distance,
    })
}

/// 1-NN under a [`DistanceSpec`].
pub fn nn1_classify(
    train: &Dataset,
    query: &TimeSeries,
    metric: &DistanceSpec,
) -> Result<Classified> {
    nn1_classify_with(train, query, |a, b| metric.evaluate(a, b))
}

/// Classify every test instance and report the misclassification rate.
pub fn error_rate_with<F>(train: &Dataset, test: &Dataset, dist: F) -> Result<ClassificationResult>
where
    F: Fn(&TimeSeries, &TimeSeries) -> Result<f64> + Sync,
{
    if train.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    let classified: Vec<Classified> = test
        .instances()
        .par_iter()
        .map(|inst| nn1_classify_with(train, &inst.series, &dist))
        .collect::<Result<_>>()?;

    let errors = classified
        .iter()
        .zip(test.instances())
        .filter(|(c, inst)| c.label != inst.label)
        .count();
    Ok(ClassificationResult {
        predictions: classified.iter().map(|c| c.label.clone()).collect(),
        error_rate: errors as f64 / test.len() as f64,
        per_instance_nn_index: classified.iter().map(|c| c.nn_index).collect(),
    })
}

/// [`error_rate_with`] under a [`DistanceSpec`].
pub fn error_rate(
    train: &Dataset,
    test: &Dataset,
    metric: &DistanceSpec,
) -> Result<ClassificationResult> {
    error_rate_with(train, test, |a, b| metric.evaluate(a, b))
}
