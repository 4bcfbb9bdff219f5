//! Lockstep distances: Euclidean, Log-distance, and the raw Edit distance.
//!
//! All three compare x_t with y_t only and are metrics on R^n. A difference
//! with exactly one infinite operand is +inf; a difference between two
//! infinities of the same sign is indeterminate and reported as an error
//! rather than silently producing NaN.

use crate::error::{Error, Result};
use crate::series::TimeSeries;

fn check_lengths(x: &TimeSeries, y: &TimeSeries) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(())
}

/// Absolute difference |a - b| under the conventions above.
pub(crate) fn abs_diff(a: f64, b: f64, i: usize, j: usize) -> Result<f64> {
    let d = a - b;
    if d.is_nan() {
        return Err(Error::IndeterminateDifference { i, j });
    }
    Ok(d.abs())
}

/// Euclidean distance: sqrt of the sum of squared pointwise differences.
pub fn euclidean(x: &TimeSeries, y: &TimeSeries) -> Result<f64> {
    check_lengths(x, y)?;
    let mut sum = 0.0;
    for (t, (&a, &b)) in x.values().iter().zip(y.values()).enumerate() {
        let d = abs_diff(a, b, t, t)?;
        sum += d * d;
    }
    Ok(sum.sqrt())
}

/// Log-distance: sum of log(1 + |x_t - y_t|) with the natural logarithm.
pub fn log_distance(x: &TimeSeries, y: &TimeSeries) -> Result<f64> {
    check_lengths(x, y)?;
    let mut sum = 0.0;
    for (t, (&a, &b)) in x.values().iter().zip(y.values()).enumerate() {
        sum += abs_diff(a, b, t, t)?.ln_1p();
    }
    Ok(sum)
}

/// Raw Edit distance: the number of positions where x_t and y_t differ under
/// exact floating-point equality (+0 equals -0, equal infinities match).
pub fn edit_distance(x: &TimeSeries, y: &TimeSeries) -> Result<usize> {
    check_lengths(x, y)?;
    Ok(x.values()
        .iter()
        .zip(y.values())
        .filter(|(a, b)| a != b)
        .count())
}
