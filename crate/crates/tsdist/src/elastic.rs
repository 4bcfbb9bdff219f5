//! Elastic comparison distances: banded Dynamic Time Warping and Edit
//! Distance on Real sequences (EDR) with a tolerance interval.
//!
//! Neither is a metric; both are evaluated for comparison against the metric
//! ensemble. Each call allocates two rolling DP rows, O(n) memory.

use crate::error::{Error, Result};
use crate::lockstep::abs_diff;
use crate::series::{mad, TimeSeries};

/// Sakoe-Chiba band half-width, in observations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DtwConfig {
    band: usize,
}

impl DtwConfig {
    pub fn new(band: usize) -> Result<Self> {
        if band == 0 {
            return Err(Error::InvalidParameter(
                "DTW band must be at least 1".into(),
            ));
        }
        Ok(DtwConfig { band })
    }

    pub fn band(&self) -> usize {
        self.band
    }
}

impl Default for DtwConfig {
    fn default() -> Self {
        DtwConfig { band: 100 }
    }
}

/// How the EDR match tolerance is obtained for a pair of series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdrTolerance {
    /// Fraction of the median absolute deviation of both series pooled,
    /// resolved per pair. Pooling keeps the distance symmetric.
    MadFraction(f64),
    /// A fixed absolute tolerance.
    Absolute(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdrConfig {
    tolerance: EdrTolerance,
}

impl EdrConfig {
    pub fn mad_fraction(fraction: f64) -> Result<Self> {
        if !fraction.is_finite() || fraction < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "EDR tolerance fraction must be a non-negative real, got {fraction}"
            )));
        }
        Ok(EdrConfig {
            tolerance: EdrTolerance::MadFraction(fraction),
        })
    }

    pub fn absolute(tolerance: f64) -> Result<Self> {
        if tolerance.is_nan() || tolerance < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "EDR tolerance must be non-negative, got {tolerance}"
            )));
        }
        Ok(EdrConfig {
            tolerance: EdrTolerance::Absolute(tolerance),
        })
    }

    pub fn tolerance(&self) -> EdrTolerance {
        self.tolerance
    }

    /// Absolute tolerance for one pair of series.
    pub fn resolve(&self, x: &TimeSeries, y: &TimeSeries) -> Result<f64> {
        match self.tolerance {
            EdrTolerance::Absolute(t) => Ok(t),
            EdrTolerance::MadFraction(f) => {
                let mut pooled = x.values().to_vec();
                pooled.extend_from_slice(y.values());
                Ok(f * mad(&pooled)?)
            }
        }
    }
}

impl Default for EdrConfig {
    fn default() -> Self {
        EdrConfig {
            tolerance: EdrTolerance::MadFraction(0.10),
        }
    }
}

/// Banded DTW: minimum over warping paths with |i - j| <= band of the sum of
/// squared differences along the path, square-rooted. An infinite local cost
/// propagates as +inf.
pub fn dtw(x: &TimeSeries, y: &TimeSeries, cfg: &DtwConfig) -> Result<f64> {
    let xs = x.values();
    let ys = y.values();
    let band = cfg.band();
    let len_diff = xs.len().abs_diff(ys.len());
    if len_diff > band {
        return Err(Error::InfeasibleBand { band, len_diff });
    }

    let m = ys.len();
    let mut prev = vec![f64::INFINITY; m + 1];
    let mut cur = vec![f64::INFINITY; m + 1];
    prev[0] = 0.0;
    for i in 1..=xs.len() {
        cur.fill(f64::INFINITY);
        let j_lo = 1.max(i.saturating_sub(band));
        let j_hi = m.min(i + band);
        for j in j_lo..=j_hi {
            let d = abs_diff(xs[i - 1], ys[j - 1], i - 1, j - 1)?;
            let best = prev[j].min(cur[j - 1]).min(prev[j - 1]);
            cur[j] = d * d + best;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev[m].sqrt())
}

/// Does a pair of observations match under the EDR predicate?
///
/// Exactly equal values always match (so edr(x, x) = 0 even with infinite
/// entries); otherwise the absolute difference must be within tolerance, and
/// an infinite or indeterminate difference fails the predicate.
fn edr_match(a: f64, b: f64, tolerance: f64) -> bool {
    a == b || (a - b).abs() <= tolerance
}

/// EDR: dynamic-programming edit distance where a substitution is free when
/// the two observations match within the resolved tolerance; insertions,
/// deletions and non-matching substitutions cost 1.
pub fn edr(x: &TimeSeries, y: &TimeSeries, cfg: &EdrConfig) -> Result<usize> {
    let tolerance = cfg.resolve(x, y)?;
    let xs = x.values();
    let ys = y.values();

    let m = ys.len();
    let mut prev: Vec<usize> = (0..=m).collect();
    let mut cur = vec![0usize; m + 1];
    for (i, &a) in xs.iter().enumerate() {
        cur[0] = i + 1;
        for (j, &b) in ys.iter().enumerate() {
            let sub = prev[j] + usize::from(!edr_match(a, b, tolerance));
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev[m])
}
