//! The robust ensemble metric: metric-preserving scaling of six component
//! distances (Euclidean, Log, Edit, and the same three on sliding medians)
//! combined by the L2 norm.
//!
//! The fused value lives in [0, sqrt(6)]: the unbounded members are squashed
//! into [0, 1] before combination, so no contamination can push the ensemble
//! past its finite supremum.

use crate::error::{Error, Result};
use crate::lockstep::{edit_distance, euclidean, log_distance};
use crate::series::TimeSeries;
use crate::sliding_median::{sliding_median, WindowConfig};

/// A distance mapped through the metric-preserving scaling, in [0, 1].
///
/// The value is 1 only for an infinite raw distance.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ScaledDistance(f64);

impl ScaledDistance {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Metric-preserving scaling d -> 1 - 1/(1 + d).
///
/// Monotone increasing with scale(0) = 0 and scale(+inf) = 1 (exact under
/// IEEE arithmetic). Negative inputs violate distance non-negativity
/// upstream and are rejected.
pub fn scale(d: f64) -> Result<ScaledDistance> {
    if d.is_nan() || d < 0.0 {
        return Err(Error::NegativeDistance { value: d });
    }
    Ok(ScaledDistance(1.0 - 1.0 / (1.0 + d)))
}

/// Window selection for the sliding-median members.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WindowRule {
    /// A requested window size, odd-normalized; it is an error if it exceeds
    /// the series length.
    Explicit(usize),
    /// w = floor(fraction * n) + 1, odd-normalized and clamped into the valid
    /// range [3, n]. The evaluation default is 0.1.
    Fraction(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleConfig {
    window: WindowRule,
}

impl EnsembleConfig {
    pub fn with_window(w: usize) -> Self {
        EnsembleConfig {
            window: WindowRule::Explicit(w),
        }
    }

    pub fn with_fraction(fraction: f64) -> Result<Self> {
        if !(fraction > 0.0 && fraction <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "window fraction must lie in (0, 1], got {fraction}"
            )));
        }
        Ok(EnsembleConfig {
            window: WindowRule::Fraction(fraction),
        })
    }

    pub fn window_rule(&self) -> WindowRule {
        self.window
    }

    /// Concrete odd window for a series of length n.
    pub fn resolve_window(&self, n: usize) -> Result<WindowConfig> {
        if n < 3 {
            return Err(Error::WindowExceedsSeries { window: 3, len: n });
        }
        match self.window {
            WindowRule::Explicit(w) => {
                let cfg = WindowConfig::new(w)?;
                if cfg.w() > n {
                    return Err(Error::WindowExceedsSeries {
                        window: cfg.w(),
                        len: n,
                    });
                }
                Ok(cfg)
            }
            WindowRule::Fraction(f) => {
                let raw = (f * n as f64).floor() as usize + 1;
                let odd = if raw.is_multiple_of(2) { raw + 1 } else { raw };
                let largest_odd = if n.is_multiple_of(2) { n - 1 } else { n };
                WindowConfig::new(odd.clamp(3, largest_odd))
            }
        }
    }
}

impl Default for EnsembleConfig {
    fn default() -> Self {
        EnsembleConfig {
            window: WindowRule::Fraction(0.1),
        }
    }
}

/// The six scaled components in fixed order — Euclidean, Log, Edit, then the
/// same three on the sliding medians — alongside the fused value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleComponents {
    pub components: [ScaledDistance; 6],
    pub distance: f64,
}

/// Introspection variant of [`ensemble_distance`].
pub fn ensemble_components(
    x: &TimeSeries,
    y: &TimeSeries,
    cfg: &EnsembleConfig,
) -> Result<EnsembleComponents> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let window = cfg.resolve_window(x.len())?;
    let med_x = sliding_median(x, &window)?;
    let med_y = sliding_median(y, &window)?;

    let components = [
        scale(euclidean(x, y)?)?,
        scale(log_distance(x, y)?)?,
        scale(edit_distance(x, y)? as f64)?,
        scale(euclidean(&med_x, &med_y)?)?,
        scale(log_distance(&med_x, &med_y)?)?,
        scale(edit_distance(&med_x, &med_y)? as f64)?,
    ];
    let distance = components
        .iter()
        .map(|c| c.value() * c.value())
        .sum::<f64>()
        .sqrt();
    Ok(EnsembleComponents {
        components,
        distance,
    })
}

/// The ensemble metric: L2 norm of the six scaled components, in [0, sqrt(6)].
pub fn ensemble_distance(x: &TimeSeries, y: &TimeSeries, cfg: &EnsembleConfig) -> Result<f64> {
    ensemble_components(x, y, cfg).map(|c| c.distance)
}
