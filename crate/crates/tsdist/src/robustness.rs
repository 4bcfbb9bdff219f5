//! Contamination-tolerance and imprecision-invariance experiments.
//!
//! An instance x is compared against a disturbed variant of itself (gross
//! contamination at a few positions, or a tiny perturbation everywhere) and
//! against every out-of-class instance; the score is the fraction of
//! out-of-class comparisons where the variant stays strictly closer, averaged
//! over instances. Per-instance RNG streams derive from (seed, instance
//! index), so parallel and serial runs produce identical scores.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measure::DistanceSpec;
use crate::series::{Dataset, TimeSeries};

/// How contaminated positions are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    /// Uniformly random distinct positions.
    Random,
    /// One contiguous block at a seeded start: the adversarial case for the
    /// sliding median.
    Consecutive,
}

/// A reproducible description of the contamination process: which positions
/// are overwritten, and with what.
#[derive(Debug, Clone, PartialEq)]
pub struct ContaminationPlan {
    positions: Vec<usize>,
    magnitude: f64,
    placement: Placement,
    seed: u64,
}

impl ContaminationPlan {
    /// Plan with k = ceil(fraction * n) contaminated positions, clamped to at
    /// least one.
    pub fn from_fraction(
        n: usize,
        fraction: f64,
        magnitude: f64,
        placement: Placement,
        seed: u64,
    ) -> Result<Self> {
        if !(fraction > 0.0 && fraction < 1.0) {
            return Err(Error::InvalidFraction { fraction });
        }
        let k = ((fraction * n as f64).ceil() as usize).max(1);
        Self::with_k(n, k, magnitude, placement, seed)
    }

    pub fn with_k(
        n: usize,
        k: usize,
        magnitude: f64,
        placement: Placement,
        seed: u64,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptyContamination);
        }
        if k > n {
            return Err(Error::InvalidParameter(format!(
                "cannot contaminate {k} of {n} positions"
            )));
        }
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let positions = match placement {
            Placement::Random => {
                let mut p = rand::seq::index::sample(&mut rng, n, k).into_vec();
                p.sort_unstable();
                p
            }
            Placement::Consecutive => {
                let start = rng.random_range(0..=n - k);
                (start..start + k).collect()
            }
        };
        Ok(ContaminationPlan {
            positions,
            magnitude,
            placement,
            seed,
        })
    }

    /// Plan with explicitly chosen positions (deduplicated, sorted).
    pub fn with_positions(positions: Vec<usize>, magnitude: f64) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::EmptyContamination);
        }
        let mut positions = positions;
        positions.sort_unstable();
        positions.dedup();
        let contiguous = positions.windows(2).all(|w| w[1] == w[0] + 1);
        Ok(ContaminationPlan {
            positions,
            magnitude,
            placement: if contiguous {
                Placement::Consecutive
            } else {
                Placement::Random
            },
            seed: 0,
        })
    }

    pub fn k(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    pub fn placement(&self) -> Placement {
        self.placement
    }
}

/// A reproducible description of the imprecision process: i.i.d. draws from
/// the uniform distribution on (-eps_max, eps_max).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImprecisionPlan {
    pub eps_max: f64,
    pub seed: u64,
}

impl ImprecisionPlan {
    pub fn new(eps_max: f64, seed: u64) -> Result<Self> {
        if !eps_max.is_finite() || eps_max <= 0.0 {
            return Err(Error::InvalidImprecision { eps_max });
        }
        Ok(ImprecisionPlan { eps_max, seed })
    }
}

/// Per-instance ratios of out-of-class comparisons won, and their mean.
#[derive(Debug, Clone, PartialEq)]
pub struct RobustnessScore {
    pub per_instance_ratios: Vec<f64>,
    pub mean_score: f64,
}

/// Replace the planned positions with the planned magnitude; every other
/// position is bit-identical.
pub fn contaminate(x: &TimeSeries, plan: &ContaminationPlan) -> Result<TimeSeries> {
    let mut values = x.values().to_vec();
    for &p in &plan.positions {
        if p >= values.len() {
            return Err(Error::PositionOutOfRange {
                position: p,
                len: values.len(),
            });
        }
        values[p] = plan.magnitude;
    }
    TimeSeries::new(values)
}

/// Add a seeded draw from (-eps_max, eps_max) to every observation.
pub fn perturb(x: &TimeSeries, plan: &ImprecisionPlan) -> Result<TimeSeries> {
    if !x.is_finite() {
        return Err(Error::NonFiniteSeries);
    }
    let mut rng = ChaCha12Rng::seed_from_u64(plan.seed);
    let values = x
        .values()
        .iter()
        .map(|v| v + rng.random_range(-plan.eps_max..plan.eps_max))
        .collect();
    TimeSeries::new(values)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic per-instance stream from the experiment seed.
fn derive_seed(seed: u64, instance: usize) -> u64 {
    splitmix64(seed ^ splitmix64(instance as u64))
}

fn score_with<F>(data: &Dataset, metric: &DistanceSpec, make_variant: F) -> Result<RobustnessScore>
where
    F: Fn(&TimeSeries, usize) -> Result<TimeSeries> + Sync,
{
    if data.class_count() < 2 {
        return Err(Error::SingleClass);
    }
    let per_instance_ratios: Vec<f64> = data
        .instances()
        .par_iter()
        .enumerate()
        .map(|(i, inst)| {
            let variant = make_variant(&inst.series, i)?;
            let d_self = metric.evaluate(&inst.series, &variant)?;
            let mut won = 0usize;
            let mut total = 0usize;
            for other in data.instances() {
                if other.label == inst.label {
                    continue;
                }
                total += 1;
                // Strict inequality: equality counts as failure.
                if d_self < metric.evaluate(&inst.series, &other.series)? {
                    won += 1;
                }
            }
            Ok(won as f64 / total as f64)
        })
        .collect::<Result<_>>()?;
    let mean_score = per_instance_ratios.iter().sum::<f64>() / per_instance_ratios.len() as f64;
    Ok(RobustnessScore {
        per_instance_ratios,
        mean_score,
    })
}

/// Contamination tolerance: per instance, contaminate ceil(fraction * n)
/// positions once (seeded) and count how many out-of-class instances remain
/// strictly farther than the contaminated copy.
pub fn contamination_tolerance_score(
    data: &Dataset,
    metric: &DistanceSpec,
    fraction: f64,
    magnitude: f64,
    placement: Placement,
    seed: u64,
) -> Result<RobustnessScore> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::InvalidFraction { fraction });
    }
    score_with(data, metric, |x, i| {
        let plan = ContaminationPlan::from_fraction(
            x.len(),
            fraction,
            magnitude,
            placement,
            derive_seed(seed, i),
        )?;
        contaminate(x, &plan)
    })
}

/// Imprecision invariance: the same comparison with the contaminated copy
/// replaced by a copy perturbed everywhere by at most eps_max.
pub fn imprecision_invariance_score(
    data: &Dataset,
    metric: &DistanceSpec,
    eps_max: f64,
    seed: u64,
) -> Result<RobustnessScore> {
    score_with(data, metric, |x, i| {
        perturb(x, &ImprecisionPlan::new(eps_max, derive_seed(seed, i))?)
    })
}
