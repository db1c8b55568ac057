//! Seeded hit-or-miss measure estimates and the scaling studies built on them.

mod budget;
mod study;

pub use budget::{budget_shape, BudgetRow, BudgetTable};
pub use study::{scaling_study, ScalingPoint, ScalingStudy};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Samples drawn from one random stream; chunk `c` uses stream `c` of the master seed.
const CHUNK: u64 = 1 << 16;
pub const MIN_SAMPLES: u64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    MonteCarlo,
    Grid,
}

/// Axis-aligned sampling box.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl SampleBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() || lo.iter().zip(&hi).any(|(a, b)| !(a < b)) {
            return Err(Error::Domain("box corners must satisfy lo < hi".into()));
        }
        Ok(Self { lo, hi })
    }

    /// `[-1, 1]^n`, enclosing the unit ball.
    pub fn cube(n: usize) -> Self {
        Self {
            lo: vec![-1.0; n],
            hi: vec![1.0; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn volume(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(a, b)| b - a).product()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
    pub hits: u64,
    pub seed: Option<u64>,
    pub method: Method,
    pub volume: f64,
}

impl MeasureEstimate {
    fn from_hits(hits: u64, samples: u64, volume: f64, seed: Option<u64>, method: Method) -> Self {
        let p = hits as f64 / samples as f64;
        Self {
            value: p * volume,
            std_error: (p * (1.0 - p) / samples as f64).sqrt() * volume,
            samples,
            hits,
            seed,
            method,
            volume,
        }
    }

    /// `value ± sigmas·std_error`.
    pub fn interval(&self, sigmas: f64) -> (f64, f64) {
        (
            (self.value - sigmas * self.std_error).max(0.0),
            (self.value + sigmas * self.std_error).min(self.volume),
        )
    }
}

/// Hit-or-miss estimate of the measure of `{x ∈ box : pred(x)}`.
///
/// Deterministic in `seed` regardless of the number of worker threads.
pub fn mc_measure<F>(pred: F, region: &SampleBox, samples: u64, seed: u64) -> Result<MeasureEstimate>
where
    F: Fn(&[f64]) -> bool + Sync,
{
    if samples < MIN_SAMPLES {
        return Err(Error::Domain(format!("{samples} samples; need at least {MIN_SAMPLES}")));
    }
    let chunks = samples.div_ceil(CHUNK);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let count = CHUNK.min(samples - c * CHUNK);
            let mut x = vec![0.0; region.dim()];
            let mut h = 0u64;
            for _ in 0..count {
                for (xi, (a, b)) in x.iter_mut().zip(region.lo.iter().zip(&region.hi)) {
                    *xi = a + (b - a) * rng.gen::<f64>();
                }
                if pred(&x) {
                    h += 1;
                }
            }
            h
        })
        .sum();
    Ok(MeasureEstimate::from_hits(
        hits,
        samples,
        region.volume(),
        Some(seed),
        Method::MonteCarlo,
    ))
}

/// Midpoint-grid estimate with `per_axis` cells along each axis.
pub fn grid_measure<F>(pred: F, region: &SampleBox, per_axis: u64) -> Result<MeasureEstimate>
where
    F: Fn(&[f64]) -> bool + Sync,
{
    let d = region.dim() as u32;
    let total = per_axis
        .checked_pow(d)
        .filter(|&t| t >= MIN_SAMPLES)
        .ok_or_else(|| Error::Domain(format!("{per_axis}^{d} grid cells is out of range")))?;
    let hits: u64 = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let x: Vec<f64> = (0..region.dim())
                .map(|a| {
                    let i = idx % per_axis;
                    idx /= per_axis;
                    region.lo[a] + (region.hi[a] - region.lo[a]) * (i as f64 + 0.5) / per_axis as f64
                })
                .collect();
            u64::from(pred(&x))
        })
        .sum();
    Ok(MeasureEstimate::from_hits(hits, total, region.volume(), None, Method::Grid))
}
