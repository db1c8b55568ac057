use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{mc_measure, MeasureEstimate, SampleBox};
use crate::error::{Error, Result};
use crate::resonance::{Covering, CoveringParams};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingPoint {
    pub eps: f64,
    pub alpha: f64,
    pub estimate: MeasureEstimate,
    /// `c₂ ε K^γ` with the configured constant.
    pub bound: f64,
}

/// Log-log regression of `meas(R²)` against `ε` at fixed cut-offs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingStudy {
    pub params: CoveringParams,
    pub points: Vec<ScalingPoint>,
    pub slope: f64,
    pub intercept: f64,
    pub gamma: f64,
    /// Smallest `c` with `meas ≤ c ε K^γ` at every point.
    pub fitted_c2: f64,
    pub configured_c2: f64,
    pub bound_holds: bool,
}

impl ScalingStudy {
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["eps", "alpha", "measure", "std_error", "samples", "hits", "bound"])?;
        for p in &self.points {
            out.write_record([
                format!("{:.17e}", p.eps),
                format!("{:.17e}", p.alpha),
                format!("{:.17e}", p.estimate.value),
                format!("{:.17e}", p.estimate.std_error),
                p.estimate.samples.to_string(),
                p.estimate.hits.to_string(),
                format!("{:.17e}", p.bound),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Measures the doubly-resonant zone for each `ε` (seed `seed + i` for the
/// `i`-th value) and fits `log meas = slope·log ε + intercept`.
pub fn scaling_study(
    params: &CoveringParams,
    epsilons: &[f64],
    samples: u64,
    seed: u64,
    configured_c2: f64,
) -> Result<ScalingStudy> {
    if epsilons.len() < 3 {
        return Err(Error::Domain("a scaling study needs at least 3 values of ε".into()));
    }
    let (lo, hi) = epsilons
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(l, h), &e| (l.min(e), h.max(e)));
    if !(hi / lo >= 100.0) {
        return Err(Error::Domain("ε values must span at least two decades".into()));
    }
    let region = SampleBox::cube(params.n);
    let mut points = Vec::with_capacity(epsilons.len());
    for (i, &eps) in epsilons.iter().enumerate() {
        let p = params.with_eps(eps);
        let alpha = p.alpha();
        if !(alpha < 1.0) {
            return Err(Error::Hypothesis(format!(
                "α = {alpha:e} ≥ 1 at ε = {eps:e}; the covering hypotheses fail"
            )));
        }
        let cov = Covering::new(p.clone())?;
        let in_ball = |y: &[f64]| y.iter().map(|v| v * v).sum::<f64>() < 1.0;
        let estimate = mc_measure(
            |y| in_ball(y) && cov.is_doubly_resonant(y),
            &region,
            samples,
            seed.wrapping_add(i as u64),
        )?;
        let bound = configured_c2 * eps * (p.k as f64).powf(p.gamma());
        points.push(ScalingPoint {
            eps,
            alpha,
            estimate,
            bound,
        });
    }
    if points.iter().any(|p| p.estimate.hits == 0) {
        return Err(Error::IllConditioned(
            "degenerate regression: a zone measured zero".into(),
        ));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.eps.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.estimate.value.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let gamma = params.gamma();
    let kg = (params.k as f64).powf(gamma);
    let fitted_c2 = points
        .iter()
        .map(|p| p.estimate.value / (p.eps * kg))
        .fold(0.0f64, f64::max);
    let bound_holds = points.iter().all(|p| p.estimate.value <= p.bound);
    Ok(ScalingStudy {
        params: params.clone(),
        points,
        slope,
        intercept: my - slope * mx,
        gamma,
        fitted_c2,
        configured_c2,
        bound_holds,
    })
}
