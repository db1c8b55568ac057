use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::series::{zeros_of_series, SCAN};
use super::OneDSeries;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CriticalKind {
    Maximum,
    Minimum,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub theta: f64,
    pub value: f64,
    pub curvature: f64,
    pub kind: CriticalKind,
}

/// `g = A (cos(θ + θ_k) + F*)` with `A = 2|c₁|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShiftedCosine {
    pub amplitude: f64,
    pub shift: f64,
    /// Upper bound for `sup |F*|` on the strip `|Im θ| < 1`.
    pub residual_bound: f64,
}

/// Critical data of a Morse trigonometric polynomial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MorseProfile {
    /// Critical points from the global maximum `θ₀` up to `θ₀ + 2π`;
    /// maxima at even, minima at odd indices.
    pub points: Vec<CriticalPoint>,
    /// `min(derivative_clause, value_gap)`.
    pub beta: f64,
    /// `min_θ (|g'| + |g''|)`.
    pub derivative_clause: f64,
    /// Smallest gap between two critical values.
    pub value_gap: f64,
    pub sup_abs: f64,
    pub sup_curvature: f64,
    /// `π √(2 sup|g''| / β)`.
    pub count_bound: f64,
    /// `max{4, π √(8/β)}`.
    pub cbar: f64,
    pub cosine: Option<ShiftedCosine>,
}

impl MorseProfile {
    /// Number of critical points `2N`.
    pub fn count(&self) -> usize {
        self.points.len()
    }

    pub fn half_count(&self) -> usize {
        self.points.len() / 2
    }

    pub fn values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.value).collect()
    }

    /// `θ_i` extended periodically to `0 ≤ i ≤ 2N`.
    pub fn theta(&self, i: usize) -> f64 {
        let m = self.points.len();
        self.points[i % m].theta + TAU * (i / m) as f64
    }

    /// `E_i` extended periodically to `0 ≤ i ≤ 2N`.
    pub fn value(&self, i: usize) -> f64 {
        self.points[i % self.points.len()].value
    }

    pub fn count_bound_holds(&self) -> bool {
        self.count() as f64 <= self.count_bound * (1.0 + 1e-12)
    }

    pub fn is_beta_morse(&self, beta: f64) -> bool {
        self.beta >= beta
    }
}

/// Locates all critical points of `g` and its Morse constant.
pub fn morse_analyze(g: &OneDSeries) -> Result<MorseProfile> {
    if g.is_zero() {
        return Err(Error::ZeroSeries);
    }
    let d1 = g.derivative_series(1);
    let d2 = g.derivative_series(2);
    let d3 = g.derivative_series(3);
    let curvature_scale: f64 = g
        .harmonics()
        .map(|(j, c)| 2.0 * c.norm() * (j as f64).powi(2))
        .sum();

    let mut crit: Vec<CriticalPoint> = Vec::new();
    for t in zeros_of_series(&d1, SCAN) {
        if crit.last().is_some_and(|p| (t - p.theta).abs() < 1e-10) {
            continue;
        }
        let [value, _, curvature] = g.jet2(t);
        if curvature.abs() < 1e-9 * curvature_scale {
            return Err(Error::NotMorse(format!(
                "degenerate critical point at θ = {t:.6} (g'' = {curvature:e})"
            )));
        }
        let kind = if curvature < 0.0 {
            CriticalKind::Maximum
        } else {
            CriticalKind::Minimum
        };
        crit.push(CriticalPoint {
            theta: t,
            value,
            curvature,
            kind,
        });
    }
    if crit.len() >= 2 && (crit[0].theta + TAU - crit[crit.len() - 1].theta) < 1e-10 {
        crit.pop();
    }
    if crit.len() < 2 || !crit.len().is_multiple_of(2) {
        return Err(Error::NotMorse(format!("found {} critical points", crit.len())));
    }

    let top = crit
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.value.total_cmp(&b.1.value))
        .map(|(i, _)| i)
        .unwrap_or(0);
    crit.rotate_left(top);
    let theta0 = crit[0].theta;
    for p in crit.iter_mut().skip(1) {
        if p.theta < theta0 {
            p.theta += TAU;
        }
    }
    for (i, p) in crit.iter().enumerate() {
        let want = if i % 2 == 0 {
            CriticalKind::Maximum
        } else {
            CriticalKind::Minimum
        };
        if p.kind != want {
            return Err(Error::NotMorse(
                "critical points do not alternate between maxima and minima".into(),
            ));
        }
    }

    let sup_abs = crit.iter().map(|p| p.value.abs()).fold(0.0, f64::max);
    let mut sorted: Vec<f64> = crit.iter().map(|p| p.value).collect();
    sorted.sort_by(f64::total_cmp);
    let value_gap = sorted
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    if value_gap < 1e-10 * sup_abs {
        return Err(Error::NotMorse(format!(
            "critical values coincide within {value_gap:e}"
        )));
    }

    let h = |t: f64| g.derivative(t, 1).abs() + g.derivative(t, 2).abs();
    let mut candidates: Vec<f64> = crit.iter().map(|p| p.theta).collect();
    candidates.extend(zeros_of_series(&d2, SCAN));
    candidates.extend(zeros_of_series(&d2.add(&d3), SCAN));
    candidates.extend(zeros_of_series(&d2.add(&d3.scaled(-1.0)), SCAN));
    let derivative_clause = candidates
        .into_iter()
        .map(h)
        .fold(f64::INFINITY, f64::min);

    let beta = derivative_clause.min(value_gap);
    let sup_curvature = zeros_of_series(&d3, SCAN)
        .into_iter()
        .map(|t| g.derivative(t, 2).abs())
        .fold(0.0, f64::max);
    let count_bound = PI * (2.0 * sup_curvature / beta).sqrt();
    let cbar = 4f64.max(PI * (8.0 / beta).sqrt());

    let c1 = g.coefficient(1);
    let cosine = (c1.norm() > 0.0).then(|| {
        let tail: f64 = g
            .harmonics()
            .filter(|(j, _)| *j >= 2)
            .map(|(j, c)| c.norm() * (j as f64).exp())
            .sum();
        ShiftedCosine {
            amplitude: 2.0 * c1.norm(),
            shift: c1.arg(),
            residual_bound: tail / c1.norm(),
        }
    });

    Ok(MorseProfile {
        points: crit,
        beta,
        derivative_clause,
        value_gap,
        sup_abs,
        sup_curvature,
        count_bound,
        cbar,
        cosine,
    })
}
