use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::OneDSeries;

/// Taylor data of a potential at a nondegenerate minimum and the resulting
/// Birkhoff twist coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BirkhoffData {
    pub theta: f64,
    pub d2: f64,
    pub d3: f64,
    pub d4: f64,
    /// `3 d₂ d₄ − 5 d₃²`.
    pub delta: f64,
    /// `√(2 d₂)`.
    pub omega0: f64,
    /// `(d₄/d₂ − 5 d₃²/(3 d₂²))/4`, the limit of `∂²E/∂I²` at the minimum.
    pub c: f64,
}

pub fn birkhoff_delta(g: &OneDSeries, theta: f64) -> Result<BirkhoffData> {
    let d1 = g.derivative(theta, 1);
    let d2 = g.derivative(theta, 2);
    let scale: f64 = g.harmonics().map(|(j, c)| 2.0 * c.norm() * j as f64).sum();
    if !(d2 > 0.0) || d1.abs() > 1e-9 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::Domain(format!(
            "θ = {theta} is not a nondegenerate minimum (g' = {d1:e}, g'' = {d2:e})"
        )));
    }
    let d3 = g.derivative(theta, 3);
    let d4 = g.derivative(theta, 4);
    Ok(BirkhoffData {
        theta,
        d2,
        d3,
        d4,
        delta: 3.0 * d2 * d4 - 5.0 * d3 * d3,
        omega0: (2.0 * d2).sqrt(),
        c: 0.25 * (d4 / d2 - 5.0 * d3 * d3 / (3.0 * d2 * d2)),
    })
}
