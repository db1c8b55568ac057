use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::roots;

/// A real trigonometric polynomial `g(θ) = Σ_{j≠0} c_j e^{ijθ}` with `c_{-j} = conj(c_j)`.
///
/// Only the harmonics `j ≥ 1` are stored; the conjugate half is implied.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct OneDSeries {
    coeffs: BTreeMap<u32, Complex64>,
}

impl OneDSeries {
    /// Builds a series from `(j, c_j)` pairs; negative `j` contribute `conj(c_j)` at `-j`.
    /// A `j = 0` entry is dropped since the series has zero average.
    pub fn new<I: IntoIterator<Item = (i64, Complex64)>>(terms: I) -> Self {
        let mut coeffs: BTreeMap<u32, Complex64> = BTreeMap::new();
        for (j, c) in terms {
            if j == 0 || c == Complex64::new(0.0, 0.0) {
                continue;
            }
            let (key, val) = if j > 0 { (j as u32, c) } else { ((-j) as u32, c.conj()) };
            *coeffs.entry(key).or_default() += val;
        }
        coeffs.retain(|_, c| c.norm() > 0.0);
        Self { coeffs }
    }

    /// `a cos θ`.
    pub fn cosine(a: f64) -> Self {
        Self::new([(1, Complex64::new(a / 2.0, 0.0))])
    }

    /// `Σ a_j cos(jθ) + b_j sin(jθ)` from real amplitude triples `(j, a_j, b_j)`.
    pub fn from_trig(terms: &[(u32, f64, f64)]) -> Self {
        Self::new(
            terms
                .iter()
                .map(|&(j, a, b)| (j as i64, Complex64::new(a / 2.0, -b / 2.0))),
        )
    }

    pub fn coefficient(&self, j: i64) -> Complex64 {
        match j.cmp(&0) {
            std::cmp::Ordering::Greater => self.coeffs.get(&(j as u32)).copied().unwrap_or_default(),
            std::cmp::Ordering::Less => self
                .coeffs
                .get(&((-j) as u32))
                .map(|c| c.conj())
                .unwrap_or_default(),
            std::cmp::Ordering::Equal => Complex64::default(),
        }
    }

    /// Stored harmonics `j ≥ 1` with their amplitudes.
    pub fn harmonics(&self) -> impl Iterator<Item = (u32, Complex64)> + '_ {
        self.coeffs.iter().map(|(&j, &c)| (j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_harmonic(&self) -> u32 {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&j, &c)| (j, c * lambda))
                .filter(|(_, c)| c.norm() > 0.0)
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.harmonics()
                .chain(other.harmonics())
                .map(|(j, c)| (j as i64, c)),
        )
    }

    /// The series of the `r`-th derivative.
    pub fn derivative_series(&self, r: u32) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&j, &c)| (j, c * Complex64::new(0.0, j as f64).powu(r)))
                .collect(),
        }
    }

    pub fn value(&self, theta: f64) -> f64 {
        self.derivative(theta, 0)
    }

    /// `g^{(r)}(θ)`.
    pub fn derivative(&self, theta: f64, r: u32) -> f64 {
        let mut acc = 0.0;
        for (&j, &c) in &self.coeffs {
            let jf = j as f64;
            let (s, co) = (jf * theta).sin_cos();
            let z = c * Complex64::new(0.0, jf).powu(r) * Complex64::new(co, s);
            acc += 2.0 * z.re;
        }
        acc
    }

    /// Value and first two derivatives in one pass.
    pub fn jet2(&self, theta: f64) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (&j, &c) in &self.coeffs {
            let jf = j as f64;
            let (s, co) = (jf * theta).sin_cos();
            let e = c * Complex64::new(co, s);
            out[0] += 2.0 * e.re;
            out[1] += -2.0 * jf * e.im;
            out[2] += -2.0 * jf * jf * e.re;
        }
        out
    }

    /// `g(θ + δ) − g(θ)` without cancellation for small `δ`.
    pub fn increment(&self, theta: f64, delta: f64) -> f64 {
        let mut acc = 0.0;
        for (&j, &c) in &self.coeffs {
            let jf = j as f64;
            let (s, co) = (jf * theta).sin_cos();
            let half = (0.5 * jf * delta).sin();
            let step = Complex64::new(-2.0 * half * half, (jf * delta).sin());
            acc += 2.0 * (c * Complex64::new(co, s) * step).re;
        }
        acc
    }

    /// Zeros of `g^{(r)}` on `[0, 2π)` located by a uniform scan with
    /// `samples` points, bisection to `1e-13` and one Newton step.
    pub fn derivative_zeros(&self, r: u32, samples: usize) -> Vec<f64> {
        let d = self.derivative_series(r);
        zeros_of_series(&d, samples)
    }

    /// `sup |g|` over the circle, attained at a critical point.
    pub fn sup_abs(&self) -> f64 {
        self.sup_abs_derivative(0)
    }

    /// `sup |g^{(r)}|` over the circle.
    pub fn sup_abs_derivative(&self, r: u32) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        self.derivative_zeros(r + 1, SCAN)
            .into_iter()
            .map(|t| self.derivative(t, r).abs())
            .fold(0.0, f64::max)
    }

    /// `Σ_j |c_j| e^{j σ}`, twice; bounds `sup |g|` on the strip `|Im θ| < σ`.
    pub fn strip_bound(&self, sigma: f64) -> f64 {
        2.0 * self
            .coeffs
            .iter()
            .map(|(&j, c)| c.norm() * (j as f64 * sigma).exp())
            .sum::<f64>()
    }
}

pub(crate) const SCAN: usize = 1 << 12;

/// Zeros of a real series on `[0, 2π)`.
pub(crate) fn zeros_of_series(d: &OneDSeries, samples: usize) -> Vec<f64> {
    if d.is_zero() {
        return Vec::new();
    }
    let h = TAU / samples as f64;
    let vals: Vec<f64> = (0..=samples).map(|i| d.value(i as f64 * h)).collect();
    let mut out = Vec::new();
    for i in 0..samples {
        let (a, b) = (i as f64 * h, (i + 1) as f64 * h);
        let (fa, fb) = (vals[i], vals[i + 1]);
        if fa == 0.0 {
            out.push(a);
            continue;
        }
        if fb == 0.0 || fa.signum() == fb.signum() {
            continue;
        }
        if let Some(mut x) = roots::bisect(|t| d.value(t), a, b, 1e-13) {
            let slope = d.derivative(x, 1);
            if slope != 0.0 {
                let nx = x - d.value(x) / slope;
                if nx >= a && nx <= b {
                    x = nx;
                }
            }
            out.push(x);
        }
    }
    out
}
