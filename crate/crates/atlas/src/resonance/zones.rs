use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{bezout_complete, covering_c2, enumerate_generators, BezoutFrame, CoveringParams, Generator};
use crate::fourier::{cutoff_n, FourierPotential};
use crate::{Error, Result};

/// External-action domain `D̂`: points `â` with `|P⊥_k Âᵀ â| < 1` and
/// `|(P⊥_k Âᵀ â)·ℓ| ≥ m α K / |k|` for every `ℓ ∈ G_K \ Zk`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainHat {
    pub k: Generator,
    pub a_hat: Vec<Vec<i64>>,
    pub threshold: f64,
    pub k_max: i64,
}

impl DomainHat {
    /// `P⊥_k Âᵀ â`.
    pub fn lift(&self, a_hat_point: &[f64]) -> Vec<f64> {
        let n = self.k.dim();
        let mut v = vec![0.0; n];
        for (row, &c) in self.a_hat.iter().zip(a_hat_point) {
            for (vi, &r) in v.iter_mut().zip(row) {
                *vi += r as f64 * c;
            }
        }
        let proj = self.k.dot(&v) / self.k.norm_sq();
        for (vi, &kc) in v.iter_mut().zip(self.k.as_slice()) {
            *vi -= proj * kc as f64;
        }
        v
    }

    pub fn contains(&self, a_hat_point: &[f64]) -> bool {
        let v = self.lift(a_hat_point);
        if v.iter().map(|x| x * x).sum::<f64>() >= 1.0 {
            return false;
        }
        enumerate_generators(self.k.dim(), self.k_max)
            .iter()
            .filter(|l| **l != self.k)
            .all(|l| l.dot(&v).abs() >= self.threshold)
    }
}

/// Characteristics attached to a simple-resonance zone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZoneParams {
    pub k: Generator,
    /// `|k|₁ < N(δ; s, n)`.
    pub low_mode: bool,
    pub cutoff: f64,
    pub big_r: f64,
    pub r: f64,
    pub eps_k: f64,
    pub chi_k: f64,
    pub c_s: f64,
    pub eps_bar: f64,
    pub beta_bar: f64,
    pub s_bar: f64,
    pub s_hat: f64,
    pub mu: f64,
    pub kappa: f64,
    pub c2: f64,
    pub domain: DomainHat,
}

impl ZoneParams {
    /// `√ε̄ < R / K^{9n/2}`.
    pub fn eps_condition(&self, k_max: i64) -> bool {
        let n = self.k.dim() as f64;
        self.eps_bar.sqrt() < self.big_r / (k_max as f64).powf(4.5 * n)
    }

    /// `1/κ ≤ s̄ ≤ 1`.
    pub fn s_bar_condition(&self) -> bool {
        1.0 / self.kappa <= self.s_bar && self.s_bar <= 1.0
    }

    /// `1 ≤ R/r ≤ κ`.
    pub fn radius_condition(&self) -> bool {
        let q = self.big_r / self.r;
        (1.0 - 1e-12..=self.kappa * (1.0 + 1e-12)).contains(&q)
    }

    /// `1/2 ≤ ε̄/β̄ ≤ κ`.
    pub fn eps_beta_condition(&self) -> bool {
        let q = self.eps_bar / self.beta_bar;
        (0.5..=self.kappa * (1.0 + 1e-12)).contains(&q)
    }
}

/// Evaluates the zone table for a low generator.
pub fn zone_params(
    k: &Generator,
    p: &CoveringParams,
    f: &FourierPotential,
    beta: f64,
    delta: f64,
) -> Result<ZoneParams> {
    if k.l1() > p.k0 {
        return Err(Error::Domain(format!("|{k}|₁ > K₀ = {}", p.k0)));
    }
    if !(beta > 0.0) {
        return Err(Error::Domain(format!("β = {beta} must be positive")));
    }
    let n = p.n;
    let s = f.decay();
    let cutoff = cutoff_n(delta, s, n)?;
    let low_mode = (k.l1() as f64) < cutoff;
    let k2 = k.norm_sq();
    let alpha = p.alpha();
    let c2 = covering_c2(n);
    let big_r = alpha / k2;
    let eps_k = 2.0 * p.eps / k2;
    let fk = f.coefficient(k.as_slice()).norm();
    let chi_k = if low_mode { 1.0 } else { fk };
    let c_s = 1f64.max(1.0 / s);
    let kf = p.k as f64;
    let frame = bezout_complete(k)?;
    Ok(ZoneParams {
        k: k.clone(),
        low_mode,
        cutoff,
        big_r,
        r: big_r / c2,
        eps_k,
        chi_k,
        c_s,
        eps_bar: c_s * eps_k * chi_k,
        beta_bar: if low_mode { eps_k * beta } else { eps_k * fk },
        s_bar: if low_mode { (s / 2.0).min(1.0) } else { 1.0 },
        s_hat: if low_mode {
            k.l1() as f64 * s * (1.0 - 1.0 / kf).powi(2)
        } else {
            1.0
        },
        mu: kf.powf(-5.0 * n as f64),
        kappa: c2.max(4.0 * c_s).max(c_s / beta),
        c2,
        domain: DomainHat {
            k: k.clone(),
            a_hat: frame.a_hat().to_vec(),
            threshold: p.threshold * alpha * kf / k.norm(),
            k_max: p.k,
        },
    })
}

/// The quadratic form `ĥ(p̂) = |P⊥_k Âᵀ p̂|² / |k|²` of the transverse actions.
#[derive(Clone, Debug, PartialEq)]
pub struct TransverseForm {
    pub k: Generator,
    pub frame: BezoutFrame,
    /// `2 Â P⊥_k Âᵀ / |k|²`.
    pub hessian: DMatrix<f64>,
}

impl TransverseForm {
    pub fn dim(&self) -> usize {
        self.hessian.nrows()
    }

    pub fn det(&self) -> f64 {
        if self.dim() == 0 {
            1.0
        } else {
            self.hessian.determinant()
        }
    }

    /// `d_k = |k|^{-2n}`.
    pub fn d_k(&self) -> f64 {
        self.k.norm_sq().powi(-(self.k.dim() as i32))
    }

    /// Largest entry in absolute value.
    pub fn norm(&self) -> f64 {
        self.hessian.amax()
    }

    /// `2n⁵ + 1`.
    pub fn norm_bound(&self) -> f64 {
        2.0 * (self.k.dim() as f64).powi(5) + 1.0
    }

    pub fn is_positive_definite(&self) -> bool {
        self.dim() == 0 || self.hessian.clone().cholesky().is_some()
    }

    pub fn checks_hold(&self) -> bool {
        self.norm() <= self.norm_bound() && self.det() >= self.d_k() && self.is_positive_definite()
    }

    pub fn value(&self, p_hat: &[f64]) -> f64 {
        let v = DVector::from_column_slice(p_hat);
        0.5 * v.dot(&(&self.hessian * &v))
    }
}

pub fn transverse_form(k: &Generator) -> Result<TransverseForm> {
    let frame = bezout_complete(k)?;
    let n = k.dim();
    let kv = DVector::from_iterator(n, k.as_slice().iter().map(|&c| c as f64));
    let k2 = k.norm_sq();
    let proj = DMatrix::<f64>::identity(n, n) - &kv * kv.transpose() / k2;
    let a_hat = DMatrix::from_fn(n - 1, n, |i, j| frame.a_hat()[i][j] as f64);
    let hessian = 2.0 * &a_hat * proj * a_hat.transpose() / k2;
    Ok(TransverseForm {
        k: k.clone(),
        frame,
        hessian,
    })
}
