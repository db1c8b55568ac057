use serde::{Deserialize, Serialize};

use super::{morse_analyze, FourierPotential};
use crate::resonance::{enumerate_generators, Generator};
use crate::{Error, Result};

/// Fourier cut-off `N(δ; s, n) = 2 max{1, s⁻¹ ln(c_n / (sⁿ δ))}` with `c_n = 2⁴⁴ (2n/e)ⁿ`.
pub fn cutoff_n(delta: f64, s: f64, n: usize) -> Result<f64> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::Domain(format!("δ = {delta} outside (0, 1]")));
    }
    if !(s > 0.0 && s.is_finite()) || n < 1 {
        return Err(Error::Domain(format!("s = {s}, n = {n}")));
    }
    let nf = n as f64;
    let ln_cn = 44.0 * std::f64::consts::LN_2 + nf * (2.0 * nf / std::f64::consts::E).ln();
    let inner = (ln_cn - nf * s.ln() - delta.ln()) / s;
    Ok(2.0 * inner.max(1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Clause {
    /// Decay lower bound `|f_k| ≥ δ |k|₁⁻ⁿ e^{-|k|₁ s}` for `|k|₁ ≥ N`.
    DecayBound,
    /// `π_Zk f` is β-Morse for `|k|₁ ≤ N`.
    MorseProjection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum FailureReason {
    /// No multiple of `k` carries a coefficient.
    MissingMode,
    BelowDecayBound,
    NotMorse(String),
    MorseConstantTooSmall,
}

/// Outcome for one generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeCheck {
    pub k: Generator,
    pub clause: Clause,
    /// `|f_k| / (δ |k|₁⁻ⁿ e^{-|k|₁ s})`, reported for every mode.
    pub decay_ratio: f64,
    /// Morse constant of the projection when it is Morse.
    pub morse_beta: Option<f64>,
    pub failure: Option<FailureReason>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenericityReport {
    pub cutoff: f64,
    pub delta: f64,
    pub beta: f64,
    pub k_max: i64,
    pub checks: Vec<ModeCheck>,
}

impl GenericityReport {
    pub fn first_failure(&self) -> Option<&ModeCheck> {
        self.checks.iter().find(|c| c.failure.is_some())
    }

    pub fn passed(&self) -> bool {
        self.first_failure().is_none()
    }
}

/// Checks the decay and Morse conditions on every generator with `|k|₁ ≤ k_max`.
///
/// Only finitely many modes can be inspected, so the asymptotic part of the
/// genericity class is represented by the decay bound up to `k_max`.
pub fn check_genericity(
    f: &FourierPotential,
    delta: f64,
    beta: f64,
    k_max: i64,
) -> Result<GenericityReport> {
    let n = f.dim();
    let s = f.decay();
    let cutoff = cutoff_n(delta, s, n)?;
    let checks = enumerate_generators(n, k_max)
        .into_iter()
        .map(|k| {
            let l1 = k.l1() as f64;
            let floor = delta * l1.powi(-(n as i32)) * (-l1 * s).exp();
            let decay_ratio = f.coefficient(k.as_slice()).norm() / floor;
            let projection = f.project(&k).expect("generator dimension matches");
            let morse = (!projection.is_zero()).then(|| morse_analyze(&projection));
            let morse_beta = match &morse {
                Some(Ok(p)) => Some(p.beta),
                _ => None,
            };
            if l1 >= cutoff {
                let failure = (decay_ratio < 1.0).then_some(if projection.is_zero() {
                    FailureReason::MissingMode
                } else {
                    FailureReason::BelowDecayBound
                });
                return ModeCheck {
                    k,
                    clause: Clause::DecayBound,
                    decay_ratio,
                    morse_beta,
                    failure,
                };
            }
            let failure = match morse {
                None => Some(FailureReason::MissingMode),
                Some(Err(e)) => Some(FailureReason::NotMorse(e.to_string())),
                Some(Ok(p)) if p.beta < beta => Some(FailureReason::MorseConstantTooSmall),
                Some(Ok(_)) => None,
            };
            ModeCheck {
                k,
                clause: Clause::MorseProjection,
                decay_ratio,
                morse_beta,
                failure,
            }
        })
        .collect();
    Ok(GenericityReport {
        cutoff,
        delta,
        beta,
        k_max,
        checks,
    })
}
