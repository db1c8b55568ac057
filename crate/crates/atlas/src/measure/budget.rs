use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::bisect;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BudgetRow {
    pub label: String,
    pub k: f64,
    /// `(2π)^n c₂ ε K^γ`.
    pub resonant: f64,
    /// `e^{−K/c}`.
    pub exponential: f64,
    pub total: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BudgetTable {
    pub eps: f64,
    pub n: usize,
    pub gamma: f64,
    pub c: f64,
    pub c2: f64,
    pub rows: Vec<BudgetRow>,
    /// `K` where both terms are equal, if they cross for `K ≥ 1`.
    pub crossover: Option<f64>,
}

/// Tabulates `(2π)^n c₂ ε K^γ + e^{−K/c}` on `ks`, at the crossover, at
/// `K = c|ln ε|` and at `K = ε^{−(1−a)/γ}`.
pub fn budget_shape(eps: f64, n: usize, ks: &[f64], c: f64, c2: f64, a: f64) -> Result<BudgetTable> {
    if !(eps > 0.0 && eps < 1.0 && c > 0.0 && c2 > 0.0 && n >= 2) {
        return Err(Error::Domain("budget constants must be positive with 0 < ε < 1".into()));
    }
    let gamma = 11.0 * n as f64 + 4.0;
    let tau = std::f64::consts::TAU.powi(n as i32);
    let row = |label: String, k: f64| {
        let resonant = tau * c2 * eps * k.powf(gamma);
        let exponential = (-k / c).exp();
        BudgetRow {
            label,
            k,
            resonant,
            exponential,
            total: resonant + exponential,
        }
    };
    // log of resonant/exponential, increasing in K
    let gap = |k: f64| (tau * c2 * eps).ln() + gamma * k.ln() + k / c;
    let crossover = if gap(1.0) >= 0.0 {
        None
    } else {
        let mut hi = 2.0;
        while gap(hi) < 0.0 {
            hi *= 2.0;
        }
        bisect(gap, 1.0, hi, 1e-12 * hi)
    };
    let mut rows: Vec<BudgetRow> = ks.iter().map(|&k| row("grid".into(), k)).collect();
    if let Some(k) = crossover {
        rows.push(row("crossover".into(), k));
    }
    rows.push(row("c|ln eps|".into(), c * eps.ln().abs()));
    rows.push(row(format!("eps^-(1-{a})/gamma"), eps.powf(-(1.0 - a) / gamma)));
    Ok(BudgetTable {
        eps,
        n,
        gamma,
        c,
        c2,
        rows,
        crossover,
    })
}
