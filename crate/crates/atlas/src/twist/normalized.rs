use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cheb::{lobatto_nodes, Chebyshev};
use crate::action::ActionFunction;
use crate::error::{Error, Result};

/// Check points used to verify a certificate.
const CHECK_POINTS: usize = 401;
/// Lower bounds below this fraction of the derivative's grid maximum count as zero.
const FLOOR: f64 = 1e-8;

/// `F(x) = ∂²E/∂I²(a + (b − a)x)` sampled on Chebyshev–Lobatto nodes of `[lo, hi] ⊂ (0, 1)`,
/// where `[a, b]` is the action range of an inner region.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalizedTwist {
    pub region: Option<usize>,
    pub action_lo: f64,
    pub action_hi: f64,
    pub lo: f64,
    pub hi: f64,
    pub x: Vec<f64>,
    pub values: Vec<f64>,
}

/// `F` at a single normalized action.
pub fn normalized_f_at(f: &ActionFunction, x: f64) -> Result<f64> {
    if !f.is_inner() {
        return Err(Error::NotInner(f.region().index));
    }
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!("x = {x} outside (0, 1)")));
    }
    let (a, b) = f.action_range()?;
    let e = f.energy_from_action(a + (b - a) * x)?;
    f.twist(e)
}

/// Samples `F` on `nodes + 1` Lobatto points of `[lo, hi]`; `nodes` must be even
/// so that the coarse half-grid used for error estimates is nested.
pub fn normalized_f(f: &ActionFunction, lo: f64, hi: f64, nodes: usize) -> Result<NormalizedTwist> {
    if !f.is_inner() {
        return Err(Error::NotInner(f.region().index));
    }
    let (a, b) = f.action_range()?;
    let x = lobatto_nodes(lo, hi, nodes);
    let values = x
        .par_iter()
        .map(|&xi| normalized_f_at(f, xi))
        .collect::<Result<Vec<_>>>()?;
    let mut t = NormalizedTwist::from_values(lo, hi, values)?;
    t.region = Some(f.region().index);
    t.action_lo = a;
    t.action_hi = b;
    Ok(t)
}

impl NormalizedTwist {
    /// Wraps values already sampled at the Lobatto nodes of `[lo, hi]`.
    pub fn from_values(lo: f64, hi: f64, values: Vec<f64>) -> Result<Self> {
        let nodes = values.len().saturating_sub(1);
        if !(0.0 < lo && lo < hi && hi < 1.0) {
            return Err(Error::Domain(format!("[{lo}, {hi}] is not inside (0, 1)")));
        }
        if nodes < 4 || nodes % 2 == 1 {
            return Err(Error::Domain(format!("{nodes} intervals; need an even count ≥ 4")));
        }
        Ok(Self {
            region: None,
            action_lo: 0.0,
            action_hi: 1.0,
            lo,
            hi,
            x: lobatto_nodes(lo, hi, nodes),
            values,
        })
    }

    pub fn from_fn<F: Fn(f64) -> f64>(lo: f64, hi: f64, nodes: usize, f: F) -> Result<Self> {
        let values = lobatto_nodes(lo, hi, nodes).into_iter().map(f).collect();
        Self::from_values(lo, hi, values)
    }

    pub fn interpolant(&self) -> Chebyshev {
        Chebyshev::interpolate(self.lo, self.hi, &self.values)
    }

    fn coarse(&self) -> Chebyshev {
        let half: Vec<f64> = self.values.iter().step_by(2).copied().collect();
        Chebyshev::interpolate(self.lo, self.hi, &half)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// A grid-verified `(ξ, m)` lower bound: `max_{1≤j≤m} |F^{(j)}| ≥ ξ` at every check point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NondegeneracyCert {
    pub xi: f64,
    pub m: usize,
    pub lo: f64,
    pub hi: f64,
    pub check_points: usize,
    pub nodes: usize,
    pub method: String,
    /// Worst derivative error estimate over the check grid, per order.
    pub error_estimates: Vec<f64>,
}

/// Smallest `m ≤ m_max` for which the derivative bound holds on the check grid,
/// with derivatives of the Chebyshev interpolant reduced by their half-grid error.
pub fn certify_nondegeneracy(f: &NormalizedTwist, m_max: usize) -> Result<NondegeneracyCert> {
    let fine = f.interpolant();
    let coarse = f.coarse();
    let check: Vec<f64> = (0..CHECK_POINTS)
        .map(|i| f.lo + (f.hi - f.lo) * i as f64 / (CHECK_POINTS - 1) as f64)
        .collect();
    let mut lower = vec![0.0f64; CHECK_POINTS];
    let mut errors = Vec::with_capacity(m_max);
    let (mut df, mut dc) = (fine, coarse);
    for m in 1..=m_max {
        df = df.derivative();
        dc = dc.derivative();
        let vals: Vec<(f64, f64)> = check.iter().map(|&x| (df.eval(x), dc.eval(x))).collect();
        let top = vals.iter().fold(0.0f64, |t, v| t.max(v.0.abs()));
        let mut worst = 0.0f64;
        for (l, &(v, c)) in lower.iter_mut().zip(&vals) {
            let err = (v - c).abs();
            worst = worst.max(err);
            let b = v.abs() - err;
            if b > FLOOR * top {
                *l = l.max(b);
            }
        }
        errors.push(worst);
        let xi = lower.iter().copied().fold(f64::INFINITY, f64::min);
        if xi > 0.0 {
            return Ok(NondegeneracyCert {
                xi,
                m,
                lo: f.lo,
                hi: f.hi,
                check_points: CHECK_POINTS,
                nodes: f.values.len() - 1,
                method: "Chebyshev-Lobatto interpolant, half-grid error".into(),
                error_estimates: errors,
            });
        }
    }
    Err(Error::NoCertificate(m_max))
}
