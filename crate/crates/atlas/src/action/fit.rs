use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ActionFunction, Side};
use crate::error::{Error, Result};
use crate::portrait::RegionKind;

const MAX_CONDITION: f64 = 1e13;

/// Least-squares fit of `I(E∓ ± ε̄z) = φ(z) + ψ(z)·z·ln z` with
/// `deg φ = J` and `deg ψ = J − 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparatrixFit {
    pub region: usize,
    pub kind: RegionKind,
    pub side: Side,
    pub scale: f64,
    pub degree: usize,
    pub z: Vec<f64>,
    pub actions: Vec<f64>,
    pub phi: Vec<f64>,
    pub psi: Vec<f64>,
    /// Largest absolute residual on the grid.
    pub residual: f64,
    /// Condition number of the column-scaled design matrix.
    pub condition: f64,
}

impl SeparatrixFit {
    pub fn phi0(&self) -> f64 {
        self.phi[0]
    }

    pub fn psi0(&self) -> f64 {
        self.psi.first().copied().unwrap_or(0.0)
    }

    pub fn max_abs_psi(&self) -> f64 {
        self.psi.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn eval(&self, z: f64) -> f64 {
        let phi = self.phi.iter().rev().fold(0.0, |acc, c| acc * z + c);
        let psi = self.psi.iter().rev().fold(0.0, |acc, c| acc * z + c);
        phi + psi * z * z.ln()
    }

    /// Sign of `ψ(0)` required at this approach: positive at upper energies,
    /// negative at lower energies of even and outer regions. Approaches to a
    /// minimum carry no sign condition (`ψ` vanishes there).
    pub fn sign_condition_holds(&self) -> bool {
        match (self.side, self.kind) {
            (Side::Upper, _) => self.psi0() > 0.0,
            (Side::Lower, RegionKind::InnerOdd) => true,
            (Side::Lower, _) => self.psi0() < 0.0,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn basis(z: f64, degree: usize) -> impl Iterator<Item = f64> {
    let lz = z.ln();
    (0..=degree)
        .map(move |j| z.powi(j as i32))
        .chain((0..degree).map(move |j| z.powi(j as i32 + 1) * lz))
}

/// Fits the separatrix expansion on `samples` log-spaced points of `[zmin, zmax]`.
pub fn separatrix_fit(
    f: &ActionFunction,
    side: Side,
    zmin: f64,
    zmax: f64,
    degree: usize,
    samples: usize,
) -> Result<SeparatrixFit> {
    if !(zmin > 0.0 && zmax > zmin) {
        return Err(Error::Domain(format!("bad window [{zmin}, {zmax}]")));
    }
    if samples < 4 * (degree + 1) {
        return Err(Error::Domain(format!(
            "{samples} samples are too few for degree {degree}"
        )));
    }
    let width = f.region().e_hi - f.region().e_lo;
    if f.scale() * zmax >= width {
        return Err(Error::Domain(format!("z = {zmax} leaves the region")));
    }
    let z: Vec<f64> = (0..samples)
        .map(|i| (zmin.ln() + (zmax / zmin).ln() * i as f64 / (samples - 1) as f64).exp())
        .collect();
    let actions = z
        .par_iter()
        .map(|&zi| f.action_at(f.level_near(side, zi)?))
        .collect::<Result<Vec<_>>>()?;

    let cols = 2 * degree + 1;
    let mut a = DMatrix::from_fn(samples, cols, |_, _| 0.0);
    for (i, &zi) in z.iter().enumerate() {
        for (j, v) in basis(zi, degree).enumerate() {
            a[(i, j)] = v;
        }
    }
    let norms: Vec<f64> = (0..cols)
        .map(|j| a.column(j).iter().fold(0.0f64, |m, v| m.max(v.abs())))
        .collect();
    for (j, &n) in norms.iter().enumerate() {
        a.column_mut(j).scale_mut(1.0 / n);
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let condition = smax / smin;
    if !(condition < MAX_CONDITION) {
        return Err(Error::IllConditioned(format!(
            "condition {condition:e} on [{zmin}, {zmax}] with J = {degree}"
        )));
    }
    let b = DVector::from_column_slice(&actions);
    let x = svd
        .solve(&b, 0.0)
        .map_err(|e| Error::IllConditioned(e.to_string()))?;
    let residual = (&a * &x - &b).amax();
    let coef: Vec<f64> = x.iter().zip(&norms).map(|(c, n)| c / n).collect();
    Ok(SeparatrixFit {
        region: f.region().index,
        kind: f.region().kind,
        side,
        scale: f.scale(),
        degree,
        z,
        actions,
        phi: coef[..=degree].to_vec(),
        psi: coef[degree + 1..].to_vec(),
        residual,
        condition,
    })
}
