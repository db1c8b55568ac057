use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ActionDerivatives, ActionFunction};
use crate::error::{Error, Result};
use crate::portrait::RegionKind;

/// One row of an action profile.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfilePoint {
    pub energy: f64,
    pub action: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl From<ActionDerivatives> for ProfilePoint {
    fn from(d: ActionDerivatives) -> Self {
        Self {
            energy: d.energy,
            action: d.action,
            d1: d.d1,
            d2: d.d2,
            d3: d.d3,
        }
    }
}

/// Action and its energy derivatives sampled on a grid of one region.
#[derive(Clone, Debug)]
pub struct ActionProfile {
    pub function: ActionFunction,
    pub points: Vec<ProfilePoint>,
}

impl ActionProfile {
    /// Evaluates the profile on `energies` in parallel; the grid must lie in
    /// the open energy interval of the region.
    pub fn build(function: ActionFunction, energies: &[f64]) -> Result<Self> {
        let points = energies
            .par_iter()
            .map(|&e| function.derivatives(e).map(ProfilePoint::from))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { function, points })
    }

    /// `count` energies spread uniformly over the open interval, shrunk by `margin`
    /// (relative to the width) at both ends.
    pub fn uniform_grid(function: &ActionFunction, count: usize, margin: f64) -> Result<Vec<f64>> {
        let r = function.region();
        if !r.e_hi.is_finite() {
            return Err(Error::Domain("uniform grid needs a bounded region".into()));
        }
        let w = r.e_hi - r.e_lo;
        let (a, b) = (r.e_lo + margin * w, r.e_hi - margin * w);
        Ok((0..count)
            .map(|i| a + (b - a) * i as f64 / (count.max(2) - 1) as f64)
            .collect())
    }

    pub fn orientation(&self) -> &'static str {
        match self.function.region().kind {
            RegionKind::OuterLower => "rotation, p < 0",
            RegionKind::OuterUpper => "rotation, p > 0",
            RegionKind::InnerOdd => "libration about a minimum",
            RegionKind::InnerEven => "libration about a well of several minima",
        }
    }

    pub fn is_monotone(&self) -> bool {
        self.points.iter().all(|p| p.d1 > 0.0)
            && self.points.windows(2).all(|w| (w[1].energy > w[0].energy) == (w[1].action > w[0].action))
    }

    pub fn twist(&self) -> Vec<(f64, f64)> {
        self.points
            .iter()
            .map(|p| (p.energy, -p.d2 / p.d1.powi(3)))
            .collect()
    }

    pub fn energy_from_action(&self, action: f64) -> Result<f64> {
        self.function.energy_from_action(action)
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["energy", "action", "dI_dE", "d2I_dE2", "d3I_dE3"])?;
        for p in &self.points {
            out.write_record(
                [p.energy, p.action, p.d1, p.d2, p.d3].map(|v| format!("{v:.17e}")),
            )?;
        }
        out.flush()?;
        Ok(())
    }
}
