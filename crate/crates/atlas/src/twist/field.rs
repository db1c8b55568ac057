use std::io::Write;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::action::ActionProfile;
use crate::error::{Error, Result};

/// Perturbation of the secular Hessian, given as a callback of the action
/// `I₁` together with a declared bound on its entries.
pub struct MuCorrection<'a> {
    pub hessian: Box<dyn Fn(f64) -> DMatrix<f64> + Sync + 'a>,
    pub sup_norm: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistPoint {
    pub action: f64,
    pub energy: f64,
    /// `∂²E/∂I₁²`.
    pub energy_twist: f64,
    pub transverse_det: f64,
    /// `det ∂²h` including corrections when supplied.
    pub det: f64,
    /// Half-width of the enclosure of the bordered correction.
    pub bordered_bound: f64,
}

/// `det ∂²_I h` for `h = E(I₁) + ĥ(Î)` over the grid of an action profile.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistField {
    pub region: usize,
    pub transverse: Vec<Vec<f64>>,
    pub points: Vec<TwistPoint>,
}

fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    m.clone().singular_values().max()
}

pub fn twist_field(
    profile: &ActionProfile,
    transverse: &DMatrix<f64>,
    mu: Option<&MuCorrection<'_>>,
) -> Result<TwistField> {
    if !transverse.is_square() || transverse.nrows() == 0 {
        return Err(Error::Domain("transverse Hessian must be square".into()));
    }
    if transverse.clone().cholesky().is_none() {
        return Err(Error::Hypothesis("transverse form is not positive definite".into()));
    }
    let n = transverse.nrows() + 1;
    let tdet = transverse.determinant();
    let points = profile
        .points
        .iter()
        .map(|p| {
            let e2 = -p.d2 / p.d1.powi(3);
            let mut a = DMatrix::zeros(n, n);
            a[(0, 0)] = e2;
            a.view_mut((1, 1), (n - 1, n - 1)).copy_from(transverse);
            let (det, bordered_bound) = match mu {
                None => (e2 * tdet, 0.0),
                Some(c) => {
                    let b = (c.hessian)(p.action);
                    if b.shape() != (n, n) {
                        return Err(Error::Domain("correction has the wrong shape".into()));
                    }
                    let nb = n as f64 * c.sup_norm;
                    let na = spectral_norm(&a);
                    let bound = n as f64 * nb * (na + nb).powi(n as i32 - 1);
                    ((a + b).determinant(), bound)
                }
            };
            Ok(TwistPoint {
                action: p.action,
                energy: p.energy,
                energy_twist: e2,
                transverse_det: tdet,
                det,
                bordered_bound,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TwistField {
        region: profile.function.region().index,
        transverse: transverse.row_iter().map(|r| r.iter().copied().collect()).collect(),
        points,
    })
}

impl TwistField {
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["action", "energy", "d2E_dI2", "transverse_det", "det", "bordered_bound"])?;
        for p in &self.points {
            out.write_record(
                [p.action, p.energy, p.energy_twist, p.transverse_det, p.det, p.bordered_bound]
                    .map(|v| format!("{v:.17e}")),
            )?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Outcome of `det(P + Q) ≥ (1 − λ)^d det P` with `λ = ‖P⁻¹‖‖Q‖`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PdDetCheck {
    pub lambda: f64,
    pub det_p: f64,
    pub det_sum: f64,
    pub lower: f64,
    pub holds: bool,
}

pub fn pd_det_bound(p: &DMatrix<f64>, q: &DMatrix<f64>) -> Result<PdDetCheck> {
    if p.shape() != q.shape() || !p.is_square() {
        return Err(Error::Domain("P and Q must be square of equal size".into()));
    }
    let cp = p
        .clone()
        .cholesky()
        .ok_or_else(|| Error::Hypothesis("P is not positive definite".into()))?;
    if q.clone().cholesky().is_none() {
        return Err(Error::Hypothesis("Q is not positive definite".into()));
    }
    let lambda = spectral_norm(&cp.inverse()) * spectral_norm(q);
    if !(lambda < 1.0) {
        return Err(Error::Hypothesis(format!("λ = {lambda} is not below 1")));
    }
    let d = p.nrows() as i32;
    let det_p = p.determinant();
    let det_sum = (p + q).determinant();
    let lower = (1.0 - lambda).powi(d) * det_p;
    Ok(PdDetCheck {
        lambda,
        det_p,
        det_sum,
        lower,
        holds: det_sum >= lower,
    })
}
