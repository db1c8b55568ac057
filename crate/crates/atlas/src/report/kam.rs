use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Inputs of the KAM smallness condition for `h(p) + f(p, q)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KamThresholdInput {
    /// `M`, sup-norm of the Hessian of `h`.
    pub m: f64,
    /// `d`, infimum of `|det ∂²h|`.
    pub d: f64,
    /// Analyticity radius in the actions.
    pub r: f64,
    /// Analyticity width in the angles.
    pub s: f64,
    pub n: usize,
    #[serde(default = "default_c_kam")]
    pub c_kam: f64,
    /// Diameter of the action domain; enters only the measure coefficient.
    #[serde(default)]
    pub diameter: f64,
    /// Size of the perturbation, when known.
    #[serde(default)]
    pub perturbation: Option<f64>,
}

fn default_c_kam() -> f64 {
    1.0
}

impl KamThresholdInput {
    pub fn validate(&self) -> Result<()> {
        let positive = [self.m, self.d, self.r, self.s, self.c_kam]
            .iter()
            .all(|v| *v > 0.0 && v.is_finite());
        if !positive || self.n < 1 || self.diameter < 0.0 {
            return Err(Error::Domain("KAM inputs must be positive".into()));
        }
        if self.d > self.m.powi(self.n as i32) {
            return Err(Error::Domain(format!(
                "d = {} exceeds M^n = {}",
                self.d,
                self.m.powi(self.n as i32)
            )));
        }
        Ok(())
    }
}

/// Threshold values, all relative to the unknown constant `C_kam`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KamThreshold {
    /// Largest admissible `|f|`: `r² d⁸ s^{4n+4} / (C M^{8n−1})`.
    pub max_perturbation: f64,
    /// `d* = d / M^n`.
    pub d_star: f64,
    /// `r* = d*² r`.
    pub r_star: f64,
    /// `C` in `meas(non-torus set) ≤ C √ε`.
    pub measure_coefficient: f64,
    /// `ε = |f|/(M r²)` and `C √ε` when a perturbation size was given.
    pub eps: Option<f64>,
    pub measure_loss: Option<f64>,
    pub admissible: Option<bool>,
}

pub fn kam_threshold(inp: &KamThresholdInput) -> Result<KamThreshold> {
    inp.validate()?;
    let n = inp.n as i32;
    let d_star = inp.d / inp.m.powi(n);
    let r_star = d_star * d_star * inp.r;
    let max_perturbation =
        inp.r * inp.r * inp.d.powi(8) * inp.s.powi(4 * n + 4) / (inp.c_kam * inp.m.powi(8 * n - 1));
    let measure_coefficient = r_star.max(inp.diameter).powi(n) * inp.c_kam
        / (d_star.powi(n + 5) * inp.s.powi(3 * (n + 1)));
    let eps = inp.perturbation.map(|f| f / (inp.m * inp.r * inp.r));
    Ok(KamThreshold {
        max_perturbation,
        d_star,
        r_star,
        measure_coefficient,
        eps,
        measure_loss: eps.map(|e| measure_coefficient * e.sqrt()),
        admissible: inp.perturbation.map(|f| f <= max_perturbation),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> KamThresholdInput {
        KamThresholdInput {
            m: 2.0,
            d: 0.5,
            r: 1.0,
            s: 1.0,
            n: 2,
            c_kam: 1.0,
            diameter: 0.0,
            perturbation: None,
        }
    }

    #[test]
    fn worked_example() {
        let t = kam_threshold(&base()).unwrap();
        assert_eq!(t.max_perturbation, 2f64.powi(-23));
    }

    #[test]
    fn homogeneity() {
        let t0 = kam_threshold(&base()).unwrap().max_perturbation;
        let t_r = kam_threshold(&KamThresholdInput { r: 2.0, ..base() }).unwrap().max_perturbation;
        assert_eq!(t_r, 4.0 * t0);
        let t_s = kam_threshold(&KamThresholdInput { s: 0.5, ..base() }).unwrap().max_perturbation;
        assert_eq!(t_s, t0 / 2f64.powi(4 * 2 + 4));
    }

    #[test]
    fn domain_violations() {
        assert!(kam_threshold(&KamThresholdInput { d: 5.0, ..base() }).is_err());
        assert!(kam_threshold(&KamThresholdInput { r: 0.0, ..base() }).is_err());
    }

    #[test]
    fn equivalent_smallness_forms() {
        let inp = KamThresholdInput {
            perturbation: Some(1e-8),
            ..base()
        };
        let t = kam_threshold(&inp).unwrap();
        let bound = t.d_star.powi(8) * inp.s.powi(12) / inp.c_kam;
        assert_eq!(t.eps.unwrap() <= bound, t.admissible.unwrap());
        assert!(((t.max_perturbation / (inp.m * inp.r * inp.r)) / bound - 1.0).abs() < 1e-12);
    }
}
