use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::OneDSeries;
use crate::resonance::{enumerate_generators, Generator};
use crate::{Error, Result};

/// Default `|k|₁` cap when materializing the prototype family.
pub const PROTOTYPE_CAP: i64 = 32;

/// Rule that generated the coefficients, kept for provenance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorRule {
    /// `f = 2 Σ_{k∈G} e^{-|k|₁ s} cos(k·x)` truncated at `|k|₁ ≤ cap`.
    Prototype { cap: i64 },
}

/// A real trigonometric polynomial on the n-torus with decay weight `s`.
///
/// Modes are stored once per pair `±k` under the sign-normalized key
/// (first nonzero entry positive); `f_{-k} = conj(f_k)` is implied.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierPotential {
    n: usize,
    s: f64,
    modes: BTreeMap<Vec<i64>, Complex64>,
    generator: Option<GeneratorRule>,
}

fn sign_normalize(k: &[i64]) -> Option<(Vec<i64>, bool)> {
    let first = *k.iter().find(|&&c| c != 0)?;
    if first > 0 {
        Some((k.to_vec(), false))
    } else {
        Some((k.iter().map(|c| -c).collect(), true))
    }
}

fn l1(k: &[i64]) -> i64 {
    k.iter().map(|c| c.abs()).sum()
}

impl FourierPotential {
    /// Builds a potential from `(k, f_k)` pairs. When both `k` and `-k` are
    /// given they must be conjugate.
    pub fn new<I>(n: usize, s: f64, modes: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, Complex64)>,
    {
        if n < 2 {
            return Err(Error::Domain(format!("dimension {n} < 2")));
        }
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::Domain(format!("decay s = {s} must be positive")));
        }
        let mut map: BTreeMap<Vec<i64>, Complex64> = BTreeMap::new();
        for (k, c) in modes {
            if k.len() != n {
                return Err(Error::Domain(format!("mode {k:?} has wrong dimension")));
            }
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::Domain(format!("mode {k:?} has non-finite amplitude")));
            }
            let (key, flipped) = sign_normalize(&k)
                .ok_or_else(|| Error::Domain("coefficient at k = 0 is not allowed".into()))?;
            let val = if flipped { c.conj() } else { c };
            match map.get(&key) {
                Some(prev) if (prev - val).norm() > 1e-14 * prev.norm().max(val.norm()) => {
                    return Err(Error::Domain(format!(
                        "modes ±{key:?} violate the reality condition"
                    )));
                }
                _ => {
                    map.insert(key, val);
                }
            }
        }
        map.retain(|_, c| c.norm() > 0.0);
        Ok(Self {
            n,
            s,
            modes: map,
            generator: None,
        })
    }

    /// The prototype `2 Σ_{k∈G^n, |k|₁ ≤ cap} e^{-|k|₁ s} cos(k·x)`.
    pub fn prototype(n: usize, s: f64, cap: i64) -> Result<Self> {
        let modes = enumerate_generators(n, cap)
            .into_iter()
            .map(|g| {
                let w = (-(g.l1() as f64) * s).exp();
                (Vec::from(g), Complex64::new(w, 0.0))
            })
            .collect::<Vec<_>>();
        let mut f = Self::new(n, s, modes)?;
        f.generator = Some(GeneratorRule::Prototype { cap });
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn decay(&self) -> f64 {
        self.s
    }

    pub fn generator(&self) -> Option<&GeneratorRule> {
        self.generator.as_ref()
    }

    /// Stored sign-normalized modes.
    pub fn modes(&self) -> impl Iterator<Item = (&[i64], Complex64)> + '_ {
        self.modes.iter().map(|(k, &c)| (k.as_slice(), c))
    }

    pub fn mode_count(&self) -> usize {
        self.modes.len()
    }

    /// Largest `|k|₁` in the support.
    pub fn support_radius(&self) -> i64 {
        self.modes.keys().map(|k| l1(k)).max().unwrap_or(0)
    }

    /// `f_k` for any integer vector.
    pub fn coefficient(&self, k: &[i64]) -> Complex64 {
        match sign_normalize(k) {
            Some((key, flipped)) => {
                let c = self.modes.get(&key).copied().unwrap_or_default();
                if flipped {
                    c.conj()
                } else {
                    c
                }
            }
            None => Complex64::default(),
        }
    }

    /// `‖f‖_s = sup_k |f_k| e^{|k|₁ s}`.
    pub fn norm_s(&self) -> f64 {
        self.modes
            .iter()
            .map(|(k, c)| c.norm() * (l1(k) as f64 * self.s).exp())
            .fold(0.0, f64::max)
    }

    /// `f(x) = Σ_k f_k e^{ik·x}`.
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.modes
            .iter()
            .map(|(k, c)| {
                let phase: f64 = k.iter().zip(x).map(|(&a, &b)| a as f64 * b).sum();
                2.0 * (c * Complex64::from_polar(1.0, phase)).re
            })
            .sum()
    }

    /// The full complex sum over `±k`, exposing the imaginary residue.
    pub fn evaluate_complex(&self, x: &[f64]) -> Complex64 {
        self.modes
            .iter()
            .map(|(k, c)| {
                let phase: f64 = k.iter().zip(x).map(|(&a, &b)| a as f64 * b).sum();
                c * Complex64::from_polar(1.0, phase) + c.conj() * Complex64::from_polar(1.0, -phase)
            })
            .sum()
    }

    /// `π_Zk f (θ) = Σ_j f_{jk} e^{ijθ}`.
    pub fn project(&self, k: &Generator) -> Result<OneDSeries> {
        if k.dim() != self.n {
            return Err(Error::Domain(format!("generator {k} has wrong dimension")));
        }
        let terms = self.modes.iter().filter_map(|(m, &c)| {
            let (g, j) = Generator::decompose(m)?;
            (g == *k).then_some((j, c))
        });
        Ok(OneDSeries::new(terms))
    }

    /// Sign-normalized support grouped by resonance line.
    pub fn lines(&self) -> BTreeMap<Generator, Vec<(i64, Complex64)>> {
        let mut out: BTreeMap<Generator, Vec<(i64, Complex64)>> = BTreeMap::new();
        for (m, &c) in &self.modes {
            if let Some((g, j)) = Generator::decompose(m) {
                out.entry(g).or_default().push((j, c));
            }
        }
        out
    }

    pub fn to_doc(&self) -> PotentialDoc {
        PotentialDoc {
            n: self.n,
            s: self.s,
            modes: self
                .modes
                .iter()
                .map(|(k, c)| ModeDoc {
                    k: k.clone(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
            generator: self.generator.clone(),
        }
    }

    /// Builds from a document; a generator rule with no explicit modes is materialized.
    pub fn from_doc(doc: &PotentialDoc) -> Result<Self> {
        match (&doc.generator, doc.modes.is_empty()) {
            (Some(GeneratorRule::Prototype { cap }), true) => Self::prototype(doc.n, doc.s, *cap),
            (_, true) => Err(Error::Config("potential has no modes".into())),
            (rule, false) => {
                let mut f = Self::new(
                    doc.n,
                    doc.s,
                    doc.modes
                        .iter()
                        .map(|m| (m.k.clone(), Complex64::new(m.re, m.im))),
                )?;
                f.generator = rule.clone();
                Ok(f)
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PotentialDoc = serde_json::from_str(text)?;
        Self::from_doc(&doc)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_doc())?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Serialized form of a potential.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialDoc {
    pub n: usize,
    pub s: f64,
    #[serde(default)]
    pub modes: Vec<ModeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorRule>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeDoc {
    pub k: Vec<i64>,
    pub re: f64,
    pub im: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn single(k: Vec<i64>) -> FourierPotential {
        FourierPotential::new(2, 1.0, [(k, Complex64::new(1.0, 0.0))]).unwrap()
    }

    #[test]
    fn single_mode_values() {
        assert!((single(vec![1, 0]).evaluate(&[PI, 0.0]) + 2.0).abs() < 1e-15);
        assert!((single(vec![1, 1]).evaluate(&[PI / 2.0, PI / 2.0]) + 2.0).abs() < 1e-15);
    }

    #[test]
    fn prototype_at_origin_matches_direct_sum() {
        let f = FourierPotential::prototype(2, 1.0, 20).unwrap();
        let mut want = 0.0;
        for a in -20i64..=20 {
            for b in -20i64..=20 {
                if a.abs() + b.abs() == 0 || a.abs() + b.abs() > 20 {
                    continue;
                }
                let first = if a != 0 { a } else { b };
                let (mut x, mut y) = (a.abs(), b.abs());
                while y != 0 {
                    (x, y) = (y, x % y);
                }
                if first > 0 && x == 1 {
                    want += 2.0 * (-((a.abs() + b.abs()) as f64)).exp();
                }
            }
        }
        let got = f.evaluate(&[0.0, 0.0]);
        assert!((got - want).abs() < 1e-12);
        let longer = FourierPotential::prototype(2, 1.0, 40).unwrap().evaluate(&[0.0, 0.0]);
        assert!((got - longer).abs() < 1e-6);
    }

    #[test]
    fn prototype_projection_is_pure_cosine() {
        let f = FourierPotential::prototype(3, 0.7, 8).unwrap();
        for g in enumerate_generators(3, 8) {
            let p = f.project(&g).unwrap();
            let w = (-(g.l1() as f64) * 0.7).exp();
            assert_eq!(p.max_harmonic(), 1);
            assert!((p.coefficient(1).re - w).abs() < 1e-15);
            assert!((p.value(0.0) - 2.0 * w).abs() < 1e-15);
        }
    }

    #[test]
    fn two_harmonic_projection() {
        let f = FourierPotential::new(
            2,
            1.0,
            [
                (vec![1, 1], Complex64::new(0.3, 0.1)),
                (vec![-2, -2], Complex64::new(0.2, 0.4)),
            ],
        )
        .unwrap();
        let p = f.project(&Generator::new(vec![1, 1]).unwrap()).unwrap();
        assert_eq!(p.coefficient(1), Complex64::new(0.3, 0.1));
        assert_eq!(p.coefficient(2), Complex64::new(0.2, -0.4));
    }

    #[test]
    fn disjoint_projection_is_empty() {
        let f = single(vec![1, 0]);
        assert!(f.project(&Generator::new(vec![0, 1]).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(FourierPotential::new(2, 1.0, [(vec![0, 0], Complex64::new(1.0, 0.0))]).is_err());
        assert!(FourierPotential::new(
            2,
            1.0,
            [
                (vec![1, 0], Complex64::new(1.0, 1.0)),
                (vec![-1, 0], Complex64::new(1.0, 1.0)),
            ]
        )
        .is_err());
        assert!(FourierPotential::new(2, -1.0, std::iter::empty()).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = FourierPotential::new(
            3,
            0.5,
            [
                (vec![1, -2, 0], Complex64::new(0.25, -0.5)),
                (vec![0, 0, 3], Complex64::new(1.0, 0.0)),
            ],
        )
        .unwrap();
        let g = FourierPotential::from_json(&f.to_json().unwrap()).unwrap();
        assert_eq!(f, g);
        let proto = FourierPotential::from_json(
            r#"{"n": 2, "s": 1.0, "generator": {"kind": "prototype", "cap": 6}}"#,
        )
        .unwrap();
        assert_eq!(proto, FourierPotential::prototype(2, 1.0, 6).unwrap());
    }

    #[test]
    fn norm_of_prototype_is_one() {
        let f = FourierPotential::prototype(2, 1.3, 10).unwrap();
        assert!((f.norm_s() - 1.0).abs() < 1e-12);
    }

    fn arb_potential() -> impl Strategy<Value = FourierPotential> {
        prop::collection::vec(((-3i64..=3, -3i64..=3), -1.0..1.0f64, -1.0..1.0f64), 1..8).prop_filter_map(
            "nonzero modes",
            |v| {
                let mut seen = std::collections::BTreeSet::new();
                let modes: Vec<_> = v
                    .into_iter()
                    .filter(|((a, b), _, _)| (*a, *b) != (0, 0))
                    .filter(|((a, b), _, _)| {
                        let (k, _) = sign_normalize(&[*a, *b]).unwrap();
                        seen.insert(k)
                    })
                    .map(|((a, b), re, im)| (vec![a, b], Complex64::new(re, im)))
                    .collect();
                FourierPotential::new(2, 1.0, modes).ok()
            },
        )
    }

    proptest! {
        #[test]
        fn projector_partition(f in arb_potential(), x0 in 0.0..6.3f64, x1 in 0.0..6.3f64) {
            let radius = f.support_radius().max(1);
            let sum: f64 = enumerate_generators(2, radius)
                .iter()
                .map(|k| f.project(k).unwrap().value(k.dot(&[x0, x1])))
                .sum();
            prop_assert!((sum - f.evaluate(&[x0, x1])).abs() < 1e-12);
        }

        #[test]
        fn evaluation_is_real(f in arb_potential(), x0 in 0.0..6.3f64, x1 in 0.0..6.3f64) {
            let z = f.evaluate_complex(&[x0, x1]);
            prop_assert!(z.im.abs() < 1e-12);
            prop_assert!((z.re - f.evaluate(&[x0, x1])).abs() < 1e-12);
        }
    }
}
