use serde::{Deserialize, Serialize};

use super::{enumerate_generators, Generator};
use crate::{Error, Result};

/// Cut-offs and thresholds of the resonance covering.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoveringParams {
    pub n: usize,
    pub eps: f64,
    pub k0: i64,
    pub k: i64,
    /// Exponent `ν` in `α = √ε K^ν`.
    pub nu: f64,
    /// Multiplier `m` of the transverse threshold `m α K / |k|`.
    pub threshold: f64,
}

impl CoveringParams {
    /// Parameters with `ν = 9n/2 + 2` and transverse multiplier 3.
    pub fn new(n: usize, eps: f64, k0: i64, k: i64) -> Result<Self> {
        let p = Self {
            n,
            eps,
            k0,
            k,
            nu: Self::default_nu(n),
            threshold: 3.0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn default_nu(n: usize) -> f64 {
        4.5 * n as f64 + 2.0
    }

    pub fn with_alpha_exponent(mut self, nu: f64) -> Self {
        self.nu = nu;
        self
    }

    pub fn with_threshold(mut self, m: f64) -> Self {
        self.threshold = m;
        self
    }

    pub fn with_eps(&self, eps: f64) -> Self {
        Self { eps, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Domain(format!("n = {} < 2", self.n)));
        }
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(Error::Domain(format!("ε = {} must be positive", self.eps)));
        }
        if self.k0 < 2 {
            return Err(Error::Domain(format!("K₀ = {} < 2", self.k0)));
        }
        if self.k < 6 * self.k0 {
            return Err(Error::Domain(format!("K = {} < 6 K₀ = {}", self.k, 6 * self.k0)));
        }
        if !(self.threshold > 0.0) {
            return Err(Error::Domain("transverse multiplier must be positive".into()));
        }
        Ok(())
    }

    pub fn alpha(&self) -> f64 {
        self.eps.sqrt() * (self.k as f64).powf(self.nu)
    }

    /// `γ = 11n + 4`.
    pub fn gamma(&self) -> f64 {
        11.0 * self.n as f64 + 4.0
    }

    /// `r_o = α / (16 K₀)`.
    pub fn r_o(&self) -> f64 {
        self.alpha() / (16.0 * self.k0 as f64)
    }

    /// `r_k = α / |k|`.
    pub fn r_k(&self, k: &Generator) -> f64 {
        self.alpha() / k.norm()
    }

    /// `c₁ = 5n (n−1)^{(n−1)/2}`.
    pub fn c1(&self) -> f64 {
        covering_c1(self.n)
    }

    /// `c₂ = 4 n^{3/2} c₁`.
    pub fn c2(&self) -> f64 {
        covering_c2(self.n)
    }

    /// `c₂ ε K^γ`.
    pub fn measure_bound(&self) -> f64 {
        self.c2() * self.eps * (self.k as f64).powf(self.gamma())
    }
}

pub fn covering_c1(n: usize) -> f64 {
    let m = n as f64 - 1.0;
    5.0 * n as f64 * m.powf(m / 2.0)
}

pub fn covering_c2(n: usize) -> f64 {
    4.0 * (n as f64).powf(1.5) * covering_c1(n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Zone {
    NonResonant,
    SimplyResonant(Generator),
    DoublyResonant,
}

impl Zone {
    pub fn tag(&self) -> &'static str {
        match self {
            Zone::NonResonant => "R0",
            Zone::SimplyResonant(_) => "R1",
            Zone::DoublyResonant => "R2",
        }
    }
}

/// Classification of one action point with the inequalities that decided it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZoneLabel {
    pub zone: Zone,
    /// All `k` for which the simple-resonance inequalities hold.
    pub qualifying: Vec<Generator>,
    /// The generator whose inequalities are reported below.
    pub witness: Option<Generator>,
    /// `min_k |y·k| − α/2` for non-resonant points, otherwise `α − |y·k|` at the witness.
    pub resonance_margin: f64,
    /// `min_ℓ |P⊥_k y·ℓ| − m α K/|k|` at the witness.
    pub transverse_margin: Option<f64>,
}

/// Precomputed generator sets for repeated classification.
#[derive(Clone, Debug)]
pub struct Covering {
    params: CoveringParams,
    alpha: f64,
    low: Vec<Generator>,
    low_f: Vec<Vec<f64>>,
    high_f: Vec<Vec<f64>>,
    /// `k·ℓ / |k|²` for every low `k` and high `ℓ`; `NaN` marks `ℓ = k`.
    cross: Vec<Vec<f64>>,
}

impl Covering {
    pub fn new(params: CoveringParams) -> Result<Self> {
        params.validate()?;
        let low = enumerate_generators(params.n, params.k0);
        let high = enumerate_generators(params.n, params.k);
        let to_f = |g: &Generator| g.as_slice().iter().map(|&c| c as f64).collect::<Vec<_>>();
        let low_f: Vec<Vec<f64>> = low.iter().map(to_f).collect();
        let high_f: Vec<Vec<f64>> = high.iter().map(to_f).collect();
        let cross = low
            .iter()
            .map(|k| {
                high.iter()
                    .map(|l| {
                        if l == k {
                            f64::NAN
                        } else {
                            let d: i64 = k.as_slice().iter().zip(l.as_slice()).map(|(a, b)| a * b).sum();
                            d as f64 / k.norm_sq()
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            alpha: params.alpha(),
            params,
            low,
            low_f,
            high_f,
            cross,
        })
    }

    pub fn params(&self) -> &CoveringParams {
        &self.params
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn low_generators(&self) -> &[Generator] {
        &self.low
    }

    fn dot(a: &[f64], y: &[f64]) -> f64 {
        a.iter().zip(y).map(|(a, b)| a * b).sum()
    }

    /// `min_ℓ |P⊥_k y·ℓ|` over `ℓ ∈ G_K \ Zk`, stopping early once below `stop`.
    fn transverse_min(&self, i: usize, yk: f64, yl: &[f64], stop: f64) -> f64 {
        let mut best = f64::INFINITY;
        for (j, &c) in self.cross[i].iter().enumerate() {
            if c.is_nan() {
                continue;
            }
            let v = (yl[j] - yk * c).abs();
            if v < best {
                best = v;
                if best <= stop {
                    break;
                }
            }
        }
        best
    }

    fn check_ball(&self, y: &[f64]) -> Result<()> {
        let r = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if y.len() != self.params.n {
            return Err(Error::Domain(format!("point of dimension {}", y.len())));
        }
        if r >= 1.0 {
            return Err(Error::OutsideBall(r));
        }
        Ok(())
    }

    /// Fast membership test for the doubly-resonant set.
    pub fn is_doubly_resonant(&self, y: &[f64]) -> bool {
        let a = self.alpha;
        let mut non_resonant = true;
        let mut yl: Option<Vec<f64>> = None;
        for (i, k) in self.low_f.iter().enumerate() {
            let yk = Self::dot(k, y);
            if yk.abs() <= 0.5 * a {
                non_resonant = false;
            }
            if yk.abs() < a {
                let yl = yl.get_or_insert_with(|| self.high_f.iter().map(|l| Self::dot(l, y)).collect());
                let thr = self.params.threshold * a * self.params.k as f64 / self.low[i].norm();
                if self.transverse_min(i, yk, yl, thr) > thr {
                    return false;
                }
            }
        }
        !non_resonant
    }

    pub fn classify(&self, y: &[f64]) -> Result<ZoneLabel> {
        self.check_ball(y)?;
        let a = self.alpha;
        let yk: Vec<f64> = self.low_f.iter().map(|k| Self::dot(k, y)).collect();
        let (imin, &ymin) = yk
            .iter()
            .enumerate()
            .min_by(|x, z| x.1.abs().total_cmp(&z.1.abs()))
            .expect("K₀ ≥ 2 gives generators");
        if ymin.abs() > 0.5 * a {
            return Ok(ZoneLabel {
                zone: Zone::NonResonant,
                qualifying: Vec::new(),
                witness: Some(self.low[imin].clone()),
                resonance_margin: ymin.abs() - 0.5 * a,
                transverse_margin: None,
            });
        }
        let yl: Vec<f64> = self.high_f.iter().map(|l| Self::dot(l, y)).collect();
        let mut qualifying = Vec::new();
        let mut first: Option<(usize, f64)> = None;
        for (i, &v) in yk.iter().enumerate() {
            if v.abs() >= a {
                continue;
            }
            let thr = self.params.threshold * a * self.params.k as f64 / self.low[i].norm();
            let t = self.transverse_min(i, v, &yl, f64::NEG_INFINITY);
            if t > thr {
                qualifying.push(self.low[i].clone());
                if first.is_none() {
                    first = Some((i, t - thr));
                }
            }
        }
        if let Some((i, margin)) = first {
            return Ok(ZoneLabel {
                zone: Zone::SimplyResonant(self.low[i].clone()),
                qualifying,
                witness: Some(self.low[i].clone()),
                resonance_margin: a - yk[i].abs(),
                transverse_margin: Some(margin),
            });
        }
        let thr = self.params.threshold * a * self.params.k as f64 / self.low[imin].norm();
        let t = self.transverse_min(imin, ymin, &yl, f64::NEG_INFINITY);
        Ok(ZoneLabel {
            zone: Zone::DoublyResonant,
            qualifying,
            witness: Some(self.low[imin].clone()),
            resonance_margin: a - ymin.abs(),
            transverse_margin: Some(t - thr),
        })
    }

    /// Writes labelled points as CSV rows: coordinates, label, witness, margins.
    pub fn write_csv<W: std::io::Write>(&self, points: &[Vec<f64>], out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<String> = (1..=self.params.n).map(|i| format!("y{i}")).collect();
        header.extend(
            ["label", "witness", "resonance_margin", "transverse_margin"]
                .iter()
                .map(|s| s.to_string()),
        );
        w.write_record(&header)?;
        for y in points {
            let label = self.classify(y)?;
            let mut row: Vec<String> = y.iter().map(|v| format!("{v:e}")).collect();
            row.push(label.zone.tag().to_string());
            row.push(label.witness.as_ref().map(|g| g.to_string()).unwrap_or_default());
            row.push(format!("{:e}", label.resonance_margin));
            row.push(label.transverse_margin.map(|m| format!("{m:e}")).unwrap_or_default());
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}
