use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::kam::KamThresholdInput;
use crate::error::{Error, Result};
use crate::fourier::{FourierPotential, PotentialDoc};

pub const SCHEMA_VERSION: u32 = 1;

/// Where the potential comes from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialSource {
    Inline(PotentialDoc),
    /// Path to a potential JSON document, relative to the config file.
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenericitySection {
    pub delta: f64,
    pub beta: f64,
    pub k_max: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoveringSection {
    /// Values of `ε` for the zone table and the scaling study.
    pub eps: Vec<f64>,
    pub k0: i64,
    pub k: i64,
    /// Exponent `ν` of `α = √ε K^ν`; defaults to `9n/2 + 2`.
    #[serde(default)]
    pub alpha_exponent: Option<f64>,
    /// Transverse multiplier; defaults to 3.
    #[serde(default)]
    pub threshold: Option<f64>,
    /// Monte Carlo samples per `ε` in the scaling study.
    pub samples: u64,
    /// Samples per `ε` for the zone fraction table.
    pub zone_samples: u64,
    /// Constant of the measure bound; defaults to `c₂ = 4 n^{3/2} c₁`.
    #[serde(default)]
    pub c2: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitSection {
    pub zmin: f64,
    pub zmax: f64,
    pub degree: usize,
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistSection {
    pub lo: f64,
    pub hi: f64,
    pub nodes: usize,
    pub m_max: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OneDSection {
    /// `ε` in the reference potentials `(2ε/|k|²) π_Zk f`.
    pub eps: f64,
    /// Generators with `|k|₁` up to this cut-off are analysed.
    pub k_max: i64,
    /// Cap on the number of generators analysed.
    pub max_generators: usize,
    pub profile_points: usize,
    pub fit: FitSection,
    /// Fit used at approaches to a minimum.
    pub minimum_fit: FitSection,
    pub twist: TwistSection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetSection {
    pub eps: f64,
    pub c: f64,
    /// `c₂` in the resonant term `(2π)^n c₂ ε K^γ`.
    pub c2: f64,
    pub a: f64,
    pub ks: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudyConfig {
    pub schema_version: u32,
    #[serde(default)]
    pub name: String,
    pub potential: PotentialSource,
    #[serde(default)]
    pub genericity: Option<GenericitySection>,
    #[serde(default)]
    pub covering: Option<CoveringSection>,
    #[serde(default)]
    pub oned: Option<OneDSection>,
    #[serde(default)]
    pub budget: Option<BudgetSection>,
    #[serde(default)]
    pub kam: Option<KamThresholdInput>,
    pub seed: u64,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

impl StudyConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let c: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    /// Reads a config and resolves a file potential relative to its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let mut c = Self::from_json(&text)?;
        if let PotentialSource::File(p) = &c.potential {
            if p.is_relative() {
                let base = path.parent().unwrap_or(Path::new("."));
                c.potential = PotentialSource::File(base.join(p));
            }
        }
        if let PotentialSource::File(p) = &c.potential {
            if !p.exists() {
                return Err(Error::Config(format!("potential file {} not found", p.display())));
            }
        }
        Ok(c)
    }

    pub fn potential(&self) -> Result<FourierPotential> {
        match &self.potential {
            PotentialSource::Inline(doc) => FourierPotential::from_doc(doc),
            PotentialSource::File(p) => FourierPotential::load(p),
        }
        .map_err(|e| Error::Config(format!("potential: {e}")))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.schema_version != SCHEMA_VERSION {
            return bad(format!("schema_version {} (expected {SCHEMA_VERSION})", self.schema_version));
        }
        if let Some(g) = &self.genericity {
            if !(g.delta > 0.0 && g.delta <= 1.0 && g.beta > 0.0 && g.k_max >= 1) {
                return bad("genericity needs 0 < delta ≤ 1, beta > 0, k_max ≥ 1".into());
            }
        }
        if let Some(c) = &self.covering {
            if self.genericity.is_none() {
                return bad("covering needs the genericity block for (δ, β)".into());
            }
            if c.eps.is_empty() || c.eps.iter().any(|e| !(*e > 0.0)) {
                return bad("covering.eps must be positive".into());
            }
            if c.samples == 0 || c.zone_samples == 0 {
                return bad("covering sample counts must be positive".into());
            }
        }
        if let Some(o) = &self.oned {
            for f in [&o.fit, &o.minimum_fit] {
                if !(f.zmin > 0.0 && f.zmax > f.zmin) {
                    return bad("fit windows need 0 < zmin < zmax".into());
                }
            }
            if !(o.eps > 0.0) || o.profile_points < 2 {
                return bad("oned needs eps > 0 and at least 2 profile points".into());
            }
            let t = &o.twist;
            if !(0.0 < t.lo && t.lo < t.hi && t.hi < 1.0) || t.m_max == 0 {
                return bad("twist needs 0 < lo < hi < 1 and m_max ≥ 1".into());
            }
        }
        if let Some(k) = &self.kam {
            k.validate().map_err(|e| Error::Config(e.to_string()))?;
        }
        Ok(())
    }
}
