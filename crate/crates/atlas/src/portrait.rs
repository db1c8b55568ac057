//! Secular one degree of freedom systems `(1+ν) p² + G(q)` and the split of
//! their phase space into regions bounded by separatrices.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::fourier::{morse_analyze, MorseProfile, OneDSeries};
use crate::{Error, Result};

/// Characteristics `(R, r, s̄, β, ε̄, μ, κ)` of a standard form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Characteristics {
    pub big_r: f64,
    pub r: f64,
    pub s_bar: f64,
    pub beta: f64,
    pub eps_bar: f64,
    pub mu: f64,
    pub kappa: f64,
}

/// Perturbation of the reference system at a fixed transverse action.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Perturbation {
    /// `G − Ḡ`.
    pub potential: OneDSeries,
    /// `ν(q)`.
    pub kinetic: OneDSeries,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StandardForm1D {
    pub reference: OneDSeries,
    pub perturbation: Option<Perturbation>,
    pub ch: Characteristics,
}

impl StandardForm1D {
    pub fn new(reference: OneDSeries, ch: Characteristics) -> Self {
        Self {
            reference,
            perturbation: None,
            ch,
        }
    }

    pub fn with_perturbation(mut self, p: Perturbation) -> Self {
        self.perturbation = Some(p);
        self
    }

    /// `E♭ = R² + R r`.
    pub fn e_flat(&self) -> f64 {
        self.ch.big_r * self.ch.big_r + self.ch.big_r * self.ch.r
    }

    /// `G = Ḡ + (G − Ḡ)`.
    pub fn potential(&self) -> OneDSeries {
        match &self.perturbation {
            Some(p) => self.reference.add(&p.potential),
            None => self.reference.clone(),
        }
    }

    fn nu(&self, q: f64) -> f64 {
        self.perturbation.as_ref().map_or(0.0, |p| p.kinetic.value(q))
    }

    /// `H♭(p, q) = (1 + ν) p² + G(q)`.
    pub fn energy(&self, p: f64, q: f64) -> f64 {
        let g = self.reference.value(q)
            + self.perturbation.as_ref().map_or(0.0, |x| x.potential.value(q));
        (1.0 + self.nu(q)) * p * p + g
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClauseCheck {
    pub clause: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs` for upper bounds; positive when the clause holds.
    pub margin: f64,
    pub holds: bool,
}

impl ClauseCheck {
    fn at_most(clause: &str, lhs: f64, rhs: f64) -> Self {
        Self {
            clause: clause.to_string(),
            lhs,
            rhs,
            margin: rhs - lhs,
            holds: lhs <= rhs * (1.0 + 1e-12),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub clauses: Vec<ClauseCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.holds)
    }

    pub fn clause(&self, name: &str) -> Option<&ClauseCheck> {
        self.clauses.iter().find(|c| c.clause == name)
    }
}

/// Checks every inequality of the standard form; violations are data.
pub fn validate(h: &StandardForm1D) -> ValidationReport {
    let ch = &h.ch;
    let sup_ref = h.reference.sup_abs();
    let (sup_dg, sup_nu) = h
        .perturbation
        .as_ref()
        .map_or((0.0, 0.0), |p| (p.potential.sup_abs(), p.kinetic.sup_abs()));
    let morse_beta = morse_analyze(&h.reference).map(|m| m.beta).unwrap_or(0.0);
    let clauses = vec![
        ClauseCheck::at_most("sup|Gbar| <= eps_bar", sup_ref, ch.eps_bar),
        ClauseCheck::at_most("eps_bar <= r^2/2^16", ch.eps_bar, ch.r * ch.r / 65536.0),
        ClauseCheck::at_most("sup|G - Gbar| <= eps_bar mu", sup_dg, ch.eps_bar * ch.mu),
        ClauseCheck::at_most("sup|nu| <= mu", sup_nu, ch.mu),
        ClauseCheck::at_most("mu < 1", ch.mu, 1.0 - f64::EPSILON),
        ClauseCheck::at_most("1/kappa <= s_bar", 1.0 / ch.kappa, ch.s_bar),
        ClauseCheck::at_most("s_bar <= 1", ch.s_bar, 1.0),
        ClauseCheck::at_most("1 <= R/r", 1.0, ch.big_r / ch.r),
        ClauseCheck::at_most("R/r <= kappa", ch.big_r / ch.r, ch.kappa),
        ClauseCheck::at_most("1/2 <= eps_bar/beta", 0.5, ch.eps_bar / ch.beta),
        ClauseCheck::at_most("eps_bar/beta <= kappa", ch.eps_bar / ch.beta, ch.kappa),
        ClauseCheck::at_most("beta <= Morse constant of Gbar", ch.beta, morse_beta),
    ];
    ValidationReport { clauses }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionKind {
    OuterLower,
    OuterUpper,
    InnerOdd,
    InnerEven,
}

/// One connected component of the phase space between separatrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub index: usize,
    pub kind: RegionKind,
    pub e_lo: f64,
    pub e_hi: f64,
    pub j_minus: Option<usize>,
    pub j_plus: Option<usize>,
    /// Monotone brackets `(θ_a, θ_b)` holding the left and right turning points.
    pub left: Option<(f64, f64)>,
    pub right: Option<(f64, f64)>,
    /// Critical points inside the orbit span (all of them for outer regions).
    pub interior: Vec<f64>,
}

impl Region {
    pub fn is_inner(&self) -> bool {
        matches!(self.kind, RegionKind::InnerOdd | RegionKind::InnerEven)
    }

    pub fn contains(&self, e: f64) -> bool {
        e > self.e_lo && e < self.e_hi
    }
}

/// Critical data and regions of a one degree of freedom system.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Portrait {
    pub potential: OneDSeries,
    pub morse: MorseProfile,
    pub e_flat: f64,
    pub regions: Vec<Region>,
}

impl Portrait {
    /// Portrait of `p² + g(q)` with outer regions up to `e_flat`
    /// (use `f64::INFINITY` for unbounded outer regions).
    pub fn of_potential(g: &OneDSeries, e_flat: f64) -> Result<Self> {
        let morse = morse_analyze(g)?;
        if !(e_flat > morse.value(0)) {
            return Err(Error::Hypothesis(format!(
                "E♭ = {e_flat} does not exceed the top critical value {}",
                morse.value(0)
            )));
        }
        let regions = regions_of(&morse, e_flat);
        Ok(Self {
            potential: g.clone(),
            morse,
            e_flat,
            regions,
        })
    }

    pub fn region(&self, i: usize) -> &Region {
        &self.regions[i]
    }

    /// Regions whose open energy interval contains `e`.
    pub fn regions_at_energy(&self, e: f64) -> Vec<usize> {
        self.regions
            .iter()
            .filter(|r| r.contains(e))
            .map(|r| r.index)
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Level-line drawing of the portrait: separatrices and a few orbits per region.
    pub fn to_svg(&self, p_max: f64) -> String {
        let (w, h) = (640.0, 400.0);
        let theta0 = self.morse.theta(0);
        let sx = |q: f64| (q - theta0) / TAU * w;
        let sy = |p: f64| h / 2.0 - p / p_max * (h / 2.0 - 10.0);
        let mut svg = String::new();
        let _ = writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        );
        let _ = writeln!(svg, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
        let mut levels: Vec<(f64, &str)> = self.morse.values().into_iter().map(|e| (e, "#c0392b")).collect();
        for r in &self.regions {
            let top = if r.e_hi.is_finite() { r.e_hi } else { r.e_lo + 2.0 * self.morse.sup_abs.max(1e-300) };
            for f in [0.25, 0.5, 0.75] {
                levels.push((r.e_lo + f * (top - r.e_lo), "#2c3e50"));
            }
        }
        let m = 720;
        for (e, color) in levels {
            for sign in [1.0, -1.0] {
                let mut path = String::new();
                let mut pen = false;
                for i in 0..=m {
                    let q = theta0 + TAU * i as f64 / m as f64;
                    let d = e - self.potential.value(q);
                    if d < 0.0 {
                        pen = false;
                        continue;
                    }
                    let p = sign * d.sqrt();
                    let _ = write!(path, "{}{:.2},{:.2} ", if pen { "L" } else { "M" }, sx(q), sy(p));
                    pen = true;
                }
                if !path.is_empty() {
                    let _ = writeln!(
                        svg,
                        r#"<path d="{}" fill="none" stroke="{color}" stroke-width="1"/>"#,
                        path.trim_end()
                    );
                }
            }
        }
        svg.push_str("</svg>\n");
        svg
    }
}

fn regions_of(m: &MorseProfile, e_flat: f64) -> Vec<Region> {
    let two_n = m.count();
    let big_n = two_n / 2;
    let e = |i: usize| m.value(i);
    let th = |i: usize| m.theta(i);
    let all_interior: Vec<f64> = (0..two_n).map(th).collect();
    let mut regions = Vec::with_capacity(two_n + 1);
    for i in 0..=two_n {
        let region = if i == 0 || i == two_n {
            Region {
                index: i,
                kind: if i == 0 {
                    RegionKind::OuterLower
                } else {
                    RegionKind::OuterUpper
                },
                e_lo: e(0),
                e_hi: e_flat,
                j_minus: None,
                j_plus: None,
                left: None,
                right: None,
                interior: all_interior.clone(),
            }
        } else if i % 2 == 1 {
            Region {
                index: i,
                kind: RegionKind::InnerOdd,
                e_lo: e(i),
                e_hi: e(i - 1).min(e(i + 1)),
                j_minus: None,
                j_plus: None,
                left: Some((th(i - 1), th(i))),
                right: Some((th(i), th(i + 1))),
                interior: vec![th(i)],
            }
        } else {
            let j = i / 2;
            let jm = (0..j).rev().find(|&l| e(2 * l) > e(i)).unwrap_or(0);
            let jp = (j + 1..=big_n).find(|&l| e(2 * l) > e(i)).unwrap_or(big_n);
            Region {
                index: i,
                kind: RegionKind::InnerEven,
                e_lo: e(i),
                e_hi: e(2 * jm).min(e(2 * jp)),
                j_minus: Some(jm),
                j_plus: Some(jp),
                left: Some((th(2 * jm), th(2 * jm + 1))),
                right: Some((th(2 * jp - 1), th(2 * jp))),
                interior: (2 * jm + 1..2 * jp).map(th).collect(),
            }
        };
        regions.push(region);
    }
    regions
}

/// Splits the phase space of a standard form into its `2N + 1` regions.
pub fn decompose(h: &StandardForm1D) -> Result<Portrait> {
    Portrait::of_potential(&h.potential(), h.e_flat())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContainmentReport {
    pub inner_box: f64,
    pub outer_box: f64,
    pub inner_holds: bool,
    pub outer_holds: bool,
    /// Range of `|p|` along the level set `H♭ = E♭`.
    pub level_min: f64,
    pub level_max: f64,
    pub grid: usize,
}

/// Grid check of `(−R−r/3, R+r/3)×T ⊆ {H♭ < E♭} ⊆ (−R−r/2, R+r/2)×T`.
pub fn phase_bounds(h: &StandardForm1D, grid: usize) -> Result<ContainmentReport> {
    let ch = &h.ch;
    if !(ch.r > 0.0 && ch.big_r > 0.0) {
        return Err(Error::Hypothesis("radii must be positive".into()));
    }
    if !(ch.kappa > 0.0) || ch.mu > 1.0 / (4.0 * ch.kappa).powi(2) {
        return Err(Error::Hypothesis(format!(
            "μ = {} exceeds 1/(4κ)² = {}",
            ch.mu,
            1.0 / (4.0 * ch.kappa).powi(2)
        )));
    }
    let ef = h.e_flat();
    let inner = ch.big_r + ch.r / 3.0;
    let outer = ch.big_r + ch.r / 2.0;
    let qs: Vec<f64> = (0..grid).map(|j| TAU * j as f64 / grid as f64).collect();
    let mut inner_holds = true;
    for i in 0..grid {
        let p = -inner + (i as f64 + 0.5) * 2.0 * inner / grid as f64;
        inner_holds &= qs.iter().all(|&q| h.energy(p, q) < ef);
    }
    let outer_holds = qs
        .iter()
        .all(|&q| h.energy(outer, q) >= ef && h.energy(-outer, q) >= ef);
    let g = h.potential();
    let levels: Vec<f64> = qs
        .iter()
        .map(|&q| ((ef - g.value(q)) / (1.0 + h.nu(q))).max(0.0).sqrt())
        .collect();
    Ok(ContainmentReport {
        inner_box: inner,
        outer_box: outer,
        inner_holds,
        outer_holds,
        level_min: levels.iter().copied().fold(f64::INFINITY, f64::min),
        level_max: levels.iter().copied().fold(0.0, f64::max),
        grid,
    })
}
