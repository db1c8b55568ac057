//! Action functions `I(E)` of the regions of `p² + g(q)`, their inverses,
//! energy derivatives and separatrix expansions.

mod fit;
mod profile;
pub mod quad;

pub use fit::{separatrix_fit, SeparatrixFit};
pub use profile::{ActionProfile, ProfilePoint};

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{MorseProfile, OneDSeries};
use crate::portrait::{Portrait, Region, RegionKind};
use crate::roots::safeguarded_newton;

const REL_TOL: f64 = 1e-13;
const MAX_INTERVALS: usize = 4000;
const REPORT_TOL: f64 = 1e-10;
const DERIV_TOL: f64 = 1e-6;

/// Approach to the lower or the upper critical energy of a region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lower,
    Upper,
}

/// Energy `E_k + delta` anchored at the critical point `k`.
///
/// Keeping the offset separate preserves its relative precision when the
/// level sits within a few ulps of a critical value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Level {
    pub reference: usize,
    pub delta: f64,
}

/// Energy derivatives of the action at one level.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ActionDerivatives {
    pub energy: f64,
    pub action: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

#[derive(Clone, Copy, Debug)]
enum Node {
    Critical(usize),
    Turning(f64),
}

#[derive(Clone, Debug)]
struct Layout {
    lo: usize,
    hi: Option<usize>,
    left: Option<(usize, usize)>,
    right: Option<(usize, usize)>,
    interior: Vec<usize>,
}

impl Layout {
    fn of(region: &Region, m: &MorseProfile) -> Self {
        let i = region.index;
        let two_n = m.count();
        match region.kind {
            RegionKind::OuterLower | RegionKind::OuterUpper => Layout {
                lo: 0,
                hi: None,
                left: None,
                right: None,
                interior: (0..=two_n).collect(),
            },
            RegionKind::InnerOdd => Layout {
                lo: i,
                hi: Some(if m.value(i - 1) <= m.value(i + 1) { i - 1 } else { i + 1 }),
                left: Some((i - 1, i)),
                right: Some((i, i + 1)),
                interior: vec![i],
            },
            RegionKind::InnerEven => {
                let jm = region.j_minus.unwrap_or(0);
                let jp = region.j_plus.unwrap_or(two_n / 2);
                let (a, b) = (2 * jm, 2 * jp);
                Layout {
                    lo: i,
                    hi: Some(if m.value(a) <= m.value(b) { a } else { b }),
                    left: Some((a, a + 1)),
                    right: Some((b - 1, b)),
                    interior: (a + 1..b).collect(),
                }
            }
        }
    }
}

/// The quadrature-backed action function of one region.
#[derive(Clone, Debug)]
pub struct ActionFunction {
    potential: OneDSeries,
    morse: MorseProfile,
    region: Region,
    layout: Layout,
    scale: f64,
}

impl ActionFunction {
    pub fn new(portrait: &Portrait, index: usize) -> Result<Self> {
        let region = portrait
            .regions
            .get(index)
            .cloned()
            .ok_or_else(|| Error::Domain(format!("no region {index}")))?;
        let layout = Layout::of(&region, &portrait.morse);
        Ok(Self {
            potential: portrait.potential.clone(),
            morse: portrait.morse.clone(),
            scale: portrait.morse.sup_abs,
            region,
            layout,
        })
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    /// `ε̄ = sup |g|`, the normalizer of the separatrix variable `z`.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn is_inner(&self) -> bool {
        self.region.is_inner()
    }

    fn crit_value(&self, k: usize) -> f64 {
        self.morse.value(k)
    }

    fn crit_theta(&self, k: usize) -> f64 {
        self.morse.theta(k)
    }

    /// `E − E_k` for the level.
    fn offset(&self, level: Level, k: usize) -> f64 {
        let m = self.morse.count();
        if k % m == level.reference % m {
            level.delta
        } else {
            (self.crit_value(level.reference) - self.crit_value(k)) + level.delta
        }
    }

    pub fn energy(&self, level: Level) -> f64 {
        self.crit_value(level.reference) + level.delta
    }

    /// Anchors `e` at the nearer of the region's critical energies.
    pub fn level(&self, e: f64) -> Level {
        let lo = self.layout.lo;
        let reference = match self.layout.hi {
            Some(hi) if (e - self.crit_value(hi)).abs() < (e - self.crit_value(lo)).abs() => hi,
            _ => lo,
        };
        Level {
            reference,
            delta: e - self.crit_value(reference),
        }
    }

    /// The level `E∓ ± ε̄ z`.
    pub fn level_near(&self, side: Side, z: f64) -> Result<Level> {
        match side {
            Side::Lower => Ok(Level {
                reference: self.layout.lo,
                delta: self.scale * z,
            }),
            Side::Upper => self
                .layout
                .hi
                .map(|hi| Level {
                    reference: hi,
                    delta: -self.scale * z,
                })
                .ok_or_else(|| Error::Domain("outer regions have no upper critical energy".into())),
        }
    }

    fn check(&self, level: Level, closed: bool) -> Result<()> {
        let above = self.offset(level, self.layout.lo);
        let below = match self.layout.hi {
            Some(hi) => -self.offset(level, hi),
            None => self.region.e_hi - self.energy(level),
        };
        let ok = if closed {
            above >= 0.0 && below >= 0.0
        } else {
            above > 0.0 && below > 0.0
        };
        if ok && above.is_finite() {
            Ok(())
        } else {
            Err(Error::EnergyOutOfRange {
                energy: self.energy(level),
                lo: self.region.e_lo,
                hi: self.region.e_hi,
            })
        }
    }

    fn turning(&self, level: Level, (a, b): (usize, usize)) -> Result<f64> {
        let anchor = if self.offset(level, a).abs() <= self.offset(level, b).abs() {
            a
        } else {
            b
        };
        let (ta, off) = (self.crit_theta(anchor), self.offset(level, anchor));
        let g = &self.potential;
        let fdf = |q: f64| (off - g.increment(ta, q - ta), -g.derivative(q, 1));
        safeguarded_newton(fdf, self.crit_theta(a), self.crit_theta(b), 1e-15)
            .ok_or_else(|| Error::Bracketing(self.energy(level)))
    }

    fn nodes(&self, level: Level) -> Result<Vec<Node>> {
        let mut nodes = Vec::with_capacity(self.layout.interior.len() + 2);
        if let Some(br) = self.layout.left {
            nodes.push(Node::Turning(self.turning(level, br)?));
        }
        nodes.extend(self.layout.interior.iter().map(|&k| Node::Critical(k)));
        if let Some(br) = self.layout.right {
            nodes.push(Node::Turning(self.turning(level, br)?));
        }
        Ok(nodes)
    }

    fn position(&self, node: Node) -> f64 {
        match node {
            Node::Critical(k) => self.crit_theta(k),
            Node::Turning(q) => q,
        }
    }

    /// `∫ (E − g)^p dq` over the orbit, split at the nodes and halved between
    /// neighbours so that each half is parametrized from its nearer node.
    fn orbit_integral(&self, level: Level, p: f64) -> Result<f64> {
        let nodes = self.nodes(level)?;
        let g = &self.potential;
        let mut total = 0.0;
        let mut error = 0.0;
        for pair in nodes.windows(2) {
            let (qa, qb) = (self.position(pair[0]), self.position(pair[1]));
            let half = 0.5 * (qb - qa);
            if half <= 0.0 {
                continue;
            }
            for (node, dir) in [(pair[0], 1.0), (pair[1], -1.0)] {
                let q = match node {
                    Node::Critical(k) => {
                        let (t, off) = (self.crit_theta(k), self.offset(level, k));
                        quad::integrate(
                            |x| power(off - g.increment(t, dir * x), p),
                            0.0,
                            half,
                            0.0,
                            REL_TOL,
                            MAX_INTERVALS,
                        )
                    }
                    Node::Turning(qt) => {
                        if p <= -1.0 {
                            return Err(Error::Domain("turning points need p > -1".into()));
                        }
                        let slope = g.derivative(qt, 1).abs();
                        quad::integrate(
                            |u| {
                                let psi = -g.increment(qt, dir * u * u);
                                if psi > 0.0 {
                                    2.0 * u * psi.powf(p)
                                } else if p > 0.0 {
                                    0.0
                                } else {
                                    2.0 / slope.sqrt()
                                }
                            },
                            0.0,
                            half.sqrt(),
                            0.0,
                            REL_TOL,
                            MAX_INTERVALS,
                        )
                    }
                };
                total += q.value;
                error += q.error;
            }
        }
        if !total.is_finite() || error > REPORT_TOL * total.abs().max(1.0) {
            return Err(Error::Quadrature(error));
        }
        Ok(total)
    }

    fn weight(&self) -> f64 {
        if self.is_inner() {
            1.0 / PI
        } else {
            0.5 / PI
        }
    }

    pub fn action_at(&self, level: Level) -> Result<f64> {
        self.check(level, true)?;
        if self.region.kind == RegionKind::InnerOdd && self.offset(level, self.layout.lo) == 0.0 {
            return Ok(0.0);
        }
        Ok(self.weight() * self.orbit_integral(level, 0.5)?)
    }

    pub fn daction_at(&self, level: Level) -> Result<f64> {
        self.check(level, false)?;
        Ok(0.5 * self.weight() * self.orbit_integral(level, -0.5)?)
    }

    /// `I(E)` on the closed energy interval of the region.
    pub fn action(&self, e: f64) -> Result<f64> {
        self.action_at(self.level(e))
    }

    pub fn daction(&self, e: f64) -> Result<f64> {
        self.daction_at(self.level(e))
    }

    fn ridders_step(&self, level: Level) -> f64 {
        let above = self.offset(level, self.layout.lo);
        let below = match self.layout.hi {
            Some(hi) => -self.offset(level, hi),
            None => f64::INFINITY,
        };
        let width = self.region.e_hi - self.region.e_lo;
        let width = if width.is_finite() { width } else { above.max(1.0) };
        0.25 * above.min(below).min(0.25 * width)
    }

    fn shifted(level: Level, h: f64) -> Level {
        Level {
            delta: level.delta + h,
            ..level
        }
    }

    pub fn d2action_at(&self, level: Level) -> Result<f64> {
        self.check(level, false)?;
        if !self.is_inner() {
            return Ok(-self.orbit_integral(level, -1.5)? / (8.0 * PI));
        }
        let h0 = self.ridders_step(level);
        let (v, err) = richardson(
            |h| {
                let up = self.daction_at(Self::shifted(level, h))?;
                let dn = self.daction_at(Self::shifted(level, -h))?;
                Ok((up - dn) / (2.0 * h))
            },
            h0,
        )?;
        noise_check(v, err, "second")
    }

    pub fn d3action_at(&self, level: Level) -> Result<f64> {
        self.check(level, false)?;
        if !self.is_inner() {
            return Ok(3.0 * self.orbit_integral(level, -2.5)? / (16.0 * PI));
        }
        let h0 = self.ridders_step(level);
        let mid = self.daction_at(level)?;
        let (v, err) = richardson(
            |h| {
                let up = self.daction_at(Self::shifted(level, h))?;
                let dn = self.daction_at(Self::shifted(level, -h))?;
                Ok((up - 2.0 * mid + dn) / (h * h))
            },
            h0,
        )?;
        noise_check(v, err, "third")
    }

    pub fn derivatives(&self, e: f64) -> Result<ActionDerivatives> {
        let level = self.level(e);
        Ok(ActionDerivatives {
            energy: e,
            action: self.action_at(level)?,
            d1: self.daction_at(level)?,
            d2: self.d2action_at(level)?,
            d3: self.d3action_at(level)?,
        })
    }

    /// `∂²E/∂I² = −I''/I'³` at energy `e`.
    pub fn twist(&self, e: f64) -> Result<f64> {
        let level = self.level(e);
        let d1 = self.daction_at(level)?;
        let d2 = self.d2action_at(level)?;
        Ok(-d2 / d1.powi(3))
    }

    /// Range of `I` over the region; the upper end is infinite for
    /// unbounded outer regions.
    pub fn action_range(&self) -> Result<(f64, f64)> {
        let lo = self.action_at(Level {
            reference: self.layout.lo,
            delta: 0.0,
        })?;
        let hi = match self.layout.hi {
            Some(hi) => self.action_at(Level {
                reference: hi,
                delta: 0.0,
            })?,
            None if self.region.e_hi.is_finite() => self.action(self.region.e_hi)?,
            None => f64::INFINITY,
        };
        Ok((lo, hi))
    }

    /// The energy `E(I)` by safeguarded Newton on the monotone `I(E)`.
    pub fn energy_from_action(&self, target: f64) -> Result<f64> {
        let (i_lo, i_hi) = self.action_range()?;
        if !(target >= i_lo && target <= i_hi) {
            return Err(Error::ActionOutOfRange {
                action: target,
                lo: i_lo,
                hi: i_hi,
            });
        }
        if target == i_lo {
            return Ok(self.region.e_lo);
        }
        if target == i_hi {
            return Ok(self.region.e_hi);
        }
        let mut lo = self.region.e_lo;
        let mut hi = self.region.e_hi;
        if !hi.is_finite() {
            hi = lo + 1.0;
            while self.action(hi)? < target {
                lo = hi;
                hi = self.region.e_lo + 2.0 * (hi - self.region.e_lo);
            }
        }
        let fdf = |e: f64| {
            if e <= self.region.e_lo || e >= self.region.e_hi {
                let v = if e <= self.region.e_lo { i_lo } else { i_hi };
                return (v - target, f64::NAN);
            }
            let level = self.level(e);
            match (self.action_at(level), self.daction_at(level)) {
                (Ok(a), Ok(d)) => (a - target, d),
                _ => (f64::NAN, f64::NAN),
            }
        };
        let e = safeguarded_newton(fdf, lo, hi, 1e-15 * (1.0 + lo.abs().max(hi.abs())))
            .ok_or(Error::Bracketing(target))?;
        Ok(e)
    }
}

fn power(x: f64, p: f64) -> f64 {
    if x > 0.0 {
        x.powf(p)
    } else if p > 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

fn noise_check(v: f64, err: f64, order: &str) -> Result<f64> {
    if err <= DERIV_TOL * v.abs() {
        Ok(v)
    } else {
        Err(Error::DerivativeNoise(format!(
            "{order} derivative {v:e} with error {err:e}"
        )))
    }
}

/// Ridders extrapolation of a central difference `d(h)` with error `O(h²)`.
fn richardson<F: Fn(f64) -> Result<f64>>(d: F, h0: f64) -> Result<(f64, f64)> {
    const CON: f64 = 1.4;
    const CON2: f64 = CON * CON;
    const NTAB: usize = 10;
    let mut a = [[0.0; NTAB]; NTAB];
    let mut h = h0;
    a[0][0] = d(h)?;
    let mut best = (a[0][0], f64::INFINITY);
    for i in 1..NTAB {
        h /= CON;
        a[0][i] = d(h)?;
        let mut fac = CON2;
        for j in 1..=i {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
            fac *= CON2;
            let errt = (a[j][i] - a[j - 1][i])
                .abs()
                .max((a[j][i] - a[j - 1][i - 1]).abs());
            if errt <= best.1 {
                best = (a[j][i], errt);
            }
        }
        if (a[i][i] - a[i - 1][i - 1]).abs() >= 2.0 * best.1 && best.1 <= 1e-9 * best.0.abs() {
            break;
        }
    }
    Ok(best)
}
