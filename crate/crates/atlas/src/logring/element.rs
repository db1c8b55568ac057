use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest `|p|` of a monomial `z^p`.
pub const MAX_DEGREE: i64 = 64;
/// Largest power of `log z`.
pub const MAX_LOG: u32 = 32;

/// Exact element `Σ c_{p,q} z^p log^q z` of the ring of log-polynomials.
///
/// Keys are `(p, q)`; zero coefficients are never stored, so equality of
/// values is equality of maps.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LogElement {
    terms: BTreeMap<(i64, u32), BigRational>,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn check(p: i64, q: u32) -> Result<()> {
    if p.abs() > MAX_DEGREE || q > MAX_LOG {
        Err(Error::DegreeOverflow(format!("z^{p} log^{q} exceeds the caps")))
    } else {
        Ok(())
    }
}

impl LogElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), 0, 0).expect("within caps")
    }

    /// `c·z^p·log^q z`.
    pub fn monomial(c: BigRational, p: i64, q: u32) -> Result<Self> {
        check(p, q)?;
        let mut e = Self::zero();
        if !c.is_zero() {
            e.terms.insert((p, q), c);
        }
        Ok(e)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, u32, BigRational)>>(terms: I) -> Result<Self> {
        let mut e = Self::zero();
        for (p, q, c) in terms {
            check(p, q)?;
            e.accumulate(p, q, c);
        }
        Ok(e)
    }

    fn accumulate(&mut self, p: i64, q: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((p, q)).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(p, q));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, u32, &BigRational)> {
        self.terms.iter().map(|(&(p, q), c)| (p, q, c))
    }

    pub fn coefficient(&self, p: i64, q: u32) -> BigRational {
        self.terms.get(&(p, q)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The exponent `h` (lowest power of `z`) and the log length `ℓ`; `None` for zero.
    pub fn order(&self) -> Option<(i64, u32)> {
        let h = self.terms.keys().map(|k| k.0).min()?;
        let l = self.terms.keys().map(|k| k.1).max()?;
        Some((h, l))
    }

    /// `u_j(z)` as `(power, coefficient)` pairs, so that the element is `Σ_j u_j log^j z`.
    pub fn log_coefficient(&self, j: u32) -> Vec<(i64, BigRational)> {
        self.terms
            .iter()
            .filter(|(k, _)| k.1 == j)
            .map(|(k, c)| (k.0, c.clone()))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(p, q), c) in &other.terms {
            out.accumulate(p, q, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (&(p, q), v) in &self.terms {
            out.accumulate(p, q, v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (&(p1, q1), c1) in &self.terms {
            for (&(p2, q2), c2) in &other.terms {
                let (p, q) = (p1 + p2, q1 + q2);
                check(p, q)?;
                out.accumulate(p, q, c1 * c2);
            }
        }
        Ok(out)
    }

    /// `z^s` times the element.
    pub fn shift(&self, s: i64) -> Result<Self> {
        let mut out = Self::zero();
        for (&(p, q), c) in &self.terms {
            check(p + s, q)?;
            out.accumulate(p + s, q, c.clone());
        }
        Ok(out)
    }

    /// `∂_z`, using `∂(z^p log^q) = p z^{p−1} log^q + q z^{p−1} log^{q−1}`.
    pub fn derivative(&self) -> Result<Self> {
        let mut out = Self::zero();
        for (&(p, q), c) in &self.terms {
            check(p - 1, q)?;
            if p != 0 {
                out.accumulate(p - 1, q, c * rat(p));
            }
            if q > 0 {
                out.accumulate(p - 1, q - 1, c * rat(q as i64));
            }
        }
        Ok(out)
    }

    /// `L = z ∂_z`.
    pub fn euler(&self) -> Result<Self> {
        self.derivative()?.shift(1)
    }

    /// Constant term (coefficient of `z⁰ log⁰ z`).
    pub fn constant(&self) -> BigRational {
        self.coefficient(0, 0)
    }

    /// Floating evaluation at `z > 0`.
    pub fn eval(&self, z: f64) -> f64 {
        let lz = z.ln();
        self.terms
            .iter()
            .map(|(&(p, q), c)| c.to_f64().unwrap_or(f64::NAN) * z.powi(p as i32) * lz.powi(q as i32))
            .sum()
    }
}

pub(crate) fn write_coefficient(
    f: &mut fmt::Formatter<'_>,
    c: &BigRational,
    first: bool,
    bare: bool,
) -> fmt::Result {
    let sign = if c.is_negative() { "-" } else { "+" };
    if first {
        if c.is_negative() {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {sign} ")?;
    }
    let a = c.abs();
    if bare || !a.is_one() {
        if a.is_integer() {
            write!(f, "{}", a.numer())?;
        } else {
            write!(f, "{}/{}", a.numer(), a.denom())?;
        }
        if !bare {
            write!(f, "*")?;
        }
    }
    Ok(())
}

pub(crate) fn write_power(f: &mut fmt::Formatter<'_>, base: &str, e: i64) -> fmt::Result {
    match e {
        1 => write!(f, "{base}"),
        _ => write!(f, "{base}^{e}"),
    }
}

impl fmt::Display for LogElement {
    /// Terms by increasing power of `z`, then decreasing power of `log`,
    /// e.g. `-3/2*z^-1 + z*log^2 + 4*z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&(i64, u32)> = self.terms.keys().collect();
        keys.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        for (i, key) in keys.into_iter().enumerate() {
            let (p, q) = *key;
            let c = &self.terms[key];
            let bare = p == 0 && q == 0;
            write_coefficient(f, c, i == 0, bare)?;
            let mut parts = Vec::new();
            if p != 0 {
                parts.push(('z', p));
            }
            if q != 0 {
                parts.push(('l', q as i64));
            }
            for (j, (kind, e)) in parts.into_iter().enumerate() {
                if j > 0 {
                    write!(f, "*")?;
                }
                write_power(f, if kind == 'z' { "z" } else { "log" }, e)?;
            }
        }
        Ok(())
    }
}
