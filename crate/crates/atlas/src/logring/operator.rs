use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::element::{rat, write_coefficient, write_power, LogElement};
use crate::error::Result;

/// Differential operator `Σ c_{j,p} z^p ∂_z^j` with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiffOperator {
    terms: BTreeMap<(u32, i64), BigRational>,
}

fn falling(r: i64, i: u32) -> BigRational {
    (0..i as i64).fold(BigRational::one(), |acc, t| acc * rat(r - t))
}

fn binomial(n: u32, k: u32) -> BigRational {
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    BigRational::from_integer(acc)
}

impl DiffOperator {
    pub fn identity() -> Self {
        Self::term(BigRational::one(), 0, 0)
    }

    /// `c·z^p ∂^j`.
    pub fn term(c: BigRational, p: i64, j: u32) -> Self {
        let mut op = Self::default();
        op.accumulate(j, p, c);
        op
    }

    /// `∂_z`.
    pub fn d() -> Self {
        Self::term(BigRational::one(), 0, 1)
    }

    /// `L = z ∂_z`.
    pub fn euler() -> Self {
        Self::term(BigRational::one(), 1, 1)
    }

    fn accumulate(&mut self, j: u32, p: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((j, p)).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(j, p));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, i64, &BigRational)> {
        self.terms.iter().map(|(&(j, p), c)| (j, p, c))
    }

    /// Coefficient of `z^p ∂^j`.
    pub fn coefficient(&self, j: u32, p: i64) -> BigRational {
        self.terms.get(&(j, p)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn lowest_derivative(&self) -> u32 {
        self.terms.keys().map(|k| k.0).min().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(j, p), c) in &other.terms {
            out.accumulate(j, p, c.clone());
        }
        out
    }

    /// `self ∘ other`, commuting derivatives through coefficients by Leibniz' rule.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (&(j, p), a) in &self.terms {
            for (&(s, r), b) in &other.terms {
                for i in 0..=j {
                    let f = falling(r, i);
                    if f.is_zero() {
                        continue;
                    }
                    let c = a * b * binomial(j, i) * f;
                    out.accumulate(j - i + s, p + r - i as i64, c);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(), |acc, _| acc.compose(self))
    }

    pub fn apply(&self, f: &LogElement) -> Result<LogElement> {
        let mut derivs = vec![f.clone()];
        let mut out = LogElement::zero();
        for (&(j, p), c) in &self.terms {
            while derivs.len() <= j as usize {
                let next = derivs.last().expect("nonempty").derivative()?;
                derivs.push(next);
            }
            out = out.add(&derivs[j as usize].shift(p)?.scale(c));
        }
        Ok(out)
    }
}

impl fmt::Display for DiffOperator {
    /// Terms by decreasing derivative order, then increasing power of `z`,
    /// e.g. `z^6*D^7 + 18*z^5*D^6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&(u32, i64)> = self.terms.keys().collect();
        keys.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (i, key) in keys.into_iter().enumerate() {
            let (j, p) = *key;
            let c = &self.terms[key];
            let bare = j == 0 && p == 0;
            write_coefficient(f, c, i == 0, bare)?;
            if p != 0 {
                write_power(f, "z", p)?;
                if j != 0 {
                    write!(f, "*")?;
                }
            }
            if j != 0 {
                write_power(f, "D", j as i64)?;
            }
        }
        Ok(())
    }
}
