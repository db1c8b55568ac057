use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A primitive, sign-normalized integer vector indexing one resonance line.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Generator(Vec<i64>);

impl Generator {
    /// Validates primitivity (`gcd = 1`) and sign normalization.
    pub fn new(k: Vec<i64>) -> Result<Self> {
        if k.iter().all(|&c| c == 0) || gcd_all(&k) != 1 {
            return Err(Error::NotPrimitive(k));
        }
        match k.iter().find(|&&c| c != 0) {
            Some(&c) if c > 0 => Ok(Self(k)),
            _ => Err(Error::NotPrimitive(k)),
        }
    }

    /// Writes a nonzero vector as `m·g` with `g` a generator and `m ≠ 0`.
    pub fn decompose(v: &[i64]) -> Option<(Self, i64)> {
        if v.iter().all(|&c| c == 0) {
            return None;
        }
        let g = gcd_all(v);
        let first = *v.iter().find(|&&c| c != 0)?;
        let m = if first > 0 { g } else { -g };
        Some((Self(v.iter().map(|&c| c / m).collect()), m))
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn l1(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).sum()
    }

    pub fn linf(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|&c| (c * c) as f64).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dot(&self, y: &[f64]) -> f64 {
        self.0.iter().zip(y).map(|(&k, &y)| k as f64 * y).sum()
    }
}

impl TryFrom<Vec<i64>> for Generator {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Generator> for Vec<i64> {
    fn from(g: Generator) -> Self {
        g.0
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.abs()
}

pub(crate) fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &c| gcd(g, c.abs()))
}

/// All generators of dimension `n` with `|k|₁ ≤ k_max`, in lexicographic order.
pub fn enumerate_generators(n: usize, k_max: i64) -> Vec<Generator> {
    let mut out = Vec::new();
    if n == 0 || k_max <= 0 {
        return out;
    }
    let mut cur = vec![0i64; n];
    fill(&mut cur, 0, k_max, &mut out);
    out
}

fn fill(cur: &mut Vec<i64>, pos: usize, budget: i64, out: &mut Vec<Generator>) {
    if pos == cur.len() {
        let leading = cur.iter().find(|&&c| c != 0);
        if matches!(leading, Some(&c) if c > 0) && gcd_all(cur) == 1 {
            out.push(Generator(cur.clone()));
        }
        return;
    }
    let leading_zero = cur[..pos].iter().all(|&c| c == 0);
    let lo = if leading_zero { 0 } else { -budget };
    for c in lo..=budget {
        cur[pos] = c;
        fill(cur, pos + 1, budget - c.abs(), out);
    }
    cur[pos] = 0;
}
