use serde::{Deserialize, Serialize};

use super::generators::{gcd_all, Generator};
use crate::{Error, Result};

/// A unimodular completion `A = (k; Â) ∈ SL(n, Z)` of a generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BezoutFrame {
    pub a: Vec<Vec<i64>>,
    pub inverse: Vec<Vec<i64>>,
}

impl BezoutFrame {
    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn k(&self) -> &[i64] {
        &self.a[0]
    }

    /// The `(n−1) × n` block below the first row.
    pub fn a_hat(&self) -> &[Vec<i64>] {
        &self.a[1..]
    }

    pub fn det(&self) -> i64 {
        det_i128(&self.a) as i64
    }

    pub fn hat_norm(&self) -> i64 {
        max_abs(self.a_hat())
    }

    pub fn inverse_norm(&self) -> i64 {
        max_abs(&self.inverse)
    }

    /// `(n−1)^{(n−1)/2} |k|∞^{n−1}`.
    pub fn inverse_bound(&self) -> f64 {
        let m = (self.dim() - 1) as f64;
        let kinf = max_abs(&self.a[..1]) as f64;
        m.powf(m / 2.0) * kinf.powf(m)
    }

    /// Every invariant of the frame, checked exactly.
    pub fn verify(&self) -> bool {
        let n = self.dim();
        let kinf = max_abs(&self.a[..1]);
        let identity = (0..n).all(|i| {
            (0..n).all(|j| {
                let s: i128 = (0..n)
                    .map(|l| self.a[i][l] as i128 * self.inverse[l][j] as i128)
                    .sum();
                s == i128::from(i == j)
            })
        });
        self.det() == 1
            && identity
            && self.hat_norm() <= kinf
            && self.inverse_norm() as f64 <= self.inverse_bound() * (1.0 + 1e-12)
    }
}

fn max_abs(rows: &[Vec<i64>]) -> i64 {
    rows.iter()
        .flat_map(|r| r.iter().map(|c| c.abs()))
        .max()
        .unwrap_or(0)
}

/// Completes a primitive vector to a unimodular matrix with first row `k`.
pub fn bezout_complete(k: &Generator) -> Result<BezoutFrame> {
    let (a, sign) = complete(k.as_slice());
    debug_assert_eq!(sign, 1);
    let inverse = integer_inverse(&a)?;
    Ok(BezoutFrame { a, inverse })
}

/// Completion of any primitive vector; returns the rows and the determinant,
/// which is `1` for `n ≥ 2` and `k₁ = ±1` for `n = 1`.
fn complete(k: &[i64]) -> (Vec<Vec<i64>>, i64) {
    let n = k.len();
    if n == 1 {
        return (vec![vec![k[0]]], k[0]);
    }
    let head = &k[..n - 1];
    let kn = k[n - 1];
    let g = gcd_all(head);
    if g == 0 {
        let mut rows = vec![k.to_vec()];
        for i in 0..n - 1 {
            let mut e = vec![0; n];
            e[i] = 1;
            rows.push(e);
        }
        let sign = if (n + 1).is_multiple_of(2) { kn } else { -kn };
        if sign < 0 {
            rows[1][0] = -1;
        }
        return (rows, 1);
    }
    let reduced: Vec<i64> = head.iter().map(|c| c / g).collect();
    let (sub, sigma) = complete(&reduced);
    let (a, b) = bezout_pair(g, kn);
    let mut rows = vec![k.to_vec()];
    for r in sub.iter().skip(1) {
        let mut row = r.clone();
        row.push(0);
        rows.push(row);
    }
    let mut last: Vec<i64> = reduced.iter().map(|c| -sigma * b * c).collect();
    last.push(sigma * a);
    rows.push(last);
    (rows, 1)
}

/// `(a, b)` with `a g + b kn = 1`, `0 ≤ a < |kn|` when `|kn| > 1`.
fn bezout_pair(g: i64, kn: i64) -> (i64, i64) {
    match kn.abs() {
        0 => (1, 0),
        1 => (0, kn),
        m => {
            let a = (0..m).find(|a| (a * g - 1).rem_euclid(m) == 0).expect("coprime");
            (a, (1 - a * g) / kn)
        }
    }
}

fn det_i128(a: &[Vec<i64>]) -> i128 {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for i in 0..n {
        if m[i][i] == 0 {
            match (i + 1..n).find(|&r| m[r][i] != 0) {
                Some(r) => {
                    m.swap(i, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for r in i + 1..n {
            for c in i + 1..n {
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) / prev;
            }
        }
        prev = m[i][i];
    }
    sign * m[n - 1][n - 1]
}

fn integer_inverse(a: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = a.len();
    if det_i128(a) != 1 {
        return Err(Error::Domain("matrix is not unimodular".into()));
    }
    if n == 1 {
        return Ok(vec![vec![1]]);
    }
    let mut inv = vec![vec![0i64; n]; n];
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = a
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != i)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let cof = det_i128(&minor) * if (i + j) % 2 == 0 { 1 } else { -1 };
            inv[j][i] = cof as i64;
        }
    }
    Ok(inv)
}
