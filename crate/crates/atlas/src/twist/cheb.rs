//! Chebyshev interpolation on Lobatto nodes.

use std::f64::consts::PI;

/// `m + 1` Chebyshev–Lobatto nodes of `[a, b]` in increasing order.
pub fn lobatto_nodes(a: f64, b: f64, m: usize) -> Vec<f64> {
    (0..=m)
        .map(|k| {
            let t = -(PI * k as f64 / m as f64).cos();
            0.5 * (a + b) + 0.5 * (b - a) * t
        })
        .collect()
}

/// Chebyshev series `Σ c_k T_k(t)` on `[a, b]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Chebyshev {
    a: f64,
    b: f64,
    coeffs: Vec<f64>,
}

impl Chebyshev {
    /// Interpolant through values at [`lobatto_nodes`]`(a, b, m)`.
    pub fn interpolate(a: f64, b: f64, values: &[f64]) -> Self {
        let m = values.len() - 1;
        // nodes are stored increasing, i.e. t_k = -cos(πk/m) = cos(π(m-k)/m)
        let f = |j: usize| values[m - j];
        let coeffs = (0..=m)
            .map(|k| {
                let mut s = 0.0;
                for j in 0..=m {
                    let w = if j == 0 || j == m { 0.5 } else { 1.0 };
                    s += w * f(j) * (PI * (k * j) as f64 / m as f64).cos();
                }
                let c = 2.0 * s / m as f64;
                if k == 0 || k == m {
                    0.5 * c
                } else {
                    c
                }
            })
            .collect();
        Self { a, b, coeffs }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn derivative(&self) -> Self {
        let n = self.coeffs.len();
        let scale = 2.0 / (self.b - self.a);
        if n <= 1 {
            return Self {
                coeffs: vec![0.0],
                ..*self
            };
        }
        let mut d = vec![0.0; n + 1];
        for k in (1..n).rev() {
            d[k - 1] = d[k + 1] + 2.0 * k as f64 * self.coeffs[k];
        }
        d[0] *= 0.5;
        d.truncate(n - 1);
        Self {
            a: self.a,
            b: self.b,
            coeffs: d.into_iter().map(|c| c * scale).collect(),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let t = (2.0 * x - self.a - self.b) / (self.b - self.a);
        let (mut b1, mut b2) = (0.0, 0.0);
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = 2.0 * t * b1 - b2 + c;
            b2 = b1;
            b1 = b0;
        }
        t * b1 - b2 + self.coeffs[0]
    }
}
