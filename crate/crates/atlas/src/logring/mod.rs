//! Exact arithmetic in the ring of log-polynomials `z^h Σ_j u_j(z) log^j z`
//! and the Euler-type differential operators acting on it.
//!
//! Canonical text forms are described in `docs/logring-grammar.md`.

mod element;
mod operator;

pub use element::{LogElement, MAX_DEGREE, MAX_LOG};
pub use operator::DiffOperator;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

/// Largest derivative order accepted by [`expand_operator`].
pub const MAX_ORDER: u32 = 64;

/// `L^{3n̄}(∂_z L^{3n̄})^{n̄}` with `n̄ = n − 1`, expanded as `Σ a_j(z) ∂^j`.
pub fn expand_operator(n: u32) -> Result<DiffOperator> {
    if n < 2 {
        return Err(Error::Domain(format!("n = {n} must be at least 2")));
    }
    let nb = n - 1;
    let order = 3 * nb * nb + 4 * nb;
    if order > MAX_ORDER {
        return Err(Error::DegreeOverflow(format!("order {order} above {MAX_ORDER}")));
    }
    let lk = DiffOperator::euler().pow(3 * nb);
    Ok(lk.compose(&DiffOperator::d().compose(&lk).pow(nb)))
}

/// `L^k (∂_z L^k)^m`.
pub fn operator_mk(m: u32, k: u32) -> DiffOperator {
    let lk = DiffOperator::euler().pow(k);
    lk.compose(&DiffOperator::d().compose(&lk).pow(m))
}

/// Applies `L^k(∂_z L^k)^m` step by step, innermost factor first.
pub fn apply_mk(m: u32, k: u32, f: &LogElement) -> Result<LogElement> {
    let lk = |mut g: LogElement| -> Result<LogElement> {
        for _ in 0..k {
            g = g.euler()?;
        }
        Ok(g)
    };
    let mut g = f.clone();
    for _ in 0..m {
        g = lk(g)?.derivative()?;
    }
    lk(g)
}

/// Result of applying `L^k(∂_z L^k)^m` to `z^m log^k z`.
#[derive(Clone, Debug, PartialEq)]
pub struct LeadingConstant {
    pub constant: BigRational,
    /// Everything but the constant term.
    pub residual: LogElement,
}

impl LeadingConstant {
    /// Whether every residual term carries a positive power of `z`.
    pub fn residual_vanishes_at_zero(&self) -> bool {
        self.residual.terms().all(|(p, _, _)| p >= 1)
    }
}

pub fn leading_constant(m: u32, k: u32) -> Result<LeadingConstant> {
    let f = LogElement::monomial(BigRational::one(), m as i64, k)?;
    let out = apply_mk(m, k, &f)?;
    let constant = out.constant();
    let residual = out.sub(&LogElement::monomial(constant.clone(), 0, 0)?);
    Ok(LeadingConstant { constant, residual })
}

/// `(m!)^{k+1} k!`.
pub fn haus_constant(m: u32, k: u32) -> BigInt {
    let fact = |n: u32| (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i));
    num_traits::pow(fact(m), (k + 1) as usize) * fact(k)
}

#[cfg(test)]
mod tests;
