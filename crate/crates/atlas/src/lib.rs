//! Numerical core for singular-KAM analysis of natural Hamiltonians
//! `H = |y|²/2 + ε f(x)`.
//!
//! The crate is organised along the pipeline of the analysis:
//! Fourier potentials and their resonant projections ([`fourier`]),
//! the resonance covering of action space ([`resonance`]), one degree of
//! freedom secular portraits ([`portrait`]), action functions and separatrix
//! expansions ([`action`]), twist non-degeneracy ([`twist`]), the exact
//! logarithmic ring used for the regularized twist ([`logring`]), Monte Carlo
//! measure studies ([`measure`]) and end-to-end study orchestration
//! ([`report`]).

// `!(x < y)` is used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod action;
pub mod error;
pub mod fourier;
pub mod logring;
pub mod measure;
pub mod portrait;
pub mod report;
pub mod resonance;
pub mod roots;
pub mod twist;

pub use error::{Error, Result};
