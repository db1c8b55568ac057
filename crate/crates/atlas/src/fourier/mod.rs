//! Finite Fourier potentials on the n-torus, their projections onto
//! resonance lines and the genericity conditions on those projections.

mod genericity;
mod morse;
mod potential;
mod series;

pub use genericity::{check_genericity, cutoff_n, Clause, FailureReason, GenericityReport, ModeCheck};
pub use morse::{morse_analyze, CriticalKind, CriticalPoint, MorseProfile, ShiftedCosine};
pub use potential::{FourierPotential, GeneratorRule, ModeDoc, PotentialDoc, PROTOTYPE_CAP};
pub use series::OneDSeries;
