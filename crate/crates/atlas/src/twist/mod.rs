//! Twist non-degeneracy: the normalized second derivative of the energy
//! function, `(ξ, m)` certificates, sublevel estimates, the Birkhoff
//! coefficient at minima and twist determinants of resonant blocks.

mod birkhoff;
pub mod cheb;
mod field;
mod normalized;
mod sublevel;

pub use birkhoff::{birkhoff_delta, BirkhoffData};
pub use field::{pd_det_bound, twist_field, MuCorrection, PdDetCheck, TwistField, TwistPoint};
pub use normalized::{certify_nondegeneracy, normalized_f, normalized_f_at, NondegeneracyCert, NormalizedTwist};
pub use sublevel::{default_cm, empirical_sublevel, empirical_sublevel_fn, sublevel_bound};
