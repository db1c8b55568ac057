//! Resonance lattice geometry: generators, unimodular frames, the covering of
//! the action ball by non-resonant, simply-resonant and doubly-resonant zones,
//! and the per-zone characteristics.

mod bezout;
mod covering;
mod generators;
mod zones;

pub use bezout::{bezout_complete, BezoutFrame};
pub use covering::{covering_c1, covering_c2, Covering, CoveringParams, Zone, ZoneLabel};
pub use generators::{enumerate_generators, Generator};
pub use zones::{transverse_form, zone_params, DomainHat, TransverseForm, ZoneParams};
