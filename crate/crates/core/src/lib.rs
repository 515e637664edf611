//! Arithmetic of Krull monoids through block monoids `B(G₀)`: atoms,
//! factorizations, sets of lengths and the invariants built from them.

pub mod atoms;
pub mod error;
pub mod exec;
pub mod factorization;
pub mod group;
pub mod hilbert;
pub mod intmat;
pub mod invariants;
pub mod length_systems;
pub mod lengths;
pub mod presets;
pub mod sequence;
pub mod transfer;

pub use error::{Error, Result};
pub use exec::Exec;
