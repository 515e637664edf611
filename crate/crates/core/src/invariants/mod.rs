//! Arithmetical invariants of `B(G₀)`: sets of distances, unions of sets of
//! lengths, elasticity, catenary degrees, ω and tame degrees, and absolute
//! irreducibility.
//!
//! Values computed by bounded sweeps are returned as [`BoundedResult`]s; they
//! are exact only when some independent argument certifies them.

mod covers;
mod irreducible;
mod subsets;
mod sweep;

pub use covers::{minimal_covers, monoid_omega_tame, omega, tame, CoverLimits};
pub use irreducible::{
    absolutely_irreducible, min_abs_irred_witness, powers_factor_uniquely, AbsIrredWitness,
};
pub use subsets::{delta_star, delta_star_bounded, min_delta_exact};
pub use sweep::{delta_set, elasticity, monoid_catenary, unions, ProductSweep, UnionProfile};

use serde::{Deserialize, Serialize};

/// A value obtained under a search bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedResult<T> {
    pub value: T,
    pub exact: bool,
    pub bound: Option<u64>,
}

impl<T> BoundedResult<T> {
    pub fn exact(value: T) -> Self {
        BoundedResult {
            value,
            exact: true,
            bound: None,
        }
    }

    pub fn bounded(value: T, bound: u64) -> Self {
        BoundedResult {
            value,
            exact: false,
            bound: Some(bound),
        }
    }

    pub fn certify(mut self, ok: bool) -> Self {
        self.exact |= ok;
        self
    }
}
