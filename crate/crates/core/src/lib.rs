//! Combinatorics of linear compactifications of semisimple groups: root
//! systems and character lattices, dominance orders, weight polytopes,
//! little brothers, colored cones and the resulting normality, factoriality
//! and smoothness verdicts, together with a brute-force representation
//! theory oracle.

pub mod brothers;
pub mod cartan;
pub mod classify;
pub mod error;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod orders;
pub mod weights;

pub use cartan::{
    parse_group, parse_weight, CartanType, CharacterLattice, RootSystem, RootSystemSpec,
    SimpleRootSet, Weight,
};
pub use error::{Error, Result};

/// Exact rationals used for weight coordinates.
pub type Q = num_rational::Ratio<i64>;
