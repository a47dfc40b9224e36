use thiserror::Error;

use crate::cartan::{CartanType, Weight};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid rank {rank} for type {kind}")]
    InvalidRank { kind: CartanType, rank: usize },

    #[error("empty root system")]
    EmptyRootSystem,

    #[error("weight has {found} coordinates, root system has rank {expected}")]
    RankMismatch { expected: usize, found: usize },

    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("weight {0} is not in the character lattice")]
    NotInLattice(Weight),

    #[error("lattice generator {0} is not an integral weight")]
    NonIntegralGenerator(Weight),

    #[error("weight set is empty")]
    EmptySet,

    #[error("weight set is not simple: {0} maximal elements w.r.t. rational dominance")]
    NotSimple(usize),

    #[error("simple roots {0} and {1} lie in different connected components")]
    DistanceAcrossComponents(usize, usize),

    #[error("simple root index {index} out of range for rank {rank}")]
    RootIndexOutOfRange { index: usize, rank: usize },

    #[error("lattice preset `{preset}` does not apply to type {kind}{rank}")]
    PresetMismatch {
        preset: String,
        kind: CartanType,
        rank: usize,
    },

    #[error("resource cap exceeded: {what} (limit {limit})")]
    ResourceCap { what: &'static str, limit: u128 },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
