use alloc::string::String;
use alloc::vec::Vec;

use crate::rootsys::Family;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(
        "no simple Lie algebra of type {family}{rank}; valid types are A(n>=1), B(n>=2), C(n>=3), D(n>=4), E6, E7, E8, F4, G2"
    )]
    InvalidType { family: Family, rank: usize },

    #[error("unknown Lie type `{0}`")]
    UnknownType(String),

    #[error("rank mismatch: expected {expected} coordinates, got {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("weight system of {highest:?} exceeds the ceiling of {ceiling} levels")]
    LevelCeiling { highest: Vec<i64>, ceiling: usize },

    #[error("projection sends source weight {weight} to non-integral labels")]
    NonIntegralProjection { weight: String },

    #[error("branching produced a negative multiplicity at {weight}; projection data is inconsistent")]
    NegativeMultiplicity { weight: String },

    #[error("highest remaining weight {weight} is not dominant; projection data is inconsistent")]
    InconsistentBranching { weight: String },

    #[error("candidate enumeration for block {block} exceeded {limit} modules")]
    EnumerationCeiling { block: usize, limit: usize },

    #[error("invalid submanifold data: {0}")]
    InvalidSpec(String),

    #[error("shortcut rule {rule} says {shortcut} but the Casimir engine says {engine}")]
    ShortcutDisagreement {
        rule: &'static str,
        shortcut: &'static str,
        engine: &'static str,
    },

    #[error("contradictory inputs: rule `{stable_rule}` gives stable while `{unstable_rule}` gives unstable")]
    ContradictoryInputs {
        stable_rule: &'static str,
        unstable_rule: &'static str,
    },
}
