use thiserror::Error;

use crate::systems::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("assembly size {0} out of range 1..=64")]
    AssemblySize(usize),

    #[error("member {member} out of range for an assembly of {n}")]
    MemberOutOfRange { member: usize, n: usize },

    #[error("profile label {0} out of range 1..=6")]
    ProfileOutOfRange(i64),

    #[error("reflexive comparison")]
    ReflexiveComparison,

    #[error("candidates of a linear order must be distinct")]
    RepeatedCandidate,

    #[error("assembly mismatch: expected {expected} members, found {found}")]
    AssemblyMismatch { expected: usize, found: usize },

    #[error("empty profile set")]
    EmptyProfileSet,

    #[error("at least one weight must be positive")]
    NoPositiveWeight,

    #[error("not a Guilbaud system: {0}")]
    NotGuilbaud(Violation),

    #[error("{what}: n = {n} exceeds the bound {max}")]
    SizeBound {
        what: &'static str,
        n: usize,
        max: usize,
    },

    #[error("antichain of minimal efficient coalitions exceeds {0} members")]
    AntichainTooLarge(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
