//! Guilbaud voting systems over three candidates.
//!
//! A voting system is a family of *efficient* coalitions of an assembly in
//! which exactly one of every coalition and its complement is efficient, and
//! supersets of efficient coalitions are efficient. Each member holds one of
//! the six strict rankings of `{a, b, c}`, labelled `1..=6` around a cycle;
//! the pairwise collective choice between two candidates goes to the side
//! whose supporters form an efficient coalition.
//!
//! The collective relation is a linear ranking exactly when, for some label
//! `p`, both `K(p, p+1, p+2)` and `K(p+1, p+2, p+3)` are efficient.
//! [`aggregate::verify_theorem`] and [`aggregate::exhaustive_scan`] check that
//! claim over every assignment of every small system.
//!
//! ```
//! use guilbaud_core::prelude::*;
//!
//! let sys = majority_with_chair(3, 0).unwrap();
//! let asg = Assignment::from_labels(&[1, 3, 5]).unwrap();
//! assert_eq!(collective(&sys, &asg).unwrap().to_string(), "cyclic: a>b>c>a");
//! assert!(!condition_c(&sys, &asg).unwrap().holds());
//! ```

pub mod aggregate;
pub mod coalition;
pub mod error;
pub mod profile;
pub mod restrictions;
pub mod systems;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::aggregate::{
        coalition_of, collective, condition_c, exhaustive_scan, exhaustive_scan_with, pairwise,
        supporters, verify_theorem, verify_theorem_with, Assignment, ConditionCReport, Outcome,
        ScanOptions, ScanReport, TheoremReport,
    };
    pub use crate::coalition::{Assembly, Coalition};
    pub use crate::profile::{
        profile_order, Candidate, CandidatePermutation, LinearOrder, ProfileId,
    };
    pub use crate::restrictions::{gap_census, single_peaked, value_restricted, CensusReport};
    pub use crate::systems::{
        dictatorship, enumerate_systems, majority_with_chair, weighted, ValidationReport,
        Violation, VotingSystem,
    };
}
