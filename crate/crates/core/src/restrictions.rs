//! Domain restrictions on the set of rankings present in an assignment, and a
//! census comparing value restriction with the window condition.
//!
//! Only the rankings actually held by some member matter. With three
//! candidates and strict rankings, value restriction reads: some candidate is
//! never ranked best, or never middle, or never worst. Single-peakedness on
//! an axis `x-y-z` reads: no present ranking puts `y` last.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::aggregate::{
    assignment_count, partition, thread_pool, Assignment, Evaluator, Sweep, MAX_VERIFY_ASSEMBLY,
};
use crate::error::{Error, Result};
use crate::profile::{Candidate, ProfileId};
use crate::systems::{EfficiencyTable, VotingSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "clause", content = "candidate", rename_all = "snake_case")]
pub enum ValueRestriction {
    NeverBest(Candidate),
    NeverMiddle(Candidate),
    NeverWorst(Candidate),
}

impl fmt::Display for ValueRestriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueRestriction::NeverBest(c) => write!(f, "{c} never best"),
            ValueRestriction::NeverMiddle(c) => write!(f, "{c} never middle"),
            ValueRestriction::NeverWorst(c) => write!(f, "{c} never worst"),
        }
    }
}

/// A left-to-right arrangement of the candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Axis([Candidate; 3]);

impl Axis {
    /// The three axes up to reversal, in test order.
    pub const ALL: [Axis; 3] = [
        Axis([Candidate::A, Candidate::B, Candidate::C]),
        Axis([Candidate::A, Candidate::C, Candidate::B]),
        Axis([Candidate::B, Candidate::A, Candidate::C]),
    ];

    pub fn candidates(&self) -> [Candidate; 3] {
        self.0
    }

    pub fn middle(&self) -> Candidate {
        self.0[1]
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}-{}", self.0[0], self.0[1], self.0[2])
    }
}

impl Serialize for Axis {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RestrictionVerdict {
    pub value_restricted: Option<ValueRestriction>,
    pub single_peaked: Option<Axis>,
}

fn present_labels(present: u8) -> impl Iterator<Item = ProfileId> {
    ProfileId::ALL
        .into_iter()
        .filter(move |p| present >> p.index() & 1 == 1)
}

/// First satisfied clause, in the order never-best, never-middle, never-worst,
/// and `a`, `b`, `c` within each, over the labels set in `present`.
pub fn value_restriction_of(present: u8) -> Option<ValueRestriction> {
    let clauses: [fn(Candidate) -> ValueRestriction; 3] = [
        ValueRestriction::NeverBest,
        ValueRestriction::NeverMiddle,
        ValueRestriction::NeverWorst,
    ];
    for (rank, clause) in clauses.iter().enumerate() {
        for c in Candidate::ALL {
            if present_labels(present).all(|p| p.order().candidates()[rank] != c) {
                return Some(clause(c));
            }
        }
    }
    None
}

pub fn single_peaked_axis_of(present: u8) -> Option<Axis> {
    Axis::ALL
        .into_iter()
        .find(|axis| present_labels(present).all(|p| p.order().worst() != axis.middle()))
}

pub fn value_restricted(assignment: &Assignment) -> Option<ValueRestriction> {
    value_restriction_of(assignment.present())
}

pub fn single_peaked(assignment: &Assignment) -> Option<Axis> {
    single_peaked_axis_of(assignment.present())
}

pub fn verdict(assignment: &Assignment) -> RestrictionVerdict {
    RestrictionVerdict {
        value_restricted: value_restricted(assignment),
        single_peaked: single_peaked(assignment),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub n: usize,
    pub assignments: u64,
    /// (i) value-restricted assignments.
    pub value_restricted: u64,
    /// (ii) assignments satisfying the window condition.
    pub condition_c: u64,
    /// (iii) assignments with a linear outcome.
    pub linear: u64,
    /// (iv) value-restricted but failing the window condition.
    pub value_restricted_not_c: u64,
    /// (v) satisfying the window condition but not value-restricted.
    pub c_not_value_restricted: u64,
    /// Value-restricted assignments with a cyclic outcome.
    pub value_restricted_cycles: u64,
    /// Whether the system is simple majority on an odd assembly, where value
    /// restriction is known to rule out cycles.
    pub sen_applicable: bool,
}

impl CensusReport {
    /// Result of the no-cycles-under-value-restriction check, when it applies.
    pub fn sen_check(&self) -> Option<bool> {
        self.sen_applicable
            .then_some(self.value_restricted_cycles == 0)
    }

    fn merge(&mut self, other: &CensusReport) {
        self.assignments += other.assignments;
        self.value_restricted += other.value_restricted;
        self.condition_c += other.condition_c;
        self.linear += other.linear;
        self.value_restricted_not_c += other.value_restricted_not_c;
        self.c_not_value_restricted += other.c_not_value_restricted;
        self.value_restricted_cycles += other.value_restricted_cycles;
    }
}

fn census_range(
    table: &EfficiencyTable,
    restricted: &[bool; 64],
    start: u64,
    end: u64,
) -> CensusReport {
    let evaluator = Evaluator::new();
    let mut report = CensusReport::default();
    if start >= end {
        return report;
    }
    let mut sweep = Sweep::starting_at(table.n(), start);
    loop {
        let classes = sweep.classes();
        let present = classes
            .iter()
            .enumerate()
            .fold(0usize, |acc, (i, &k)| acc | usize::from(k != 0) << i);
        let vr = restricted[present];
        let eval = evaluator.evaluate(table, classes);
        let c = eval.witnesses != 0;
        let linear = eval.tournament.decode().is_linear();
        report.assignments += 1;
        report.value_restricted += u64::from(vr);
        report.condition_c += u64::from(c);
        report.linear += u64::from(linear);
        report.value_restricted_not_c += u64::from(vr && !c);
        report.c_not_value_restricted += u64::from(c && !vr);
        report.value_restricted_cycles += u64::from(vr && !linear);
        if sweep.index() + 1 == end {
            break;
        }
        sweep.advance();
    }
    report
}

pub fn gap_census(sys: &VotingSystem) -> Result<CensusReport> {
    gap_census_with(sys, 1)
}

/// Counts, over all `6^n` assignments, value restriction against the window
/// condition and linear outcomes. The counts do not depend on `jobs`.
pub fn gap_census_with(sys: &VotingSystem, jobs: usize) -> Result<CensusReport> {
    let n = sys.n();
    if n > MAX_VERIFY_ASSEMBLY {
        return Err(Error::SizeBound {
            what: "gap census",
            n,
            max: MAX_VERIFY_ASSEMBLY,
        });
    }
    let table = sys.table()?;
    let mut restricted = [false; 64];
    for (present, slot) in restricted.iter_mut().enumerate() {
        *slot = value_restriction_of(present as u8).is_some();
    }
    let total = assignment_count(n).expect("bounded assembly");
    let mut report = if jobs <= 1 {
        census_range(&table, &restricted, 0, total)
    } else {
        let ranges = partition(total, jobs * 4);
        let parts: Vec<CensusReport> = thread_pool(jobs).install(|| {
            ranges
                .par_iter()
                .map(|&(s, e)| census_range(&table, &restricted, s, e))
                .collect()
        });
        let mut merged = CensusReport::default();
        for part in &parts {
            merged.merge(part);
        }
        merged
    };
    report.n = n;
    report.sen_applicable = sys.is_pure_majority();
    Ok(report)
}
