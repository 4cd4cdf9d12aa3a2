//! Pairwise aggregation of three-candidate profiles under a Guilbaud system,
//! the window condition on consecutive profile labels, and the exhaustive
//! verifier of its equivalence with a linear collective ranking.
//!
//! For a label `p`, the *window* at `p` is the coalition `K(p, p+1, p+2)` of
//! members whose profile is one of three consecutive labels. The condition
//! holds at `p` (and `p` is a *witness*) when the windows at `p` and `p + 1`
//! are both efficient.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coalition::{Assembly, Coalition};
use crate::error::{Error, Result};
use crate::profile::{Candidate, CandidatePermutation, ProfileId};
use crate::systems::{efficiency_bitmaps, EfficiencyTable, VotingSystem, DEFAULT_ENUMERATION_MAX};

/// Largest assembly accepted by [`verify_theorem`] (`6^9` assignments).
pub const MAX_VERIFY_ASSEMBLY: usize = 9;

/// One profile per member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    assembly: Assembly,
    profiles: Vec<ProfileId>,
}

impl Assignment {
    pub fn new(profiles: Vec<ProfileId>) -> Result<Self> {
        let assembly = Assembly::new(profiles.len())?;
        Ok(Assignment { assembly, profiles })
    }

    pub fn from_labels(labels: &[u8]) -> Result<Self> {
        let profiles = labels
            .iter()
            .map(|&l| ProfileId::new(l))
            .collect::<Result<Vec<_>>>()?;
        Assignment::new(profiles)
    }

    pub fn unanimous(n: usize, p: ProfileId) -> Result<Self> {
        Assignment::new(vec![p; n])
    }

    /// The assignment at position `index` of the mixed-radix base-6 order,
    /// member 0 being the least significant digit and digit `d` meaning
    /// profile `d + 1`.
    pub fn from_index(assembly: Assembly, mut index: u64) -> Result<Self> {
        let n = assembly.size();
        if let Some(total) = assignment_count(n) {
            if index >= total {
                return Err(Error::SizeBound {
                    what: "assignment index",
                    n: index as usize,
                    max: total as usize - 1,
                });
            }
        }
        let profiles = (0..n)
            .map(|_| {
                let digit = (index % 6) as u8;
                index /= 6;
                ProfileId::ALL[digit as usize]
            })
            .collect();
        Ok(Assignment { assembly, profiles })
    }

    /// Inverse of [`Assignment::from_index`], when `6^n` fits in a `u64`.
    pub fn index(&self) -> Option<u64> {
        assignment_count(self.assembly.size())?;
        Some(
            self.profiles
                .iter()
                .rev()
                .fold(0u64, |acc, p| acc * 6 + p.index() as u64),
        )
    }

    pub fn assembly(&self) -> Assembly {
        self.assembly
    }

    pub fn profiles(&self) -> &[ProfileId] {
        &self.profiles
    }

    pub fn profile(&self, member: usize) -> Result<ProfileId> {
        self.assembly.check_member(member)?;
        Ok(self.profiles[member])
    }

    /// `K(p)` for each label, as bit masks indexed by `p - 1`.
    pub fn class_masks(&self) -> [u64; 6] {
        let mut masks = [0u64; 6];
        for (member, p) in self.profiles.iter().enumerate() {
            masks[p.index()] |= 1 << member;
        }
        masks
    }

    /// Labels held by at least one member, as a bit mask indexed by `p - 1`.
    pub fn present(&self) -> u8 {
        self.profiles
            .iter()
            .fold(0u8, |acc, p| acc | 1 << p.index())
    }

    pub fn permuted(&self, perm: &CandidatePermutation) -> Assignment {
        Assignment {
            assembly: self.assembly,
            profiles: self
                .profiles
                .iter()
                .map(|&p| perm.apply_profile(p))
                .collect(),
        }
    }
}

/// `6^n`, or `None` past `u64`.
pub fn assignment_count(n: usize) -> Option<u64> {
    6u64.checked_pow(n as u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CycleOrientation {
    /// `a > b > c > a`
    #[serde(rename = "a>b>c>a")]
    Abca,
    /// `a > c > b > a`
    #[serde(rename = "a>c>b>a")]
    Acba,
}

impl fmt::Display for CycleOrientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CycleOrientation::Abca => "a>b>c>a",
            CycleOrientation::Acba => "a>c>b>a",
        })
    }
}

/// The collective relation on `{a, b, c}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Linear(ProfileId),
    Cycle(CycleOrientation),
}

impl Outcome {
    pub fn is_linear(&self) -> bool {
        matches!(self, Outcome::Linear(_))
    }

    pub fn ranking(&self) -> Option<ProfileId> {
        match self {
            Outcome::Linear(p) => Some(*p),
            Outcome::Cycle(_) => None,
        }
    }

    /// The same outcome with candidates renamed.
    pub fn permuted(&self, perm: &CandidatePermutation) -> Outcome {
        Tournament::from_outcome(*self).permuted(perm).decode()
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Linear(p) => write!(f, "linear: {}", p.order()),
            Outcome::Cycle(o) => write!(f, "cyclic: {o}"),
        }
    }
}

/// The three pairwise decisions packed into bits: bit 0 set iff `a` beats `b`,
/// bit 1 iff `a` beats `c`, bit 2 iff `b` beats `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tournament(u8);

pub const PAIRS: [(Candidate, Candidate); 3] = [
    (Candidate::A, Candidate::B),
    (Candidate::A, Candidate::C),
    (Candidate::B, Candidate::C),
];

const fn linear(label: u8) -> Outcome {
    Outcome::Linear(ProfileId::ALL[label as usize - 1])
}

const DECODE: [Outcome; 8] = [
    linear(4),
    linear(3),
    Outcome::Cycle(CycleOrientation::Acba),
    linear(2),
    linear(5),
    Outcome::Cycle(CycleOrientation::Abca),
    linear(6),
    linear(1),
];

impl Tournament {
    pub fn from_bits(bits: u8) -> Self {
        Tournament(bits & 0b111)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    /// Winner of the pair, in either order.
    pub fn winner(self, x: Candidate, y: Candidate) -> Result<Candidate> {
        if x == y {
            return Err(Error::ReflexiveComparison);
        }
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        let slot = PAIRS
            .iter()
            .position(|&p| p == (lo, hi))
            .expect("pair is listed");
        Ok(if self.0 >> slot & 1 == 1 { lo } else { hi })
    }

    pub fn decode(self) -> Outcome {
        DECODE[self.0 as usize]
    }

    pub fn from_outcome(outcome: Outcome) -> Self {
        let idx = DECODE
            .iter()
            .position(|&o| o == outcome)
            .expect("outcome is listed");
        Tournament(idx as u8)
    }

    pub fn permuted(self, perm: &CandidatePermutation) -> Tournament {
        let mut bits = 0u8;
        for &(x, y) in &PAIRS {
            let w = self.winner(x, y).expect("distinct pair");
            let l = if w == x { y } else { x };
            let (w, l) = (perm.apply(w), perm.apply(l));
            let target = PAIRS
                .iter()
                .position(|&(u, v)| (u, v) == (w, l) || (u, v) == (l, w))
                .expect("pair is listed");
            if PAIRS[target].0 == w {
                bits |= 1 << target;
            }
        }
        Tournament(bits)
    }
}

fn check_assembly(sys: &VotingSystem, assignment: &Assignment) -> Result<()> {
    if sys.assembly() != assignment.assembly() {
        return Err(Error::AssemblyMismatch {
            expected: sys.n(),
            found: assignment.assembly().size(),
        });
    }
    Ok(())
}

/// Members whose profile is one of `ps`.
pub fn coalition_of(assignment: &Assignment, ps: &[ProfileId]) -> Result<Coalition> {
    if ps.is_empty() {
        return Err(Error::EmptyProfileSet);
    }
    let masks = assignment.class_masks();
    let bits = ps.iter().fold(0u64, |acc, p| acc | masks[p.index()]);
    Coalition::from_bits(assignment.assembly(), bits)
}

/// The window `K(p, p+1, p+2)`.
pub fn window(assignment: &Assignment, p: ProfileId) -> Coalition {
    coalition_of(assignment, &[p, p.succ(), p.offset(2)]).expect("window is non-empty")
}

/// Labels whose ranking puts `x` above `y`, as a mask indexed by `p - 1`.
fn supporting_labels(x: Candidate, y: Candidate) -> Result<u8> {
    let mut mask = 0u8;
    for p in ProfileId::ALL {
        if p.prefers(x, y)? {
            mask |= 1 << p.index();
        }
    }
    Ok(mask)
}

/// Members ranking `x` above `y`.
pub fn supporters(assignment: &Assignment, x: Candidate, y: Candidate) -> Result<Coalition> {
    if x == y {
        return Err(Error::ReflexiveComparison);
    }
    let bits = assignment
        .profiles()
        .iter()
        .enumerate()
        .filter(|(_, p)| p.prefers(x, y).expect("distinct candidates"))
        .fold(0u64, |acc, (m, _)| acc | 1 << m);
    Coalition::from_bits(assignment.assembly(), bits)
}

/// The collective choice between `x` and `y`: `x` iff its supporters form an
/// efficient coalition.
pub fn pairwise(
    sys: &VotingSystem,
    assignment: &Assignment,
    x: Candidate,
    y: Candidate,
) -> Result<Candidate> {
    check_assembly(sys, assignment)?;
    let pros = supporters(assignment, x, y)?;
    Ok(if sys.is_efficient(&pros)? { x } else { y })
}

pub fn tournament(sys: &VotingSystem, assignment: &Assignment) -> Result<Tournament> {
    let mut bits = 0u8;
    for (slot, &(x, y)) in PAIRS.iter().enumerate() {
        if pairwise(sys, assignment, x, y)? == x {
            bits |= 1 << slot;
        }
    }
    Ok(Tournament(bits))
}

pub fn collective(sys: &VotingSystem, assignment: &Assignment) -> Result<Outcome> {
    Ok(tournament(sys, assignment)?.decode())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionCReport {
    /// Labels `p` with both `K(p, p+1, p+2)` and `K(p+1, p+2, p+3)` efficient,
    /// in increasing order.
    pub witnesses: Vec<ProfileId>,
}

impl ConditionCReport {
    pub fn holds(&self) -> bool {
        !self.witnesses.is_empty()
    }

    fn from_mask(mask: u8) -> Self {
        ConditionCReport {
            witnesses: ProfileId::ALL
                .into_iter()
                .filter(|p| mask >> p.index() & 1 == 1)
                .collect(),
        }
    }
}

pub fn condition_c(sys: &VotingSystem, assignment: &Assignment) -> Result<ConditionCReport> {
    check_assembly(sys, assignment)?;
    let mut efficient = [false; 6];
    for p in ProfileId::ALL {
        efficient[p.index()] = sys.is_efficient(&window(assignment, p))?;
    }
    let mask = ProfileId::ALL
        .into_iter()
        .filter(|p| efficient[p.index()] && efficient[p.succ().index()])
        .fold(0u8, |acc, p| acc | 1 << p.index());
    Ok(ConditionCReport::from_mask(mask))
}

/// Which part of the theorem an assignment contradicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// The condition holds but the outcome is cyclic, or the reverse.
    Equivalence,
    /// A witness `p` of a linear outcome `r` with `r` not in `{p+1, p+2}`.
    WitnessRanking,
    /// A linear outcome `r` for which `r - 1` is not a witness.
    ConverseWitness,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::Equivalence => "equivalence",
            Check::WitnessRanking => "witness-ranking",
            Check::ConverseWitness => "converse-witness",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Counterexample {
    pub assignment_index: u64,
    pub check: Check,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub assignments: u64,
    pub linear: u64,
    pub cyclic: u64,
    pub condition_c_failures: u64,
    pub equivalence_violations: u64,
    pub witness_ranking_violations: u64,
    pub converse_witness_violations: u64,
    pub first_counterexample: Option<Counterexample>,
}

impl TheoremReport {
    pub fn violations(&self) -> u64 {
        self.equivalence_violations
            + self.witness_ranking_violations
            + self.converse_witness_violations
    }

    fn merge(&mut self, other: &TheoremReport) {
        self.assignments += other.assignments;
        self.linear += other.linear;
        self.cyclic += other.cyclic;
        self.condition_c_failures += other.condition_c_failures;
        self.equivalence_violations += other.equivalence_violations;
        self.witness_ranking_violations += other.witness_ranking_violations;
        self.converse_witness_violations += other.converse_witness_violations;
        self.first_counterexample = match (self.first_counterexample, other.first_counterexample) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
    }

    fn flag(&mut self, index: u64, check: Check) {
        match check {
            Check::Equivalence => self.equivalence_violations += 1,
            Check::WitnessRanking => self.witness_ranking_violations += 1,
            Check::ConverseWitness => self.converse_witness_violations += 1,
        }
        let found = Counterexample {
            assignment_index: index,
            check,
        };
        self.first_counterexample = Some(self.first_counterexample.map_or(found, |c| c.min(found)));
    }
}

/// Walks a range of assignments in mixed-radix order, keeping the coalitions
/// `K(p)` up to date.
pub(crate) struct Sweep {
    digits: Vec<u8>,
    classes: [u64; 6],
    index: u64,
}

impl Sweep {
    pub(crate) fn starting_at(n: usize, mut index: u64) -> Self {
        let mut digits = vec![0u8; n];
        let mut classes = [0u64; 6];
        let start = index;
        for (member, d) in digits.iter_mut().enumerate() {
            *d = (index % 6) as u8;
            index /= 6;
            classes[*d as usize] |= 1 << member;
        }
        Sweep {
            digits,
            classes,
            index: start,
        }
    }

    #[inline]
    pub(crate) fn classes(&self) -> &[u64; 6] {
        &self.classes
    }

    #[inline]
    pub(crate) fn index(&self) -> u64 {
        self.index
    }

    #[inline]
    pub(crate) fn advance(&mut self) {
        self.index += 1;
        for (member, d) in self.digits.iter_mut().enumerate() {
            let bit = 1u64 << member;
            self.classes[*d as usize] ^= bit;
            if *d == 5 {
                *d = 0;
                self.classes[0] ^= bit;
            } else {
                *d += 1;
                self.classes[*d as usize] ^= bit;
                return;
            }
        }
    }
}

/// Per-assignment evaluation shared by the verifier and the census.
#[derive(Clone, Copy)]
pub(crate) struct Evaluator {
    /// Profile-label masks supporting each pair of [`PAIRS`].
    support: [u8; 3],
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Evaluation {
    pub(crate) tournament: Tournament,
    /// Witness labels, bit `p - 1`.
    pub(crate) witnesses: u8,
}

impl Evaluator {
    pub(crate) fn new() -> Self {
        let support = PAIRS.map(|(x, y)| supporting_labels(x, y).expect("distinct pair"));
        Evaluator { support }
    }

    #[inline]
    pub(crate) fn evaluate(&self, table: &EfficiencyTable, classes: &[u64; 6]) -> Evaluation {
        let mut tournament = 0u8;
        for (slot, &labels) in self.support.iter().enumerate() {
            let mut pros = 0u64;
            for (i, class) in classes.iter().enumerate() {
                if labels >> i & 1 == 1 {
                    pros |= class;
                }
            }
            if table.get(pros) {
                tournament |= 1 << slot;
            }
        }
        let mut windows = 0u8;
        for i in 0..6 {
            let w = classes[i] | classes[(i + 1) % 6] | classes[(i + 2) % 6];
            if table.get(w) {
                windows |= 1 << i;
            }
        }
        let witnesses = windows & (windows >> 1 | windows << 5) & 0b11_1111;
        Evaluation {
            tournament: Tournament(tournament),
            witnesses,
        }
    }
}

fn verify_range(table: &EfficiencyTable, start: u64, end: u64) -> TheoremReport {
    let evaluator = Evaluator::new();
    let mut report = TheoremReport::default();
    if start >= end {
        return report;
    }
    let mut sweep = Sweep::starting_at(table.n(), start);
    loop {
        let eval = evaluator.evaluate(table, sweep.classes());
        let outcome = eval.tournament.decode();
        let holds = eval.witnesses != 0;
        report.assignments += 1;
        if !holds {
            report.condition_c_failures += 1;
        }
        match outcome {
            Outcome::Cycle(_) => {
                report.cyclic += 1;
                if holds {
                    report.flag(sweep.index(), Check::Equivalence);
                }
            }
            Outcome::Linear(r) => {
                report.linear += 1;
                if !holds {
                    report.flag(sweep.index(), Check::Equivalence);
                }
                // Witnesses allowed for r are r-1 and r-2.
                let allowed = 1u8 << r.pred().index() | 1 << r.offset(-2).index();
                if eval.witnesses & !allowed != 0 {
                    report.flag(sweep.index(), Check::WitnessRanking);
                }
                if eval.witnesses >> r.pred().index() & 1 == 0 {
                    report.flag(sweep.index(), Check::ConverseWitness);
                }
            }
        }
        if sweep.index() + 1 == end {
            break;
        }
        sweep.advance();
    }
    report
}

/// Splits `0..total` into at most `parts` contiguous ranges.
pub(crate) fn partition(total: u64, parts: usize) -> Vec<(u64, u64)> {
    let parts = (parts.max(1) as u64).min(total.max(1));
    let step = total.div_ceil(parts);
    (0..parts)
        .map(|i| (i * step, ((i + 1) * step).min(total)))
        .filter(|(s, e)| s < e)
        .collect()
}

pub(crate) fn thread_pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool")
}

pub(crate) fn verify_table(table: &EfficiencyTable, jobs: usize) -> TheoremReport {
    let total = assignment_count(table.n()).expect("bounded assembly");
    let mut report = TheoremReport::default();
    if jobs <= 1 {
        return verify_range(table, 0, total);
    }
    let ranges = partition(total, jobs * 4);
    let parts: Vec<TheoremReport> = thread_pool(jobs).install(|| {
        ranges
            .par_iter()
            .map(|&(s, e)| verify_range(table, s, e))
            .collect()
    });
    for part in &parts {
        report.merge(part);
    }
    report
}

fn verify_bound(n: usize) -> Result<()> {
    if n > MAX_VERIFY_ASSEMBLY {
        return Err(Error::SizeBound {
            what: "theorem verification",
            n,
            max: MAX_VERIFY_ASSEMBLY,
        });
    }
    Ok(())
}

/// Checks, over all `6^n` assignments, that the window condition holds iff the
/// outcome is linear, that every witness `p` of a linear outcome `r` has
/// `r` in `{p+1, p+2}`, and that `r - 1` is always a witness.
pub fn verify_theorem(sys: &VotingSystem) -> Result<TheoremReport> {
    verify_theorem_with(sys, 1)
}

pub fn verify_theorem_with(sys: &VotingSystem, jobs: usize) -> Result<TheoremReport> {
    verify_bound(sys.n())?;
    Ok(verify_table(&sys.table()?, jobs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    /// Upper bound on `n`; 7 enables the opt-in size.
    pub max_n: usize,
    pub jobs: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            max_n: DEFAULT_ENUMERATION_MAX,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ScanCounterexample {
    pub system_index: u64,
    pub assignment_index: u64,
    pub check: Check,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub n: usize,
    pub systems: u64,
    pub assignments_per_system: u64,
    pub checks: u64,
    pub linear: u64,
    pub cyclic: u64,
    pub equivalence_violations: u64,
    pub witness_ranking_violations: u64,
    pub converse_witness_violations: u64,
    /// Systems under which every assignment satisfies the window condition.
    pub cycle_proof_systems: u64,
    /// Assignments failing the window condition, per system in canonical
    /// enumeration order.
    pub condition_c_failures_per_system: Vec<u64>,
    pub first_counterexample: Option<ScanCounterexample>,
}

impl ScanReport {
    pub fn violations(&self) -> u64 {
        self.equivalence_violations
            + self.witness_ranking_violations
            + self.converse_witness_violations
    }
}

pub fn exhaustive_scan(n: usize) -> Result<ScanReport> {
    exhaustive_scan_with(n, ScanOptions::default())
}

/// Runs [`verify_theorem`] on every enumerated system. The result does not
/// depend on `options.jobs`.
pub fn exhaustive_scan_with(n: usize, options: ScanOptions) -> Result<ScanReport> {
    let bitmaps = efficiency_bitmaps(n, options.max_n)?;
    let run = |bitmap: &u128| verify_table(&EfficiencyTable::from_bitmap(n, *bitmap), 1);
    let per_system: Vec<TheoremReport> = if options.jobs <= 1 {
        bitmaps.iter().map(run).collect()
    } else {
        thread_pool(options.jobs).install(|| bitmaps.par_iter().map(run).collect())
    };

    let assignments_per_system = assignment_count(n).expect("bounded assembly");
    let mut report = ScanReport {
        n,
        systems: per_system.len() as u64,
        assignments_per_system,
        checks: per_system.len() as u64 * assignments_per_system,
        linear: 0,
        cyclic: 0,
        equivalence_violations: 0,
        witness_ranking_violations: 0,
        converse_witness_violations: 0,
        cycle_proof_systems: 0,
        condition_c_failures_per_system: Vec::with_capacity(per_system.len()),
        first_counterexample: None,
    };
    for (i, r) in per_system.iter().enumerate() {
        report.linear += r.linear;
        report.cyclic += r.cyclic;
        report.equivalence_violations += r.equivalence_violations;
        report.witness_ranking_violations += r.witness_ranking_violations;
        report.converse_witness_violations += r.converse_witness_violations;
        report
            .condition_c_failures_per_system
            .push(r.condition_c_failures);
        if r.condition_c_failures == 0 {
            report.cycle_proof_systems += 1;
        }
        if report.first_counterexample.is_none() {
            report.first_counterexample = r.first_counterexample.map(|c| ScanCounterexample {
                system_index: i as u64,
                assignment_index: c.assignment_index,
                check: c.check,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::Candidate::{A, B, C};
    use crate::systems::{dictatorship, enumerate_systems, majority_with_chair};
    use proptest::prelude::*;

    fn p(label: u8) -> ProfileId {
        ProfileId::new(label).unwrap()
    }

    fn labels(ps: &[u8]) -> Vec<ProfileId> {
        ps.iter().map(|&l| p(l)).collect()
    }

    /// Independent recomputation: efficiency straight from the up-closed
    /// family bitmap and supporters by scanning rankings.
    fn oracle_outcome(bitmap: u128, assignment: &Assignment) -> Outcome {
        let efficient = |bits: u64| bitmap >> bits & 1 == 1;
        let beats = |x: Candidate, y: Candidate| {
            let bits = assignment
                .profiles()
                .iter()
                .enumerate()
                .filter(|(_, q)| {
                    let o = q.order();
                    o.position(x) < o.position(y)
                })
                .fold(0u64, |acc, (m, _)| acc | 1 << m);
            efficient(bits)
        };
        let (ab, ac, bc) = (beats(A, B), beats(A, C), beats(B, C));
        for q in ProfileId::ALL {
            let o = q.order();
            if (o.position(A) < o.position(B)) == ab
                && (o.position(A) < o.position(C)) == ac
                && (o.position(B) < o.position(C)) == bc
            {
                return Outcome::Linear(q);
            }
        }
        if ab && bc {
            Outcome::Cycle(CycleOrientation::Abca)
        } else {
            Outcome::Cycle(CycleOrientation::Acba)
        }
    }

    #[test]
    fn decode_table_matches_profile_orders() {
        for q in ProfileId::ALL {
            let o = q.order();
            let mut bits = 0u8;
            for (slot, &(x, y)) in PAIRS.iter().enumerate() {
                if o.prefers(x, y).unwrap() {
                    bits |= 1 << slot;
                }
            }
            assert_eq!(Tournament(bits).decode(), Outcome::Linear(q));
        }
        // a>b, b>c, c>a
        assert_eq!(
            Tournament(0b101).decode(),
            Outcome::Cycle(CycleOrientation::Abca)
        );
        // a>c, c>b, b>a
        assert_eq!(
            Tournament(0b010).decode(),
            Outcome::Cycle(CycleOrientation::Acba)
        );
    }

    #[test]
    fn coalition_of_examples() {
        let asg = Assignment::from_labels(&[1, 3, 5]).unwrap();
        let k = coalition_of(&asg, &labels(&[1, 2, 3])).unwrap();
        assert_eq!(k.members().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(
            coalition_of(&asg, &ProfileId::ALL).unwrap(),
            asg.assembly().full()
        );
        assert!(coalition_of(&asg, &labels(&[2])).unwrap().is_empty());
        assert_eq!(coalition_of(&asg, &[]), Err(Error::EmptyProfileSet));
    }

    #[test]
    fn supporter_windows() {
        let asg = Assignment::from_labels(&[1, 2, 3, 4, 5, 6, 6, 2]).unwrap();
        let cases = [
            ((A, B), [1, 2, 3]),
            ((A, C), [6, 1, 2]),
            ((B, C), [5, 6, 1]),
        ];
        for ((x, y), ps) in cases {
            let direct = supporters(&asg, x, y).unwrap();
            assert_eq!(direct, coalition_of(&asg, &labels(&ps)).unwrap());
            assert_eq!(supporters(&asg, y, x).unwrap(), direct.complement());
        }
        assert_eq!(supporters(&asg, B, B), Err(Error::ReflexiveComparison));
    }

    #[test]
    fn supporting_labels_are_windows() {
        assert_eq!(supporting_labels(A, B).unwrap(), 0b000111);
        assert_eq!(supporting_labels(A, C).unwrap(), 0b100011);
        assert_eq!(supporting_labels(B, C).unwrap(), 0b110001);
    }

    #[test]
    fn classic_condorcet_instance() {
        let sys = majority_with_chair(3, 0).unwrap();
        let asg = Assignment::from_labels(&[1, 3, 5]).unwrap();
        assert_eq!(pairwise(&sys, &asg, A, B).unwrap(), A);
        assert_eq!(pairwise(&sys, &asg, B, C).unwrap(), B);
        assert_eq!(pairwise(&sys, &asg, C, A).unwrap(), C);
        assert_eq!(
            collective(&sys, &asg).unwrap(),
            Outcome::Cycle(CycleOrientation::Abca)
        );
        let c = condition_c(&sys, &asg).unwrap();
        assert!(!c.holds());
        assert!(c.witnesses.is_empty());
        let efficient: Vec<u8> = ProfileId::ALL
            .into_iter()
            .filter(|&q| sys.is_efficient(&window(&asg, q)).unwrap())
            .map(|q| q.get())
            .collect();
        assert_eq!(efficient, vec![1, 3, 5]);
    }

    #[test]
    fn dictatorship_follows_the_dictator() {
        let sys = dictatorship(4, 2).unwrap();
        let asg = Assignment::from_labels(&[1, 4, 6, 3]).unwrap();
        assert_eq!(collective(&sys, &asg).unwrap(), Outcome::Linear(p(6)));
        for (x, y) in PAIRS {
            let expected = if p(6).prefers(x, y).unwrap() { x } else { y };
            assert_eq!(pairwise(&sys, &asg, x, y).unwrap(), expected);
        }
        let at_one = Assignment::from_labels(&[4, 4, 1, 2]).unwrap();
        assert_eq!(
            condition_c(&sys, &at_one).unwrap().witnesses,
            labels(&[5, 6])
        );
    }

    #[test]
    fn unanimity() {
        for n in 1..=4 {
            for sys in enumerate_systems(n).unwrap() {
                for q in ProfileId::ALL {
                    let asg = Assignment::unanimous(n, q).unwrap();
                    assert_eq!(collective(&sys, &asg).unwrap(), Outcome::Linear(q));
                    let c = condition_c(&sys, &asg).unwrap();
                    assert!(c.witnesses.contains(&q.pred()));
                }
            }
        }
    }

    #[test]
    fn mismatched_assemblies() {
        let sys = majority_with_chair(3, 0).unwrap();
        let asg = Assignment::from_labels(&[1, 2]).unwrap();
        assert!(collective(&sys, &asg).is_err());
        assert!(condition_c(&sys, &asg).is_err());
    }

    #[test]
    fn majority_three_cycle_count_matches_oracle() {
        let sys = majority_with_chair(3, 0).unwrap();
        let bitmap = sys.efficiency_bitmap().unwrap();
        let asm = sys.assembly();
        let oracle_cycles = (0..216)
            .filter(|&i| {
                !oracle_outcome(bitmap, &Assignment::from_index(asm, i).unwrap()).is_linear()
            })
            .count() as u64;
        assert_eq!(oracle_cycles, 12);
        let report = verify_theorem(&sys).unwrap();
        assert_eq!(report.cyclic, oracle_cycles);
        assert_eq!(report.linear, 216 - oracle_cycles);
        assert_eq!(report.violations(), 0);
        assert_eq!(report.condition_c_failures, oracle_cycles);
    }

    #[test]
    fn fast_path_matches_api_and_oracle() {
        let evaluator = Evaluator::new();
        for n in 1..=4 {
            for sys in enumerate_systems(n).unwrap() {
                let table = sys.table().unwrap();
                let bitmap = sys.efficiency_bitmap().unwrap();
                let total = assignment_count(n).unwrap();
                let mut sweep = Sweep::starting_at(n, 0);
                for i in 0..total {
                    let asg = Assignment::from_index(sys.assembly(), i).unwrap();
                    assert_eq!(sweep.classes(), &asg.class_masks());
                    let eval = evaluator.evaluate(&table, sweep.classes());
                    let outcome = collective(&sys, &asg).unwrap();
                    assert_eq!(eval.tournament.decode(), outcome);
                    assert_eq!(oracle_outcome(bitmap, &asg), outcome);
                    let report = condition_c(&sys, &asg).unwrap();
                    assert_eq!(ConditionCReport::from_mask(eval.witnesses), report);
                    sweep.advance();
                }
            }
        }
    }

    #[test]
    fn dictatorships_never_cycle() {
        for n in 1..=5 {
            for d in 0..n {
                let report = verify_theorem(&dictatorship(n, d).unwrap()).unwrap();
                assert_eq!(report.cyclic, 0);
                assert_eq!(report.condition_c_failures, 0);
                assert_eq!(report.assignments, 6u64.pow(n as u32));
            }
        }
    }

    #[test]
    fn verification_bound() {
        let sys = majority_with_chair(10, 0).unwrap();
        assert!(matches!(verify_theorem(&sys), Err(Error::SizeBound { .. })));
    }

    #[test]
    fn invalid_system_is_caught() {
        // Two dictators: both {0} and {1} efficient, so C1 fails and the
        // verifier should see the equivalence break.
        let sys = VotingSystem::from_member_lists(2, [vec![0], vec![1]]).unwrap();
        let report = verify_theorem(&sys).unwrap();
        assert!(report.violations() > 0);
        assert!(report.first_counterexample.is_some());
    }

    #[test]
    fn parallel_verification_is_deterministic() {
        let sys = majority_with_chair(6, 2).unwrap();
        let serial = verify_theorem_with(&sys, 1).unwrap();
        for jobs in [2, 3, 8] {
            assert_eq!(verify_theorem_with(&sys, jobs).unwrap(), serial);
        }
        let broken = VotingSystem::from_member_lists(3, [vec![0], vec![1]]).unwrap();
        assert_eq!(
            verify_theorem_with(&broken, 1).unwrap(),
            verify_theorem_with(&broken, 5).unwrap()
        );
    }

    #[test]
    fn scan_small() {
        let r1 = exhaustive_scan(1).unwrap();
        assert_eq!(
            (r1.systems, r1.checks, r1.linear, r1.violations()),
            (1, 6, 6, 0)
        );
        let r3 = exhaustive_scan(3).unwrap();
        assert_eq!((r3.systems, r3.checks, r3.violations()), (4, 864, 0));
        assert_eq!(r3.cyclic, 12);
        assert_eq!(r3.cycle_proof_systems, 3);
        assert!(exhaustive_scan(7).is_err());
        assert!(exhaustive_scan(0).is_err());
    }

    #[test]
    fn scan_is_independent_of_jobs() {
        let serial = exhaustive_scan(4).unwrap();
        let parallel = exhaustive_scan_with(4, ScanOptions { max_n: 6, jobs: 4 }).unwrap();
        assert_eq!(serial, parallel);
    }

    #[test]
    fn partitions_cover_the_range() {
        for (total, parts) in [(216u64, 8usize), (6, 32), (7776, 3), (1, 1)] {
            let ranges = partition(total, parts);
            assert_eq!(ranges.first().unwrap().0, 0);
            assert_eq!(ranges.last().unwrap().1, total);
            assert!(ranges.windows(2).all(|w| w[0].1 == w[1].0));
        }
    }

    #[test]
    fn witness_cases_force_the_proof_constraints() {
        // Each witness p falls in one of two shapes: rankings p and p+1 share
        // their top candidate, or their bottom one. The two windows then force
        // the pairwise decisions of that shape.
        for n in 1..=4 {
            for sys in enumerate_systems(n).unwrap() {
                for i in 0..assignment_count(n).unwrap() {
                    let asg = Assignment::from_index(sys.assembly(), i).unwrap();
                    let report = condition_c(&sys, &asg).unwrap();
                    let t = tournament(&sys, &asg).unwrap();
                    for &w in &report.witnesses {
                        let [x, y, z] = w.order().candidates();
                        let next = w.succ().order();
                        let (first, second) = if next.best() == x {
                            // x>y>z, x>z>y, z>x>y, z>y>x
                            ((x, y), (z, y))
                        } else {
                            assert_eq!(next.worst(), z);
                            // x>y>z, y>x>z, y>z>x, z>y>x
                            ((y, z), (y, x))
                        };
                        assert_eq!(t.winner(first.0, first.1).unwrap(), first.0);
                        assert_eq!(t.winner(second.0, second.1).unwrap(), second.0);
                        let r = t.decode().ranking().unwrap();
                        assert!(r == w.succ() || r == w.offset(2));
                    }
                }
            }
        }
    }

    #[test]
    fn assignment_index_roundtrip() {
        let asm = Assembly::new(4).unwrap();
        for i in [0u64, 1, 5, 6, 215, 1295] {
            assert_eq!(Assignment::from_index(asm, i).unwrap().index(), Some(i));
        }
        assert!(Assignment::from_index(asm, 1296).is_err());
        assert_eq!(
            Assignment::from_index(asm, 7).unwrap().profiles(),
            &labels(&[2, 2, 1, 1])[..]
        );
    }

    #[test]
    fn outcome_display() {
        assert_eq!(Outcome::Linear(p(3)).to_string(), "linear: c>a>b");
        assert_eq!(
            Outcome::Cycle(CycleOrientation::Abca).to_string(),
            "cyclic: a>b>c>a"
        );
    }

    proptest! {
        #[test]
        fn renaming_is_equivariant(
            labels in prop::collection::vec(1u8..=6, 1..=7),
            perm_index in 0usize..6,
            chair in 0usize..7,
        ) {
            let asg = Assignment::from_labels(&labels).unwrap();
            let n = labels.len();
            let sys = majority_with_chair(n, chair % n).unwrap();
            let perm = CandidatePermutation::all()[perm_index];
            let before = collective(&sys, &asg).unwrap();
            let after = collective(&sys, &asg.permuted(&perm)).unwrap();
            prop_assert_eq!(after, before.permuted(&perm));
        }

        #[test]
        fn pairwise_is_antisymmetric(
            labels in prop::collection::vec(1u8..=6, 1..=6),
            d in 0usize..6,
            x in 0usize..3,
            y in 0usize..3,
        ) {
            prop_assume!(x != y);
            let asg = Assignment::from_labels(&labels).unwrap();
            let n = labels.len();
            let (x, y) = (Candidate::ALL[x], Candidate::ALL[y]);
            for sys in [majority_with_chair(n, d % n).unwrap(), dictatorship(n, d % n).unwrap()] {
                prop_assert_eq!(
                    pairwise(&sys, &asg, x, y).unwrap(),
                    pairwise(&sys, &asg, y, x).unwrap()
                );
            }
        }
    }
}
