//! Guilbaud voting systems: families of efficient coalitions in which exactly
//! one of every coalition and its complement is efficient (C1) and every
//! superset of an efficient coalition is efficient (C2).
//!
//! A system is stored as the antichain of its minimal efficient coalitions, so
//! C2 holds by construction. C1 then splits into two antichain tests:
//! every two minimal coalitions intersect (*proper*), and every coalition that
//! meets all minimal coalitions contains one of them (*strong*).
//!
//! Enumerated systems are labelled: two systems that differ only by a
//! relabelling of members are listed separately.

use std::fmt;

use serde::Serialize;

use crate::coalition::{Assembly, Coalition};
use crate::error::{Error, Result};

/// Largest antichain any constructor will materialize.
pub const MAX_ANTICHAIN: usize = 1 << 20;

/// Largest assembly for which a full efficiency table is built.
pub const MAX_TABLE_ASSEMBLY: usize = 24;

/// Default upper bound for [`enumerate_systems`].
pub const DEFAULT_ENUMERATION_MAX: usize = 6;

/// Hard upper bound for enumeration, reachable only by opting in.
pub const OPT_IN_ENUMERATION_MAX: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `coalition` and its complement are both efficient, or both inefficient.
    C1 {
        coalition: Coalition,
        both_efficient: bool,
    },
    /// `smaller` is contained in `larger`, so the list is not an antichain.
    Antichain {
        smaller: Coalition,
        larger: Coalition,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::C1 {
                coalition,
                both_efficient,
            } => write!(
                f,
                "C1 violated: coalition {} and its complement {} are both {}",
                coalition,
                coalition.complement(),
                if *both_efficient {
                    "efficient"
                } else {
                    "inefficient"
                }
            ),
            Violation::Antichain { smaller, larger } => {
                write!(f, "not an antichain: {smaller} is contained in {larger}")
            }
        }
    }
}

impl std::error::Error for Violation {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.violation.is_none()
    }
}

/// A family of efficient coalitions, given by its minimal members.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VotingSystem {
    assembly: Assembly,
    minimal: Vec<Coalition>,
}

impl VotingSystem {
    /// Builds a system from a list of minimal coalitions without checking C1
    /// or the antichain property; use [`VotingSystem::validate`] or
    /// [`VotingSystem::checked`] for that.
    pub fn from_minimal(assembly: Assembly, mut minimal: Vec<Coalition>) -> Result<Self> {
        for m in &minimal {
            if m.assembly() != assembly {
                return Err(Error::AssemblyMismatch {
                    expected: assembly.size(),
                    found: m.assembly().size(),
                });
            }
        }
        minimal.sort_by_key(|m| m.bits());
        Ok(VotingSystem { assembly, minimal })
    }

    pub fn from_member_lists<L>(n: usize, lists: L) -> Result<Self>
    where
        L: IntoIterator,
        L::Item: IntoIterator<Item = usize>,
    {
        let assembly = Assembly::new(n)?;
        let minimal = lists
            .into_iter()
            .map(|members| Coalition::from_members(assembly, members))
            .collect::<Result<Vec<_>>>()?;
        VotingSystem::from_minimal(assembly, minimal)
    }

    /// Like [`VotingSystem::from_minimal`], rejecting anything that is not a
    /// Guilbaud system.
    pub fn checked(assembly: Assembly, minimal: Vec<Coalition>) -> Result<Self> {
        let sys = VotingSystem::from_minimal(assembly, minimal)?;
        match sys.validate().violation {
            None => Ok(sys),
            Some(v) => Err(Error::NotGuilbaud(v)),
        }
    }

    /// Decodes a family stored as a bitmap over coalition indices (bit `K` set
    /// iff coalition `K` is efficient). Only the minimal members are kept.
    pub fn from_efficiency_bitmap(n: usize, bitmap: u128) -> Result<Self> {
        if n > OPT_IN_ENUMERATION_MAX {
            return Err(Error::SizeBound {
                what: "efficiency bitmap",
                n,
                max: OPT_IN_ENUMERATION_MAX,
            });
        }
        let assembly = Assembly::new(n)?;
        let minimal = minimal_from_bitmap(n, bitmap)
            .map(|bits| Coalition::from_bits(assembly, bits))
            .collect::<Result<Vec<_>>>()?;
        VotingSystem::from_minimal(assembly, minimal)
    }

    pub fn assembly(&self) -> Assembly {
        self.assembly
    }

    pub fn n(&self) -> usize {
        self.assembly.size()
    }

    pub fn minimal(&self) -> &[Coalition] {
        &self.minimal
    }

    pub fn is_efficient(&self, k: &Coalition) -> Result<bool> {
        if k.assembly() != self.assembly {
            return Err(Error::AssemblyMismatch {
                expected: self.n(),
                found: k.assembly().size(),
            });
        }
        Ok(self.efficient_bits(k.bits()))
    }

    pub(crate) fn efficient_bits(&self, bits: u64) -> bool {
        self.minimal.iter().any(|m| m.bits() & !bits == 0)
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport {
            violation: self.find_violation(),
        }
    }

    fn find_violation(&self) -> Option<Violation> {
        for (i, m1) in self.minimal.iter().enumerate() {
            for m2 in &self.minimal[i + 1..] {
                if m1.is_subset(m2) || m2.is_subset(m1) {
                    let (smaller, larger) = if m1.len() <= m2.len() {
                        (*m1, *m2)
                    } else {
                        (*m2, *m1)
                    };
                    return Some(Violation::Antichain { smaller, larger });
                }
            }
        }
        // Proper: two disjoint minimal coalitions M1, M2 make M1 and its
        // complement (which contains M2) both efficient.
        for (i, m1) in self.minimal.iter().enumerate() {
            for m2 in &self.minimal[i..] {
                if m1.bits() & m2.bits() == 0 {
                    return Some(Violation::C1 {
                        coalition: *m1,
                        both_efficient: true,
                    });
                }
            }
        }
        // Strong: a transversal of the antichain containing none of its
        // members is inefficient, and so is its complement.
        let minimal: Vec<u64> = self.minimal.iter().map(|m| m.bits()).collect();
        find_blocker(&minimal, 0, 0).map(|bits| Violation::C1 {
            coalition: Coalition::from_bits(self.assembly, bits)
                .expect("blocker lies in the assembly"),
            both_efficient: false,
        })
    }

    /// Checks C1 on every complementary pair of coalitions, without the
    /// antichain shortcuts. Returns the first failing coalition in index
    /// order.
    pub fn exhaustive_c1_violation(&self) -> Result<Option<Violation>> {
        let table = self.table()?;
        let mask = self.assembly.mask();
        for bits in 0..=mask >> 1 {
            let here = table.get(bits);
            let there = table.get(!bits & mask);
            if here == there {
                return Ok(Some(Violation::C1 {
                    coalition: Coalition::from_bits(self.assembly, bits)?,
                    both_efficient: here,
                }));
            }
        }
        Ok(None)
    }

    pub fn table(&self) -> Result<EfficiencyTable> {
        EfficiencyTable::from_minimal(self.n(), self.minimal.iter().map(|m| m.bits()))
    }

    /// The full family as a bitmap over coalition indices, for `n <= 7`.
    pub fn efficiency_bitmap(&self) -> Option<u128> {
        if self.n() > OPT_IN_ENUMERATION_MAX {
            return None;
        }
        let mut bitmap = 0u128;
        for bits in 0..1u64 << self.n() {
            if self.efficient_bits(bits) {
                bitmap |= 1 << bits;
            }
        }
        Some(bitmap)
    }

    /// True for simple majority on an odd assembly.
    pub fn is_pure_majority(&self) -> bool {
        let n = self.n();
        if n.is_multiple_of(2) {
            return false;
        }
        let k = n.div_ceil(2);
        self.minimal.iter().all(|m| m.len() == k)
            && binomial(n, k).is_some_and(|c| c == self.minimal.len() as u128)
            && self.validate().valid()
    }
}

/// Depth-first search for a coalition meeting every set in `minimal` while
/// containing none of them. `inside` is the partial coalition, `outside` the
/// members already excluded.
fn find_blocker(minimal: &[u64], inside: u64, mut outside: u64) -> Option<u64> {
    let Some(&unhit) = minimal.iter().find(|&&m| m & inside == 0) else {
        return Some(inside);
    };
    let mut candidates = unhit & !outside;
    while candidates != 0 {
        let bit = candidates & candidates.wrapping_neg();
        candidates ^= bit;
        let next = inside | bit;
        if !minimal.iter().any(|&m| m & !next == 0) {
            if let Some(found) = find_blocker(minimal, next, outside) {
                return Some(found);
            }
        }
        outside |= bit;
    }
    None
}

/// One bit per coalition of an assembly of at most [`MAX_TABLE_ASSEMBLY`]
/// members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EfficiencyTable {
    n: usize,
    words: Vec<u64>,
}

impl EfficiencyTable {
    pub fn from_minimal<I>(n: usize, minimal: I) -> Result<Self>
    where
        I: IntoIterator<Item = u64>,
    {
        if n > MAX_TABLE_ASSEMBLY {
            return Err(Error::SizeBound {
                what: "efficiency table",
                n,
                max: MAX_TABLE_ASSEMBLY,
            });
        }
        let size = 1usize << n;
        let mut words = vec![0u64; size.div_ceil(64)];
        for m in minimal {
            words[(m >> 6) as usize] |= 1 << (m & 63);
        }
        // Up-closure, one member at a time.
        for i in 0..n {
            let bit = 1usize << i;
            for k in 0..size {
                if k & bit != 0 {
                    let below = k ^ bit;
                    if words[below >> 6] >> (below & 63) & 1 == 1 {
                        words[k >> 6] |= 1 << (k & 63);
                    }
                }
            }
        }
        Ok(EfficiencyTable { n, words })
    }

    pub fn from_bitmap(n: usize, bitmap: u128) -> Self {
        assert!(n <= OPT_IN_ENUMERATION_MAX);
        let mut words = vec![bitmap as u64];
        if n == 7 {
            words.push((bitmap >> 64) as u64);
        }
        EfficiencyTable { n, words }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, bits: u64) -> bool {
        self.words[(bits >> 6) as usize] >> (bits & 63) & 1 == 1
    }
}

pub fn is_efficient(sys: &VotingSystem, k: &Coalition) -> Result<bool> {
    sys.is_efficient(k)
}

pub fn validate(sys: &VotingSystem) -> ValidationReport {
    sys.validate()
}

pub fn dictatorship(n: usize, dictator: usize) -> Result<VotingSystem> {
    let assembly = Assembly::new(n)?;
    let m = Coalition::from_members(assembly, [dictator])?;
    VotingSystem::from_minimal(assembly, vec![m])
}

/// Simple majority in which the chair's side wins exact ties.
pub fn majority_with_chair(n: usize, chair: usize) -> Result<VotingSystem> {
    let assembly = Assembly::new(n)?;
    assembly.check_member(chair)?;
    let chair_bit = 1u64 << chair;
    let minimal: Vec<u64> = if n % 2 == 1 {
        subsets_of_size(n, n.div_ceil(2))?.collect()
    } else {
        let with_chair = subsets_of_size(n, n / 2)?.filter(|k| k & chair_bit != 0);
        let without_chair = subsets_of_size(n, n / 2 + 1)?.filter(|k| k & chair_bit == 0);
        with_chair.chain(without_chair).collect()
    };
    let minimal = minimal
        .into_iter()
        .map(|bits| Coalition::from_bits(assembly, bits))
        .collect::<Result<Vec<_>>>()?;
    VotingSystem::from_minimal(assembly, minimal)
}

/// Weighted quota game: `K` is efficient iff the weights of its members sum to
/// at least `quota`. Fails unless the result is a Guilbaud system.
pub fn weighted(weights: &[u64], quota: u64) -> Result<VotingSystem> {
    let sys = weighted_family(weights, quota)?;
    match sys.validate().violation {
        None => Ok(sys),
        Some(v) => Err(Error::NotGuilbaud(v)),
    }
}

/// The minimal coalitions of a weighted quota game, without checking C1.
pub fn weighted_family(weights: &[u64], quota: u64) -> Result<VotingSystem> {
    let assembly = Assembly::new(weights.len())?;
    if weights.iter().all(|&w| w == 0) {
        return Err(Error::NoPositiveWeight);
    }
    let mut suffix = vec![0u128; weights.len() + 1];
    for i in (0..weights.len()).rev() {
        suffix[i] = suffix[i + 1] + weights[i] as u128;
    }
    let mut search = WeightSearch {
        weights,
        quota: quota as u128,
        suffix: &suffix,
        found: Vec::new(),
    };
    search.run(0, 0, 0)?;
    let minimal = search
        .found
        .into_iter()
        .map(|bits| Coalition::from_bits(assembly, bits))
        .collect::<Result<Vec<_>>>()?;
    VotingSystem::from_minimal(assembly, minimal)
}

struct WeightSearch<'a> {
    weights: &'a [u64],
    quota: u128,
    suffix: &'a [u128],
    found: Vec<u64>,
}

impl WeightSearch<'_> {
    fn run(&mut self, i: usize, bits: u64, sum: u128) -> Result<()> {
        if sum >= self.quota {
            let minimal = (0..self.weights.len())
                .filter(|&j| bits & (1 << j) != 0)
                .all(|j| sum - (self.weights[j] as u128) < self.quota);
            if minimal {
                if self.found.len() == MAX_ANTICHAIN {
                    return Err(Error::AntichainTooLarge(MAX_ANTICHAIN));
                }
                self.found.push(bits);
            }
            return Ok(());
        }
        if i == self.weights.len() || sum + self.suffix[i] < self.quota {
            return Ok(());
        }
        if self.weights[i] > 0 {
            self.run(i + 1, bits | 1 << i, sum + self.weights[i] as u128)?;
        }
        self.run(i + 1, bits, sum)
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(c)
}

/// All `k`-subsets of `0..n` as bit masks, in increasing numeric order.
fn subsets_of_size(n: usize, k: usize) -> Result<impl Iterator<Item = u64>> {
    match binomial(n, k) {
        Some(c) if c <= MAX_ANTICHAIN as u128 => {}
        _ => return Err(Error::AntichainTooLarge(MAX_ANTICHAIN)),
    }
    let limit: u128 = 1u128 << n;
    let first: Option<u64> = if k == 0 {
        Some(0)
    } else {
        Some(((1u128 << k) - 1) as u64)
    };
    Ok(std::iter::successors(first, move |&x| {
        if x == 0 {
            return None;
        }
        // Gosper's hack.
        let c = x & x.wrapping_neg();
        let r = x as u128 + c as u128;
        let next = (((r as u64 ^ x) >> 2) / c) as u128 | r;
        (next < limit).then_some(next as u64)
    }))
}

fn minimal_from_bitmap(n: usize, bitmap: u128) -> impl Iterator<Item = u64> {
    (0..1u64 << n).filter(move |&k| {
        bitmap >> k & 1 == 1
            && (0..n).all(|i| k & (1 << i) == 0 || bitmap >> (k ^ (1 << i)) & 1 == 0)
    })
}

/// Efficiency bitmaps of every Guilbaud system on `n` members, in increasing
/// numeric order.
///
/// Coalitions are decided in complementary pairs; choosing one side adds its
/// whole up-set, and a choice is abandoned once some coalition and its
/// complement would both be efficient.
pub fn efficiency_bitmaps(n: usize, max_n: usize) -> Result<Vec<u128>> {
    let max = max_n.min(OPT_IN_ENUMERATION_MAX);
    if n == 0 || n > max {
        return Err(Error::SizeBound {
            what: "system enumeration",
            n,
            max,
        });
    }
    let size = 1usize << n;
    let full = (size - 1) as u64;
    let up: Vec<u128> = (0..size as u64)
        .map(|k| {
            (0..size as u64)
                .filter(|&l| k & !l == 0)
                .fold(0u128, |acc, l| acc | 1 << l)
        })
        .collect();
    // Representatives exclude the last member; smaller coalitions first so
    // propagation settles most pairs early.
    let mut reps: Vec<u64> = (0..(size / 2) as u64).collect();
    reps.sort_by_key(|k| (k.count_ones(), *k));

    struct Dfs<'a> {
        up: &'a [u128],
        reps: &'a [u64],
        full: u64,
        shift: u32,
        out: Vec<u128>,
    }

    impl Dfs<'_> {
        fn mirror(&self, eff: u128) -> u128 {
            // Coalition K maps to full ^ K, which reverses the low 2^n bits.
            eff.reverse_bits() >> self.shift
        }

        fn go(&mut self, idx: usize, eff: u128) {
            let Some(&k) = self.reps.get(idx) else {
                self.out.push(eff);
                return;
            };
            let kc = self.full ^ k;
            if eff >> k & 1 == 1 || eff >> kc & 1 == 1 {
                self.go(idx + 1, eff);
                return;
            }
            for side in [k, kc] {
                let next = eff | self.up[side as usize];
                if next & self.mirror(next) == 0 {
                    self.go(idx + 1, next);
                }
            }
        }
    }

    let mut dfs = Dfs {
        up: &up,
        reps: &reps,
        full,
        shift: 128 - size as u32,
        out: Vec::new(),
    };
    dfs.go(0, 0);
    let mut out = dfs.out;
    out.sort_unstable();
    Ok(out)
}

/// Every Guilbaud system on `n` members (`1 <= n <= 6`), in canonical order.
pub fn enumerate_systems(n: usize) -> Result<Systems> {
    enumerate_systems_up_to(n, DEFAULT_ENUMERATION_MAX)
}

/// As [`enumerate_systems`], with the upper bound raised to `max_n`
/// (at most 7).
pub fn enumerate_systems_up_to(n: usize, max_n: usize) -> Result<Systems> {
    Ok(Systems {
        n,
        bitmaps: efficiency_bitmaps(n, max_n)?.into_iter(),
    })
}

pub struct Systems {
    n: usize,
    bitmaps: std::vec::IntoIter<u128>,
}

impl Iterator for Systems {
    type Item = VotingSystem;

    fn next(&mut self) -> Option<VotingSystem> {
        self.bitmaps.next().map(|b| {
            VotingSystem::from_efficiency_bitmap(self.n, b).expect("enumerated bitmaps decode")
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.bitmaps.size_hint()
    }
}

impl ExactSizeIterator for Systems {}

/// Summary of a system for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemSummary {
    pub n: usize,
    pub minimal: Vec<Vec<usize>>,
}

impl From<&VotingSystem> for SystemSummary {
    fn from(sys: &VotingSystem) -> Self {
        SystemSummary {
            n: sys.n(),
            minimal: sys
                .minimal()
                .iter()
                .map(|m| m.members().collect())
                .collect(),
        }
    }
}
