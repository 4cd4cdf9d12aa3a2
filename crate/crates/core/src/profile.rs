//! The three candidates, their six strict rankings and the cyclic labelling
//! of those rankings by `1..=6`.
//!
//! The labels form `Z/6Z` (with `6` standing for `0`):
//!
//! | label | ranking   |
//! |-------|-----------|
//! | 1     | a > b > c |
//! | 2     | a > c > b |
//! | 3     | c > a > b |
//! | 4     | c > b > a |
//! | 5     | b > c > a |
//! | 6     | b > a > c |
//!
//! Consecutive labels differ by swapping either the top two or the bottom two
//! candidates, and `p` and `p + 3` are reverse rankings.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Candidate {
    A,
    B,
    C,
}

impl Candidate {
    pub const ALL: [Candidate; 3] = [Candidate::A, Candidate::B, Candidate::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Candidate> {
        Self::ALL.get(index).copied()
    }

    pub fn as_char(self) -> char {
        match self {
            Candidate::A => 'a',
            Candidate::B => 'b',
            Candidate::C => 'c',
        }
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A strict ranking of `{a, b, c}`, best first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LinearOrder([Candidate; 3]);

impl LinearOrder {
    pub fn new(best: Candidate, middle: Candidate, worst: Candidate) -> Result<Self> {
        if best == middle || middle == worst || best == worst {
            return Err(Error::RepeatedCandidate);
        }
        Ok(LinearOrder([best, middle, worst]))
    }

    const fn from_table(order: [Candidate; 3]) -> Self {
        LinearOrder(order)
    }

    pub fn candidates(&self) -> [Candidate; 3] {
        self.0
    }

    pub fn best(&self) -> Candidate {
        self.0[0]
    }

    pub fn middle(&self) -> Candidate {
        self.0[1]
    }

    pub fn worst(&self) -> Candidate {
        self.0[2]
    }

    /// Rank of `c`: 0 for best, 2 for worst.
    pub fn position(&self, c: Candidate) -> usize {
        self.0
            .iter()
            .position(|&x| x == c)
            .expect("every candidate is ranked")
    }

    pub fn prefers(&self, x: Candidate, y: Candidate) -> Result<bool> {
        if x == y {
            return Err(Error::ReflexiveComparison);
        }
        Ok(self.position(x) < self.position(y))
    }

    pub fn reversed(&self) -> LinearOrder {
        LinearOrder([self.0[2], self.0[1], self.0[0]])
    }

    pub fn profile_id(&self) -> ProfileId {
        ProfileId::ALL
            .into_iter()
            .find(|p| p.order() == *self)
            .expect("the table covers all six orders")
    }

    pub fn permuted(&self, perm: &CandidatePermutation) -> LinearOrder {
        LinearOrder(self.0.map(|c| perm.apply(c)))
    }
}

impl fmt::Display for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}>{}>{}", self.0[0], self.0[1], self.0[2])
    }
}

use Candidate::{A, B, C};

const PROFILE_TABLE: [LinearOrder; 6] = [
    LinearOrder::from_table([A, B, C]),
    LinearOrder::from_table([A, C, B]),
    LinearOrder::from_table([C, A, B]),
    LinearOrder::from_table([C, B, A]),
    LinearOrder::from_table([B, C, A]),
    LinearOrder::from_table([B, A, C]),
];

/// A ranking label in `1..=6`, read as a residue mod 6.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct ProfileId(u8);

impl ProfileId {
    pub const ALL: [ProfileId; 6] = [
        ProfileId(1),
        ProfileId(2),
        ProfileId(3),
        ProfileId(4),
        ProfileId(5),
        ProfileId(6),
    ];

    pub fn new(label: u8) -> Result<Self> {
        if (1..=6).contains(&label) {
            Ok(ProfileId(label))
        } else {
            Err(Error::ProfileOutOfRange(label as i64))
        }
    }

    /// Maps any integer onto its residue, `0` and `6` both giving `6`.
    pub fn from_residue(k: i64) -> Self {
        let r = k.rem_euclid(6) as u8;
        ProfileId(if r == 0 { 6 } else { r })
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Zero-based position in the table, `label - 1`.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub fn offset(self, k: i64) -> ProfileId {
        ProfileId::from_residue(self.0 as i64 + k)
    }

    pub fn succ(self) -> ProfileId {
        self.offset(1)
    }

    pub fn pred(self) -> ProfileId {
        self.offset(-1)
    }

    pub fn opposite(self) -> ProfileId {
        self.offset(3)
    }

    pub fn order(self) -> LinearOrder {
        PROFILE_TABLE[self.index()]
    }

    pub fn prefers(self, x: Candidate, y: Candidate) -> Result<bool> {
        self.order().prefers(x, y)
    }
}

impl TryFrom<u8> for ProfileId {
    type Error = Error;

    fn try_from(label: u8) -> Result<Self> {
        ProfileId::new(label)
    }
}

impl From<ProfileId> for u8 {
    fn from(p: ProfileId) -> u8 {
        p.0
    }
}

impl fmt::Display for ProfileId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn profile_order(p: ProfileId) -> LinearOrder {
    p.order()
}

/// A renaming of the candidates; `images[i]` is the new name of candidate `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CandidatePermutation([Candidate; 3]);

impl CandidatePermutation {
    pub fn new(
        image_of_a: Candidate,
        image_of_b: Candidate,
        image_of_c: Candidate,
    ) -> Result<Self> {
        LinearOrder::new(image_of_a, image_of_b, image_of_c)?;
        Ok(CandidatePermutation([image_of_a, image_of_b, image_of_c]))
    }

    pub fn identity() -> Self {
        CandidatePermutation([A, B, C])
    }

    pub fn all() -> [CandidatePermutation; 6] {
        PROFILE_TABLE.map(|o| CandidatePermutation(o.0))
    }

    /// The renaming sending `order` to `a > b > c`.
    pub fn normalizing(order: LinearOrder) -> Self {
        let mut images = [A; 3];
        for (rank, c) in order.0.iter().enumerate() {
            images[c.index()] = Candidate::ALL[rank];
        }
        CandidatePermutation(images)
    }

    pub fn apply(&self, c: Candidate) -> Candidate {
        self.0[c.index()]
    }

    pub fn apply_profile(&self, p: ProfileId) -> ProfileId {
        p.order().permuted(self).profile_id()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(label: u8) -> ProfileId {
        ProfileId::new(label).unwrap()
    }

    #[test]
    fn table_rows() {
        assert_eq!(profile_order(p(1)).to_string(), "a>b>c");
        assert_eq!(profile_order(p(4)).to_string(), "c>b>a");
        assert_eq!(profile_order(p(6)).to_string(), "b>a>c");
        assert_eq!(profile_order(p(6)).candidates(), [B, A, C]);
    }

    #[test]
    fn prefers_examples() {
        assert_eq!(p(3).prefers(A, B), Ok(true));
        assert_eq!(p(5).prefers(A, C), Ok(false));
        for q in ProfileId::ALL {
            for x in Candidate::ALL {
                assert_eq!(q.prefers(x, x), Err(Error::ReflexiveComparison));
            }
        }
    }

    #[test]
    fn labels_out_of_range() {
        assert!(ProfileId::new(0).is_err());
        assert!(ProfileId::new(7).is_err());
        assert_eq!(ProfileId::from_residue(0), p(6));
        assert_eq!(ProfileId::from_residue(-1), p(5));
    }

    #[test]
    fn opposite_examples() {
        assert_eq!(p(1).opposite(), p(4));
        assert_eq!(p(4).order(), p(1).order().reversed());
        assert_eq!(p(6).opposite(), p(3));
        assert_eq!(p(3).order(), p(6).order().reversed());
        for q in ProfileId::ALL {
            assert_eq!(q.opposite().opposite(), q);
        }
    }

    #[test]
    fn succ_wraps() {
        assert_eq!(p(6).succ(), p(1));
        assert_eq!(p(1).pred(), p(6));
        assert_eq!(p(2).succ(), p(3));
    }

    #[test]
    fn table_is_a_bijection() {
        for q in ProfileId::ALL {
            assert_eq!(q.order().profile_id(), q);
        }
    }

    #[test]
    fn repeated_candidates_rejected() {
        assert_eq!(LinearOrder::new(A, A, B), Err(Error::RepeatedCandidate));
        assert!(CandidatePermutation::new(C, C, A).is_err());
    }

    #[test]
    fn normalizing_permutation() {
        for q in ProfileId::ALL {
            let perm = CandidatePermutation::normalizing(q.order());
            assert_eq!(perm.apply_profile(q), p(1));
        }
    }

    #[test]
    fn permutations_act_on_labels_bijectively() {
        for perm in CandidatePermutation::all() {
            let mut images: Vec<u8> = ProfileId::ALL
                .iter()
                .map(|&q| perm.apply_profile(q).get())
                .collect();
            images.sort_unstable();
            assert_eq!(images, vec![1, 2, 3, 4, 5, 6]);
        }
        let id = CandidatePermutation::identity();
        assert!(ProfileId::ALL.iter().all(|&q| id.apply_profile(q) == q));
    }
}
