use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_ASSEMBLY: usize = 64;

/// An assembly of `n` members, indexed `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Assembly(u8);

impl Assembly {
    pub fn new(n: usize) -> Result<Self> {
        if (1..=MAX_ASSEMBLY).contains(&n) {
            Ok(Assembly(n as u8))
        } else {
            Err(Error::AssemblySize(n))
        }
    }

    pub fn size(self) -> usize {
        self.0 as usize
    }

    /// Bit mask with one bit per member.
    pub fn mask(self) -> u64 {
        if self.0 == 64 {
            u64::MAX
        } else {
            (1u64 << self.0) - 1
        }
    }

    pub fn check_member(self, member: usize) -> Result<()> {
        if member < self.size() {
            Ok(())
        } else {
            Err(Error::MemberOutOfRange {
                member,
                n: self.size(),
            })
        }
    }

    pub fn full(self) -> Coalition {
        Coalition {
            bits: self.mask(),
            assembly: self,
        }
    }

    pub fn empty(self) -> Coalition {
        Coalition {
            bits: 0,
            assembly: self,
        }
    }
}

impl TryFrom<usize> for Assembly {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        Assembly::new(n)
    }
}

impl From<Assembly> for usize {
    fn from(a: Assembly) -> usize {
        a.size()
    }
}

/// A subset of an assembly, one bit per member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coalition {
    bits: u64,
    assembly: Assembly,
}

impl Coalition {
    pub fn from_bits(assembly: Assembly, bits: u64) -> Result<Self> {
        if bits & !assembly.mask() != 0 {
            let member = (bits & !assembly.mask()).trailing_zeros() as usize;
            return Err(Error::MemberOutOfRange {
                member,
                n: assembly.size(),
            });
        }
        Ok(Coalition { bits, assembly })
    }

    pub fn from_members<I>(assembly: Assembly, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut bits = 0u64;
        for m in members {
            assembly.check_member(m)?;
            bits |= 1 << m;
        }
        Ok(Coalition { bits, assembly })
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn assembly(&self) -> Assembly {
        self.assembly
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, member: usize) -> bool {
        member < 64 && self.bits & (1 << member) != 0
    }

    pub fn complement(&self) -> Coalition {
        Coalition {
            bits: !self.bits & self.assembly.mask(),
            assembly: self.assembly,
        }
    }

    fn same_assembly(&self, other: &Coalition) -> Result<()> {
        if self.assembly == other.assembly {
            Ok(())
        } else {
            Err(Error::AssemblyMismatch {
                expected: self.assembly.size(),
                found: other.assembly.size(),
            })
        }
    }

    pub fn union(&self, other: &Coalition) -> Result<Coalition> {
        self.same_assembly(other)?;
        Ok(Coalition {
            bits: self.bits | other.bits,
            assembly: self.assembly,
        })
    }

    pub fn intersection(&self, other: &Coalition) -> Result<Coalition> {
        self.same_assembly(other)?;
        Ok(Coalition {
            bits: self.bits & other.bits,
            assembly: self.assembly,
        })
    }

    pub fn is_subset(&self, other: &Coalition) -> bool {
        self.bits & !other.bits == 0
    }

    /// Members in increasing order.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (0..self.assembly.size()).filter(move |&i| bits & (1 << i) != 0)
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, m) in self.members().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn assembly_bounds() {
        assert_eq!(Assembly::new(0), Err(Error::AssemblySize(0)));
        assert_eq!(Assembly::new(65), Err(Error::AssemblySize(65)));
        assert_eq!(Assembly::new(64).unwrap().mask(), u64::MAX);
        assert_eq!(Assembly::new(3).unwrap().mask(), 0b111);
    }

    #[test]
    fn complement_examples() {
        let a = Assembly::new(3).unwrap();
        assert_eq!(a.full().complement(), a.empty());
        let k = Coalition::from_members(a, [0, 2]).unwrap();
        assert_eq!(k.complement(), Coalition::from_members(a, [1]).unwrap());
        assert_eq!(k.to_string(), "[0, 2]");
        assert_eq!(a.empty().to_string(), "[]");
    }

    #[test]
    fn rejects_foreign_members() {
        let a = Assembly::new(3).unwrap();
        assert_eq!(
            Coalition::from_members(a, [3]),
            Err(Error::MemberOutOfRange { member: 3, n: 3 })
        );
        assert!(Coalition::from_bits(a, 0b1000).is_err());
    }

    #[test]
    fn mixed_assemblies() {
        let k = Assembly::new(3).unwrap().full();
        let l = Assembly::new(4).unwrap().empty();
        assert!(k.union(&l).is_err());
    }

    proptest! {
        #[test]
        fn complement_algebra(n in 1usize..=64, raw in any::<u64>()) {
            let a = Assembly::new(n).unwrap();
            let k = Coalition::from_bits(a, raw & a.mask()).unwrap();
            let kc = k.complement();
            prop_assert_eq!(kc.complement(), k);
            prop_assert!(k.intersection(&kc).unwrap().is_empty());
            prop_assert_eq!(k.union(&kc).unwrap(), a.full());
            prop_assert_eq!(k.len() + kc.len(), n);
        }
    }
}
