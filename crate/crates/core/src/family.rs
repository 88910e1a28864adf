use std::fmt;

use crate::error::Result;
use crate::universe::{PointSet, Universe};

/// A duplicate-free family of subsets kept in canonical order: ascending
/// cardinality, then ascending characteristic vector.
#[derive(Clone, PartialEq, Eq)]
pub struct SetFamily {
    universe: Universe,
    members: Vec<u32>,
}

fn canonical_key(bits: u32) -> (u32, u32) {
    (bits.count_ones(), bits)
}

impl SetFamily {
    pub fn new<I>(universe: &Universe, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = PointSet>,
    {
        let mut bits = Vec::new();
        for set in members {
            universe.check_same(set.universe())?;
            bits.push(set.bits());
        }
        Ok(Self::from_bits(universe, bits))
    }

    /// Builds a family from raw characteristic vectors, which must lie inside the universe.
    pub(crate) fn from_bits(universe: &Universe, mut bits: Vec<u32>) -> Self {
        debug_assert!(bits.iter().all(|b| b & !universe.full_bits() == 0));
        bits.sort_by_key(|&b| canonical_key(b));
        bits.dedup();
        SetFamily {
            universe: universe.clone(),
            members: bits,
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> impl Iterator<Item = PointSet> + '_ {
        self.members
            .iter()
            .map(|&b| PointSet::from_parts(&self.universe, b))
    }

    pub fn member_bits(&self) -> &[u32] {
        &self.members
    }

    pub fn contains(&self, set: &PointSet) -> bool {
        self.universe.same_as(set.universe()) && self.contains_bits(set.bits())
    }

    pub(crate) fn contains_bits(&self, bits: u32) -> bool {
        self.members
            .binary_search_by_key(&canonical_key(bits), |&b| canonical_key(b))
            .is_ok()
    }

    /// `self` with the members of `other` added.
    pub fn union(&self, other: &SetFamily) -> Result<SetFamily> {
        self.universe.check_same(&other.universe)?;
        let mut bits = self.members.clone();
        bits.extend_from_slice(&other.members);
        Ok(Self::from_bits(&self.universe, bits))
    }

    /// Members of `self` not in `other`.
    pub fn difference(&self, other: &SetFamily) -> Result<SetFamily> {
        self.universe.check_same(&other.universe)?;
        let bits = self
            .members
            .iter()
            .copied()
            .filter(|&b| !other.contains_bits(b))
            .collect();
        Ok(Self::from_bits(&self.universe, bits))
    }

    pub fn is_subfamily(&self, other: &SetFamily) -> bool {
        self.universe.same_as(&other.universe)
            && self.members.iter().all(|&b| other.contains_bits(b))
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, set) in self.members().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{set}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
