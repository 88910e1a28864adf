//! Equivalence partitions and rough-set approximations.

use serde::Serialize;

use crate::error::{NanoError, Result};
use crate::universe::{PointSet, Universe};

/// The classes of an equivalence relation on a universe.
#[derive(Clone, PartialEq, Eq)]
pub struct Partition {
    universe: Universe,
    blocks: Vec<u32>,
}

impl Partition {
    /// Validates that the blocks are nonempty, pairwise disjoint and cover the universe.
    pub fn new(universe: &Universe, blocks: &[PointSet]) -> Result<Self> {
        let mut seen = 0u32;
        let mut masks = Vec::with_capacity(blocks.len());
        for (index, block) in blocks.iter().enumerate() {
            universe.check_same(block.universe())?;
            if block.is_empty() {
                return Err(NanoError::EmptyBlock { index });
            }
            let overlap = seen & block.bits();
            if overlap != 0 {
                let i = overlap.trailing_zeros() as usize;
                return Err(NanoError::OverlappingBlocks(universe.label(i).to_string()));
            }
            seen |= block.bits();
            masks.push(block.bits());
        }
        let missing = universe.full_bits() & !seen;
        if missing != 0 {
            let i = missing.trailing_zeros() as usize;
            return Err(NanoError::UncoveredPoint(universe.label(i).to_string()));
        }
        Ok(Partition {
            universe: universe.clone(),
            blocks: masks,
        })
    }

    pub fn from_labels<S: AsRef<str>>(universe: &Universe, blocks: &[&[S]]) -> Result<Self> {
        let sets = blocks
            .iter()
            .map(|b| universe.set_from_labels(b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(universe, &sets)
    }

    /// Builds the partition encoded by a restricted growth string: point `i`
    /// goes to block `rgs[i]`.
    pub fn from_growth_string(universe: &Universe, rgs: &[usize]) -> Result<Self> {
        if rgs.len() != universe.len() {
            return Err(NanoError::UniverseMismatch);
        }
        let count = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![0u32; count];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b] |= 1 << i;
        }
        let sets = blocks
            .into_iter()
            .map(|bits| universe.set_from_bits(bits))
            .collect::<Result<Vec<_>>>()?;
        Self::new(universe, &sets)
    }

    /// The finest partition: every point is its own class.
    pub fn discrete(universe: &Universe) -> Self {
        let blocks = (0..universe.len()).map(|i| 1u32 << i).collect();
        Partition {
            universe: universe.clone(),
            blocks,
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn blocks(&self) -> impl Iterator<Item = PointSet> + '_ {
        self.blocks
            .iter()
            .map(|&bits| PointSet::from_parts(&self.universe, bits))
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub(crate) fn block_bits(&self) -> &[u32] {
        &self.blocks
    }
}

impl std::fmt::Debug for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.blocks()).finish()
    }
}

/// Lower approximation, upper approximation and boundary region of a subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Approximations {
    pub lower: PointSet,
    pub upper: PointSet,
    pub boundary: PointSet,
}

/// Rough-set approximations of `target` with respect to `partition`.
///
/// The lower approximation is the union of the classes contained in the
/// target, the upper approximation the union of the classes meeting it.
pub fn approximations(partition: &Partition, target: &PointSet) -> Result<Approximations> {
    partition.universe.check_same(target.universe())?;
    let m = target.bits();
    let mut lower = 0;
    let mut upper = 0;
    for &block in partition.block_bits() {
        if block & !m == 0 {
            lower |= block;
        }
        if block & m != 0 {
            upper |= block;
        }
    }
    Ok(Approximations {
        lower: target.with_bits(lower),
        upper: target.with_bits(upper),
        boundary: target.with_bits(upper & !lower),
    })
}

/// Enumerates the set partitions of `n` points as restricted growth strings
/// in lexicographic order: `a[0] = 0` and `a[i] <= 1 + max(a[..i])`.
#[derive(Debug, Clone)]
pub struct GrowthStrings {
    current: Vec<usize>,
    done: bool,
}

impl GrowthStrings {
    pub fn new(n: usize) -> Self {
        GrowthStrings {
            current: vec![0; n],
            done: n == 0,
        }
    }
}

impl Iterator for GrowthStrings {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        // Advance: find the rightmost position that may still grow.
        let n = self.current.len();
        let mut prefix_max = vec![0usize; n];
        for i in 1..n {
            prefix_max[i] = prefix_max[i - 1].max(self.current[i - 1]);
        }
        let mut pos = None;
        for i in (1..n).rev() {
            if self.current[i] <= prefix_max[i] {
                pos = Some(i);
                break;
            }
        }
        match pos {
            None => self.done = true,
            Some(i) => {
                self.current[i] += 1;
                for x in &mut self.current[i + 1..] {
                    *x = 0;
                }
            }
        }
        Some(out)
    }
}

/// Serializable description of a partition as label blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionSpec(pub Vec<Vec<String>>);

impl From<&Partition> for PartitionSpec {
    fn from(p: &Partition) -> Self {
        PartitionSpec(
            p.blocks()
                .map(|b| b.labels().into_iter().map(String::from).collect())
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r4() -> Universe {
        Universe::new(["r1", "r2", "r3", "r4"]).unwrap()
    }

    #[test]
    fn approximations_with_boundary() {
        let u = r4();
        let p = Partition::from_labels(&u, &[&["r1"], &["r3"], &["r2", "r4"]]).unwrap();
        let m = u.set_from_labels(&["r1", "r2"]).unwrap();
        let a = approximations(&p, &m).unwrap();
        assert_eq!(a.lower, u.set_from_labels(&["r1"]).unwrap());
        assert_eq!(a.upper, u.set_from_labels(&["r1", "r2", "r4"]).unwrap());
        assert_eq!(a.boundary, u.set_from_labels(&["r2", "r4"]).unwrap());
    }

    #[test]
    fn empty_target_has_empty_approximations() {
        let u = r4();
        let p = Partition::from_labels(&u, &[&["r1", "r2"], &["r3", "r4"]]).unwrap();
        let a = approximations(&p, &u.empty_set()).unwrap();
        assert!(a.lower.is_empty() && a.upper.is_empty() && a.boundary.is_empty());
    }

    #[test]
    fn exact_subset_has_empty_boundary() {
        let u = r4();
        let p = Partition::from_labels(&u, &[&["r1"], &["r4"], &["r2", "r3"]]).unwrap();
        let m = u.set_from_labels(&["r1", "r4"]).unwrap();
        let a = approximations(&p, &m).unwrap();
        assert_eq!(a.lower, m);
        assert_eq!(a.upper, m);
        assert!(a.boundary.is_empty());
    }

    #[test]
    fn partition_validation() {
        let u = r4();
        assert_eq!(
            Partition::from_labels(&u, &[&["r1", "r2"], &["r2", "r3", "r4"]]).unwrap_err(),
            NanoError::OverlappingBlocks("r2".into())
        );
        assert_eq!(
            Partition::from_labels(&u, &[&["r1", "r2"], &["r3"]]).unwrap_err(),
            NanoError::UncoveredPoint("r4".into())
        );
        let empty: &[&str] = &[];
        assert_eq!(
            Partition::from_labels(&u, &[&["r1", "r2", "r3", "r4"], empty]).unwrap_err(),
            NanoError::EmptyBlock { index: 1 }
        );
        let other = Universe::new(["a"]).unwrap();
        assert_eq!(
            approximations(&Partition::discrete(&u), &other.full_set()).unwrap_err(),
            NanoError::UniverseMismatch
        );
    }

    #[test]
    fn growth_strings_in_lexicographic_order() {
        let all: Vec<_> = GrowthStrings::new(3).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 0, 0],
                vec![0, 0, 1],
                vec![0, 1, 0],
                vec![0, 1, 1],
                vec![0, 1, 2]
            ]
        );
        assert_eq!(GrowthStrings::new(1).count(), 1);
        assert_eq!(GrowthStrings::new(0).count(), 0);
    }

    #[test]
    fn growth_string_to_partition() {
        let u = r4();
        let p = Partition::from_growth_string(&u, &[0, 1, 0, 2]).unwrap();
        let blocks: Vec<String> = p.blocks().map(|b| b.to_string()).collect();
        assert_eq!(blocks, ["{r1, r3}", "{r2}", "{r4}"]);
    }
}
