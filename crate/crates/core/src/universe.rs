//! Labeled finite ground sets and their subsets.
//!
//! A [`PointSet`] is a characteristic vector packed into a `u32`, so a
//! universe holds at most [`MAX_POINTS`] points and every subset family can
//! be scanned exhaustively by counting from `0` to [`Universe::full_bits`].

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{NanoError, Result};

/// Hard cap on the number of points in a universe.
pub const MAX_POINTS: usize = 16;

#[derive(Debug)]
struct UniverseInner {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

/// An ordered set of distinctly labeled points. Cloning is cheap.
///
/// Two universes are equal when their label sequences are equal.
#[derive(Clone)]
pub struct Universe(Arc<UniverseInner>);

impl Universe {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(NanoError::EmptyUniverse);
        }
        if labels.len() > MAX_POINTS {
            return Err(NanoError::TooManyPoints {
                count: labels.len(),
            });
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(NanoError::EmptyLabel);
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(NanoError::DuplicateLabel(label.clone()));
            }
        }
        Ok(Universe(Arc::new(UniverseInner { labels, index })))
    }

    /// Universe whose labels are `prefix1 .. prefixN`.
    pub fn numbered(prefix: &str, size: usize) -> Result<Self> {
        Self::new((1..=size).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.0.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.0
            .index
            .get(label)
            .copied()
            .ok_or_else(|| NanoError::UnknownLabel(label.to_string()))
    }

    /// Characteristic vector of the whole universe.
    pub fn full_bits(&self) -> u32 {
        full_mask(self.len())
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet {
            universe: self.clone(),
            bits: 0,
        }
    }

    pub fn full_set(&self) -> PointSet {
        PointSet {
            universe: self.clone(),
            bits: self.full_bits(),
        }
    }

    pub fn set_from_bits(&self, bits: u32) -> Result<PointSet> {
        if bits & !self.full_bits() != 0 {
            return Err(NanoError::BitsOutOfRange {
                bits,
                size: self.len(),
            });
        }
        Ok(PointSet {
            universe: self.clone(),
            bits,
        })
    }

    pub fn set_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<PointSet> {
        let mut bits = 0;
        for label in labels {
            bits |= 1 << self.index_of(label.as_ref())?;
        }
        Ok(PointSet {
            universe: self.clone(),
            bits,
        })
    }

    /// Every subset, in increasing characteristic-vector order.
    pub fn subsets(&self) -> impl Iterator<Item = PointSet> + '_ {
        (0..=self.full_bits()).map(move |bits| PointSet {
            universe: self.clone(),
            bits,
        })
    }

    pub(crate) fn same_as(&self, other: &Universe) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.labels == other.0.labels
    }

    pub(crate) fn check_same(&self, other: &Universe) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(NanoError::UniverseMismatch)
        }
    }
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Universe {}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels()).finish()
    }
}

pub(crate) fn full_mask(size: usize) -> u32 {
    if size >= 32 {
        u32::MAX
    } else {
        (1u32 << size) - 1
    }
}

/// Iterator over the indices of set bits, lowest first.
pub(crate) fn bit_indices(mut bits: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if bits == 0 {
            None
        } else {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        }
    })
}

/// A subset of a [`Universe`].
///
/// The binary set operations panic when the operands come from different
/// universes, in the same way slice indexing panics when out of bounds.
#[derive(Clone, PartialEq, Eq)]
pub struct PointSet {
    universe: Universe,
    bits: u32,
}

impl PointSet {
    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    /// Characteristic vector; bit `i` is set when point `i` is a member.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == self.universe.full_bits()
    }

    pub fn contains(&self, index: usize) -> bool {
        index < 32 && self.bits & (1 << index) != 0
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> {
        bit_indices(self.bits)
    }

    pub fn labels(&self) -> Vec<&str> {
        self.indices().map(|i| self.universe.label(i)).collect()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.assert_same(other);
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.assert_same(other);
        self.bits & other.bits == 0
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        self.assert_same(other);
        self.with_bits(self.bits | other.bits)
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        self.assert_same(other);
        self.with_bits(self.bits & other.bits)
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        self.assert_same(other);
        self.with_bits(self.bits & !other.bits)
    }

    pub fn complement(&self) -> PointSet {
        self.with_bits(self.universe.full_bits() & !self.bits)
    }

    pub(crate) fn from_parts(universe: &Universe, bits: u32) -> PointSet {
        PointSet {
            universe: universe.clone(),
            bits,
        }
    }

    pub(crate) fn with_bits(&self, bits: u32) -> PointSet {
        PointSet {
            universe: self.universe.clone(),
            bits,
        }
    }

    fn assert_same(&self, other: &PointSet) {
        assert!(
            self.universe.same_as(&other.universe),
            "set operation across different universes"
        );
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, label) in self.labels().into_iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            f.write_str(label)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labelled_universe_has_four_points() {
        let u = Universe::new(["r1", "r2", "r3", "r4"]).unwrap();
        assert_eq!(u.len(), 4);
        assert_eq!(u.index_of("r3").unwrap(), 2);
        assert_eq!(u.full_bits(), 0b1111);
    }

    #[test]
    fn single_point_universe() {
        let u = Universe::new(["x"]).unwrap();
        assert_eq!(u.len(), 1);
        assert_eq!(u.subsets().count(), 2);
    }

    #[test]
    fn rejects_bad_label_lists() {
        assert_eq!(
            Universe::new(["a", "a"]).unwrap_err(),
            NanoError::DuplicateLabel("a".into())
        );
        assert_eq!(
            Universe::new(Vec::<String>::new()).unwrap_err(),
            NanoError::EmptyUniverse
        );
        assert_eq!(Universe::new(["a", ""]).unwrap_err(), NanoError::EmptyLabel);
        assert_eq!(
            Universe::numbered("p", 17).unwrap_err(),
            NanoError::TooManyPoints { count: 17 }
        );
        assert_eq!(Universe::numbered("p", 16).unwrap().full_bits(), 0xFFFF);
    }

    #[test]
    fn set_algebra_and_display() {
        let u = Universe::new(["r1", "r2", "r3", "r4"]).unwrap();
        let a = u.set_from_labels(&["r1", "r2"]).unwrap();
        let b = u.set_from_labels(&["r2", "r4"]).unwrap();
        assert_eq!(a.union(&b).to_string(), "{r1, r2, r4}");
        assert_eq!(a.intersection(&b).to_string(), "{r2}");
        assert_eq!(a.difference(&b).to_string(), "{r1}");
        assert_eq!(a.complement().to_string(), "{r3, r4}");
        assert!(a.intersection(&b).is_subset(&a));
        assert_eq!(u.empty_set().to_string(), "{}");
        assert!(u.set_from_labels(&["r9"]).is_err());
        assert!(u.set_from_bits(0b10000).is_err());
    }

    #[test]
    fn equality_is_extensional() {
        let u1 = Universe::new(["a", "b"]).unwrap();
        let u2 = Universe::new(["a", "b"]).unwrap();
        assert_eq!(
            u1.set_from_labels(&["b", "a"]).unwrap(),
            u2.set_from_bits(0b11).unwrap()
        );
    }

    #[test]
    #[should_panic(expected = "different universes")]
    fn cross_universe_union_panics() {
        let u1 = Universe::new(["a", "b"]).unwrap();
        let u2 = Universe::new(["x", "y"]).unwrap();
        let _ = u1.full_set().union(&u2.full_set());
    }
}
