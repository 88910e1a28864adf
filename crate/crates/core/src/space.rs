//! Nano topological spaces and their interior and closure operators.

use serde::Serialize;

use crate::error::{NanoError, Result};
use crate::family::SetFamily;
use crate::partition::{approximations, Partition};
use crate::universe::{PointSet, Universe};

/// The rough-set data a nano topology was generated from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub partition: Partition,
    pub subset: PointSet,
    pub lower: PointSet,
    pub upper: PointSet,
    pub boundary: PointSet,
}

/// A finite topological space, optionally remembering the partition and
/// subset that generated it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NanoSpace {
    universe: Universe,
    opens: SetFamily,
    provenance: Option<Provenance>,
}

/// Builds `{∅, U, lower, upper, boundary}` (deduplicated) for the given
/// partition and subset.
pub fn build_nano_topology(partition: &Partition, subset: &PointSet) -> Result<NanoSpace> {
    let approx = approximations(partition, subset)?;
    let universe = partition.universe().clone();
    let opens = SetFamily::from_bits(
        &universe,
        vec![
            0,
            universe.full_bits(),
            approx.lower.bits(),
            approx.upper.bits(),
            approx.boundary.bits(),
        ],
    );
    Ok(NanoSpace {
        universe,
        opens,
        provenance: Some(Provenance {
            partition: partition.clone(),
            subset: subset.clone(),
            lower: approx.lower,
            upper: approx.upper,
            boundary: approx.boundary,
        }),
    })
}

/// Accepts any finite topology given by its open sets.
pub fn make_explicit_space(universe: &Universe, opens: &SetFamily) -> Result<NanoSpace> {
    universe.check_same(opens.universe())?;
    check_topology(universe, opens)?;
    Ok(NanoSpace {
        universe: universe.clone(),
        opens: opens.clone(),
        provenance: None,
    })
}

fn check_topology(universe: &Universe, opens: &SetFamily) -> Result<()> {
    let members = opens.member_bits();
    if !opens.contains_bits(0) {
        return Err(NanoError::MissingEmptySet);
    }
    if !opens.contains_bits(universe.full_bits()) {
        return Err(NanoError::MissingFullSet);
    }
    let show = |bits| PointSet::from_parts(universe, bits).to_string();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if !opens.contains_bits(a | b) {
                return Err(NanoError::NotClosedUnderUnion {
                    left: show(a),
                    right: show(b),
                });
            }
            if !opens.contains_bits(a & b) {
                return Err(NanoError::NotClosedUnderIntersection {
                    left: show(a),
                    right: show(b),
                });
            }
        }
    }
    Ok(())
}

/// Topology axioms on raw characteristic vectors; used by enumeration.
pub(crate) fn is_topology_bits(full: u32, opens: &[u32]) -> bool {
    let mut present = vec![false; full as usize + 1];
    for &o in opens {
        present[o as usize] = true;
    }
    let has = |x: u32| present[x as usize];
    if !has(0) || !has(full) {
        return false;
    }
    opens
        .iter()
        .enumerate()
        .all(|(i, &a)| opens[i + 1..].iter().all(|&b| has(a | b) && has(a & b)))
}

impl NanoSpace {
    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn opens(&self) -> &SetFamily {
        &self.opens
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn is_explicit(&self) -> bool {
        self.provenance.is_none()
    }

    /// Serializable description that rebuilds this space.
    pub fn spec(&self) -> SpaceSpec {
        let points = self.universe.labels().to_vec();
        let kind = match &self.provenance {
            Some(p) => SpaceKind::Nano {
                classes: p.partition.blocks().map(|b| labels_of(&b)).collect(),
                subset: labels_of(&p.subset),
            },
            None => SpaceKind::Explicit {
                opens: self.opens.members().map(|s| labels_of(&s)).collect(),
            },
        };
        SpaceSpec { points, kind }
    }

    pub(crate) fn interior_bits(&self, a: u32) -> u32 {
        self.opens
            .member_bits()
            .iter()
            .filter(|&&o| o & !a == 0)
            .fold(0, |acc, &o| acc | o)
    }

    pub(crate) fn closure_bits(&self, a: u32) -> u32 {
        let full = self.universe.full_bits();
        self.opens
            .member_bits()
            .iter()
            .map(|&o| full & !o)
            .filter(|&c| a & !c == 0)
            .fold(full, |acc, c| acc & c)
    }
}

pub(crate) fn labels_of(set: &PointSet) -> Vec<String> {
    set.labels().into_iter().map(String::from).collect()
}

/// Largest open set contained in `a`.
pub fn n_interior(space: &NanoSpace, a: &PointSet) -> Result<PointSet> {
    space.universe.check_same(a.universe())?;
    Ok(a.with_bits(space.interior_bits(a.bits())))
}

/// Smallest closed set containing `a`.
pub fn n_closure(space: &NanoSpace, a: &PointSet) -> Result<PointSet> {
    space.universe.check_same(a.universe())?;
    Ok(a.with_bits(space.closure_bits(a.bits())))
}

/// How a space was specified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SpaceKind {
    /// Generated from a partition and a subset.
    Nano {
        classes: Vec<Vec<String>>,
        subset: Vec<String>,
    },
    /// Open sets given directly.
    Explicit { opens: Vec<Vec<String>> },
}

/// Plain-data description of a space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpaceSpec {
    pub points: Vec<String>,
    #[serde(flatten)]
    pub kind: SpaceKind,
}

impl SpaceSpec {
    pub fn build(&self) -> Result<NanoSpace> {
        let universe = Universe::new(self.points.iter().cloned())?;
        match &self.kind {
            SpaceKind::Nano { classes, subset } => {
                let blocks: Vec<&[String]> = classes.iter().map(Vec::as_slice).collect();
                let partition = Partition::from_labels(&universe, &blocks)?;
                build_nano_topology(&partition, &universe.set_from_labels(subset)?)
            }
            SpaceKind::Explicit { opens } => {
                let sets = opens
                    .iter()
                    .map(|o| universe.set_from_labels(o))
                    .collect::<Result<Vec<_>>>()?;
                make_explicit_space(&universe, &SetFamily::new(&universe, sets)?)
            }
        }
    }
}
