//! Lookup-table forms of spaces and maps for the instance sweeps.
//!
//! A [`CompiledSpace`] is filled in through the public predicates
//! ([`enumerate_family`], [`n_interior`], [`n_closure`]); the sweeps then only
//! do table lookups on characteristic vectors.

use crate::continuity::{ContinuityClass, ContinuityProfile};
use crate::open_sets::{enumerate_family, FamilyKind};
use crate::space::NanoSpace;

const OPEN_KINDS: [FamilyKind; 3] = [
    FamilyKind::NOpen,
    FamilyKind::NalphaOpen,
    FamilyKind::NsalphaOpen,
];

fn kind_slot(kind: FamilyKind) -> usize {
    match kind {
        FamilyKind::NOpen => 0,
        FamilyKind::NalphaOpen => 1,
        FamilyKind::NsalphaOpen => 2,
        closed => unreachable!("continuity classes use open kinds, got {closed}"),
    }
}

#[derive(Debug, Clone)]
pub(crate) struct CompiledSpace {
    pub full: u32,
    /// N-open, Nα-open and NSα-open members.
    families: [Vec<u32>; 3],
    /// Per kind, `member[kind][a]` tells whether subset `a` belongs to it.
    member: [Vec<bool>; 3],
    interior: Vec<u32>,
    closure: Vec<u32>,
}

impl CompiledSpace {
    pub fn new(space: &NanoSpace) -> Self {
        let full = space.universe().full_bits();
        let size = full as usize + 1;
        let families = OPEN_KINDS.map(|k| enumerate_family(space, k).member_bits().to_vec());
        let member = std::array::from_fn(|k| {
            let mut table = vec![false; size];
            for &b in &families[k] {
                table[b as usize] = true;
            }
            table
        });
        let interior = (0..=full).map(|a| space.interior_bits(a)).collect();
        let closure = (0..=full).map(|a| space.closure_bits(a)).collect();
        CompiledSpace {
            full,
            families,
            member,
            interior,
            closure,
        }
    }

    pub fn family(&self, kind: FamilyKind) -> &[u32] {
        &self.families[kind_slot(kind)]
    }

    pub fn opens(&self) -> &[u32] {
        &self.families[0]
    }

    #[inline]
    pub fn is_member(&self, kind: FamilyKind, a: u32) -> bool {
        self.member[kind_slot(kind)][a as usize]
    }

    #[inline]
    pub fn int(&self, a: u32) -> u32 {
        self.interior[a as usize]
    }

    #[inline]
    pub fn cl(&self, a: u32) -> u32 {
        self.closure[a as usize]
    }
}

/// A map as preimage and image tables.
#[derive(Debug, Clone)]
pub(crate) struct CompiledMap {
    pub assignment: Vec<u8>,
    pub pre: Vec<u32>,
    pub image: Vec<u32>,
    pub bijective: bool,
}

impl CompiledMap {
    pub fn new(assignment: Vec<u8>, codomain_size: usize) -> Self {
        let domain_full = (1u32 << assignment.len()) - 1;
        let codomain_full = (1u32 << codomain_size) - 1;
        let pre = (0..=codomain_full)
            .map(|b| {
                assignment
                    .iter()
                    .enumerate()
                    .filter(|(_, &j)| b & (1 << j) != 0)
                    .fold(0, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        let image = (0..=domain_full)
            .map(|a| {
                assignment
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| a & (1 << i) != 0)
                    .fold(0, |acc, (_, &j)| acc | 1 << j)
            })
            .collect();
        let hit = assignment.iter().fold(0u32, |acc, &j| acc | 1 << j);
        let bijective = assignment.len() == codomain_size && hit == codomain_full;
        CompiledMap {
            assignment,
            pre,
            image,
            bijective,
        }
    }
}

/// Class membership from a preimage table.
pub(crate) fn classes_with(
    domain: &CompiledSpace,
    codomain: &CompiledSpace,
    pre: &[u32],
) -> [bool; 7] {
    ContinuityClass::ALL.map(|class| {
        let target = class.target_kind();
        codomain
            .family(class.source_kind())
            .iter()
            .all(|&b| domain.is_member(target, pre[b as usize]))
    })
}

pub(crate) fn profile(
    domain: &CompiledSpace,
    codomain: &CompiledSpace,
    map: &CompiledMap,
) -> ContinuityProfile {
    let n_open_map = domain
        .opens()
        .iter()
        .all(|&a| codomain.is_member(FamilyKind::NOpen, map.image[a as usize]));
    ContinuityProfile::new(classes_with(domain, codomain, &map.pre), n_open_map)
}

fn int_cl_int_cl(s: &CompiledSpace, a: u32) -> u32 {
    s.int(s.cl(s.int(s.cl(a))))
}

/// The four NSα-continuity descriptions, as booleans.
pub(crate) fn nsalpha_four(
    domain: &CompiledSpace,
    codomain: &CompiledSpace,
    map: &CompiledMap,
) -> [bool; 4] {
    let definitional = codomain
        .opens()
        .iter()
        .all(|&d| domain.is_member(FamilyKind::NsalphaOpen, map.pre[d as usize]));
    let closed_preimages = codomain.opens().iter().all(|&o| {
        let closed = codomain.full & !o;
        domain.is_member(
            FamilyKind::NsalphaOpen,
            domain.full & !map.pre[closed as usize],
        )
    });
    let image_inclusion = (0..=domain.full).all(|c| {
        let lhs = map.image[int_cl_int_cl(domain, c) as usize];
        lhs & !codomain.cl(map.image[c as usize]) == 0
    });
    let preimage_inclusion = (0..=codomain.full).all(|d| {
        let lhs = int_cl_int_cl(domain, map.pre[d as usize]);
        lhs & !map.pre[codomain.cl(d) as usize] == 0
    });
    [
        definitional,
        closed_preimages,
        image_inclusion,
        preimage_inclusion,
    ]
}

/// `h⁻¹(int D) ⊆ int h⁻¹(D)` for every `D`.
pub(crate) fn n_continuous_by_interiors(
    domain: &CompiledSpace,
    codomain: &CompiledSpace,
    map: &CompiledMap,
) -> bool {
    (0..=codomain.full)
        .all(|d| map.pre[codomain.int(d) as usize] & !domain.int(map.pre[d as usize]) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::continuity::{
        classify, n_continuous_by_interiors as public_by_interiors, nsalpha_characterizations,
    };
    use crate::verifier::bounds::SpaceMode;
    use crate::verifier::enumerate::{enumerate_maps, enumerate_spaces};

    /// The lookup tables must agree with the set-based public predicates.
    #[test]
    fn tables_agree_with_public_api() {
        for (a, b) in [(1, 2), (2, 2), (3, 2), (2, 3)] {
            let us = enumerate_spaces(a, SpaceMode::Both).unwrap();
            let vs = enumerate_spaces(b, SpaceMode::Both).unwrap();
            for u in us.iter().step_by(3) {
                for v in vs.iter().step_by(2) {
                    let (cu, cv) = (CompiledSpace::new(u), CompiledSpace::new(v));
                    for h in enumerate_maps(u.universe(), v.universe(), false).unwrap() {
                        let x = h.assignment().iter().map(|&j| j as u8).collect();
                        let m = CompiledMap::new(x, b);
                        assert_eq!(profile(&cu, &cv, &m), classify(&h, u, v).unwrap());
                        assert_eq!(
                            nsalpha_four(&cu, &cv, &m),
                            nsalpha_characterizations(&h, u, v).unwrap().values()
                        );
                        assert_eq!(
                            n_continuous_by_interiors(&cu, &cv, &m),
                            public_by_interiors(&h, u, v).unwrap()
                        );
                    }
                }
            }
        }
    }
}
