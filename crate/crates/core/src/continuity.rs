//! Finite maps and the seven nano-continuity classes.
//!
//! Every class asks that the preimage of each member of one family in the
//! codomain belongs to some family in the domain:
//!
//! | class  | codomain family | domain family |
//! |--------|-----------------|---------------|
//! | N      | N-open          | N-open        |
//! | Na     | N-open          | Nα-open       |
//! | Na*    | Nα-open         | Nα-open       |
//! | Na**   | Nα-open         | N-open        |
//! | NSa    | N-open          | NSα-open      |
//! | NSa*   | NSα-open        | NSα-open      |
//! | NSa**  | NSα-open        | N-open        |

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{NanoError, Result};
use crate::family::SetFamily;
use crate::open_sets::{enumerate_family, kind_bits, nsalpha_bits, FamilyKind};
use crate::space::NanoSpace;
use crate::universe::{bit_indices, PointSet, Universe};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ContinuityClass {
    N,
    Na,
    NaStar,
    Na2Star,
    Nsa,
    NsaStar,
    Nsa2Star,
}

impl ContinuityClass {
    pub const ALL: [ContinuityClass; 7] = [
        ContinuityClass::N,
        ContinuityClass::Na,
        ContinuityClass::NaStar,
        ContinuityClass::Na2Star,
        ContinuityClass::Nsa,
        ContinuityClass::NsaStar,
        ContinuityClass::Nsa2Star,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Family whose members are pulled back, taken in the codomain.
    pub fn source_kind(self) -> FamilyKind {
        use ContinuityClass::*;
        match self {
            N | Na | Nsa => FamilyKind::NOpen,
            NaStar | Na2Star => FamilyKind::NalphaOpen,
            NsaStar | Nsa2Star => FamilyKind::NsalphaOpen,
        }
    }

    /// Family the preimages must land in, taken in the domain.
    pub fn target_kind(self) -> FamilyKind {
        use ContinuityClass::*;
        match self {
            N | Na2Star | Nsa2Star => FamilyKind::NOpen,
            Na | NaStar => FamilyKind::NalphaOpen,
            Nsa | NsaStar => FamilyKind::NsalphaOpen,
        }
    }

    /// ASCII report token.
    pub fn token(self) -> &'static str {
        use ContinuityClass::*;
        match self {
            N => "N",
            Na => "Na",
            NaStar => "Na*",
            Na2Star => "Na**",
            Nsa => "NSa",
            NsaStar => "NSa*",
            Nsa2Star => "NSa**",
        }
    }

    fn long_name(self) -> &'static str {
        use ContinuityClass::*;
        match self {
            N => "N",
            Na => "NA",
            NaStar => "NA_STAR",
            Na2Star => "NA_2STAR",
            Nsa => "NSA",
            NsaStar => "NSA_STAR",
            Nsa2Star => "NSA_2STAR",
        }
    }
}

impl fmt::Display for ContinuityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for ContinuityClass {
    type Err = String;

    /// Accepts the report tokens (`Na*`) and the long names (`NA_STAR`).
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        ContinuityClass::ALL
            .into_iter()
            .find(|c| c.token() == s || c.long_name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown continuity class `{s}`"))
    }
}

impl Serialize for ContinuityClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.token())
    }
}

/// Implications between classes that follow from N-open ⊆ Nα-open ⊆ NSα-open.
pub const FAMILY_IMPLICATIONS: [(ContinuityClass, ContinuityClass); 10] = {
    use ContinuityClass::*;
    [
        (N, Na),
        (Na, Nsa),
        (NaStar, Na),
        (NaStar, Nsa),
        (Na2Star, N),
        (Na2Star, NaStar),
        (Nsa2Star, Na2Star),
        (Nsa2Star, NsaStar),
        (NsaStar, Nsa),
        (N, Nsa),
    ]
};

/// A total function between two universes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMap {
    domain: Universe,
    codomain: Universe,
    assignment: Vec<usize>,
    injective: bool,
    surjective: bool,
}

impl FiniteMap {
    /// `assignment[i]` is the codomain index of domain point `i`.
    pub fn from_assignment(
        domain: &Universe,
        codomain: &Universe,
        assignment: Vec<usize>,
    ) -> Result<Self> {
        if assignment.len() < domain.len() {
            return Err(NanoError::UnmappedPoint(
                domain.label(assignment.len()).to_string(),
            ));
        }
        if assignment.len() > domain.len() {
            return Err(NanoError::UniverseMismatch);
        }
        let mut hit = 0u32;
        for (i, &j) in assignment.iter().enumerate() {
            if j >= codomain.len() {
                return Err(NanoError::UnknownLabel(format!(
                    "image #{j} of {}",
                    domain.label(i)
                )));
            }
            hit |= 1 << j;
        }
        let injective = hit.count_ones() as usize == assignment.len();
        let surjective = hit == codomain.full_bits();
        Ok(FiniteMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            assignment,
            injective,
            surjective,
        })
    }

    pub fn identity(universe: &Universe) -> Self {
        Self::from_assignment(universe, universe, (0..universe.len()).collect())
            .expect("identity is total")
    }

    pub fn constant(domain: &Universe, codomain: &Universe, target: usize) -> Result<Self> {
        Self::from_assignment(domain, codomain, vec![target; domain.len()])
    }

    pub fn domain(&self) -> &Universe {
        &self.domain
    }

    pub fn codomain(&self) -> &Universe {
        &self.codomain
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, point: usize) -> usize {
        self.assignment[point]
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    pub fn is_bijective(&self) -> bool {
        self.injective && self.surjective
    }

    /// `(source label, target label)` pairs in domain order.
    pub fn arrows(&self) -> Vec<(String, String)> {
        self.assignment
            .iter()
            .enumerate()
            .map(|(i, &j)| {
                (
                    self.domain.label(i).to_string(),
                    self.codomain.label(j).to_string(),
                )
            })
            .collect()
    }

    /// `second ∘ first`.
    pub fn compose(first: &FiniteMap, second: &FiniteMap) -> Result<FiniteMap> {
        if first.codomain != second.domain {
            return Err(NanoError::NotComposable);
        }
        let assignment = first
            .assignment
            .iter()
            .map(|&j| second.assignment[j])
            .collect();
        FiniteMap::from_assignment(&first.domain, &second.codomain, assignment)
    }

    pub(crate) fn preimage_bits(&self, b: u32) -> u32 {
        self.assignment
            .iter()
            .enumerate()
            .filter(|(_, &j)| b & (1 << j) != 0)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    pub(crate) fn image_bits(&self, a: u32) -> u32 {
        bit_indices(a).fold(0, |acc, i| acc | 1 << self.assignment[i])
    }
}

/// Builds a map from `(source, target)` label pairs; every domain point must appear exactly once.
pub fn make_map<S: AsRef<str>>(
    domain: &Universe,
    codomain: &Universe,
    pairs: &[(S, S)],
) -> Result<FiniteMap> {
    let mut assignment: Vec<Option<usize>> = vec![None; domain.len()];
    for (from, to) in pairs {
        let i = domain.index_of(from.as_ref())?;
        let j = codomain.index_of(to.as_ref())?;
        if assignment[i].replace(j).is_some() {
            return Err(NanoError::DuplicateArrow(from.as_ref().to_string()));
        }
    }
    let assignment = assignment
        .into_iter()
        .enumerate()
        .map(|(i, j)| j.ok_or_else(|| NanoError::UnmappedPoint(domain.label(i).to_string())))
        .collect::<Result<Vec<_>>>()?;
    FiniteMap::from_assignment(domain, codomain, assignment)
}

pub fn preimage(h: &FiniteMap, b: &PointSet) -> Result<PointSet> {
    h.codomain.check_same(b.universe())?;
    Ok(PointSet::from_parts(&h.domain, h.preimage_bits(b.bits())))
}

pub fn image(h: &FiniteMap, a: &PointSet) -> Result<PointSet> {
    h.domain.check_same(a.universe())?;
    Ok(PointSet::from_parts(&h.codomain, h.image_bits(a.bits())))
}

fn check_spaces(h: &FiniteMap, domain: &NanoSpace, codomain: &NanoSpace) -> Result<()> {
    h.domain.check_same(domain.universe())?;
    h.codomain.check_same(codomain.universe())
}

/// True iff the preimage of every member of `codomain_family` is of `domain_kind` in `domain`.
pub fn is_family_continuous(
    h: &FiniteMap,
    codomain_family: &SetFamily,
    domain_kind: FamilyKind,
    domain: &NanoSpace,
) -> Result<bool> {
    h.codomain.check_same(codomain_family.universe())?;
    h.domain.check_same(domain.universe())?;
    Ok(codomain_family
        .member_bits()
        .iter()
        .all(|&b| kind_bits(domain, domain_kind, h.preimage_bits(b))))
}

/// Which of the seven classes a map belongs to, plus whether it is an N-open map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ContinuityProfile {
    classes: [bool; 7],
    pub n_open_map: bool,
}

impl ContinuityProfile {
    pub fn new(classes: [bool; 7], n_open_map: bool) -> Self {
        ContinuityProfile {
            classes,
            n_open_map,
        }
    }

    pub fn get(&self, class: ContinuityClass) -> bool {
        self.classes[class.index()]
    }

    pub fn classes(&self) -> [bool; 7] {
        self.classes
    }

    /// Family-inclusion implications that this profile breaks.
    pub fn hierarchy_violations(&self) -> Vec<(ContinuityClass, ContinuityClass)> {
        FAMILY_IMPLICATIONS
            .into_iter()
            .filter(|&(a, b)| self.get(a) && !self.get(b))
            .collect()
    }
}

impl Serialize for ContinuityProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(8))?;
        for class in ContinuityClass::ALL {
            map.serialize_entry(class.token(), &self.get(class))?;
        }
        map.serialize_entry("n_open_map", &self.n_open_map)?;
        map.end()
    }
}

impl fmt::Display for ContinuityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, class) in ContinuityClass::ALL.into_iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(
                f,
                "{}={}",
                class,
                if self.get(class) { "yes" } else { "no" }
            )?;
        }
        write!(
            f,
            " N-open-map={}",
            if self.n_open_map { "yes" } else { "no" }
        )
    }
}

pub fn classify(
    h: &FiniteMap,
    domain: &NanoSpace,
    codomain: &NanoSpace,
) -> Result<ContinuityProfile> {
    check_spaces(h, domain, codomain)?;
    let families = [
        enumerate_family(codomain, FamilyKind::NOpen),
        enumerate_family(codomain, FamilyKind::NalphaOpen),
        enumerate_family(codomain, FamilyKind::NsalphaOpen),
    ];
    let family_of = |kind: FamilyKind| match kind {
        FamilyKind::NOpen => &families[0],
        FamilyKind::NalphaOpen => &families[1],
        _ => &families[2],
    };
    let mut classes = [false; 7];
    for class in ContinuityClass::ALL {
        classes[class.index()] = is_family_continuous(
            h,
            family_of(class.source_kind()),
            class.target_kind(),
            domain,
        )?;
    }
    Ok(ContinuityProfile {
        classes,
        n_open_map: is_n_open_map(h, domain, codomain)?,
    })
}

/// True iff the image of every open set of the domain is open in the codomain.
pub fn is_n_open_map(h: &FiniteMap, domain: &NanoSpace, codomain: &NanoSpace) -> Result<bool> {
    check_spaces(h, domain, codomain)?;
    Ok(domain
        .opens()
        .member_bits()
        .iter()
        .all(|&a| codomain.opens().contains_bits(h.image_bits(a))))
}

/// The four equivalent descriptions of NSα-continuity, evaluated independently.
///
/// Each field is `None` when that description holds, otherwise the first
/// offending set in increasing characteristic-vector order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NsalphaCharacterizations {
    /// An N-open set of the codomain whose preimage is not NSα-open.
    pub definitional: Option<PointSet>,
    /// An N-closed set of the codomain whose preimage is not NSα-closed.
    pub closed_preimages: Option<PointSet>,
    /// A subset `C` of the domain with `h(int cl int cl C) ⊄ cl h(C)`.
    pub image_inclusion: Option<PointSet>,
    /// A subset `D` of the codomain with `int cl int cl h⁻¹(D) ⊄ h⁻¹(cl D)`.
    pub preimage_inclusion: Option<PointSet>,
}

impl NsalphaCharacterizations {
    pub fn values(&self) -> [bool; 4] {
        [
            self.definitional.is_none(),
            self.closed_preimages.is_none(),
            self.image_inclusion.is_none(),
            self.preimage_inclusion.is_none(),
        ]
    }

    pub fn agree(&self) -> bool {
        let v = self.values();
        v.iter().all(|&x| x == v[0])
    }
}

fn int_cl_int_cl(space: &NanoSpace, a: u32) -> u32 {
    space.interior_bits(space.closure_bits(space.interior_bits(space.closure_bits(a))))
}

pub fn nsalpha_characterizations(
    h: &FiniteMap,
    domain: &NanoSpace,
    codomain: &NanoSpace,
) -> Result<NsalphaCharacterizations> {
    check_spaces(h, domain, codomain)?;
    let u_full = domain.universe().full_bits();
    let v_full = codomain.universe().full_bits();
    let opens = codomain.opens().member_bits();
    let in_v = |bits| PointSet::from_parts(codomain.universe(), bits);
    let in_u = |bits| PointSet::from_parts(domain.universe(), bits);

    let definitional = opens
        .iter()
        .copied()
        .find(|&d| !nsalpha_bits(domain, h.preimage_bits(d)))
        .map(in_v);
    let closed_preimages = opens
        .iter()
        .map(|&o| v_full & !o)
        .find(|&c| !nsalpha_bits(domain, u_full & !h.preimage_bits(c)))
        .map(in_v);
    let image_inclusion = (0..=u_full)
        .find(|&c| {
            let lhs = h.image_bits(int_cl_int_cl(domain, c));
            let rhs = codomain.closure_bits(h.image_bits(c));
            lhs & !rhs != 0
        })
        .map(in_u);
    let preimage_inclusion = (0..=v_full)
        .find(|&d| {
            let lhs = int_cl_int_cl(domain, h.preimage_bits(d));
            let rhs = h.preimage_bits(codomain.closure_bits(d));
            lhs & !rhs != 0
        })
        .map(in_v);
    Ok(NsalphaCharacterizations {
        definitional,
        closed_preimages,
        image_inclusion,
        preimage_inclusion,
    })
}

/// N-continuity through interiors: `h⁻¹(int D) ⊆ int h⁻¹(D)` for every subset `D` of the codomain.
pub fn n_continuous_by_interiors(
    h: &FiniteMap,
    domain: &NanoSpace,
    codomain: &NanoSpace,
) -> Result<bool> {
    check_spaces(h, domain, codomain)?;
    Ok((0..=codomain.universe().full_bits()).all(|d| {
        let lhs = h.preimage_bits(codomain.interior_bits(d));
        let rhs = domain.interior_bits(h.preimage_bits(d));
        lhs & !rhs == 0
    }))
}
