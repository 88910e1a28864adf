//! Deterministic generation of spaces and maps.
//!
//! * Nano-derived spaces: partitions in restricted-growth-string order, then
//!   the subset `M` by increasing characteristic vector.
//! * Explicit spaces: every topology, ordered by a counter over the proper
//!   nonempty subsets (bit `k` of the counter selects the `k`-th such subset).
//! * Maps: a base-|V| counter over assignment vectors with the first domain
//!   point as the most significant digit (lexicographic order).

use crate::continuity::FiniteMap;
use crate::error::{NanoError, Result};
use crate::family::SetFamily;
use crate::partition::{GrowthStrings, Partition};
use crate::space::{build_nano_topology, is_topology_bits, make_explicit_space, NanoSpace};
use crate::universe::{full_mask, Universe, MAX_POINTS};

use super::bounds::{SpaceMode, MAX_EXPLICIT_SIZE};

/// Every nano-derived space on `universe`, one per (partition, subset) pair.
pub fn nano_spaces(universe: &Universe) -> impl Iterator<Item = NanoSpace> + '_ {
    GrowthStrings::new(universe.len()).flat_map(move |rgs| {
        let partition =
            Partition::from_growth_string(universe, &rgs).expect("growth string is a partition");
        universe
            .subsets()
            .map(move |m| build_nano_topology(&partition, &m).expect("same universe"))
    })
}

/// Open-set families (as characteristic vectors) of every topology on `n` points.
pub fn topologies(n: usize) -> Result<Vec<Vec<u32>>> {
    if n == 0 || n > MAX_EXPLICIT_SIZE {
        return Err(NanoError::InvalidBounds(format!(
            "topologies are enumerated for 1..={MAX_EXPLICIT_SIZE} points, not {n}"
        )));
    }
    let full = full_mask(n);
    let proper: Vec<u32> = (1..full).collect();
    let mut out = Vec::new();
    for selector in 0u64..(1u64 << proper.len()) {
        let mut opens = vec![0, full];
        opens.extend(
            proper
                .iter()
                .enumerate()
                .filter(|(k, _)| selector & (1 << k) != 0)
                .map(|(_, &b)| b),
        );
        if is_topology_bits(full, &opens) {
            out.push(opens);
        }
    }
    Ok(out)
}

/// Every topology on `universe` as an explicit space.
pub fn explicit_spaces(universe: &Universe) -> Result<Vec<NanoSpace>> {
    topologies(universe.len())?
        .into_iter()
        .map(|opens| make_explicit_space(universe, &SetFamily::from_bits(universe, opens)))
        .collect()
}

/// All spaces of size `n` for a mode, on points `p1..pn`, in enumeration order.
pub fn enumerate_spaces(n: usize, mode: SpaceMode) -> Result<Vec<NanoSpace>> {
    if n == 0 || n > MAX_POINTS {
        return Err(NanoError::TooManyPoints { count: n });
    }
    let universe = Universe::numbered("p", n)?;
    let mut spaces = Vec::new();
    if mode.includes_nano() {
        spaces.extend(nano_spaces(&universe));
    }
    if mode.includes_explicit() {
        spaces.extend(explicit_spaces(&universe)?);
    }
    Ok(spaces)
}

/// Assignment vectors from `a` points to `b` points in counter order.
pub(crate) fn assignments(a: usize, b: usize, bijective_only: bool) -> Result<Vec<Vec<u8>>> {
    if bijective_only && a != b {
        return Err(NanoError::NoBijection {
            domain: a,
            codomain: b,
        });
    }
    let total = (b as u64).pow(a as u32);
    let mut out = Vec::new();
    let mut digits = vec![0u8; a];
    for _ in 0..total {
        let distinct = digits
            .iter()
            .fold(0u32, |acc, &d| acc | 1 << d)
            .count_ones() as usize;
        if !bijective_only || distinct == a {
            out.push(digits.clone());
        }
        for d in digits.iter_mut().rev() {
            *d += 1;
            if (*d as usize) < b {
                break;
            }
            *d = 0;
        }
    }
    Ok(out)
}

/// Every map from `domain` to `codomain` (or every bijection) in counter order.
pub fn enumerate_maps<'a>(
    domain: &'a Universe,
    codomain: &'a Universe,
    bijective_only: bool,
) -> Result<impl Iterator<Item = FiniteMap> + 'a> {
    let all = assignments(domain.len(), codomain.len(), bijective_only)?;
    Ok(all.into_iter().map(move |a| {
        FiniteMap::from_assignment(domain, codomain, a.into_iter().map(usize::from).collect())
            .expect("counter stays in range")
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Bell numbers from the Bell triangle, independent of growth strings.
    fn bell(n: usize) -> usize {
        let mut row = vec![1usize];
        for _ in 1..n {
            let mut next = vec![*row.last().unwrap()];
            for &x in &row {
                let last = *next.last().unwrap();
                next.push(last + x);
            }
            row = next;
        }
        *row.last().unwrap()
    }

    #[test]
    fn bell_oracle() {
        assert_eq!(
            (1..=6).map(bell).collect::<Vec<_>>(),
            [1, 2, 5, 15, 52, 203]
        );
    }

    #[test]
    fn nano_space_counts() {
        for n in 1..=5 {
            let count = enumerate_spaces(n, SpaceMode::Nano).unwrap().len();
            assert_eq!(count, bell(n) << n, "n = {n}");
        }
        assert_eq!(enumerate_spaces(4, SpaceMode::Nano).unwrap().len(), 240);
        assert_eq!(enumerate_spaces(3, SpaceMode::Nano).unwrap().len(), 40);
    }

    #[test]
    fn one_point_spaces_coincide() {
        let spaces = enumerate_spaces(1, SpaceMode::Nano).unwrap();
        assert_eq!(spaces.len(), 2);
        assert_eq!(spaces[0].opens(), spaces[1].opens());
    }

    #[test]
    fn topology_counts_match_known_sequence() {
        // Labeled topologies on n points: 1, 4, 29, 355.
        let counts: Vec<usize> = (1..=4).map(|n| topologies(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 4, 29, 355]);
        assert!(topologies(5).is_err());
        assert_eq!(enumerate_spaces(2, SpaceMode::Both).unwrap().len(), 8 + 4);
    }

    #[test]
    fn map_counts_and_order() {
        assert_eq!(assignments(2, 2, false).unwrap().len(), 4);
        assert_eq!(assignments(4, 4, true).unwrap().len(), 24);
        assert_eq!(assignments(4, 3, false).unwrap().len(), 81);
        assert_eq!(
            assignments(2, 2, false).unwrap(),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        assert_eq!(
            assignments(4, 3, true).unwrap_err(),
            NanoError::NoBijection {
                domain: 4,
                codomain: 3
            }
        );
        let u = Universe::numbered("u", 3).unwrap();
        let maps: Vec<_> = enumerate_maps(&u, &u, true).unwrap().collect();
        assert_eq!(maps.len(), 6);
        assert!(maps.iter().all(FiniteMap::is_bijective));
        assert_eq!(maps[0], FiniteMap::identity(&u));
    }
}
