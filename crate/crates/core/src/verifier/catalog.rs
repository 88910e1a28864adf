//! Instance catalogs and the ordered, parallel sweep over (space, space, map) triples.
//!
//! Exhaustive instances come first, grouped by size pair `(a, b)` in order of
//! `(max(a, b), a, b)`; within a size pair by domain space, codomain space,
//! then map. Sampled instances follow in generation order. Work units run in
//! parallel but results are merged in unit order, so "first" always means
//! first in this sequential order.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::space::NanoSpace;

use super::bounds::{InstanceBounds, SpaceMode};
use super::compiled::{CompiledMap, CompiledSpace};
use super::enumerate::{assignments, enumerate_spaces};
use super::witness::{relabel, InstanceData, MapSpec};

pub(crate) const ROLE_PREFIXES: [&str; 3] = ["u", "v", "w"];

pub(crate) struct Entry {
    pub space: NanoSpace,
    pub compiled: CompiledSpace,
}

/// Every space of each size up to a bound, with its lookup tables.
pub(crate) struct Catalog {
    by_size: Vec<Vec<Entry>>,
}

impl Catalog {
    pub fn new(max_size: usize, mode: SpaceMode) -> Result<Self> {
        let mut by_size = vec![Vec::new()];
        for n in 1..=max_size {
            let entries = enumerate_spaces(n, mode)?
                .into_iter()
                .map(|space| Entry {
                    compiled: CompiledSpace::new(&space),
                    space,
                })
                .collect();
            by_size.push(entries);
        }
        Ok(Catalog { by_size })
    }

    pub fn spaces(&self, n: usize) -> &[Entry] {
        &self.by_size[n]
    }
}

/// Instance data for spaces `(size, index)` and assignment vectors between consecutive spaces.
pub(crate) fn instance_data(
    catalog: &Catalog,
    spaces: &[(usize, usize)],
    maps: &[&[u8]],
) -> InstanceData {
    let specs: Vec<_> = spaces
        .iter()
        .enumerate()
        .map(|(k, &(n, i))| relabel(&catalog.spaces(n)[i].space.spec(), ROLE_PREFIXES[k]))
        .collect();
    let maps = maps
        .iter()
        .enumerate()
        .map(|(k, assignment)| {
            let arrows = assignment
                .iter()
                .enumerate()
                .map(|(i, &j)| {
                    format!(
                        "{}->{}",
                        specs[k].points[i],
                        specs[k + 1].points[j as usize]
                    )
                })
                .collect();
            MapSpec {
                domain: k,
                codomain: k + 1,
                arrows,
            }
        })
        .collect();
    InstanceData {
        spaces: specs,
        maps,
    }
}

/// Size pairs `(a, b)` with `lo < max(a, b) <= hi`, ordered by `(max, a, b)`.
pub(crate) fn size_pairs(lo: usize, hi: usize, equal_only: bool) -> Vec<(usize, usize)> {
    let mut pairs: Vec<_> = (1..=hi)
        .flat_map(|a| (1..=hi).map(move |b| (a, b)))
        .filter(|&(a, b)| a.max(b) > lo && (!equal_only || a == b))
        .collect();
    pairs.sort_by_key(|&(a, b)| (a.max(b), a, b));
    pairs
}

/// One domain/codomain/map instance visited by a sweep.
pub(crate) struct Pair<'a> {
    pub sizes: (usize, usize),
    pub indices: (usize, usize),
    pub domain: &'a CompiledSpace,
    pub codomain: &'a CompiledSpace,
    pub map: &'a CompiledMap,
}

impl Pair<'_> {
    pub fn data(&self, catalog: &Catalog) -> InstanceData {
        instance_data(
            catalog,
            &[
                (self.sizes.0, self.indices.0),
                (self.sizes.1, self.indices.1),
            ],
            &[&self.map.assignment],
        )
    }
}

struct Sample {
    sizes: (usize, usize),
    indices: (usize, usize),
    map: CompiledMap,
}

enum Unit {
    Exhaustive {
        sizes: (usize, usize),
        domain: usize,
    },
    Sampled {
        start: usize,
        end: usize,
    },
}

const SAMPLE_CHUNK: usize = 2048;

/// All maps for each exhaustive size pair, compiled once.
pub(crate) type MapTables = BTreeMap<(usize, usize), Vec<CompiledMap>>;

pub(crate) fn map_tables(pairs: &[(usize, usize)], bijective_only: bool) -> Result<MapTables> {
    pairs
        .iter()
        .map(|&(a, b)| {
            let maps = assignments(a, b, bijective_only)?
                .into_iter()
                .map(|x| CompiledMap::new(x, b))
                .collect();
            Ok(((a, b), maps))
        })
        .collect()
}

pub(crate) fn random_assignment(
    rng: &mut ChaCha8Rng,
    a: usize,
    b: usize,
    bijective_only: bool,
) -> Vec<u8> {
    if bijective_only {
        let mut perm: Vec<u8> = (0..a as u8).collect();
        perm.shuffle(rng);
        perm
    } else {
        (0..a).map(|_| rng.gen_range(0..b) as u8).collect()
    }
}

/// Sweep over domain/codomain/map instances within bounds.
pub(crate) struct PairSweep<'a> {
    catalog: &'a Catalog,
    maps: MapTables,
    samples: Vec<Sample>,
    units: Vec<Unit>,
}

impl<'a> PairSweep<'a> {
    pub fn new(
        catalog: &'a Catalog,
        bounds: &InstanceBounds,
        bijective_only: bool,
    ) -> Result<Self> {
        bounds.validate()?;
        let exhaustive = size_pairs(0, bounds.exhaustive_size, bijective_only);
        let maps = map_tables(&exhaustive, bijective_only)?;
        let mut units = Vec::new();
        for &(a, b) in &exhaustive {
            for domain in 0..catalog.spaces(a).len() {
                units.push(Unit::Exhaustive {
                    sizes: (a, b),
                    domain,
                });
            }
        }

        let mut samples = Vec::new();
        let candidates = size_pairs(bounds.exhaustive_size, bounds.max_size, bijective_only);
        if !candidates.is_empty() {
            let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
            for _ in 0..bounds.samples {
                let (a, b) = *candidates.choose(&mut rng).expect("nonempty");
                let i = rng.gen_range(0..catalog.spaces(a).len());
                let j = rng.gen_range(0..catalog.spaces(b).len());
                let assignment = random_assignment(&mut rng, a, b, bijective_only);
                samples.push(Sample {
                    sizes: (a, b),
                    indices: (i, j),
                    map: CompiledMap::new(assignment, b),
                });
            }
        }
        for start in (0..samples.len()).step_by(SAMPLE_CHUNK) {
            units.push(Unit::Sampled {
                start,
                end: (start + SAMPLE_CHUNK).min(samples.len()),
            });
        }
        Ok(PairSweep {
            catalog,
            maps,
            samples,
            units,
        })
    }

    /// Runs `step` on every instance in order; `step` returning `true` stops the
    /// sweep after the instance's unit (earlier units still complete).
    pub fn run<A, I, S, M>(&self, init: I, step: S, merge: M) -> A
    where
        A: Send,
        I: Fn() -> A + Sync,
        S: Fn(&mut A, &Pair<'_>) -> bool + Sync,
        M: Fn(&mut A, A),
    {
        let stop = AtomicUsize::new(usize::MAX);
        let parts: Vec<A> = self
            .units
            .par_iter()
            .enumerate()
            .map(|(k, unit)| {
                let mut acc = init();
                if k > stop.load(Ordering::Relaxed) {
                    return acc;
                }
                if self.run_unit(unit, &mut acc, &step) {
                    stop.fetch_min(k, Ordering::Relaxed);
                }
                acc
            })
            .collect();
        let mut total = init();
        for part in parts {
            merge(&mut total, part);
        }
        total
    }

    fn run_unit<A, S>(&self, unit: &Unit, acc: &mut A, step: &S) -> bool
    where
        S: Fn(&mut A, &Pair<'_>) -> bool,
    {
        match *unit {
            Unit::Exhaustive {
                sizes: (a, b),
                domain,
            } => {
                let u = &self.catalog.spaces(a)[domain];
                for (j, v) in self.catalog.spaces(b).iter().enumerate() {
                    for map in &self.maps[&(a, b)] {
                        let pair = Pair {
                            sizes: (a, b),
                            indices: (domain, j),
                            domain: &u.compiled,
                            codomain: &v.compiled,
                            map,
                        };
                        if step(acc, &pair) {
                            return true;
                        }
                    }
                }
                false
            }
            Unit::Sampled { start, end } => {
                for s in &self.samples[start..end] {
                    let pair = Pair {
                        sizes: s.sizes,
                        indices: s.indices,
                        domain: &self.catalog.spaces(s.sizes.0)[s.indices.0].compiled,
                        codomain: &self.catalog.spaces(s.sizes.1)[s.indices.1].compiled,
                        map: &s.map,
                    };
                    if step(acc, &pair) {
                        return true;
                    }
                }
                false
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_pair_order() {
        assert_eq!(
            size_pairs(0, 2, false),
            vec![(1, 1), (1, 2), (2, 1), (2, 2)]
        );
        assert_eq!(
            size_pairs(2, 3, false),
            vec![(1, 3), (2, 3), (3, 1), (3, 2), (3, 3)]
        );
        assert_eq!(size_pairs(0, 3, true), vec![(1, 1), (2, 2), (3, 3)]);
    }

    #[test]
    fn exhaustive_sweep_counts_every_instance() {
        let catalog = Catalog::new(2, SpaceMode::Nano).unwrap();
        let bounds = InstanceBounds::new(2, SpaceMode::Nano);
        let sweep = PairSweep::new(&catalog, &bounds, false).unwrap();
        let count = sweep.run(
            || 0u64,
            |n, _| {
                *n += 1;
                false
            },
            |t, p| *t += p,
        );
        // spaces: 2 of size 1, 8 of size 2; maps: b^a.
        assert_eq!(count, 2 * 2 + 2 * 8 * 2 + 8 * 2 + 8 * 8 * 4);
    }

    #[test]
    fn sampled_sweep_is_seeded() {
        let catalog = Catalog::new(3, SpaceMode::Nano).unwrap();
        let bounds = InstanceBounds::new(3, SpaceMode::Nano)
            .with_exhaustive_size(2)
            .with_samples(500);
        let collect = |seed| {
            let sweep = PairSweep::new(&catalog, &bounds.with_seed(seed), false).unwrap();
            sweep.run(
                Vec::new,
                |v, p| {
                    if p.sizes.0.max(p.sizes.1) == 3 {
                        v.push((p.indices, p.map.assignment.clone()));
                    }
                    false
                },
                |t, p| t.extend(p),
            )
        };
        let first = collect(7);
        assert_eq!(first.len(), 500);
        assert_eq!(first, collect(7));
        assert_ne!(first, collect(8));
    }

    #[test]
    fn early_stop_keeps_the_first_hit() {
        let catalog = Catalog::new(2, SpaceMode::Nano).unwrap();
        let bounds = InstanceBounds::new(2, SpaceMode::Nano);
        let sweep = PairSweep::new(&catalog, &bounds, false).unwrap();
        let first = sweep.run(
            || None,
            |found, p| {
                if p.sizes == (2, 2) {
                    *found = Some(p.indices);
                    true
                } else {
                    false
                }
            },
            |t, p| {
                if t.is_none() {
                    *t = p;
                }
            },
        );
        assert_eq!(first, Some((0, 0)));
    }
}
