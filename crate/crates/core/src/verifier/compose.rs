//! Composition checks over (U, V, W) triples with maps `h1: U → V`, `h2: V → W`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::continuity::ContinuityClass;
use crate::error::Result;

use super::bounds::InstanceBounds;
use super::catalog::{
    instance_data, map_tables, random_assignment, size_pairs, Catalog, MapTables,
};
use super::checks::{CheckResult, Tally, VerificationReport};
use super::compiled::{classes_with, CompiledMap, CompiledSpace};
use super::witness::{Claim, Discrepancy, InstanceData, Witness};

use ContinuityClass::{Na, Na2Star, NaStar, Nsa, Nsa2Star, NsaStar, N};

/// Largest size used for exhaustive triple enumeration.
pub const MAX_EXHAUSTIVE_TRIPLE_SIZE: usize = 3;

/// `h1 ∈ first` and `h2 ∈ second` imply `h2 ∘ h1 ∈ composite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CompositionRule {
    pub first: ContinuityClass,
    pub second: ContinuityClass,
    pub composite: ContinuityClass,
}

impl CompositionRule {
    const fn new(
        first: ContinuityClass,
        second: ContinuityClass,
        composite: ContinuityClass,
    ) -> Self {
        CompositionRule {
            first,
            second,
            composite,
        }
    }

    pub fn name(&self) -> String {
        format!(
            "h1 {}, h2 {} => h2.h1 {}",
            self.first, self.second, self.composite
        )
    }
}

pub const COMPOSITION_RULES: [CompositionRule; 10] = [
    CompositionRule::new(Na, N, Na),
    CompositionRule::new(NaStar, Na, Na),
    CompositionRule::new(NaStar, NaStar, NaStar),
    CompositionRule::new(NsaStar, NsaStar, NsaStar),
    CompositionRule::new(Na2Star, Na2Star, Na2Star),
    CompositionRule::new(Nsa2Star, Nsa2Star, Nsa2Star),
    CompositionRule::new(Na2Star, NaStar, Na2Star),
    CompositionRule::new(Na2Star, Na, N),
    CompositionRule::new(Na, Na2Star, NaStar),
    CompositionRule::new(N, Na2Star, Na2Star),
];

/// Classes not closed under composition; each should get a witness.
pub const NON_COMPOSING: [ContinuityClass; 2] = [Na, Nsa];

pub fn non_composing_check_name(class: ContinuityClass) -> String {
    format!("{class} composite can leave {class}")
}

fn bits(p: [bool; 7]) -> u8 {
    p.iter()
        .enumerate()
        .fold(0, |acc, (k, &b)| acc | (b as u8) << k)
}

fn has(p: u8, class: ContinuityClass) -> bool {
    p & 1 << class.index() != 0
}

#[derive(Clone, Copy)]
struct Triple<'a> {
    sizes: (usize, usize, usize),
    indices: (usize, usize, usize),
    h1: &'a CompiledMap,
    h2: &'a CompiledMap,
}

impl Triple<'_> {
    fn data(&self, catalog: &Catalog) -> InstanceData {
        let (a, b, c) = self.sizes;
        let (i, j, k) = self.indices;
        instance_data(
            catalog,
            &[(a, i), (b, j), (c, k)],
            &[&self.h1.assignment, &self.h2.assignment],
        )
    }
}

struct Acc {
    tally: Tally,
    remarks: [Option<Witness>; 2],
}

impl Acc {
    fn new() -> Self {
        Acc {
            tally: Tally::new(COMPOSITION_RULES.len()),
            remarks: [None, None],
        }
    }

    fn merge(&mut self, other: Acc) {
        self.tally.merge(other.tally);
        for (mine, theirs) in self.remarks.iter_mut().zip(other.remarks) {
            if mine.is_none() {
                *mine = theirs;
            }
        }
    }

    fn visit(
        &mut self,
        catalog: &Catalog,
        t: Triple<'_>,
        p1: u8,
        p2: u8,
        w: &CompiledSpace,
        u: &CompiledSpace,
    ) {
        self.tally.instances += 1;
        let mut composite: Option<u8> = None;
        let mut composite_classes = || {
            *composite.get_or_insert_with(|| {
                let mut pre = [0u32; 32];
                for (d, slot) in pre.iter_mut().enumerate().take(w.full as usize + 1) {
                    *slot = t.h1.pre[t.h2.pre[d] as usize];
                }
                bits(classes_with(u, w, &pre[..=w.full as usize]))
            })
        };
        for (k, rule) in COMPOSITION_RULES.iter().enumerate() {
            if has(p1, rule.first) && has(p2, rule.second) {
                let pc = composite_classes();
                self.tally.record(k, has(pc, rule.composite), || Discrepancy {
                    check: rule.name(),
                    detail: format!("h1 classes {p1:07b}, h2 classes {p2:07b}, composite {pc:07b} (bit k = class k)"),
                    instance: t.data(catalog),
                });
            }
        }
        for (k, &class) in NON_COMPOSING.iter().enumerate() {
            if self.remarks[k].is_none()
                && has(p1, class)
                && has(p2, class)
                && !has(composite_classes(), class)
            {
                self.remarks[k] = Some(Witness {
                    claim: Claim::Composition {
                        first: class,
                        second: class,
                        composite_fails: class,
                    },
                    instance: t.data(catalog),
                });
            }
        }
    }
}

/// Size triples with `lo < max <= hi`, ordered by `(max, a, b, c)`.
fn size_triples(lo: usize, hi: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 1..=hi {
        for b in 1..=hi {
            for c in 1..=hi {
                if a.max(b).max(c) > lo {
                    out.push((a, b, c));
                }
            }
        }
    }
    out.sort_by_key(|&(a, b, c)| (a.max(b).max(c), a, b, c));
    out
}

/// Class bitmasks of every (V, W, h2) for a size pair, indexed `[v][w][h2]`.
fn pair_classes(catalog: &Catalog, maps: &MapTables, (b, c): (usize, usize)) -> Vec<u8> {
    let table = &maps[&(b, c)];
    let mut out =
        Vec::with_capacity(catalog.spaces(b).len() * catalog.spaces(c).len() * table.len());
    for v in catalog.spaces(b) {
        for w in catalog.spaces(c) {
            for h in table {
                out.push(bits(classes_with(&v.compiled, &w.compiled, &h.pre)));
            }
        }
    }
    out
}

struct SampledTriple {
    sizes: (usize, usize, usize),
    indices: (usize, usize, usize),
    h1: CompiledMap,
    h2: CompiledMap,
}

enum Unit {
    Exhaustive {
        sizes: (usize, usize, usize),
        domain: usize,
    },
    Sampled {
        start: usize,
        end: usize,
    },
}

const SAMPLE_CHUNK: usize = 2048;

/// Every composition rule over exhaustive small triples plus seeded samples,
/// and a search for composites that leave a non-composing class.
pub fn check_compositions(bounds: &InstanceBounds) -> Result<VerificationReport> {
    bounds.validate()?;
    let catalog = Catalog::new(bounds.max_size, bounds.mode)?;
    let exhaustive_size = bounds.exhaustive_size.min(MAX_EXHAUSTIVE_TRIPLE_SIZE);
    let maps = map_tables(&size_pairs(0, exhaustive_size, false), false)?;
    let classes: std::collections::BTreeMap<_, _> = maps
        .keys()
        .map(|&key| (key, pair_classes(&catalog, &maps, key)))
        .collect();

    let mut units = Vec::new();
    for sizes in size_triples(0, exhaustive_size) {
        for domain in 0..catalog.spaces(sizes.0).len() {
            units.push(Unit::Exhaustive { sizes, domain });
        }
    }
    let candidates = size_triples(exhaustive_size, bounds.max_size);
    let mut samples = Vec::new();
    if !candidates.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
        for _ in 0..bounds.samples {
            let (a, b, c) = *candidates.choose(&mut rng).expect("nonempty");
            let i = rng.gen_range(0..catalog.spaces(a).len());
            let j = rng.gen_range(0..catalog.spaces(b).len());
            let k = rng.gen_range(0..catalog.spaces(c).len());
            let h1 = CompiledMap::new(random_assignment(&mut rng, a, b, false), b);
            let h2 = CompiledMap::new(random_assignment(&mut rng, b, c, false), c);
            samples.push(SampledTriple {
                sizes: (a, b, c),
                indices: (i, j, k),
                h1,
                h2,
            });
        }
    }
    for start in (0..samples.len()).step_by(SAMPLE_CHUNK) {
        units.push(Unit::Sampled {
            start,
            end: (start + SAMPLE_CHUNK).min(samples.len()),
        });
    }

    let parts: Vec<Acc> = units
        .par_iter()
        .map(|unit| {
            let mut acc = Acc::new();
            match *unit {
                Unit::Exhaustive {
                    sizes: (a, b, c),
                    domain,
                } => {
                    let u = &catalog.spaces(a)[domain].compiled;
                    let (vs, ws) = (catalog.spaces(b), catalog.spaces(c));
                    let (m1, m2) = (&maps[&(a, b)], &maps[&(b, c)]);
                    let table = &classes[&(b, c)];
                    for (j, v) in vs.iter().enumerate() {
                        for h1 in m1 {
                            let p1 = bits(classes_with(u, &v.compiled, &h1.pre));
                            if p1 == 0 {
                                continue;
                            }
                            for (k, w) in ws.iter().enumerate() {
                                for (x, h2) in m2.iter().enumerate() {
                                    let p2 = table[(j * ws.len() + k) * m2.len() + x];
                                    let t = Triple {
                                        sizes: (a, b, c),
                                        indices: (domain, j, k),
                                        h1,
                                        h2,
                                    };
                                    acc.visit(&catalog, t, p1, p2, &w.compiled, u);
                                }
                            }
                        }
                    }
                    // Also counts the triples skipped because h1 is in no class.
                    acc.tally.instances = (vs.len() * m1.len() * ws.len() * m2.len()) as u64;
                }
                Unit::Sampled { start, end } => {
                    for s in &samples[start..end] {
                        let (a, b, c) = s.sizes;
                        let (i, j, k) = s.indices;
                        let (u, v, w) = (
                            &catalog.spaces(a)[i].compiled,
                            &catalog.spaces(b)[j].compiled,
                            &catalog.spaces(c)[k].compiled,
                        );
                        let p1 = bits(classes_with(u, v, &s.h1.pre));
                        let p2 = bits(classes_with(v, w, &s.h2.pre));
                        let t = Triple {
                            sizes: s.sizes,
                            indices: s.indices,
                            h1: &s.h1,
                            h2: &s.h2,
                        };
                        acc.visit(&catalog, t, p1, p2, w, u);
                    }
                }
            }
            acc
        })
        .collect();
    let mut total = Acc::new();
    for part in parts {
        total.merge(part);
    }

    let names: Vec<String> = COMPOSITION_RULES
        .iter()
        .map(CompositionRule::name)
        .collect();
    let instances = total.tally.instances;
    let (mut checks, discrepancies) = total.tally.into_parts(&names);
    let mut witnesses = Vec::new();
    for (class, found) in NON_COMPOSING.iter().zip(total.remarks) {
        checks.push(CheckResult {
            name: non_composing_check_name(*class),
            instances,
            applicable: instances,
            violations: 0,
            passed: found.is_some(),
        });
        witnesses.extend(found);
    }
    Ok(VerificationReport {
        title: "compositions".into(),
        bounds: *bounds,
        checks,
        witnesses,
        discrepancies,
    })
}
