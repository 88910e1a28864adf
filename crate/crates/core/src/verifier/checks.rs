use std::fmt;

use serde::Serialize;

use crate::continuity::{ContinuityClass, FAMILY_IMPLICATIONS};
use crate::error::Result;
use crate::open_sets::nsalpha_verdict;

use super::bounds::InstanceBounds;
use super::catalog::{instance_data, Catalog, Pair, PairSweep};
use super::compiled::{classes_with, n_continuous_by_interiors, nsalpha_four, profile};
use super::witness::{Discrepancy, Witness};

/// Outcome of one property over a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// Instances visited.
    pub instances: u64,
    /// Instances where the property's hypotheses held.
    pub applicable: u64,
    pub violations: u64,
    pub passed: bool,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: {} applicable of {} instances, {} violations",
            if self.passed { "pass" } else { "FAIL" },
            self.name,
            self.applicable,
            self.instances,
            self.violations
        )
    }
}

/// A group of checks run over the same bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub title: String,
    pub bounds: InstanceBounds,
    pub checks: Vec<CheckResult>,
    pub witnesses: Vec<Witness>,
    /// First violating instance of each failed check.
    pub discrepancies: Vec<Discrepancy>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} (max size {}, exhaustive {}, samples {}, seed {}, mode {})",
            self.title,
            self.bounds.max_size,
            self.bounds.exhaustive_size,
            self.bounds.samples,
            self.bounds.seed,
            self.bounds.mode
        )?;
        for c in &self.checks {
            writeln!(f, "  {c}")?;
        }
        for w in &self.witnesses {
            write!(f, "{w}")?;
        }
        for d in &self.discrepancies {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Per-check counters plus the first violation, mergeable in sweep order.
#[derive(Debug, Clone)]
pub(crate) struct Tally {
    pub instances: u64,
    pub applicable: Vec<u64>,
    pub violations: Vec<u64>,
    pub first: Vec<Option<Discrepancy>>,
}

impl Tally {
    pub fn new(checks: usize) -> Self {
        Tally {
            instances: 0,
            applicable: vec![0; checks],
            violations: vec![0; checks],
            first: vec![None; checks],
        }
    }

    /// Counts one applicable instance of check `k`; `detail` is only built on violation.
    pub fn record(&mut self, k: usize, ok: bool, make: impl FnOnce() -> Discrepancy) {
        self.applicable[k] += 1;
        if !ok {
            self.violations[k] += 1;
            if self.first[k].is_none() {
                self.first[k] = Some(make());
            }
        }
    }

    pub fn merge(&mut self, other: Tally) {
        self.instances += other.instances;
        for k in 0..self.applicable.len() {
            self.applicable[k] += other.applicable[k];
            self.violations[k] += other.violations[k];
        }
        for (mine, theirs) in self.first.iter_mut().zip(other.first) {
            if mine.is_none() {
                *mine = theirs;
            }
        }
    }

    pub fn into_parts(self, names: &[String]) -> (Vec<CheckResult>, Vec<Discrepancy>) {
        let checks = names
            .iter()
            .enumerate()
            .map(|(k, name)| CheckResult {
                name: name.clone(),
                instances: self.instances,
                applicable: self.applicable[k],
                violations: self.violations[k],
                passed: self.violations[k] == 0,
            })
            .collect();
        (checks, self.first.into_iter().flatten().collect())
    }
}

pub(crate) fn pair_discrepancy(
    catalog: &Catalog,
    pair: &Pair<'_>,
    check: &str,
    detail: String,
) -> Discrepancy {
    Discrepancy {
        check: check.to_string(),
        detail,
        instance: pair.data(catalog),
    }
}

fn tokens(classes: [bool; 7]) -> String {
    let held: Vec<_> = ContinuityClass::ALL
        .iter()
        .zip(classes)
        .filter(|(_, b)| *b)
        .map(|(c, _)| c.token())
        .collect();
    format!("classes held: {{{}}}", held.join(", "))
}

/// Every class implication that follows from family inclusions.
pub fn check_hierarchy(bounds: &InstanceBounds) -> Result<VerificationReport> {
    let catalog = Catalog::new(bounds.max_size, bounds.mode)?;
    let sweep = PairSweep::new(&catalog, bounds, false)?;
    let names: Vec<String> = FAMILY_IMPLICATIONS
        .iter()
        .map(|(a, b)| format!("{a} => {b}"))
        .collect();
    let tally = sweep.run(
        || Tally::new(names.len()),
        |t, pair| {
            t.instances += 1;
            let p = classes_with(pair.domain, pair.codomain, &pair.map.pre);
            for (k, (a, b)) in FAMILY_IMPLICATIONS.iter().enumerate() {
                if p[a.index()] {
                    t.record(k, p[b.index()], || {
                        pair_discrepancy(&catalog, pair, &names[k], tokens(p))
                    });
                }
            }
            false
        },
        Tally::merge,
    );
    let (checks, discrepancies) = tally.into_parts(&names);
    Ok(VerificationReport {
        title: "class hierarchy".into(),
        bounds: *bounds,
        checks,
        witnesses: Vec::new(),
        discrepancies,
    })
}

pub const NSALPHA_FOUR_WAY: &str = "NSa-continuity characterizations agree";
pub const INTERIOR_INCLUSION: &str = "interior inclusion equals N-continuity";
pub const NSALPHA_OPEN_TWO_WAY: &str = "NSa-open closure formula equals sandwich form";

/// Equivalent descriptions of NSα-continuity, N-continuity and NSα-open sets.
pub fn check_equivalences(bounds: &InstanceBounds) -> Result<VerificationReport> {
    let catalog = Catalog::new(bounds.max_size, bounds.mode)?;
    let sweep = PairSweep::new(&catalog, bounds, false)?;
    let names = [NSALPHA_FOUR_WAY.to_string(), INTERIOR_INCLUSION.to_string()];
    let tally = sweep.run(
        || Tally::new(2),
        |t, pair| {
            t.instances += 1;
            let four = nsalpha_four(pair.domain, pair.codomain, pair.map);
            t.record(0, four.iter().all(|&v| v == four[0]), || {
                pair_discrepancy(&catalog, pair, NSALPHA_FOUR_WAY, format!("values {four:?}"))
            });
            let by_interiors = n_continuous_by_interiors(pair.domain, pair.codomain, pair.map);
            let n =
                classes_with(pair.domain, pair.codomain, &pair.map.pre)[ContinuityClass::N.index()];
            t.record(1, by_interiors == n, || {
                pair_discrepancy(
                    &catalog,
                    pair,
                    INTERIOR_INCLUSION,
                    format!("interior inclusion {by_interiors}, N-continuous {n}"),
                )
            });
            false
        },
        Tally::merge,
    );
    let (mut checks, mut discrepancies) = tally.into_parts(&names);

    // Set-level check over every subset of every catalog space.
    let mut subsets = Tally::new(1);
    for n in 1..=bounds.max_size {
        for (i, entry) in catalog.spaces(n).iter().enumerate() {
            for a in entry.space.universe().subsets() {
                subsets.instances += 1;
                let verdict = nsalpha_verdict(&entry.space, &a)?;
                subsets.record(0, !verdict.disagrees(), || Discrepancy {
                    check: NSALPHA_OPEN_TWO_WAY.into(),
                    detail: format!(
                        "subset {a}: closure formula {}, sandwich {}",
                        verdict.by_closure, verdict.by_sandwich
                    ),
                    instance: instance_data(&catalog, &[(n, i)], &[]),
                });
            }
        }
    }
    let (c, d) = subsets.into_parts(&[NSALPHA_OPEN_TWO_WAY.to_string()]);
    checks.extend(c);
    discrepancies.extend(d);

    Ok(VerificationReport {
        title: "equivalent characterizations".into(),
        bounds: *bounds,
        checks,
        witnesses: Vec::new(),
        discrepancies,
    })
}

pub const OPEN_BIJECTION_NA_STAR: &str = "N-open, N-continuous bijection => Na*";
pub const OPEN_BIJECTION_NSA_STAR: &str = "N-open, Na* bijection => NSa*";

/// Conditional results about N-open bijections, over bijective instances only.
pub fn check_conditional_theorems(bounds: &InstanceBounds) -> Result<VerificationReport> {
    let catalog = Catalog::new(bounds.max_size, bounds.mode)?;
    let sweep = PairSweep::new(&catalog, bounds, true)?;
    let names = [
        OPEN_BIJECTION_NA_STAR.to_string(),
        OPEN_BIJECTION_NSA_STAR.to_string(),
    ];
    let tally = sweep.run(
        || Tally::new(2),
        |t, pair| {
            t.instances += 1;
            let p = profile(pair.domain, pair.codomain, pair.map);
            if !(pair.map.bijective && p.n_open_map) {
                return false;
            }
            let c = p.classes();
            let detail = || format!("N-open map, {}", tokens(c));
            if p.get(ContinuityClass::N) {
                t.record(0, p.get(ContinuityClass::NaStar), || {
                    pair_discrepancy(&catalog, pair, &names[0], detail())
                });
            }
            if p.get(ContinuityClass::NaStar) {
                t.record(1, p.get(ContinuityClass::NsaStar), || {
                    pair_discrepancy(&catalog, pair, &names[1], detail())
                });
            }
            false
        },
        Tally::merge,
    );
    let (checks, discrepancies) = tally.into_parts(&names);
    Ok(VerificationReport {
        title: "N-open bijections".into(),
        bounds: *bounds,
        checks,
        witnesses: Vec::new(),
        discrepancies,
    })
}
