//! Rebuilds the published worked examples and checks each stated classification.

use std::fmt;

use serde::Serialize;

use crate::continuity::{classify, make_map, ContinuityClass, FiniteMap};
use crate::error::Result;
use crate::family::SetFamily;
use crate::open_sets::{enumerate_family, FamilyKind};
use crate::partition::Partition;
use crate::space::{build_nano_topology, make_explicit_space, NanoSpace};
use crate::universe::Universe;

use super::witness::{Claim, InstanceData, MapSpec, Witness};

use ContinuityClass::{Na, NaStar, Nsa, NsaStar, N};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ReproStatus {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    /// The printed data is inconsistent; the printed version is used and both are reported.
    #[serde(rename = "KNOWN-DISCREPANCY")]
    KnownDiscrepancy,
}

impl fmt::Display for ReproStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReproStatus::Pass => "PASS",
            ReproStatus::Fail => "FAIL",
            ReproStatus::KnownDiscrepancy => "KNOWN-DISCREPANCY",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReproEntry {
    pub example: String,
    pub check: String,
    pub expected: String,
    pub actual: String,
    pub status: ReproStatus,
}

impl fmt::Display for ReproEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.status, self.example, self.check)?;
        if self.status != ReproStatus::Pass {
            write!(f, " (printed {}, computed {})", self.expected, self.actual)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReproReport {
    pub entries: Vec<ReproEntry>,
}

impl ReproReport {
    /// No entry failed; known discrepancies are allowed.
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != ReproStatus::Fail)
    }

    pub fn with_status(&self, status: ReproStatus) -> impl Iterator<Item = &ReproEntry> {
        self.entries.iter().filter(move |e| e.status == status)
    }
}

impl fmt::Display for ReproReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        let count = |s| self.with_status(s).count();
        writeln!(
            f,
            "{} pass, {} fail, {} known discrepancies",
            count(ReproStatus::Pass),
            count(ReproStatus::Fail),
            count(ReproStatus::KnownDiscrepancy)
        )
    }
}

/// A space as printed: partition and subset, plus the printed topology.
pub struct PrintedSpace {
    pub key: &'static str,
    pub points: &'static [&'static str],
    pub classes: &'static [&'static [&'static str]],
    pub subset: &'static [&'static str],
    pub opens: &'static [&'static [&'static str]],
}

pub struct PrintedMap {
    pub example: &'static str,
    pub domain: &'static str,
    pub codomain: &'static str,
    pub arrows: &'static [(&'static str, &'static str)],
    /// Stated memberships, possibly from several examples reusing the map.
    pub stated: &'static [(&'static str, ContinuityClass, bool)],
}

const R: &[&str] = &["r1", "r2", "r3", "r4"];
const S4: &[&str] = &["s1", "s2", "s3", "s4"];
const S3: &[&str] = &["s1", "s2", "s3"];

pub const PRINTED_SPACES: &[PrintedSpace] = &[
    PrintedSpace {
        key: "ex2.2 U",
        points: R,
        classes: &[&["r1"], &["r3"], &["r2", "r4"]],
        subset: &["r1", "r2"],
        opens: &[&[], &["r1"], &["r2", "r4"], &["r1", "r2", "r4"], R],
    },
    PrintedSpace {
        key: "ex3.5 U",
        points: R,
        classes: &[&["r1"], &["r4"], &["r2", "r3"]],
        subset: &["r1", "r4"],
        opens: &[&[], &["r1", "r4"], R],
    },
    PrintedSpace {
        key: "ex3.5 V",
        points: S4,
        classes: &[&["s1"], &["s3"], &["s2", "s4"]],
        subset: &["s1", "s2"],
        opens: &[&[], &["s1"], &["s2", "s4"], &["s1", "s2", "s4"], S4],
    },
    PrintedSpace {
        key: "ex3.6 V",
        points: S4,
        classes: &[&["s2"], &["s4"], &["s1", "s3"]],
        subset: &["s1", "s2"],
        opens: &[&[], &["s2"], &["s1", "s3"], &["s1", "s2", "s3"], S4],
    },
    PrintedSpace {
        key: "ex3.9 V",
        points: S4,
        classes: &[&["s1"], &["s4"], &["s2", "s3"]],
        subset: &["s1", "s4"],
        opens: &[&[], &["s1", "s4"], S4],
    },
    PrintedSpace {
        key: "ex3.14 U",
        points: R,
        classes: &[&["r1"], &["r4"], &["r2", "r3"]],
        subset: &["r1", "r3"],
        opens: &[&[], &["r1"], &["r2", "r3"], &["r1", "r2", "r3"], R],
    },
    PrintedSpace {
        key: "ex3.14 V",
        points: S3,
        classes: &[&["s1"], &["s2", "s3"]],
        subset: &["s1", "s3"],
        opens: &[&[], &["s1"], S3],
    },
    PrintedSpace {
        key: "ex3.16 U",
        points: R,
        classes: &[&["r2"], &["r3"], &["r1", "r4"]],
        subset: &["r1", "r3"],
        opens: &[&[], &["r3"], &["r1", "r4"], &["r1", "r3", "r4"], R],
    },
    PrintedSpace {
        key: "ex3.16 V",
        points: S4,
        classes: &[&["s1"], &["s2"], &["s3"], &["s4"]],
        subset: &["s1", "s4"],
        opens: &[&[], &["s1", "s4"], S4],
    },
    PrintedSpace {
        key: "ex3.22 U",
        points: &["1", "2", "3", "4"],
        classes: &[&["2"], &["4"], &["1", "3"]],
        subset: &["1", "2"],
        opens: &[
            &[],
            &["3"],
            &["1", "3"],
            &["1", "2", "3"],
            &["1", "2", "3", "4"],
        ],
    },
    PrintedSpace {
        key: "ex3.22 V",
        points: S3,
        classes: &[&["s1"], &["s2"], &["s3"]],
        subset: &["s1", "s2"],
        opens: &[&[], &["s3"], S3],
    },
];

pub const PRINTED_MAPS: &[PrintedMap] = &[
    PrintedMap {
        example: "ex3.5",
        domain: "ex3.5 U",
        codomain: "ex3.5 V",
        arrows: &[("r1", "s2"), ("r2", "s2"), ("r3", "s3"), ("r4", "s4")],
        stated: &[
            ("ex3.5", Na, true),
            ("ex3.5", N, false),
            ("ex3.5", Nsa, true),
            ("ex3.8", NaStar, true),
        ],
    },
    PrintedMap {
        example: "ex3.6",
        domain: "ex2.2 U",
        codomain: "ex3.6 V",
        arrows: &[("r1", "s2"), ("r2", "s1"), ("r3", "s2"), ("r4", "s3")],
        stated: &[
            ("ex3.6", Nsa, true),
            ("ex3.6", Na, false),
            ("ex3.13", NsaStar, true),
            ("ex3.13", N, false),
        ],
    },
    PrintedMap {
        example: "ex3.9",
        domain: "ex2.2 U",
        codomain: "ex3.9 V",
        arrows: &[("r1", "s2"), ("r2", "s1"), ("r3", "s3"), ("r4", "s4")],
        stated: &[("ex3.9", N, true), ("ex3.9", NaStar, false)],
    },
    PrintedMap {
        example: "ex3.14",
        domain: "ex3.14 U",
        codomain: "ex3.14 V",
        arrows: &[("r1", "s1"), ("r2", "s2"), ("r3", "s3"), ("r4", "s3")],
        stated: &[("ex3.14", N, true), ("ex3.14", NsaStar, false)],
    },
    PrintedMap {
        example: "ex3.16",
        domain: "ex3.16 U",
        codomain: "ex3.16 V",
        arrows: &[("r1", "s1"), ("r2", "s2"), ("r3", "s3"), ("r4", "s4")],
        stated: &[
            ("ex3.16", Na, true),
            ("ex3.16", Nsa, true),
            ("ex3.16", NaStar, false),
            ("ex3.18", NsaStar, true),
            ("ex3.18", NaStar, false),
        ],
    },
    PrintedMap {
        example: "ex3.19",
        domain: "ex2.2 U",
        codomain: "ex3.6 V",
        arrows: &[("r1", "s1"), ("r2", "s1"), ("r3", "s4"), ("r4", "s3")],
        stated: &[("ex3.19", NaStar, true), ("ex3.19", NsaStar, false)],
    },
    PrintedMap {
        example: "ex3.22 h1",
        domain: "ex3.22 U",
        codomain: "ex3.22 V",
        arrows: &[("1", "s1"), ("2", "s1"), ("3", "s2"), ("4", "s2")],
        stated: &[("ex3.22", Na, true), ("ex3.22", Nsa, true)],
    },
    PrintedMap {
        example: "ex3.22 h2",
        domain: "ex3.22 V",
        codomain: "ex3.22 U",
        arrows: &[("s1", "3"), ("s2", "1"), ("s3", "3")],
        stated: &[("ex3.22", Na, true), ("ex3.22", Nsa, true)],
    },
    PrintedMap {
        example: "ex3.22 h2.h1",
        domain: "ex3.22 U",
        codomain: "ex3.22 U",
        arrows: &[("1", "3"), ("2", "3"), ("3", "1"), ("4", "1")],
        stated: &[("ex3.22", Na, false), ("ex3.22", Nsa, false)],
    },
];

/// Printed extra members of the derived families, beyond the topology.
struct PrintedFamily {
    example: &'static str,
    space: &'static str,
    kind: FamilyKind,
    extra: &'static [&'static [&'static str]],
}

const PRINTED_FAMILIES: &[PrintedFamily] = &[
    PrintedFamily {
        example: "ex2.2",
        space: "ex2.2 U",
        kind: FamilyKind::NalphaOpen,
        extra: &[],
    },
    PrintedFamily {
        example: "ex2.2",
        space: "ex2.2 U",
        kind: FamilyKind::NsalphaOpen,
        extra: &[&["r1", "r3"], &["r2", "r3", "r4"]],
    },
    PrintedFamily {
        example: "ex3.22",
        space: "ex3.22 U",
        kind: FamilyKind::NalphaOpen,
        extra: &[&["2", "3"], &["3", "4"], &["1", "3", "4"], &["2", "3", "4"]],
    },
    PrintedFamily {
        example: "ex3.22",
        space: "ex3.22 U",
        kind: FamilyKind::NsalphaOpen,
        extra: &[&["2", "3"], &["3", "4"], &["1", "3", "4"], &["2", "3", "4"]],
    },
    PrintedFamily {
        example: "ex3.22",
        space: "ex3.22 V",
        kind: FamilyKind::NalphaOpen,
        extra: &[&["s1", "s3"], &["s2", "s3"]],
    },
    PrintedFamily {
        example: "ex3.22",
        space: "ex3.22 V",
        kind: FamilyKind::NsalphaOpen,
        extra: &[&["s1", "s3"], &["s2", "s3"]],
    },
];

fn printed_family(universe: &Universe, sets: &[&[&str]]) -> Result<SetFamily> {
    let members = sets
        .iter()
        .map(|s| universe.set_from_labels(s))
        .collect::<Result<Vec<_>>>()?;
    SetFamily::new(universe, members)
}

/// A printed space rebuilt from its partition and subset, and from its printed topology.
pub struct RebuiltSpace {
    pub derived: NanoSpace,
    pub printed: NanoSpace,
}

impl RebuiltSpace {
    pub fn consistent(&self) -> bool {
        self.derived.opens() == self.printed.opens()
    }

    /// The derived space when it matches the printed topology, else the printed one.
    pub fn space(&self) -> &NanoSpace {
        if self.consistent() {
            &self.derived
        } else {
            &self.printed
        }
    }
}

pub fn rebuild(printed: &PrintedSpace) -> Result<RebuiltSpace> {
    let universe = Universe::new(printed.points.iter().copied())?;
    let partition = Partition::from_labels(&universe, printed.classes)?;
    let derived = build_nano_topology(&partition, &universe.set_from_labels(printed.subset)?)?;
    let printed = make_explicit_space(&universe, &printed_family(&universe, printed.opens)?)?;
    Ok(RebuiltSpace { derived, printed })
}

pub fn printed_space(key: &str) -> Option<&'static PrintedSpace> {
    PRINTED_SPACES.iter().find(|s| s.key == key)
}

/// The map as printed, between the spaces [`RebuiltSpace::space`] selects.
pub fn rebuild_map(map: &PrintedMap) -> Result<(NanoSpace, NanoSpace, FiniteMap)> {
    let lookup = |key| rebuild(printed_space(key).expect("map refers to a listed space"));
    let (domain, codomain) = (lookup(map.domain)?, lookup(map.codomain)?);
    let h = make_map(
        domain.space().universe(),
        codomain.space().universe(),
        map.arrows,
    )?;
    Ok((domain.space().clone(), codomain.space().clone(), h))
}

/// The printed pair of maps whose composite leaves `class`, as a replayable witness.
pub fn printed_composition_witness(class: ContinuityClass) -> Result<Witness> {
    let find = |name| {
        PRINTED_MAPS
            .iter()
            .find(|m| m.example == name)
            .expect("listed map")
    };
    let (u, v, h1) = rebuild_map(find("ex3.22 h1"))?;
    let (_, w, h2) = rebuild_map(find("ex3.22 h2"))?;
    let instance = InstanceData {
        spaces: vec![u.spec(), v.spec(), w.spec()],
        maps: vec![MapSpec::from_map(&h1, 0, 1), MapSpec::from_map(&h2, 1, 2)],
    };
    Ok(Witness {
        claim: Claim::Composition {
            first: class,
            second: class,
            composite_fails: class,
        },
        instance,
    })
}

fn entry(example: &str, check: String, expected: String, actual: String) -> ReproEntry {
    let status = if expected == actual {
        ReproStatus::Pass
    } else {
        ReproStatus::Fail
    };
    ReproEntry {
        example: example.into(),
        check,
        expected,
        actual,
        status,
    }
}

fn example_of(key: &str) -> &str {
    key.split(' ').next().unwrap_or(key)
}

/// Every printed example, topologies first, then families, then maps.
pub fn repro_worked_examples() -> Result<ReproReport> {
    let mut entries = Vec::new();
    // One entry per example, covering all of its spaces.
    let mut i = 0;
    while i < PRINTED_SPACES.len() {
        let example = example_of(PRINTED_SPACES[i].key);
        let group: Vec<_> = PRINTED_SPACES[i..]
            .iter()
            .take_while(|s| example_of(s.key) == example)
            .collect();
        i += group.len();
        let (mut expected, mut actual) = (Vec::new(), Vec::new());
        for printed in &group {
            let rebuilt = rebuild(printed)?;
            expected.push(format!("{}: {}", printed.key, rebuilt.printed.opens()));
            actual.push(format!("{}: {}", printed.key, rebuilt.derived.opens()));
        }
        let check = format!("{example} topologies from partition and subset");
        let mut e = entry(example, check, expected.join("; "), actual.join("; "));
        if e.status == ReproStatus::Fail {
            e.status = ReproStatus::KnownDiscrepancy;
            e.check.push_str("; printed topologies used");
        }
        entries.push(e);
    }

    for fam in PRINTED_FAMILIES {
        let space = rebuild(printed_space(fam.space).expect("listed space"))?
            .space()
            .clone();
        let expected = space
            .opens()
            .union(&printed_family(space.universe(), fam.extra)?)?;
        let actual = enumerate_family(&space, fam.kind);
        entries.push(entry(
            fam.example,
            format!("{} {} family", fam.space, fam.kind),
            expected.to_string(),
            actual.to_string(),
        ));
    }

    for map in PRINTED_MAPS {
        let (domain, codomain, h) = rebuild_map(map)?;
        let profile = classify(&h, &domain, &codomain)?;
        for &(example, class, stated) in map.stated {
            entries.push(entry(
                example,
                format!("{} map is {class}", map.example),
                stated.to_string(),
                profile.get(class).to_string(),
            ));
        }
    }
    Ok(ReproReport { entries })
}
