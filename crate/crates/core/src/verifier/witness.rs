use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::continuity::{classify, make_map, ContinuityClass, FiniteMap};
use crate::error::{NanoError, Result};
use crate::space::{NanoSpace, SpaceKind, SpaceSpec};

/// A map between two of an instance's spaces, as `source->target` arrows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapSpec {
    pub domain: usize,
    pub codomain: usize,
    pub arrows: Vec<String>,
}

impl MapSpec {
    pub fn from_map(map: &FiniteMap, domain: usize, codomain: usize) -> Self {
        let arrows = map
            .arrows()
            .into_iter()
            .map(|(a, b)| format!("{a}->{b}"))
            .collect();
        MapSpec {
            domain,
            codomain,
            arrows,
        }
    }
}

/// Spaces plus maps between them: everything needed to replay a check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceData {
    pub spaces: Vec<SpaceSpec>,
    pub maps: Vec<MapSpec>,
}

impl InstanceData {
    pub fn build(&self) -> Result<(Vec<NanoSpace>, Vec<FiniteMap>)> {
        let spaces = self
            .spaces
            .iter()
            .map(SpaceSpec::build)
            .collect::<Result<Vec<_>>>()?;
        let maps = self
            .maps
            .iter()
            .map(|m| {
                let (d, c) = (&spaces[m.domain], &spaces[m.codomain]);
                let pairs = m
                    .arrows
                    .iter()
                    .map(|a| {
                        a.split_once("->")
                            .map(|(x, y)| (x.to_string(), y.to_string()))
                            .ok_or_else(|| NanoError::UnknownLabel(a.clone()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                make_map(d.universe(), c.universe(), &pairs)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((spaces, maps))
    }
}

impl fmt::Display for InstanceData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.spaces.iter().enumerate() {
            write!(f, "  space #{k}: points {}", s.points.join(" "))?;
            match &s.kind {
                SpaceKind::Nano { classes, subset } => {
                    write!(f, "; classes")?;
                    for c in classes {
                        write!(f, " [{}]", c.join(" "))?;
                    }
                    writeln!(f, "; subset [{}]", subset.join(" "))?;
                }
                SpaceKind::Explicit { opens } => {
                    write!(f, "; opens")?;
                    for o in opens {
                        write!(f, " [{}]", o.join(" "))?;
                    }
                    writeln!(f)?;
                }
            }
        }
        for m in &self.maps {
            writeln!(
                f,
                "  map #{} -> #{}: {}",
                m.domain,
                m.codomain,
                m.arrows.join(" ")
            )?;
        }
        Ok(())
    }
}

/// Copy of `spec` with point `i` renamed to `{prefix}{i + 1}`.
pub(crate) fn relabel(spec: &SpaceSpec, prefix: &str) -> SpaceSpec {
    let rename: HashMap<&str, String> = spec
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_str(), format!("{prefix}{}", i + 1)))
        .collect();
    let map_all = |v: &Vec<String>| {
        v.iter()
            .map(|p| rename[p.as_str()].clone())
            .collect::<Vec<_>>()
    };
    let kind = match &spec.kind {
        SpaceKind::Nano { classes, subset } => SpaceKind::Nano {
            classes: classes.iter().map(map_all).collect(),
            subset: map_all(subset),
        },
        SpaceKind::Explicit { opens } => SpaceKind::Explicit {
            opens: opens.iter().map(map_all).collect(),
        },
    };
    SpaceSpec {
        points: map_all(&spec.points),
        kind,
    }
}

/// What a witness demonstrates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    /// Map #0 belongs to `holds` but not to `fails`.
    Separation {
        holds: ContinuityClass,
        fails: ContinuityClass,
    },
    /// Map #0 is `first`, map #1 is `second`, and their composite is not `composite_fails`.
    Composition {
        first: ContinuityClass,
        second: ContinuityClass,
        composite_fails: ContinuityClass,
    },
}

/// A concrete instance demonstrating a [`Claim`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub claim: Claim,
    #[serde(flatten)]
    pub instance: InstanceData,
}

impl Witness {
    /// Rebuilds the instance through the public API and re-checks the claim.
    pub fn validate(&self) -> Result<bool> {
        let (spaces, maps) = self.instance.build()?;
        let profile_of = |m: &FiniteMap, d: usize, c: usize| classify(m, &spaces[d], &spaces[c]);
        match self.claim {
            Claim::Separation { holds, fails } => {
                let spec = &self.instance.maps[0];
                let p = profile_of(&maps[0], spec.domain, spec.codomain)?;
                Ok(p.get(holds) && !p.get(fails))
            }
            Claim::Composition {
                first,
                second,
                composite_fails,
            } => {
                let (s1, s2) = (&self.instance.maps[0], &self.instance.maps[1]);
                let p1 = profile_of(&maps[0], s1.domain, s1.codomain)?;
                let p2 = profile_of(&maps[1], s2.domain, s2.codomain)?;
                let composite = FiniteMap::compose(&maps[0], &maps[1])?;
                let p = profile_of(&composite, s1.domain, s2.codomain)?;
                Ok(p1.get(first) && p2.get(second) && !p.get(composite_fails))
            }
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.claim {
            Claim::Separation { holds, fails } => {
                writeln!(f, "witness: {holds} holds, {fails} fails")?
            }
            Claim::Composition {
                first,
                second,
                composite_fails,
            } => writeln!(
                f,
                "witness: first map {first}, second map {second}, composite not {composite_fails}"
            )?,
        }
        write!(f, "{}", self.instance)
    }
}

/// A check that failed on a concrete instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub check: String,
    pub detail: String,
    #[serde(flatten)]
    pub instance: InstanceData,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "discrepancy in {}: {}", self.check, self.detail)?;
        write!(f, "{}", self.instance)
    }
}
