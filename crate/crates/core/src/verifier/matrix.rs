use std::fmt;

use serde::Serialize;

use crate::continuity::ContinuityClass;
use crate::error::Result;

use super::bounds::InstanceBounds;
use super::catalog::{Catalog, PairSweep};
use super::compiled::classes_with;
use super::witness::{Claim, Witness};

use ContinuityClass::{Na, NaStar, Nsa, NsaStar, N};

/// Arrows asserted to hold in general.
pub const CLAIMED_IMPLICATIONS: [(ContinuityClass, ContinuityClass); 5] =
    [(N, Na), (N, Nsa), (Na, Nsa), (NaStar, Na), (NaStar, Nsa)];

/// Arrows asserted to fail in general (each should be refuted by a witness).
pub const CLAIMED_NON_IMPLICATIONS: [(ContinuityClass, ContinuityClass); 11] = [
    (Na, N),
    (Nsa, N),
    (Nsa, Na),
    (NaStar, N),
    (N, NaStar),
    (NsaStar, N),
    (N, NsaStar),
    (NaStar, NsaStar),
    (NsaStar, NaStar),
    (Na, NaStar),
    (Nsa, NaStar),
];

/// How a cell relates to the published arrows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    ClaimedImplication,
    ClaimedIndependent,
    Unclaimed,
}

pub fn claim_status(from: ContinuityClass, to: ContinuityClass) -> ClaimStatus {
    if CLAIMED_IMPLICATIONS.contains(&(from, to)) {
        ClaimStatus::ClaimedImplication
    } else if CLAIMED_NON_IMPLICATIONS.contains(&(from, to)) {
        ClaimStatus::ClaimedIndependent
    } else {
        ClaimStatus::Unclaimed
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CellStatus {
    #[serde(rename = "PROVED-EMPIRICALLY")]
    ProvedEmpirically,
    #[serde(rename = "REFUTED")]
    Refuted,
}

impl fmt::Display for CellStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CellStatus::ProvedEmpirically => "PROVED-EMPIRICALLY",
            CellStatus::Refuted => "REFUTED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixCell {
    pub from: ContinuityClass,
    pub to: ContinuityClass,
    pub status: CellStatus,
    pub claim: ClaimStatus,
    /// Instances where `from` held.
    pub support: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl MatrixCell {
    /// Empirical result contradicts the published arrow (or non-arrow).
    pub fn contradicts_claim(&self) -> bool {
        match self.claim {
            ClaimStatus::ClaimedImplication => self.status == CellStatus::Refuted,
            ClaimStatus::ClaimedIndependent => self.status == CellStatus::ProvedEmpirically,
            ClaimStatus::Unclaimed => false,
        }
    }
}

/// Which class implies which, over every instance within some bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImplicationMatrix {
    pub bounds: InstanceBounds,
    pub instances: u64,
    /// Row-major: `cells[7 * from + to]`.
    pub cells: Vec<MatrixCell>,
}

impl ImplicationMatrix {
    pub fn cell(&self, from: ContinuityClass, to: ContinuityClass) -> &MatrixCell {
        &self.cells[7 * from.index() + to.index()]
    }

    pub fn holds(&self, from: ContinuityClass, to: ContinuityClass) -> bool {
        self.cell(from, to).status == CellStatus::ProvedEmpirically
    }

    /// Off-diagonal arrows that survived the scan without being claimed.
    pub fn unclaimed_arrows(&self) -> Vec<(ContinuityClass, ContinuityClass)> {
        self.cells
            .iter()
            .filter(|c| c.from != c.to && c.claim == ClaimStatus::Unclaimed)
            .filter(|c| c.status == CellStatus::ProvedEmpirically)
            .map(|c| (c.from, c.to))
            .collect()
    }

    pub fn claim_contradictions(&self) -> Vec<&MatrixCell> {
        self.cells
            .iter()
            .filter(|c| c.contradicts_claim())
            .collect()
    }

    /// Pairs `(a, c)` with `a → b` and `b → c` proved but `a → c` refuted.
    pub fn transitivity_failures(
        &self,
    ) -> Vec<(ContinuityClass, ContinuityClass, ContinuityClass)> {
        let mut out = Vec::new();
        for a in ContinuityClass::ALL {
            for b in ContinuityClass::ALL {
                for c in ContinuityClass::ALL {
                    if self.holds(a, b) && self.holds(b, c) && !self.holds(a, c) {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for ImplicationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "implication matrix over {} instances (max size {}, exhaustive {}, mode {})",
            self.instances, self.bounds.max_size, self.bounds.exhaustive_size, self.bounds.mode
        )?;
        write!(f, "{:>6}", "")?;
        for to in ContinuityClass::ALL {
            write!(f, "{:>7}", to.token())?;
        }
        writeln!(f)?;
        for from in ContinuityClass::ALL {
            write!(f, "{:>6}", from.token())?;
            for to in ContinuityClass::ALL {
                let mark = if self.holds(from, to) { "=>" } else { "x" };
                write!(f, "{mark:>7}")?;
            }
            writeln!(f)?;
        }
        for cell in self.claim_contradictions() {
            writeln!(
                f,
                "contradicts published claim: {} -> {} is {}",
                cell.from, cell.to, cell.status
            )?;
        }
        let extra = self.unclaimed_arrows();
        if !extra.is_empty() {
            let list: Vec<_> = extra.iter().map(|(a, b)| format!("{a}->{b}")).collect();
            writeln!(f, "derived, not claimed: {}", list.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Scan {
    instances: u64,
    support: [u64; 7],
    /// First counterexample per cell, as (unit-local) instance data.
    first: Vec<Option<Witness>>,
}

impl Scan {
    fn new() -> Self {
        Scan {
            first: vec![None; 49],
            ..Scan::default()
        }
    }

    fn merge(&mut self, other: Scan) {
        self.instances += other.instances;
        for k in 0..7 {
            self.support[k] += other.support[k];
        }
        for (mine, theirs) in self.first.iter_mut().zip(other.first) {
            if mine.is_none() {
                *mine = theirs;
            }
        }
    }
}

pub fn implication_matrix(bounds: &InstanceBounds) -> Result<ImplicationMatrix> {
    let catalog = Catalog::new(bounds.max_size, bounds.mode)?;
    let sweep = PairSweep::new(&catalog, bounds, false)?;
    let scan = sweep.run(
        Scan::new,
        |scan, pair| {
            scan.instances += 1;
            let p = classes_with(pair.domain, pair.codomain, &pair.map.pre);
            for a in 0..7 {
                if !p[a] {
                    continue;
                }
                scan.support[a] += 1;
                for (b, &holds_b) in p.iter().enumerate() {
                    if !holds_b && scan.first[7 * a + b].is_none() {
                        let (holds, fails) = (ContinuityClass::ALL[a], ContinuityClass::ALL[b]);
                        scan.first[7 * a + b] = Some(Witness {
                            claim: Claim::Separation { holds, fails },
                            instance: pair.data(&catalog),
                        });
                    }
                }
            }
            false
        },
        Scan::merge,
    );

    let mut cells = Vec::with_capacity(49);
    for from in ContinuityClass::ALL {
        for to in ContinuityClass::ALL {
            let witness = scan.first[7 * from.index() + to.index()].clone();
            let status = if witness.is_some() {
                CellStatus::Refuted
            } else {
                CellStatus::ProvedEmpirically
            };
            cells.push(MatrixCell {
                from,
                to,
                status,
                claim: claim_status(from, to),
                support: scan.support[from.index()],
                witness,
            });
        }
    }
    Ok(ImplicationMatrix {
        bounds: *bounds,
        instances: scan.instances,
        cells,
    })
}

/// First instance (in enumeration order) where `holds` is true and `fails` is false.
pub fn find_witness(
    holds: ContinuityClass,
    fails: ContinuityClass,
    bounds: &InstanceBounds,
) -> Result<Option<Witness>> {
    if holds == fails {
        return Ok(None);
    }
    let catalog = Catalog::new(bounds.max_size, bounds.mode)?;
    let sweep = PairSweep::new(&catalog, bounds, false)?;
    let (h, f) = (holds.index(), fails.index());
    let found = sweep.run(
        || None,
        |found, pair| {
            let p = classes_with(pair.domain, pair.codomain, &pair.map.pre);
            if p[h] && !p[f] {
                *found = Some(pair.data(&catalog));
                return true;
            }
            false
        },
        |total, part| {
            if total.is_none() {
                *total = part;
            }
        },
    );
    Ok(found.map(|instance| Witness {
        claim: Claim::Separation { holds, fails },
        instance,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::bounds::SpaceMode;

    #[test]
    fn small_matrix_is_consistent() {
        let bounds = InstanceBounds::new(2, SpaceMode::Both);
        let m = implication_matrix(&bounds).unwrap();
        for class in ContinuityClass::ALL {
            assert!(m.holds(class, class));
        }
        assert!(m.transitivity_failures().is_empty());
        for cell in &m.cells {
            if let Some(w) = &cell.witness {
                assert!(w.validate().unwrap(), "{}", w);
            }
        }
    }

    #[test]
    fn trivial_witness_requests() {
        let bounds = InstanceBounds::new(3, SpaceMode::Nano);
        assert!(find_witness(N, N, &bounds).unwrap().is_none());
        assert!(find_witness(N, Na, &bounds).unwrap().is_none());
        let w = find_witness(Na, N, &bounds).unwrap().expect("Na without N");
        assert!(w.validate().unwrap());
    }

    #[test]
    fn witness_matches_matrix_cell() {
        let bounds = InstanceBounds::new(3, SpaceMode::Nano);
        let m = implication_matrix(&bounds).unwrap();
        for (a, b) in [(Na, N), (N, NaStar), (NsaStar, NaStar)] {
            assert_eq!(m.cell(a, b).witness, find_witness(a, b, &bounds).unwrap());
        }
    }
}
