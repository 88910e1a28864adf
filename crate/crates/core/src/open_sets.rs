//! N-open, Nα-open and NSα-open sets.
//!
//! For a space with interior `int` and closure `cl`:
//!
//! * `A` is Nα-open when `A ⊆ int(cl(int(A)))`;
//! * `A` is NSα-open when `A ⊆ cl(int(cl(int(A))))`, or equivalently when
//!   some Nα-open `P` satisfies `P ⊆ A ⊆ cl(P)`.
//!
//! Each closed kind is the family of complements of the matching open kind.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Result;
use crate::family::SetFamily;
use crate::space::NanoSpace;
use crate::universe::PointSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FamilyKind {
    NOpen,
    NalphaOpen,
    NsalphaOpen,
    NClosed,
    NalphaClosed,
    NsalphaClosed,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 6] = [
        FamilyKind::NOpen,
        FamilyKind::NalphaOpen,
        FamilyKind::NsalphaOpen,
        FamilyKind::NClosed,
        FamilyKind::NalphaClosed,
        FamilyKind::NsalphaClosed,
    ];

    pub fn is_closed_kind(self) -> bool {
        matches!(
            self,
            FamilyKind::NClosed | FamilyKind::NalphaClosed | FamilyKind::NsalphaClosed
        )
    }

    /// The open kind whose complements form this kind (identity on open kinds).
    pub fn open_counterpart(self) -> FamilyKind {
        match self {
            FamilyKind::NClosed => FamilyKind::NOpen,
            FamilyKind::NalphaClosed => FamilyKind::NalphaOpen,
            FamilyKind::NsalphaClosed => FamilyKind::NsalphaOpen,
            open => open,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::NOpen => "N-open",
            FamilyKind::NalphaOpen => "Na-open",
            FamilyKind::NsalphaOpen => "NSa-open",
            FamilyKind::NClosed => "N-closed",
            FamilyKind::NalphaClosed => "Na-closed",
            FamilyKind::NsalphaClosed => "NSa-closed",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family kind `{s}`"))
    }
}

pub(crate) fn nalpha_bits(space: &NanoSpace, a: u32) -> bool {
    let inner = space.interior_bits(space.closure_bits(space.interior_bits(a)));
    a & !inner == 0
}

pub(crate) fn nsalpha_bits(space: &NanoSpace, a: u32) -> bool {
    let outer = space.closure_bits(space.interior_bits(space.closure_bits(space.interior_bits(a))));
    a & !outer == 0
}

/// Existential form: some Nα-open `P` with `P ⊆ a ⊆ cl(P)`. Scans every subset of `a`.
pub(crate) fn nsalpha_sandwich_bits(space: &NanoSpace, a: u32) -> bool {
    let mut p = a;
    loop {
        if nalpha_bits(space, p) && a & !space.closure_bits(p) == 0 {
            return true;
        }
        if p == 0 {
            return false;
        }
        p = (p - 1) & a;
    }
}

pub(crate) fn kind_bits(space: &NanoSpace, kind: FamilyKind, a: u32) -> bool {
    let target = if kind.is_closed_kind() {
        space.universe().full_bits() & !a
    } else {
        a
    };
    match kind.open_counterpart() {
        FamilyKind::NOpen => space.opens().contains_bits(target),
        FamilyKind::NalphaOpen => nalpha_bits(space, target),
        _ => nsalpha_bits(space, target),
    }
}

pub fn is_n_open(space: &NanoSpace, a: &PointSet) -> Result<bool> {
    space.universe().check_same(a.universe())?;
    Ok(space.opens().contains_bits(a.bits()))
}

pub fn is_nalpha_open(space: &NanoSpace, a: &PointSet) -> Result<bool> {
    space.universe().check_same(a.universe())?;
    Ok(nalpha_bits(space, a.bits()))
}

/// NSα-openness by the closure formula.
pub fn is_nsalpha_open(space: &NanoSpace, a: &PointSet) -> Result<bool> {
    space.universe().check_same(a.universe())?;
    Ok(nsalpha_bits(space, a.bits()))
}

/// Both NSα-open characterizations of one subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NsalphaVerdict {
    /// `A ⊆ cl(int(cl(int(A))))`.
    pub by_closure: bool,
    /// Some Nα-open `P` with `P ⊆ A ⊆ cl(P)`.
    pub by_sandwich: bool,
}

impl NsalphaVerdict {
    pub fn is_open(&self) -> bool {
        self.by_closure
    }

    pub fn disagrees(&self) -> bool {
        self.by_closure != self.by_sandwich
    }
}

pub fn nsalpha_verdict(space: &NanoSpace, a: &PointSet) -> Result<NsalphaVerdict> {
    space.universe().check_same(a.universe())?;
    Ok(NsalphaVerdict {
        by_closure: nsalpha_bits(space, a.bits()),
        by_sandwich: nsalpha_sandwich_bits(space, a.bits()),
    })
}

/// Whether `a` belongs to the family of the given kind.
pub fn is_in_family(space: &NanoSpace, kind: FamilyKind, a: &PointSet) -> Result<bool> {
    space.universe().check_same(a.universe())?;
    Ok(kind_bits(space, kind, a.bits()))
}

/// All subsets of the space that belong to `kind`, in canonical order.
pub fn enumerate_family(space: &NanoSpace, kind: FamilyKind) -> SetFamily {
    let bits = (0..=space.universe().full_bits())
        .filter(|&a| kind_bits(space, kind, a))
        .collect();
    SetFamily::from_bits(space.universe(), bits)
}

/// The complements of the members of `family`.
pub fn complement_family(space: &NanoSpace, family: &SetFamily) -> Result<SetFamily> {
    space.universe().check_same(family.universe())?;
    let full = space.universe().full_bits();
    let bits = family.member_bits().iter().map(|&b| full & !b).collect();
    Ok(SetFamily::from_bits(space.universe(), bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Partition;
    use crate::space::{build_nano_topology, make_explicit_space};
    use crate::universe::Universe;

    fn four_point_space() -> NanoSpace {
        let u = Universe::new(["r1", "r2", "r3", "r4"]).unwrap();
        let p = Partition::from_labels(&u, &[&["r1"], &["r3"], &["r2", "r4"]]).unwrap();
        build_nano_topology(&p, &u.set_from_labels(&["r1", "r2"]).unwrap()).unwrap()
    }

    fn set(space: &NanoSpace, labels: &[&str]) -> PointSet {
        space.universe().set_from_labels(labels).unwrap()
    }

    fn indiscrete(n: usize) -> NanoSpace {
        let u = Universe::numbered("p", n).unwrap();
        let fam = SetFamily::new(&u, [u.empty_set(), u.full_set()]).unwrap();
        make_explicit_space(&u, &fam).unwrap()
    }

    #[test]
    fn n_open_membership() {
        let s = four_point_space();
        assert!(is_n_open(&s, &set(&s, &["r2", "r4"])).unwrap());
        assert!(!is_n_open(&s, &set(&s, &["r3"])).unwrap());
        assert!(is_n_open(&s, &s.universe().empty_set()).unwrap());
    }

    #[test]
    fn nalpha_membership() {
        let s = four_point_space();
        assert!(is_nalpha_open(&s, &set(&s, &["r1", "r2", "r4"])).unwrap());
        assert!(!is_nalpha_open(&s, &set(&s, &["r1", "r3"])).unwrap());
        let ind = indiscrete(3);
        for a in ind
            .universe()
            .subsets()
            .filter(|a| !a.is_empty() && !a.is_full())
        {
            assert!(!is_nalpha_open(&ind, &a).unwrap());
        }
    }

    #[test]
    fn nsalpha_membership() {
        let s = four_point_space();
        assert!(is_nsalpha_open(&s, &set(&s, &["r2", "r3", "r4"])).unwrap());
        assert!(!is_nsalpha_open(&s, &set(&s, &["r3"])).unwrap());
        assert!(is_nsalpha_open(&s, &s.universe().full_set()).unwrap());
        let v = nsalpha_verdict(&s, &set(&s, &["r1", "r3"])).unwrap();
        assert!(v.is_open() && !v.disagrees());
    }

    #[test]
    fn semi_alpha_family_adds_two_sets() {
        let s = four_point_space();
        let tau = enumerate_family(&s, FamilyKind::NOpen);
        let alpha = enumerate_family(&s, FamilyKind::NalphaOpen);
        let semi = enumerate_family(&s, FamilyKind::NsalphaOpen);
        assert_eq!(&tau, s.opens());
        assert_eq!(alpha, tau);
        assert_eq!(semi.len(), 7);
        let extra = SetFamily::new(
            s.universe(),
            [set(&s, &["r1", "r3"]), set(&s, &["r2", "r3", "r4"])],
        )
        .unwrap();
        assert_eq!(semi, alpha.union(&extra).unwrap());
    }

    #[test]
    fn explicit_space_alpha_family() {
        let u = Universe::new(["1", "2", "3", "4"]).unwrap();
        let sets = |ls: &[&[&str]]| {
            SetFamily::new(&u, ls.iter().map(|l| u.set_from_labels(l).unwrap())).unwrap()
        };
        let tau = sets(&[
            &[],
            &["3"],
            &["1", "3"],
            &["1", "2", "3"],
            &["1", "2", "3", "4"],
        ]);
        let s = make_explicit_space(&u, &tau).unwrap();
        let alpha = enumerate_family(&s, FamilyKind::NalphaOpen);
        let expected = tau
            .union(&sets(&[
                &["2", "3"],
                &["3", "4"],
                &["1", "3", "4"],
                &["2", "3", "4"],
            ]))
            .unwrap();
        assert_eq!(alpha.len(), 9);
        assert_eq!(alpha, expected);
        assert_eq!(enumerate_family(&s, FamilyKind::NsalphaOpen), expected);
    }

    #[test]
    fn indiscrete_alpha_family_is_trivial() {
        let s = indiscrete(3);
        assert_eq!(enumerate_family(&s, FamilyKind::NalphaOpen).len(), 2);
    }

    #[test]
    fn complements() {
        let s = four_point_space();
        let closed = complement_family(&s, s.opens()).unwrap();
        assert_eq!(
            closed.to_string(),
            "{{}, {r3}, {r1, r3}, {r2, r3, r4}, {r1, r2, r3, r4}}"
        );
        assert_eq!(closed, enumerate_family(&s, FamilyKind::NClosed));
        let u = s.universe();
        let trivial = SetFamily::new(u, [u.empty_set(), u.full_set()]).unwrap();
        assert_eq!(complement_family(&s, &trivial).unwrap(), trivial);
        let semi = enumerate_family(&s, FamilyKind::NsalphaOpen);
        let semi_closed = complement_family(&s, &semi).unwrap();
        assert_eq!(semi_closed.len(), 7);
        assert_eq!(semi_closed, enumerate_family(&s, FamilyKind::NsalphaClosed));
    }

    #[test]
    fn kind_names_parse() {
        for k in FamilyKind::ALL {
            assert_eq!(k.name().parse::<FamilyKind>().unwrap(), k);
        }
    }
}
