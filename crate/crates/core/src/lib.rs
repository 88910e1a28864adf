//! Finite nano topology.
//!
//! Build nano topological spaces from rough-set approximations (or give the
//! open sets directly), decide Nα-open and NSα-open sets, classify maps into
//! the seven nano-continuity classes and search all small instances for
//! counterexamples to claimed relationships between those classes.
//!
//! ```
//! use nanotop_core::{build_nano_topology, enumerate_family, FamilyKind, Partition, Universe};
//!
//! let u = Universe::new(["r1", "r2", "r3", "r4"]).unwrap();
//! let p = Partition::from_labels(&u, &[&["r1"][..], &["r3"], &["r2", "r4"]]).unwrap();
//! let space = build_nano_topology(&p, &u.set_from_labels(&["r1", "r2"]).unwrap()).unwrap();
//! assert_eq!(space.opens().len(), 5);
//! assert_eq!(enumerate_family(&space, FamilyKind::NsalphaOpen).len(), 7);
//! ```

pub mod continuity;
pub mod error;
pub mod family;
pub mod open_sets;
pub mod partition;
pub mod space;
pub mod universe;
pub mod verifier;

pub use continuity::{
    classify, image, is_family_continuous, is_n_open_map, make_map, n_continuous_by_interiors,
    nsalpha_characterizations, preimage, ContinuityClass, ContinuityProfile, FiniteMap,
    NsalphaCharacterizations,
};
pub use error::{NanoError, Result};
pub use family::SetFamily;
pub use open_sets::{
    complement_family, enumerate_family, is_in_family, is_n_open, is_nalpha_open, is_nsalpha_open,
    nsalpha_verdict, FamilyKind, NsalphaVerdict,
};
pub use partition::{approximations, Approximations, GrowthStrings, Partition};
pub use space::{
    build_nano_topology, make_explicit_space, n_closure, n_interior, NanoSpace, Provenance,
    SpaceKind, SpaceSpec,
};
pub use universe::{PointSet, Universe, MAX_POINTS};
