//! Exhaustive and sampled checking of the class relationships on small instances.

mod bounds;
mod catalog;
mod checks;
mod compiled;
mod compose;
mod enumerate;
mod matrix;
mod repro;
mod witness;

pub use bounds::{
    InstanceBounds, SpaceMode, MAX_EXHAUSTIVE_SIZE, MAX_EXPLICIT_SIZE, MAX_VERIFIER_SIZE,
};
pub use checks::{
    check_conditional_theorems, check_equivalences, check_hierarchy, CheckResult,
    VerificationReport, INTERIOR_INCLUSION, NSALPHA_FOUR_WAY, NSALPHA_OPEN_TWO_WAY,
    OPEN_BIJECTION_NA_STAR, OPEN_BIJECTION_NSA_STAR,
};
pub use compose::{
    check_compositions, non_composing_check_name, CompositionRule, COMPOSITION_RULES,
    MAX_EXHAUSTIVE_TRIPLE_SIZE, NON_COMPOSING,
};
pub use enumerate::{enumerate_maps, enumerate_spaces, explicit_spaces, nano_spaces, topologies};
pub use matrix::{
    claim_status, find_witness, implication_matrix, CellStatus, ClaimStatus, ImplicationMatrix,
    MatrixCell, CLAIMED_IMPLICATIONS, CLAIMED_NON_IMPLICATIONS,
};
pub use repro::{
    printed_composition_witness, printed_space, rebuild, rebuild_map, repro_worked_examples,
    PrintedMap, PrintedSpace, RebuiltSpace, ReproEntry, ReproReport, ReproStatus, PRINTED_MAPS,
    PRINTED_SPACES,
};
pub use witness::{Claim, Discrepancy, InstanceData, MapSpec, Witness};
