use nanotop_core::verifier::{
    check_compositions, check_conditional_theorems, check_equivalences, check_hierarchy,
    find_witness, implication_matrix, repro_worked_examples, CellStatus, InstanceBounds, SpaceMode,
    CLAIMED_IMPLICATIONS, CLAIMED_NON_IMPLICATIONS,
};
use nanotop_core::ContinuityClass::{self, Na, NaStar, Nsa, NsaStar, N};

#[test]
fn matrix_matches_claims_at_size_four() {
    let bounds = InstanceBounds::new(4, SpaceMode::Nano);
    let m = implication_matrix(&bounds).unwrap();
    for (a, b) in CLAIMED_IMPLICATIONS {
        assert_eq!(
            m.cell(a, b).status,
            CellStatus::ProvedEmpirically,
            "{a} -> {b}"
        );
    }
    for (a, b) in CLAIMED_NON_IMPLICATIONS {
        let cell = m.cell(a, b);
        assert_eq!(cell.status, CellStatus::Refuted, "{a} -> {b}");
        assert!(cell.witness.as_ref().unwrap().validate().unwrap());
    }
    assert!(m.claim_contradictions().is_empty());
    assert!(m.transitivity_failures().is_empty());
}

#[test]
fn matrix_witnesses_validate_in_both_modes() {
    let m = implication_matrix(&InstanceBounds::new(3, SpaceMode::Both)).unwrap();
    for class in ContinuityClass::ALL {
        assert!(m.holds(class, class));
    }
    for cell in &m.cells {
        match (&cell.witness, cell.status) {
            (Some(w), CellStatus::Refuted) => assert!(w.validate().unwrap()),
            (None, CellStatus::ProvedEmpirically) => {}
            _ => panic!("cell {} -> {} inconsistent", cell.from, cell.to),
        }
    }
    assert!(m.transitivity_failures().is_empty());
}

#[test]
fn independence_witnesses() {
    let bounds = InstanceBounds::new(4, SpaceMode::Nano);
    for (holds, fails) in [
        (Na, N),
        (Nsa, Na),
        (NaStar, N),
        (N, NaStar),
        (NsaStar, N),
        (N, NsaStar),
        (NaStar, NsaStar),
        (NsaStar, NaStar),
    ] {
        let w = find_witness(holds, fails, &bounds)
            .unwrap()
            .expect("witness within size 4");
        assert!(w.validate().unwrap(), "{w}");
        assert!(w.instance.spaces.iter().all(|s| s.points.len() <= 4));
    }
    assert!(find_witness(N, Na, &bounds).unwrap().is_none());
}

#[test]
fn sweeps_are_deterministic() {
    let bounds = InstanceBounds::new(4, SpaceMode::Nano)
        .with_exhaustive_size(2)
        .with_samples(3000)
        .with_seed(11);
    assert_eq!(
        check_hierarchy(&bounds).unwrap(),
        check_hierarchy(&bounds).unwrap()
    );
    assert_eq!(
        implication_matrix(&bounds).unwrap(),
        implication_matrix(&bounds).unwrap()
    );
    let other = bounds.with_seed(12);
    assert_ne!(implication_matrix(&bounds).unwrap().instances, 0);
    assert_eq!(
        check_hierarchy(&other).unwrap().checks[0].instances,
        check_hierarchy(&bounds).unwrap().checks[0].instances
    );
}

#[test]
fn checks_pass_on_small_bounds() {
    let bounds = InstanceBounds::new(3, SpaceMode::Both);
    for report in [
        check_hierarchy(&bounds).unwrap(),
        check_equivalences(&bounds).unwrap(),
        check_conditional_theorems(&bounds).unwrap(),
        check_compositions(&bounds).unwrap(),
    ] {
        assert!(report.passed(), "{report}");
        for w in &report.witnesses {
            assert!(w.validate().unwrap());
        }
    }
}

#[test]
fn repro_passes() {
    let report = repro_worked_examples().unwrap();
    assert!(report.passed(), "{report}");
}
