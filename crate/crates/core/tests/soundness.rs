//! Every catalog postulate against its expected outcome, for every operator
//! combination.

use revforge::postulates::{
    check, check_equivalence_pair, expectation, CheckOptions, Expectation, InstanceSpace,
    Operators, PostulateId,
};
use revforge::ParallelRevisionOperator;

fn failures(space: &InstanceSpace, ids: impl Iterator<Item = PostulateId>) -> Vec<String> {
    ids.filter_map(|id| {
        let r = check(id, space, CheckOptions::default()).unwrap();
        (!r.passed()).then(|| r.summary())
    })
    .collect()
}

#[test]
fn exhaustive_catalog_for_every_combination() {
    use PostulateId::*;
    // PC3b/PC4b are covered by the equivalence checks and are slow to sweep.
    let ids = || PostulateId::ALL.iter().copied().filter(|id| !matches!(id, Pc3b | Pc4b));
    let mut bad = Vec::new();
    for parallel in ParallelRevisionOperator::all() {
        let ops = Operators {
            serial: parallel.base,
            ..Operators::with_parallel(parallel)
        };
        bad.extend(failures(&InstanceSpace::exhaustive(2, ops), ids()));
    }
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn sampled_catalog_at_three_atoms() {
    let space = InstanceSpace::sampled(3, 2_000, 7, Operators::default());
    let bad = failures(&space, PostulateId::ALL.iter().copied());
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn identity_generalisations_fail() {
    for id in [PostulateId::LiParallel, PostulateId::HiParallel] {
        let space = InstanceSpace::exhaustive(2, Operators::default());
        let r = check(id, &space, CheckOptions { expect: Some(Expectation::Violation), ..Default::default() }).unwrap();
        assert!(r.passed(), "{}", r.summary());
        assert_eq!(expectation(id, &Operators::default()), Expectation::Any);
    }
}

#[test]
fn natural_parts_break_parallel_independence() {
    // Not claimed either way in general; recorded for the default operator.
    let r = check(
        PostulateId::IndStar,
        &InstanceSpace::exhaustive(2, Operators::default()),
        CheckOptions { expect: Some(Expectation::Violation), ..Default::default() },
    )
    .unwrap();
    assert!(r.passed(), "{}", r.summary());
}

#[test]
#[ignore = "about four minutes in release mode"]
fn pc_correspondences_for_every_posterior() {
    let space = InstanceSpace::exhaustive(2, Operators::default());
    for &(sem, syn) in &PostulateId::EQUIVALENCE_PAIRS[4..] {
        let r = check_equivalence_pair(sem, syn, &space, true, CheckOptions::default()).unwrap();
        assert!(r.passed(), "{}", r.summary());
    }
}
