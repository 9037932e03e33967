use proptest::prelude::*;

use revforge::logic::conj_models;
use revforge::parallel::{harper_parallel_beliefs, minimal_inconsistent_subset};
use revforge::postulates::{check, replay, CheckOptions, InstanceSpace, Operators, PostulateId};
use revforge::{
    aggregate, Formula, Language, ParallelContractionOperator, ParallelRevisionOperator, Profile,
    SerialContraction, SerialRevision, Tpo, World, WorldSet,
};

const ATOMS: usize = 3;
const WORLDS: usize = 1 << ATOMS;

fn tpo() -> impl Strategy<Value = Tpo> {
    proptest::collection::vec(0usize..WORLDS, WORLDS).prop_map(|r| Tpo::from_ranks(ATOMS, &r))
}

fn prop() -> impl Strategy<Value = WorldSet> {
    (0u64..(1 << WORLDS)).prop_map(|m| WorldSet::from_mask(ATOMS, m))
}

fn consistent_prop() -> impl Strategy<Value = WorldSet> {
    (1u64..(1 << WORLDS)).prop_map(|m| WorldSet::from_mask(ATOMS, m))
}

fn input_set() -> impl Strategy<Value = Vec<WorldSet>> {
    proptest::collection::vec(consistent_prop(), 0..4)
}

fn parallel_op() -> impl Strategy<Value = ParallelRevisionOperator> {
    (0..27usize).prop_map(|i| ParallelRevisionOperator::all()[i])
}

fn strategy() -> impl Strategy<Value = revforge::Strategy> {
    prop_oneof![
        Just(revforge::Strategy::Full),
        Just(revforge::Strategy::RoundRobin),
        Just(revforge::Strategy::FirstThenFull),
    ]
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        (0..ATOMS).prop_map(Formula::Atom),
        Just(Formula::Verum),
        Just(Formula::Falsum),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
}

fn is_partition(t: &Tpo) -> bool {
    let mut seen = WorldSet::empty(ATOMS);
    for b in t.blocks() {
        if b.is_empty() || b.intersects(&seen) {
            return false;
        }
        seen = seen.union(b);
    }
    seen.is_full()
}

fn worlds() -> impl Iterator<Item = World> {
    (0..WORLDS as u32).map(World)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn serial_outputs_are_partitions_with_success(t in tpo(), a in consistent_prop()) {
        for op in SerialRevision::ALL {
            let r = op.apply(&t, &a).unwrap();
            prop_assert!(is_partition(&r));
            prop_assert_eq!(r.belief_worlds(), &t.min_set(&a));
        }
        let c = SerialContraction::Natural.apply(&t, &a);
        prop_assert!(is_partition(&c));
        prop_assert!(t.belief_worlds().is_subset(c.belief_worlds()));
    }

    #[test]
    fn parallel_beliefs_are_the_conjunction(t in tpo(), s in input_set(), op in parallel_op()) {
        let conj = conj_models(ATOMS, &s);
        match op.apply(&t, &s) {
            Ok(r) => {
                prop_assert!(is_partition(&r));
                prop_assert_eq!(r.belief_worlds(), &t.min_set(&conj));
            }
            Err(revforge::Error::InconsistentInput { culprit }) => {
                prop_assert!(conj.is_empty());
                prop_assert_eq!(culprit, minimal_inconsistent_subset(ATOMS, &s));
            }
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn singleton_parallel_is_serial(t in tpo(), a in consistent_prop(), op in parallel_op()) {
        prop_assert_eq!(op.apply(&t, std::slice::from_ref(&a)).unwrap(), op.finisher.apply(&op.base.apply(&t, &a).unwrap(), &a).unwrap());
    }

    #[test]
    fn culprit_is_minimal(s in proptest::collection::vec(prop(), 1..5)) {
        let culprit = minimal_inconsistent_subset(ATOMS, &s);
        if conj_models(ATOMS, &s).is_empty() {
            let pick = |skip: Option<usize>| -> Vec<WorldSet> {
                culprit.iter().enumerate().filter(|(k, _)| Some(*k) != skip).map(|(_, &i)| s[i].clone()).collect()
            };
            prop_assert!(conj_models(ATOMS, &pick(None)).is_empty());
            for k in 0..culprit.len() {
                prop_assert!(!conj_models(ATOMS, &pick(Some(k))).is_empty());
            }
        } else {
            prop_assert!(culprit.is_empty());
        }
    }

    #[test]
    fn aggregation_bounds_and_pareto(entries in proptest::collection::vec(tpo(), 1..4), strat in strategy()) {
        let p = Profile::new(entries.clone()).unwrap();
        let out = aggregate(strat, &p);
        prop_assert!(is_partition(&out));
        for x in worlds() {
            for y in worlds() {
                if entries.iter().all(|t| t.lt(x, y)) {
                    prop_assert!(out.lt(x, y));
                }
                if entries.iter().all(|t| t.leq(x, y)) {
                    prop_assert!(out.leq(x, y));
                }
            }
        }
        if strat.first_team_is_full() {
            let bottoms = entries.iter().fold(WorldSet::empty(ATOMS), |acc, t| acc.union(t.belief_worlds()));
            prop_assert_eq!(out.belief_worlds(), &bottoms);
        }
        let twice = Profile::new(vec![entries[0].clone(), entries[0].clone()]).unwrap();
        prop_assert_eq!(&aggregate(strat, &twice), &entries[0]);
    }

    #[test]
    fn contraction_is_intersective(t in tpo(), s in proptest::collection::vec(prop(), 0..4)) {
        for strat in [revforge::Strategy::Full, revforge::Strategy::FirstThenFull] {
            let op = ParallelContractionOperator::new(SerialContraction::Natural, strat);
            let out = op.apply(&t, &s);
            prop_assert!(is_partition(&out));
            let expected = s.iter().fold(t.belief_worlds().clone(), |acc, a| {
                acc.union(SerialContraction::Natural.apply(&t, a).belief_worlds())
            });
            prop_assert_eq!(out.belief_worlds(), &expected);
        }
    }

    #[test]
    fn harper_beliefs_contain_prior_beliefs(t in tpo(), s in input_set(), op in parallel_op()) {
        if let Ok(b) = harper_parallel_beliefs(&t, &s, &op) {
            prop_assert!(t.belief_worlds().is_subset(&b));
        }
    }

    #[test]
    fn formulas_round_trip(f in formula()) {
        let lang = Language::with_atom_count(ATOMS).unwrap();
        let text = f.render(&lang);
        let back = lang.parse(&text).unwrap();
        prop_assert_eq!(back.models(&lang), f.models(&lang));
        prop_assert_eq!(back.render(&lang), text);
        let canonical = Formula::from_models(&f.models(&lang), &lang);
        prop_assert_eq!(canonical.models(&lang), f.models(&lang));
    }

    #[test]
    fn tpo_rendering_round_trips(t in tpo()) {
        prop_assert_eq!(Tpo::parse(&t.render()).unwrap(), t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn sampled_witnesses_replay(seed in any::<u64>()) {
        let space = InstanceSpace::sampled(3, 300, seed, Operators::default());
        for id in [PostulateId::CStar2Plus, PostulateId::PStar, PostulateId::DiP] {
            let r = check(id, &space, CheckOptions::default()).unwrap();
            for w in &r.violations {
                prop_assert!(replay(w).unwrap().is_violation());
            }
        }
    }
}
