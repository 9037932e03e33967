//! Finite-model checking of postulates: enumerate instances, evaluate the
//! postulate on each, and collect replayable witnesses of violations.

mod catalog;
mod engine;
mod enumerate;

pub use catalog::{Family, PostulateId, Shape};
pub use engine::{parse_proposition, Instance, Operators, Verdict};
pub use enumerate::{
    all_propositions, enumerate_sets, enumerate_tpos, random_proposition, random_set, random_tpo,
    OrderedPartitions, MAX_ENUMERATED_WORLDS,
};

use std::ops::ControlFlow;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::aggregation::{stq, Strategy};
use crate::error::{Error, Result};
use crate::logic::{Language, WorldSet};
use crate::serial::SerialRevision;
use crate::tpo::{ConditionalSet, Profile, Tpo};
use engine::{Engine, Ix};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_2025;
/// Environment variable that overrides the sampling seed.
pub const SEED_ENV: &str = "REVFORGE_SEED";

/// The sampling seed: `REVFORGE_SEED` if set and valid, else `fallback`.
pub fn seed_from_env(fallback: u64) -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(fallback)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum Mode {
    /// Every instance; at most 2 atoms.
    Exhaustive,
    /// `samples` checked instances drawn from a seeded generator.
    Sampled { samples: u64, seed: u64 },
}

/// Where instances come from and which operators they are checked against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpace {
    pub atoms: usize,
    #[serde(flatten)]
    pub mode: Mode,
    /// Largest first input set.
    pub max_set_size: usize,
    /// Largest second input set (K⊛6 uses `max_set_size` for both).
    pub max_second_set_size: usize,
    /// Draw propositions only from these formulas (atoms `A`, `B`, `C`, ...)
    /// instead of from every proposition.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pool: Option<Vec<String>>,
    pub operators: Operators,
}

impl InstanceSpace {
    pub fn exhaustive(atoms: usize, operators: Operators) -> Self {
        InstanceSpace {
            atoms,
            mode: Mode::Exhaustive,
            max_set_size: 2,
            max_second_set_size: 1,
            pool: None,
            operators,
        }
    }

    pub fn sampled(atoms: usize, samples: u64, seed: u64, operators: Operators) -> Self {
        InstanceSpace {
            atoms,
            mode: Mode::Sampled { samples, seed },
            max_set_size: 2,
            max_second_set_size: 1,
            pool: None,
            operators,
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self.mode {
            Mode::Exhaustive => None,
            Mode::Sampled { seed, .. } => Some(seed),
        }
    }

    /// Restricts propositions to the given formulas.
    pub fn with_pool<S: Into<String>>(mut self, formulas: impl IntoIterator<Item = S>) -> Self {
        self.pool = Some(formulas.into_iter().map(Into::into).collect());
        self
    }

    /// The propositions instances are built from, deduplicated semantically.
    pub fn propositions(&self) -> Result<Vec<WorldSet>> {
        let Some(pool) = &self.pool else {
            return all_propositions(self.atoms);
        };
        let lang = Language::with_atom_count(self.atoms)?;
        let mut out: Vec<WorldSet> = Vec::new();
        for text in pool {
            let models = lang.parse(text)?.models(&lang);
            if !out.contains(&models) {
                out.push(models);
            }
        }
        if out.is_empty() {
            return Err(Error::IncompatibleConfig("empty proposition pool".into()));
        }
        Ok(out)
    }

    fn validate(&self) -> Result<()> {
        match self.mode {
            Mode::Exhaustive if self.atoms > 2 => Err(Error::SizeGuard(format!(
                "exhaustive checks need at most 2 atoms, got {}",
                self.atoms
            ))),
            Mode::Sampled { .. } if self.atoms > 6 => Err(Error::SizeGuard(format!(
                "sampled checks need at most 6 atoms, got {}",
                self.atoms
            ))),
            _ if self.atoms == 0 => Err(Error::SizeGuard("no atoms".into())),
            _ => Ok(()),
        }
    }
}

/// What a correct implementation should report for a postulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    /// Zero violations.
    None,
    /// At least one violation.
    Violation,
    /// No claim either way; the result is recorded.
    Any,
}

impl Expectation {
    pub fn met_by(self, violations: u64) -> bool {
        match self {
            Expectation::None => violations == 0,
            Expectation::Violation => violations > 0,
            Expectation::Any => true,
        }
    }
}

impl std::fmt::Display for Expectation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Expectation::None => "none",
            Expectation::Violation => "violation",
            Expectation::Any => "any",
        })
    }
}

impl std::str::FromStr for Expectation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Expectation::None),
            "violation" => Ok(Expectation::Violation),
            "any" => Ok(Expectation::Any),
            other => Err(Error::IncompatibleConfig(format!("unknown expectation `{other}`"))),
        }
    }
}

/// The expected outcome of checking `id` against `ops`.
pub fn expectation(id: PostulateId, ops: &Operators) -> Expectation {
    use PostulateId::*;
    let p = ops.parallel;
    let ind_base = |op: SerialRevision| op.satisfies_independence();
    match id {
        Ind if ops.serial == SerialRevision::Natural => Expectation::Violation,
        IndStar if ind_base(p.base) && ind_base(p.finisher) => Expectation::None,
        IndStar => Expectation::Any,
        CStar2Plus | PStar | DiP => Expectation::Violation,
        Intersective if !p.aggregator.first_team_is_full() => Expectation::Any,
        ParAgg if p.aggregator != Strategy::Full => Expectation::Any,
        LiParallel | HiParallel => Expectation::Any,
        _ => Expectation::None,
    }
}

/// A violation, with everything needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub postulate: PostulateId,
    pub operators: Operators,
    pub instance: Instance,
    /// The condition that failed.
    pub condition: String,
    /// Both sides of the failed condition.
    pub observed: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub postulate: String,
    pub space: InstanceSpace,
    pub checked: u64,
    pub violations: Vec<Witness>,
    pub seed: Option<u64>,
    pub elapsed_ms: u64,
    /// Total violations found; `violations` holds at most the cap.
    pub violation_count: u64,
    /// Instances not evaluated because they need an inconsistent revision.
    pub skipped: u64,
    pub expectation: Expectation,
    pub status: Status,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One-line summary.
    pub fn summary(&self) -> String {
        let mode = match self.space.mode {
            Mode::Exhaustive => "exhaustive".to_string(),
            Mode::Sampled { samples, seed } => format!("sampled n={samples} seed={seed}"),
        };
        format!(
            "{} [{} atoms, {mode}]: {} checked, {} skipped, {} violations (expected {}) -> {}",
            self.postulate,
            self.space.atoms,
            self.checked,
            self.skipped,
            self.violation_count,
            self.expectation,
            self.status
        )
    }
}

/// Output bounds for a check.
#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    /// Most witnesses kept in the report.
    pub cap: usize,
    /// Stop at the first violation.
    pub first: bool,
    /// Overrides the catalog expectation.
    pub expect: Option<Expectation>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            cap: 10,
            first: false,
            expect: None,
        }
    }
}

struct Sources {
    atoms: usize,
    tpos: Vec<u32>,
    props: Vec<WorldSet>,
    sets: Vec<u32>,
    second_sets: Vec<u32>,
}

fn exhaustive_sources(engine: &Engine, space: &InstanceSpace, id: PostulateId) -> Result<Sources> {
    let tpos = enumerate_tpos(space.atoms)?
        .map(|t| engine.intern_tpo(&t))
        .collect();
    let props = space.propositions()?;
    let intern = |size| {
        enumerate_sets(&props, size)
            .iter()
            .map(|s| engine.intern_set(s))
            .collect::<Vec<_>>()
    };
    let second = if id == PostulateId::KStar6 {
        space.max_set_size
    } else {
        space.max_second_set_size
    };
    Ok(Sources {
        atoms: space.atoms,
        tpos,
        sets: intern(space.max_set_size),
        second_sets: intern(second),
        props,
    })
}

/// Calls `f` on every instance of `shape` in exhaustive order.
fn for_each_exhaustive(
    src: &Sources,
    shape: Shape,
    mut f: impl FnMut(Ix) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let empty = || WorldSet::empty(src.atoms);
    let base = |t: u32| Ix {
        t,
        t2: t,
        s1: 0,
        s2: 0,
        a: empty(),
        b: empty(),
        posterior: None,
    };
    for &t in &src.tpos {
        match shape {
            Shape::SerialOne => {
                for a in &src.props {
                    f(Ix { a: a.clone(), ..base(t) })?;
                }
            }
            Shape::SerialTwo => {
                for a in &src.props {
                    for b in &src.props {
                        f(Ix { a: a.clone(), b: b.clone(), ..base(t) })?;
                    }
                }
            }
            Shape::SetOne => {
                for &s1 in &src.sets {
                    f(Ix { s1, ..base(t) })?;
                }
            }
            Shape::SetTwo => {
                for &s1 in &src.sets {
                    for &s2 in &src.second_sets {
                        f(Ix { s1, s2, ..base(t) })?;
                    }
                }
            }
            Shape::SetTwoProp => {
                for &s1 in &src.sets {
                    for &s2 in &src.second_sets {
                        for a in &src.props {
                            f(Ix { s1, s2, a: a.clone(), ..base(t) })?;
                        }
                    }
                }
            }
            Shape::ProfileSubset => {
                for &t2 in &src.tpos {
                    for a in &src.props {
                        f(Ix { t2, a: a.clone(), ..base(t) })?;
                    }
                }
            }
        }
    }
    ControlFlow::Continue(())
}

fn random_ix(
    engine: &Engine,
    space: &InstanceSpace,
    pool: Option<&[WorldSet]>,
    shape: Shape,
    rng: &mut ChaCha8Rng,
) -> Ix {
    let atoms = space.atoms;
    let tpo = |rng: &mut ChaCha8Rng| engine.intern_tpo(&random_tpo(atoms, rng));
    let prop = |rng: &mut ChaCha8Rng| match pool {
        Some(p) => p[rng.gen_range(0..p.len())].clone(),
        None => random_proposition(atoms, rng),
    };
    let set = |max: usize, rng: &mut ChaCha8Rng| match pool {
        Some(p) => {
            let size = rng.gen_range(0..=max.min(p.len()));
            p.choose_multiple(rng, size).cloned().collect()
        }
        None => random_set(atoms, max, rng),
    };
    let t = tpo(rng);
    let t2 = if shape == Shape::ProfileSubset { tpo(rng) } else { t };
    let s1 = engine.intern_set(&set(space.max_set_size, rng));
    let s2 = engine.intern_set(&set(space.max_second_set_size, rng));
    Ix {
        t,
        t2,
        s1,
        s2,
        a: prop(rng),
        b: prop(rng),
        posterior: None,
    }
}

struct Tally {
    checked: u64,
    skipped: u64,
    count: u64,
    witnesses: Vec<Witness>,
}

/// Checks `id` on every instance of `space`.
pub fn check(id: PostulateId, space: &InstanceSpace, options: CheckOptions) -> Result<CheckReport> {
    space.validate()?;
    let start = Instant::now();
    let engine = Engine::new(space.operators, space.atoms)?;
    let shape = id.shape();
    let mut tally = Tally {
        checked: 0,
        skipped: 0,
        count: 0,
        witnesses: Vec::new(),
    };
    let mut error = None;
    let mut visit = |ix: Ix, tally: &mut Tally| -> ControlFlow<()> {
        match engine.eval(id, &ix) {
            Err(e) => {
                error = Some(e);
                return ControlFlow::Break(());
            }
            Ok(Verdict::Skipped) => tally.skipped += 1,
            Ok(Verdict::Holds) => tally.checked += 1,
            Ok(Verdict::Violated { condition, observed }) => {
                tally.checked += 1;
                tally.count += 1;
                if tally.witnesses.len() < options.cap.max(1) {
                    tally.witnesses.push(Witness {
                        postulate: id,
                        operators: space.operators,
                        instance: engine.instance(shape, &ix),
                        condition,
                        observed,
                    });
                }
                if options.first {
                    return ControlFlow::Break(());
                }
            }
        }
        ControlFlow::Continue(())
    };
    match space.mode {
        Mode::Exhaustive => {
            let src = exhaustive_sources(&engine, space, id)?;
            let _ = for_each_exhaustive(&src, shape, |ix| visit(ix, &mut tally));
        }
        Mode::Sampled { samples, seed } => {
            let pool = match space.pool {
                Some(_) => Some(space.propositions()?),
                None => None,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let budget = samples.saturating_mul(50).max(1000);
            let mut attempts = 0;
            while tally.checked < samples && attempts < budget {
                attempts += 1;
                let ix = random_ix(&engine, space, pool.as_deref(), shape, &mut rng);
                if visit(ix, &mut tally).is_break() {
                    break;
                }
            }
        }
    }
    if let Some(e) = error {
        return Err(e);
    }
    let expect = options
        .expect
        .unwrap_or_else(|| expectation(id, &space.operators));
    Ok(CheckReport {
        postulate: id.name().to_string(),
        space: space.clone(),
        checked: tally.checked,
        violations: tally.witnesses,
        seed: space.seed(),
        elapsed_ms: start.elapsed().as_millis() as u64,
        violation_count: tally.count,
        skipped: tally.skipped,
        expectation: expect,
        status: if expect.met_by(tally.count) {
            Status::Pass
        } else {
            Status::Fail
        },
    })
}

/// The first violation of `id` in enumeration order, if any.
pub fn find_countermodel(id: PostulateId, space: &InstanceSpace) -> Result<Option<Witness>> {
    let report = check(
        id,
        space,
        CheckOptions {
            cap: 1,
            first: true,
            expect: None,
        },
    )?;
    Ok(report.violations.into_iter().next())
}

/// Re-evaluates a witness from scratch.
pub fn replay(witness: &Witness) -> Result<Verdict> {
    evaluate(witness.postulate, &witness.operators, &witness.instance)
}

/// Evaluates `id` on one plain instance.
pub fn evaluate(id: PostulateId, ops: &Operators, instance: &Instance) -> Result<Verdict> {
    let engine = Engine::new(*ops, instance.atoms)?;
    let ix = engine.index(id, instance)?;
    engine.eval(id, &ix)
}

fn pair_ok(sem: PostulateId, syn: PostulateId) -> Result<()> {
    if PostulateId::EQUIVALENCE_PAIRS.contains(&(sem, syn)) {
        Ok(())
    } else {
        Err(Error::IncompatibleConfig(format!(
            "{sem} and {syn} are not two forms of one postulate"
        )))
    }
}

/// Whether the syntactic form holds for every second set (and proposition)
/// with the first set fixed. Returns the first counterexample if not.
fn syntactic_holds(
    engine: &Engine,
    syn: PostulateId,
    src: &Sources,
    template: &Ix,
) -> Result<Option<Ix>> {
    for &s2 in &src.second_sets {
        let props: &[WorldSet] = if syn.shape() == Shape::SetTwoProp {
            &src.props
        } else {
            &src.props[..1]
        };
        for a in props {
            let ix = Ix {
                s2,
                a: a.clone(),
                ..template.clone()
            };
            if engine.eval(syn, &ix)?.is_violation() {
                return Ok(Some(ix));
            }
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn equivalence_report(
    sem: PostulateId,
    syn: PostulateId,
    space: &InstanceSpace,
    start: Instant,
    checked: u64,
    count: u64,
    skipped: u64,
    violations: Vec<Witness>,
) -> CheckReport {
    CheckReport {
        postulate: format!("{sem} <=> {syn}"),
        space: space.clone(),
        checked,
        violations,
        seed: space.seed(),
        elapsed_ms: start.elapsed().as_millis() as u64,
        violation_count: count,
        skipped,
        expectation: Expectation::None,
        status: if count == 0 { Status::Pass } else { Status::Fail },
    }
}

/// Looks for a `(Ψ, S1)` where the semantic form of a postulate holds but
/// its syntactic form fails for some `S2`, or the other way round.
///
/// With `arbitrary_posterior`, `Ψ⊛S1` ranges over every TPO instead of the
/// configured operator's output, and other revisions are read off through
/// (Conj⊛); this tests the correspondence itself rather than one operator.
pub fn check_equivalence_pair(
    sem: PostulateId,
    syn: PostulateId,
    space: &InstanceSpace,
    arbitrary_posterior: bool,
    options: CheckOptions,
) -> Result<CheckReport> {
    pair_ok(sem, syn)?;
    space.validate()?;
    if space.mode != Mode::Exhaustive {
        return Err(Error::IncompatibleConfig(
            "equivalence checks run over the exhaustive space".into(),
        ));
    }
    let start = Instant::now();
    let engine = Engine::new(space.operators, space.atoms)?;
    let src = exhaustive_sources(&engine, space, syn)?;
    let (mut checked, mut count, mut skipped) = (0u64, 0u64, 0u64);
    let mut violations = Vec::new();
    let posteriors: Vec<Option<u32>> = if arbitrary_posterior {
        src.tpos.iter().map(|&p| Some(p)).collect()
    } else {
        vec![None]
    };
    'outer: for &t in &src.tpos {
        for &s1 in &src.sets {
            for &posterior in &posteriors {
                let template = Ix {
                    t,
                    t2: t,
                    s1,
                    s2: 0,
                    a: src.props[0].clone(),
                    b: src.props[0].clone(),
                    posterior,
                };
                let sem_verdict = engine.eval(sem, &template)?;
                if sem_verdict == Verdict::Skipped {
                    skipped += 1;
                    continue;
                }
                checked += 1;
                let syn_failure = syntactic_holds(&engine, syn, &src, &template)?;
                let agree = sem_verdict.is_violation() == syn_failure.is_some();
                if agree {
                    continue;
                }
                count += 1;
                if violations.len() < options.cap.max(1) {
                    let observed = match (&sem_verdict, &syn_failure) {
                        (Verdict::Violated { observed, .. }, None) => {
                            format!("{sem} fails ({observed}) but {syn} holds for every S2")
                        }
                        (_, Some(ix)) => format!(
                            "{sem} holds but {syn} fails at {}",
                            engine.instance(syn.shape(), ix)
                        ),
                        _ => unreachable!(),
                    };
                    violations.push(Witness {
                        postulate: sem,
                        operators: space.operators,
                        instance: engine.instance(sem.shape(), &template),
                        condition: format!("{sem} and {syn} agree"),
                        observed,
                    });
                }
                if options.first {
                    break 'outer;
                }
            }
        }
    }
    Ok(equivalence_report(
        sem, syn, space, start, checked, count, skipped, violations,
    ))
}

/// Conditional set of the STQ aggregate against the rational closure of the
/// intersection of the entries' conditional sets, over two-entry profiles.
///
/// Exhaustive spaces cover every ordered pair of TPOs; sampled spaces draw
/// `samples` profiles from the seed.
pub fn verify_rc_identity(space: &InstanceSpace, options: CheckOptions) -> Result<CheckReport> {
    if space.atoms > 3 {
        return Err(Error::SizeGuard(format!(
            "conditional sets need at most 3 atoms, got {}",
            space.atoms
        )));
    }
    space.validate()?;
    let start = Instant::now();
    let profiles: Vec<[Tpo; 2]> = match space.mode {
        Mode::Exhaustive => {
            let all: Vec<Tpo> = enumerate_tpos(space.atoms)?.collect();
            all.iter()
                .flat_map(|a| all.iter().map(move |b| [a.clone(), b.clone()]))
                .collect()
        }
        Mode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples)
                .map(|_| {
                    [
                        random_tpo(space.atoms, &mut rng),
                        random_tpo(space.atoms, &mut rng),
                    ]
                })
                .collect()
        }
    };
    let mut violations = Vec::new();
    let mut count = 0;
    for [a, b] in &profiles {
        let aggregate = stq(&Profile::new(vec![a.clone(), b.clone()])?);
        let lhs = aggregate.conditional_set()?;
        let meet: ConditionalSet = a.conditional_set()?.intersection(&b.conditional_set()?);
        let closure = meet.rational_closure()?;
        let rhs = closure.conditional_set()?;
        if lhs != rhs {
            count += 1;
            if violations.len() < options.cap.max(1) {
                violations.push(Witness {
                    postulate: PostulateId::ParAgg,
                    operators: space.operators,
                    instance: Instance {
                        atoms: space.atoms,
                        tpos: vec![a.clone(), b.clone()],
                        sets: vec![],
                        props: vec![],
                    },
                    condition: "Bel(⪯_STQ) = Cl_rat(⋂ Bel(⪯_i))".into(),
                    observed: format!("STQ aggregate {aggregate}, rational closure {closure}"),
                });
            }
            if options.first {
                break;
            }
        }
    }
    Ok(CheckReport {
        postulate: "RC-identity".into(),
        space: space.clone(),
        checked: profiles.len() as u64,
        violations,
        seed: space.seed(),
        elapsed_ms: start.elapsed().as_millis() as u64,
        violation_count: count,
        skipped: 0,
        expectation: Expectation::None,
        status: if count == 0 { Status::Pass } else { Status::Fail },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parallel::ParallelRevisionOperator;

    fn space() -> InstanceSpace {
        InstanceSpace::exhaustive(2, Operators::default())
    }

    fn tpo(text: &str) -> Tpo {
        Tpo::parse(text).unwrap()
    }

    fn prop(text: &str) -> WorldSet {
        parse_proposition(2, text).unwrap()
    }

    #[test]
    fn conj_star_holds_for_default() {
        let r = check(PostulateId::ConjStar, &space(), CheckOptions::default()).unwrap();
        assert_eq!(r.violation_count, 0);
        assert_eq!(r.checked + r.skipped, 75 * 137);
        assert!(r.passed());
    }

    #[test]
    fn ind_fails_only_for_natural() {
        let w = find_countermodel(PostulateId::Ind, &space()).unwrap().unwrap();
        assert!(replay(&w).unwrap().is_violation());
        for serial in [SerialRevision::Lexicographic, SerialRevision::Restrained] {
            let ops = Operators {
                serial,
                ..Operators::default()
            };
            let r = check(
                PostulateId::Ind,
                &InstanceSpace::exhaustive(2, ops),
                CheckOptions::default(),
            )
            .unwrap();
            assert_eq!(r.violation_count, 0);
        }
    }

    #[test]
    fn strong_c2_witness() {
        let inst = Instance {
            atoms: 2,
            tpos: vec![Tpo::uniform(2)],
            sets: vec![vec![prop("{10,11}"), prop("{01,11}")]],
            props: vec![],
        };
        let v = evaluate(PostulateId::CStar2Plus, &Operators::default(), &inst).unwrap();
        assert!(v.is_violation(), "{v:?}");
    }

    #[test]
    fn p_star_witness_shape() {
        let inst = Instance {
            atoms: 2,
            tpos: vec![tpo("[{00,11} < {01,10}]")],
            sets: vec![vec![prop("{10,11}")], vec![prop("{00,10}")]],
            props: vec![],
        };
        match evaluate(PostulateId::PStar, &Operators::default(), &inst).unwrap() {
            Verdict::Violated { observed, .. } => assert!(observed.contains("= {00}"), "{observed}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn p_star_countermodel_over_literal_pool() {
        let space = space().with_pool(["A", "~B"]);
        let w = find_countermodel(PostulateId::PStar, &space).unwrap().unwrap();
        assert_eq!(w.instance.sets, vec![vec![prop("{10,11}")], vec![prop("{00,10}")]]);
        assert!(w.observed.contains("= {00} ⊄ ⟦⋀S1⟧ = {10,11}"), "{}", w.observed);
        assert!(replay(&w).unwrap().is_violation());
    }

    #[test]
    fn dip_witness() {
        let inst = Instance {
            atoms: 2,
            tpos: vec![tpo("[{11} < {10} < {01} < {00}]")],
            sets: vec![vec![prop("{10,11}"), prop("{01,11}")]],
            props: vec![],
        };
        assert!(evaluate(PostulateId::DiP, &Operators::default(), &inst)
            .unwrap()
            .is_violation());
    }

    #[test]
    fn witnesses_round_trip_through_json() {
        let w = find_countermodel(PostulateId::CStar2Plus, &space())
            .unwrap()
            .unwrap();
        let text = serde_json::to_string(&w).unwrap();
        let back: Witness = serde_json::from_str(&text).unwrap();
        assert_eq!(back, w);
        assert_eq!(replay(&back).unwrap(), replay(&w).unwrap());
    }

    #[test]
    fn report_field_order() {
        let r = check(PostulateId::Ub, &space(), CheckOptions::default()).unwrap();
        let json = r.to_json();
        let keys = ["\"postulate\"", "\"space\"", "\"checked\"", "\"violations\"", "\"seed\"", "\"elapsed_ms\""];
        let positions: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "{json}");
    }

    #[test]
    fn incompatible_configuration() {
        let ops = Operators {
            contraction: None,
            ..Operators::default()
        };
        let err = check(
            PostulateId::CMinus1,
            &InstanceSpace::exhaustive(2, ops),
            CheckOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::IncompatibleConfig(_)));
        assert!(check(
            PostulateId::Cr1,
            &InstanceSpace::exhaustive(3, Operators::default()),
            CheckOptions::default()
        )
        .is_err());
    }

    #[test]
    fn sampled_mode_is_seeded() {
        let ops = Operators::with_parallel(ParallelRevisionOperator::default());
        let space = InstanceSpace::sampled(3, 300, 7, ops);
        let a = check(PostulateId::SStar, &space, CheckOptions::default()).unwrap();
        let b = check(PostulateId::SStar, &space, CheckOptions::default()).unwrap();
        assert_eq!(a.checked, 300);
        assert_eq!((a.checked, a.skipped), (b.checked, b.skipped));
        assert_eq!(a.seed, Some(7));
    }

    #[test]
    fn rc_identity_on_two_revision_profile() {
        let a = tpo("[{10,11} < {00} < {01}]");
        let b = tpo("[{01,11} < {00} < {10}]");
        let meet = a
            .conditional_set()
            .unwrap()
            .intersection(&b.conditional_set().unwrap());
        assert_eq!(
            meet.rational_closure().unwrap(),
            tpo("[{01,10,11} < {00}]")
        );
    }
}
