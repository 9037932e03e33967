//! Evaluation of single postulate instances.
//!
//! TPOs and proposition sets are interned so that every revision needed by
//! a sweep is computed once and afterwards looked up by index.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use super::catalog::{PostulateId, Shape};
use crate::aggregation::aggregate;
use crate::error::{Error, Result};
use crate::logic::{conj_models, Formula, FormulaSet, Language, World, WorldSet};
use crate::parallel::{ParallelContractionOperator, ParallelRevisionOperator};
use crate::serial::{SerialContraction, SerialRevision};
use crate::tpo::{Profile, Tpo};

/// The operators a check runs against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Operators {
    /// Operator for the serial revision postulates.
    pub serial: SerialRevision,
    /// Serial contraction, used directly and inside parallel contraction.
    pub contraction: Option<SerialContraction>,
    /// Parallel revision; its aggregator also serves the aggregation and
    /// parallel contraction postulates.
    pub parallel: ParallelRevisionOperator,
}

impl Default for Operators {
    fn default() -> Self {
        Operators {
            serial: SerialRevision::Natural,
            contraction: Some(SerialContraction::Natural),
            parallel: ParallelRevisionOperator::default(),
        }
    }
}

impl Operators {
    pub fn with_parallel(parallel: ParallelRevisionOperator) -> Self {
        Operators {
            parallel,
            ..Operators::default()
        }
    }

    pub fn parallel_contraction(&self) -> Option<ParallelContractionOperator> {
        self.contraction
            .map(|c| ParallelContractionOperator::new(c, self.parallel.aggregator))
    }

    fn contraction_for(&self, id: PostulateId) -> Result<SerialContraction> {
        self.contraction.ok_or_else(|| {
            Error::IncompatibleConfig(format!("{id} needs a contraction operator"))
        })
    }
}

/// The outcome of evaluating one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated { condition: String, observed: String },
    /// The instance needs a revision by an inconsistent input.
    Skipped,
}

impl Verdict {
    pub fn is_violation(&self) -> bool {
        matches!(self, Verdict::Violated { .. })
    }
}

/// A postulate instance in plain data form, as stored in witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "InstanceRecord", into = "InstanceRecord")]
pub struct Instance {
    pub atoms: usize,
    pub tpos: Vec<Tpo>,
    pub sets: Vec<Vec<WorldSet>>,
    pub props: Vec<WorldSet>,
}

#[derive(Serialize, Deserialize)]
struct InstanceRecord {
    atoms: usize,
    tpos: Vec<Tpo>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    sets: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    props: Vec<String>,
}

/// Parses a rendered proposition such as `{00,11}` or `{}`.
pub fn parse_proposition(atoms: usize, text: &str) -> Result<WorldSet> {
    let body = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| Error::InvalidWorld(text.to_string()))?;
    let labels: Vec<&str> = body
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    WorldSet::parse_labels(atoms, &labels)
}

impl From<Instance> for InstanceRecord {
    fn from(i: Instance) -> Self {
        InstanceRecord {
            atoms: i.atoms,
            tpos: i.tpos,
            sets: i
                .sets
                .iter()
                .map(|s| s.iter().map(WorldSet::render).collect())
                .collect(),
            props: i.props.iter().map(WorldSet::render).collect(),
        }
    }
}

impl TryFrom<InstanceRecord> for Instance {
    type Error = Error;

    fn try_from(r: InstanceRecord) -> Result<Self> {
        let atoms = r.atoms;
        if r.tpos.iter().any(|t| t.atoms() != atoms) {
            return Err(Error::InvalidTpo("instance mixes languages".into()));
        }
        Ok(Instance {
            atoms,
            sets: r
                .sets
                .iter()
                .map(|s| {
                    s.iter()
                        .map(|p| parse_proposition(atoms, p))
                        .collect::<Result<_>>()
                })
                .collect::<Result<_>>()?,
            props: r
                .props
                .iter()
                .map(|p| parse_proposition(atoms, p))
                .collect::<Result<_>>()?,
            tpos: r.tpos,
        })
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.tpos.iter().map(Tpo::render).collect();
        for (i, s) in self.sets.iter().enumerate() {
            let members: Vec<String> = s.iter().map(WorldSet::render).collect();
            parts.push(format!("S{}={{{}}}", i + 1, members.join(", ")));
        }
        for (i, p) in self.props.iter().enumerate() {
            parts.push(format!("{}={}", ["A", "B"].get(i).unwrap_or(&"P"), p));
        }
        f.write_str(&parts.join("; "))
    }
}

/// An instance by interned indices.
#[derive(Debug, Clone)]
pub(crate) struct Ix {
    pub t: u32,
    pub t2: u32,
    pub s1: u32,
    pub s2: u32,
    pub a: WorldSet,
    pub b: WorldSet,
    /// Replaces `Ψ⊛S1` by an arbitrary TPO; other revisions are then read
    /// off through (Conj⊛). Used to cross-check semantic and syntactic forms.
    pub posterior: Option<u32>,
}

pub(crate) struct SetInfo {
    pub members: Vec<WorldSet>,
    pub conj: WorldSet,
    pub disj: WorldSet,
}

#[derive(Default)]
struct Tables {
    tpos: Vec<Rc<Tpo>>,
    tpo_index: HashMap<Rc<Tpo>, u32>,
    sets: Vec<Rc<SetInfo>>,
    set_index: HashMap<Vec<u64>, u32>,
    revisions: HashMap<(u32, u32), Option<u32>>,
    contractions: HashMap<(u32, u32), u32>,
    unions: HashMap<(u32, u32), u32>,
    negations: HashMap<u32, u32>,
}

pub(crate) struct Engine {
    pub ops: Operators,
    pub atoms: usize,
    lang: Language,
    tables: RefCell<Tables>,
}

fn worlds(atoms: usize) -> impl Iterator<Item = World> {
    (0..1u32 << atoms).map(World)
}

fn rel(t: &Tpo, x: World, y: World, atoms: usize) -> String {
    let op = match t.compare(x, y) {
        std::cmp::Ordering::Less => "<",
        std::cmp::Ordering::Equal => "~",
        std::cmp::Ordering::Greater => ">",
    };
    format!("{} {op} {}", x.label(atoms), y.label(atoms))
}

fn violated(condition: impl Into<String>, observed: impl Into<String>) -> Verdict {
    Verdict::Violated {
        condition: condition.into(),
        observed: observed.into(),
    }
}

fn holds_if(ok: bool, condition: impl FnOnce() -> String, observed: impl FnOnce() -> String) -> Verdict {
    if ok {
        Verdict::Holds
    } else {
        violated(condition(), observed())
    }
}

/// Checks a relational condition for every ordered pair of distinct worlds
/// and reports the first failing pair.
fn for_pairs(
    id: PostulateId,
    atoms: usize,
    prior: &Tpo,
    post: &Tpo,
    mut ok: impl FnMut(World, World) -> bool,
) -> Verdict {
    for x in worlds(atoms) {
        for y in worlds(atoms) {
            if x != y && !ok(x, y) {
                return violated(
                    format!("{} [x={}, y={}]", id.statement(), x.label(atoms), y.label(atoms)),
                    format!(
                        "before: {} in {}; after: {} in {}",
                        rel(prior, x, y, atoms),
                        prior,
                        rel(post, x, y, atoms),
                        post
                    ),
                );
            }
        }
    }
    Verdict::Holds
}

/// `(S|x) ⊆ (S|y)` over member model sets.
fn sat_subset(members: &[WorldSet], x: World, y: World) -> bool {
    members.iter().all(|m| !m.contains(x) || m.contains(y))
}

fn syntactic_variants(f: &Formula) -> Vec<Formula> {
    vec![
        Formula::not(Formula::not(f.clone())),
        Formula::and(f.clone(), f.clone()),
        Formula::or(f.clone(), Formula::Falsum),
        Formula::and(Formula::Verum, f.clone()),
    ]
}

impl Engine {
    pub fn new(ops: Operators, atoms: usize) -> Result<Engine> {
        if atoms == 0 || atoms > 6 {
            return Err(Error::SizeGuard(format!(
                "postulate checks support 1..=6 atoms, got {atoms}"
            )));
        }
        Ok(Engine {
            ops,
            atoms,
            lang: Language::with_atom_count(atoms)?,
            tables: RefCell::new(Tables::default()),
        })
    }

    pub fn intern_tpo(&self, t: &Tpo) -> u32 {
        let mut tables = self.tables.borrow_mut();
        if let Some(&i) = tables.tpo_index.get(t) {
            return i;
        }
        let i = tables.tpos.len() as u32;
        let rc = Rc::new(t.clone());
        tables.tpos.push(rc.clone());
        tables.tpo_index.insert(rc, i);
        i
    }

    pub fn tpo(&self, i: u32) -> Rc<Tpo> {
        self.tables.borrow().tpos[i as usize].clone()
    }

    /// Interns a set of propositions; semantically equal members collapse
    /// to the first occurrence.
    pub fn intern_set(&self, members: &[WorldSet]) -> u32 {
        let mut unique: Vec<WorldSet> = Vec::with_capacity(members.len());
        for m in members {
            if !unique.contains(m) {
                unique.push(m.clone());
            }
        }
        let key: Vec<u64> = unique.iter().map(WorldSet::mask).collect();
        let mut tables = self.tables.borrow_mut();
        if let Some(&i) = tables.set_index.get(&key) {
            return i;
        }
        let i = tables.sets.len() as u32;
        let info = SetInfo {
            conj: conj_models(self.atoms, &unique),
            disj: unique
                .iter()
                .fold(WorldSet::empty(self.atoms), |acc, m| acc.union(m)),
            members: unique,
        };
        tables.sets.push(Rc::new(info));
        tables.set_index.insert(key, i);
        i
    }

    pub fn set(&self, i: u32) -> Rc<SetInfo> {
        self.tables.borrow().sets[i as usize].clone()
    }

    pub fn union(&self, a: u32, b: u32) -> u32 {
        if let Some(&u) = self.tables.borrow().unions.get(&(a, b)) {
            return u;
        }
        let mut members = self.set(a).members.clone();
        members.extend(self.set(b).members.iter().cloned());
        let u = self.intern_set(&members);
        self.tables.borrow_mut().unions.insert((a, b), u);
        u
    }

    /// `¬S`: the set of member negations.
    pub fn negation(&self, s: u32) -> u32 {
        if let Some(&n) = self.tables.borrow().negations.get(&s) {
            return n;
        }
        let members: Vec<WorldSet> = self.set(s).members.iter().map(WorldSet::complement).collect();
        let n = self.intern_set(&members);
        self.tables.borrow_mut().negations.insert(s, n);
        n
    }

    /// Parallel revision; `None` when the input is inconsistent.
    pub fn revise(&self, t: u32, s: u32) -> Option<u32> {
        if let Some(&r) = self.tables.borrow().revisions.get(&(t, s)) {
            return r;
        }
        let result = self
            .ops
            .parallel
            .apply(&self.tpo(t), &self.set(s).members)
            .ok()
            .map(|r| self.intern_tpo(&r));
        self.tables.borrow_mut().revisions.insert((t, s), result);
        result
    }

    pub fn contract(&self, t: u32, s: u32, op: ParallelContractionOperator) -> u32 {
        if let Some(&r) = self.tables.borrow().contractions.get(&(t, s)) {
            return r;
        }
        let out = op.apply(&self.tpo(t), &self.set(s).members);
        let r = self.intern_tpo(&out);
        self.tables.borrow_mut().contractions.insert((t, s), r);
        r
    }

    /// `Ψ⊛S1`, or the substituted posterior.
    fn posterior(&self, ix: &Ix) -> Option<u32> {
        ix.posterior.or_else(|| self.revise(ix.t, ix.s1))
    }

    /// Belief worlds of `Ψ⊛S` for a first-step revision.
    fn beliefs(&self, ix: &Ix, t: u32, s: u32) -> Option<WorldSet> {
        if ix.posterior.is_some() {
            let conj = &self.set(s).conj;
            return (!conj.is_empty()).then(|| self.tpo(t).min_set(conj));
        }
        self.revise(t, s).map(|r| self.tpo(r).belief_worlds().clone())
    }

    /// Belief worlds of `(Ψ⊛S1)⊛S2`.
    fn iterated_beliefs(&self, ix: &Ix) -> Option<WorldSet> {
        let post = self.posterior(ix)?;
        self.beliefs(ix, post, ix.s2)
    }

    pub fn instance(&self, shape: Shape, ix: &Ix) -> Instance {
        let tpo = |i: u32| (*self.tpo(i)).clone();
        let set = |i: u32| self.set(i).members.clone();
        let (tpos, sets, props) = match shape {
            Shape::SerialOne => (vec![tpo(ix.t)], vec![], vec![ix.a.clone()]),
            Shape::SerialTwo => (vec![tpo(ix.t)], vec![], vec![ix.a.clone(), ix.b.clone()]),
            Shape::SetOne => (vec![tpo(ix.t)], vec![set(ix.s1)], vec![]),
            Shape::SetTwo => (vec![tpo(ix.t)], vec![set(ix.s1), set(ix.s2)], vec![]),
            Shape::SetTwoProp => (
                vec![tpo(ix.t)],
                vec![set(ix.s1), set(ix.s2)],
                vec![ix.a.clone()],
            ),
            Shape::ProfileSubset => (vec![tpo(ix.t), tpo(ix.t2)], vec![], vec![ix.a.clone()]),
        };
        let mut tpos = tpos;
        if let Some(p) = ix.posterior {
            tpos.push(tpo(p));
        }
        Instance {
            atoms: self.atoms,
            tpos,
            sets,
            props,
        }
    }

    /// Interns a plain instance for evaluation under `id`.
    pub fn index(&self, id: PostulateId, inst: &Instance) -> Result<Ix> {
        let bad = || Error::IncompatibleConfig(format!("instance does not fit {id}"));
        if inst.atoms != self.atoms {
            return Err(bad());
        }
        let (n_tpos, n_sets, n_props) = match id.shape() {
            Shape::SerialOne => (1, 0, 1),
            Shape::SerialTwo => (1, 0, 2),
            Shape::SetOne => (1, 1, 0),
            Shape::SetTwo => (1, 2, 0),
            Shape::SetTwoProp => (1, 2, 1),
            Shape::ProfileSubset => (2, 0, 1),
        };
        let with_posterior = inst.tpos.len() == n_tpos + 1 && n_tpos == 1;
        if (inst.tpos.len() != n_tpos && !with_posterior)
            || inst.sets.len() != n_sets
            || inst.props.len() != n_props
        {
            return Err(bad());
        }
        let empty = WorldSet::empty(self.atoms);
        let t = self.intern_tpo(&inst.tpos[0]);
        Ok(Ix {
            t,
            t2: if n_tpos == 2 { self.intern_tpo(&inst.tpos[1]) } else { t },
            s1: self.intern_set(inst.sets.first().map(Vec::as_slice).unwrap_or(&[])),
            s2: self.intern_set(inst.sets.get(1).map(Vec::as_slice).unwrap_or(&[])),
            a: inst.props.first().cloned().unwrap_or_else(|| empty.clone()),
            b: inst.props.get(1).cloned().unwrap_or(empty),
            posterior: with_posterior.then(|| self.intern_tpo(&inst.tpos[1])),
        })
    }

    pub fn eval(&self, id: PostulateId, ix: &Ix) -> Result<Verdict> {
        use PostulateId::*;
        let atoms = self.atoms;
        let statement = || id.statement().to_string();
        Ok(match id {
            K1 | K2 | K3 | K4 | K5 | K6 | AgmMin | Cr1 | Cr2 | Cr3 | Cr4 | Ind => {
                let op = self.ops.serial;
                let t = self.tpo(ix.t);
                let a = &ix.a;
                let Ok(r) = op.apply(&t, a) else {
                    return Ok(Verdict::Skipped);
                };
                let bel = r.belief_worlds();
                let prior_bel = t.belief_worlds();
                let na = a.complement();
                match id {
                    K1 => holds_if(
                        Tpo::from_blocks(r.blocks().to_vec()).is_ok(),
                        statement,
                        || format!("posterior {r} is not a partition of W"),
                    ),
                    K2 => holds_if(bel.is_subset(a), statement, || {
                        format!("[Ψ*A] has models {bel}, ⟦A⟧ = {a}")
                    }),
                    K3 => {
                        let expansion = prior_bel.intersection(a);
                        holds_if(expansion.is_subset(bel), statement, || {
                            format!("⟦[Ψ]∪{{A}}⟧ = {expansion}, ⟦[Ψ*A]⟧ = {bel}")
                        })
                    }
                    K4 => {
                        let expansion = prior_bel.intersection(a);
                        holds_if(
                            expansion.is_empty() || bel.is_subset(&expansion),
                            statement,
                            || format!("⟦[Ψ]∪{{A}}⟧ = {expansion}, ⟦[Ψ*A]⟧ = {bel}"),
                        )
                    }
                    K5 => holds_if(!bel.is_empty(), statement, || format!("posterior {r}")),
                    K6 => {
                        let f = Formula::from_models(a, &self.lang);
                        let mut verdict = Verdict::Holds;
                        for g in syntactic_variants(&f) {
                            let other = op.apply_formula(&t, &g, &self.lang)?;
                            if other.belief_worlds() != bel {
                                verdict = violated(
                                    statement(),
                                    format!(
                                        "A = {} gives {bel}, variant {} gives {}",
                                        f.render(&self.lang),
                                        g.render(&self.lang),
                                        other.belief_worlds()
                                    ),
                                );
                                break;
                            }
                        }
                        verdict
                    }
                    AgmMin => {
                        let min = t.min_set(a);
                        holds_if(bel == &min, statement, || {
                            format!("min(⪯_{{Ψ*A}}, W) = {bel}, min(⪯_Ψ, ⟦A⟧) = {min}")
                        })
                    }
                    Cr1 => for_pairs(id, atoms, &t, &r, |x, y| {
                        !(a.contains(x) && a.contains(y)) || t.leq(x, y) == r.leq(x, y)
                    }),
                    Cr2 => for_pairs(id, atoms, &t, &r, |x, y| {
                        !(na.contains(x) && na.contains(y)) || t.leq(x, y) == r.leq(x, y)
                    }),
                    Cr3 => for_pairs(id, atoms, &t, &r, |x, y| {
                        !(a.contains(x) && na.contains(y) && Tpo::lt(&t, x, y)) || Tpo::lt(&r, x, y)
                    }),
                    Cr4 => for_pairs(id, atoms, &t, &r, |x, y| {
                        !(a.contains(x) && na.contains(y) && t.leq(x, y)) || r.leq(x, y)
                    }),
                    Ind => for_pairs(id, atoms, &t, &r, |x, y| {
                        !(a.contains(x) && na.contains(y) && t.leq(x, y)) || Tpo::lt(&r, x, y)
                    }),
                    _ => unreachable!(),
                }
            }
            K7 | K8 => {
                let op = self.ops.serial;
                let t = self.tpo(ix.t);
                let ab = ix.a.intersection(&ix.b);
                let (Ok(ra), Ok(rab)) = (op.apply(&t, &ix.a), op.apply(&t, &ab)) else {
                    return Ok(Verdict::Skipped);
                };
                let expansion = ra.belief_worlds().intersection(&ix.b);
                let bel = rab.belief_worlds();
                let ok = match id {
                    K7 => expansion.is_subset(bel),
                    _ => expansion.is_empty() || bel.is_subset(&expansion),
                };
                holds_if(ok, statement, || {
                    format!("⟦[Ψ*A]∪{{B}}⟧ = {expansion}, ⟦[Ψ*(A∧B)]⟧ = {bel}")
                })
            }
            Cc1 | Cc2 | Cc3 | Cc4 | LiSerial | HiSerial => {
                let op = self.ops.contraction_for(id)?;
                let t = self.tpo(ix.t);
                let a = &ix.a;
                let na = a.complement();
                match id {
                    LiSerial => {
                        let Ok(r) = self.ops.serial.apply(&t, a) else {
                            return Ok(Verdict::Skipped);
                        };
                        let levi = op.apply(&t, &na).belief_worlds().intersection(a);
                        holds_if(r.belief_worlds() == &levi, statement, || {
                            format!("⟦[Ψ*A]⟧ = {}, ⟦[Ψ∸¬A]∪{{A}}⟧ = {levi}", r.belief_worlds())
                        })
                    }
                    HiSerial => {
                        let Ok(r) = self.ops.serial.apply(&t, &na) else {
                            return Ok(Verdict::Skipped);
                        };
                        let c = op.apply(&t, a);
                        let harper = t.belief_worlds().union(r.belief_worlds());
                        holds_if(c.belief_worlds() == &harper, statement, || {
                            format!("⟦[Ψ∸A]⟧ = {}, ⟦[Ψ]∩[Ψ*¬A]⟧ = {harper}", c.belief_worlds())
                        })
                    }
                    _ => {
                        let c = op.apply(&t, a);
                        match id {
                            Cc1 => for_pairs(id, atoms, &t, &c, |x, y| {
                                !(na.contains(x) && na.contains(y)) || t.leq(x, y) == c.leq(x, y)
                            }),
                            Cc2 => for_pairs(id, atoms, &t, &c, |x, y| {
                                !(a.contains(x) && a.contains(y)) || t.leq(x, y) == c.leq(x, y)
                            }),
                            Cc3 => for_pairs(id, atoms, &t, &c, |x, y| {
                                !(na.contains(x) && a.contains(y) && Tpo::lt(&t, x, y)) || Tpo::lt(&c, x, y)
                            }),
                            _ => for_pairs(id, atoms, &t, &c, |x, y| {
                                !(na.contains(x) && a.contains(y) && t.leq(x, y)) || c.leq(x, y)
                            }),
                        }
                    }
                }
            }
            ConjStar | KStar1 | KStar2 | KStar3 | KStar4 | KStar5 => {
                let Some(r) = self.revise(ix.t, ix.s1) else {
                    return Ok(Verdict::Skipped);
                };
                let (t, r, s) = (self.tpo(ix.t), self.tpo(r), self.set(ix.s1));
                let bel = r.belief_worlds();
                let expansion = t.belief_worlds().intersection(&s.conj);
                match id {
                    ConjStar => {
                        let min = t.min_set(&s.conj);
                        holds_if(bel == &min, statement, || {
                            format!("min(⪯_{{Ψ⊛S}}, W) = {bel}, min(⪯_Ψ, ⟦⋀S⟧) = {min}")
                        })
                    }
                    KStar1 => holds_if(Tpo::from_blocks(r.blocks().to_vec()).is_ok(), statement, || {
                        format!("posterior {r} is not a partition of W")
                    }),
                    KStar2 => holds_if(bel.is_subset(&s.conj), statement, || {
                        format!("⟦[Ψ⊛S]⟧ = {bel}, ⟦⋀S⟧ = {}", s.conj)
                    }),
                    KStar3 => holds_if(expansion.is_subset(bel), statement, || {
                        format!("⟦[Ψ]∪S⟧ = {expansion}, ⟦[Ψ⊛S]⟧ = {bel}")
                    }),
                    KStar4 => holds_if(
                        expansion.is_empty() || bel.is_subset(&expansion),
                        statement,
                        || format!("⟦[Ψ]∪S⟧ = {expansion}, ⟦[Ψ⊛S]⟧ = {bel}"),
                    ),
                    _ => holds_if(!bel.is_empty(), statement, || format!("posterior {r}")),
                }
            }
            KStar6Minus => {
                let s = self.set(ix.s1);
                if s.conj.is_empty() {
                    return Ok(Verdict::Skipped);
                }
                let t = self.tpo(ix.t);
                let plain: FormulaSet = s
                    .members
                    .iter()
                    .map(|m| Formula::from_models(m, &self.lang))
                    .collect();
                // Member-wise equivalent: each member replaced by variants,
                // listed in reverse order, with the first member repeated.
                let mut variant = FormulaSet::new();
                for f in plain.iter().rev() {
                    variant.insert(Formula::not(Formula::not(f.clone())));
                }
                if let Some(f) = plain.iter().next() {
                    variant.insert(Formula::and(f.clone(), f.clone()));
                }
                let op = self.ops.parallel;
                let lhs = op.revise(&t, &plain, &self.lang)?;
                let rhs = op.revise(&t, &variant, &self.lang)?;
                holds_if(lhs.belief_worlds() == rhs.belief_worlds(), statement, || {
                    format!(
                        "S1 = {} gives {}, S2 = {} gives {}",
                        plain.render(&self.lang),
                        lhs.belief_worlds(),
                        variant.render(&self.lang),
                        rhs.belief_worlds()
                    )
                })
            }
            KStar6 => {
                let (s1, s2) = (self.set(ix.s1), self.set(ix.s2));
                let (Some(r1), Some(r2)) = (self.revise(ix.t, ix.s1), self.revise(ix.t, ix.s2))
                else {
                    return Ok(Verdict::Skipped);
                };
                let (b1, b2) = (self.tpo(r1), self.tpo(r2));
                let (b1, b2) = (b1.belief_worlds(), b2.belief_worlds());
                let mut verdict = holds_if(s1.conj != s2.conj || b1 == b2, statement, || {
                    format!("⟦[Ψ⊛S1]⟧ = {b1}, ⟦[Ψ⊛S2]⟧ = {b2}")
                });
                // The same sets again, written with different formulas.
                if verdict == Verdict::Holds && s1.conj == s2.conj {
                    let t = self.tpo(ix.t);
                    let variant: FormulaSet = s2
                        .members
                        .iter()
                        .map(|m| Formula::not(Formula::not(Formula::from_models(m, &self.lang))))
                        .collect();
                    let r = self.ops.parallel.revise(&t, &variant, &self.lang)?;
                    verdict = holds_if(r.belief_worlds() == b1, statement, || {
                        format!(
                            "⟦[Ψ⊛S1]⟧ = {b1}, ⟦[Ψ⊛{}]⟧ = {}",
                            variant.render(&self.lang),
                            r.belief_worlds()
                        )
                    });
                }
                verdict
            }
            KStar7 | KStar8 => {
                let u = self.union(ix.s1, ix.s2);
                let (Some(r1), Some(ru)) = (self.revise(ix.t, ix.s1), self.revise(ix.t, u)) else {
                    return Ok(Verdict::Skipped);
                };
                let expansion = self.tpo(r1).belief_worlds().intersection(&self.set(ix.s2).conj);
                let ru = self.tpo(ru);
                let bel = ru.belief_worlds();
                let ok = match id {
                    KStar7 => expansion.is_subset(bel),
                    _ => expansion.is_empty() || bel.is_subset(&expansion),
                };
                holds_if(ok, statement, || {
                    format!("⟦[Ψ⊛S1]∪S2⟧ = {expansion}, ⟦[Ψ⊛(S1∪S2)]⟧ = {bel}")
                })
            }
            CStar1 | CStar2 | CStar3 | CStar4 | CStar2Plus | Pc3 | Pc4 | IndStar => {
                let Some(r) = self.posterior(ix) else {
                    return Ok(Verdict::Skipped);
                };
                let (t, r, s) = (self.tpo(ix.t), self.tpo(r), self.set(ix.s1));
                let c = &s.conj;
                let nc = conj_models(atoms, &s.members.iter().map(WorldSet::complement).collect::<Vec<_>>());
                let m = &s.members;
                for_pairs(id, atoms, &t, &r, |x, y| match id {
                    CStar1 => !(c.contains(x) && c.contains(y)) || t.leq(x, y) == r.leq(x, y),
                    CStar2 => !(nc.contains(x) && nc.contains(y)) || t.leq(x, y) == r.leq(x, y),
                    CStar3 => !(c.contains(x) && !c.contains(y) && Tpo::lt(&t, x, y)) || Tpo::lt(&r, x, y),
                    CStar4 => !(c.contains(x) && !c.contains(y) && t.leq(x, y)) || r.leq(x, y),
                    CStar2Plus => {
                        c.contains(x) || c.contains(y) || t.leq(x, y) == r.leq(x, y)
                    }
                    Pc3 => !(sat_subset(m, y, x) && Tpo::lt(&t, x, y)) || Tpo::lt(&r, x, y),
                    Pc4 => !(sat_subset(m, y, x) && t.leq(x, y)) || r.leq(x, y),
                    _ => !(c.contains(x) && !c.contains(y) && t.leq(x, y)) || Tpo::lt(&r, x, y),
                })
            }
            CStar1b | CStar2b | CStar3b | CStar4b => {
                let (s1, s2) = (self.set(ix.s1), self.set(ix.s2));
                let (Some(direct), Some(iterated)) =
                    (self.beliefs(ix, ix.t, ix.s2), self.iterated_beliefs(ix))
                else {
                    return Ok(Verdict::Skipped);
                };
                let ok = match id {
                    CStar1b => !s2.conj.is_subset(&s1.conj) || direct == iterated,
                    CStar2b => s2.conj.intersects(&s1.disj) || direct == iterated,
                    CStar3b => !direct.is_subset(&s1.conj) || iterated.is_subset(&s1.conj),
                    _ => !direct.intersects(&s1.conj) || iterated.intersects(&s1.conj),
                };
                holds_if(ok, statement, || {
                    format!(
                        "⟦⋀S1⟧ = {}, ⟦⋀S2⟧ = {}, ⟦[Ψ⊛S2]⟧ = {direct}, ⟦[(Ψ⊛S1)⊛S2]⟧ = {iterated}",
                        s1.conj, s2.conj
                    )
                })
            }
            Pc3b | Pc4b => {
                let (s1, s2) = (self.set(ix.s1), self.set(ix.s2));
                if s2.members.is_empty() {
                    return Ok(Verdict::Holds);
                }
                let Some(iterated) = self.iterated_beliefs(ix) else {
                    return Ok(Verdict::Skipped);
                };
                let a = &ix.a;
                let n = s1.members.len();
                let mut premise = true;
                for mask in 0..1u32 << n {
                    let subset: Vec<WorldSet> = (0..n)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| s1.members[i].clone())
                        .collect();
                    let sub = self.intern_set(&subset);
                    let joint = self.union(sub, ix.s2);
                    if self.set(joint).conj.is_empty() {
                        continue;
                    }
                    let bel = self.beliefs(ix, ix.t, joint).expect("consistent input");
                    premise &= match id {
                        Pc3b => bel.is_subset(a),
                        _ => bel.intersects(a),
                    };
                }
                let conclusion = match id {
                    Pc3b => iterated.is_subset(a),
                    _ => iterated.intersects(a),
                };
                holds_if(!premise || conclusion, statement, || {
                    format!("A = {a}, ⟦[(Ψ⊛S1)⊛S2]⟧ = {iterated}")
                })
            }
            SStar | PStar => {
                let target = self.union(ix.s1, self.negation(ix.s2));
                let Some(r) = self.revise(ix.t, target) else {
                    return Ok(Verdict::Skipped);
                };
                let (t, r) = (self.tpo(ix.t), self.tpo(r));
                let (s1, s2) = (self.set(ix.s1), self.set(ix.s2));
                let both = s1.conj.intersection(&s2.conj);
                match id {
                    SStar => {
                        let (lhs, rhs) = (t.min_set(&both), r.min_set(&both));
                        holds_if(lhs == rhs, statement, || {
                            format!(
                                "min(⪯_Ψ, {both}) = {lhs}, min(⪯_{{Ψ⊛(S1∪¬S2)}}, {both}) = {rhs} with Ψ⊛(S1∪¬S2) = {r}"
                            )
                        })
                    }
                    _ => {
                        let min = r.min_set(&s2.conj);
                        holds_if(both.is_empty() || min.is_subset(&s1.conj), statement, || {
                            format!(
                                "min(⪯_{{Ψ⊛(S1∪¬S2)}}, ⟦⋀S2⟧={}) = {min} ⊄ ⟦⋀S1⟧ = {} with Ψ⊛(S1∪¬S2) = {r}",
                                s2.conj, s1.conj
                            )
                        })
                    }
                }
            }
            GrStar => {
                let neg = self.negation(ix.s1);
                let Some(r) = self.revise(ix.t, neg) else {
                    return Ok(Verdict::Skipped);
                };
                let (t, r, s) = (self.tpo(ix.t), self.tpo(r), self.set(ix.s1));
                let (lhs, rhs) = (r.min_set(&s.conj), t.min_set(&s.conj));
                holds_if(lhs == rhs, statement, || {
                    format!("min(⪯_{{Ψ⊛¬S}}, ⟦⋀S⟧) = {lhs}, min(⪯_Ψ, ⟦⋀S⟧) = {rhs}")
                })
            }
            LiParallel | HiParallel | CMinus1 | CMinus2 | CMinus3 | CMinus4 | Intersective | DiP => {
                self.ops.contraction_for(id)?;
                let op = self.ops.parallel_contraction().expect("checked above");
                let t = self.tpo(ix.t);
                let s = self.set(ix.s1);
                match id {
                    LiParallel => {
                        if s.conj.is_empty() {
                            return Ok(Verdict::Skipped);
                        }
                        let neg = self.negation(ix.s1);
                        let c = self.tpo(self.contract(ix.t, neg, op));
                        let levi = c.belief_worlds().intersection(&s.conj);
                        holds_if(!levi.is_empty(), statement, || {
                            format!(
                                "⟦[Ψ⊖¬S]⟧ = {} misses ⟦⋀S⟧ = {}; Ψ⊖¬S = {c}",
                                c.belief_worlds(),
                                s.conj
                            )
                        })
                    }
                    HiParallel => {
                        let neg = self.negation(ix.s1);
                        let Some(r) = self.revise(ix.t, neg) else {
                            return Ok(Verdict::Skipped);
                        };
                        let c = self.tpo(self.contract(ix.t, ix.s1, op));
                        let harper = t.belief_worlds().union(self.tpo(r).belief_worlds());
                        holds_if(c.belief_worlds() == &harper, statement, || {
                            format!("⟦[Ψ⊖S]⟧ = {}, ⟦[Ψ]∩[Ψ⊛¬S]⟧ = {harper}", c.belief_worlds())
                        })
                    }
                    Intersective => {
                        if s.members.is_empty() {
                            return Ok(Verdict::Skipped);
                        }
                        let c = self.tpo(self.contract(ix.t, ix.s1, op));
                        let expected = s.members.iter().fold(WorldSet::empty(atoms), |acc, m| {
                            acc.union(op.base.apply(&t, m).belief_worlds())
                        });
                        holds_if(c.belief_worlds() == &expected, statement, || {
                            format!(
                                "⟦[Ψ⊖S]⟧ = {}, ⟦⋂[Ψ∸Ai]⟧ = {expected}",
                                c.belief_worlds()
                            )
                        })
                    }
                    DiP => {
                        if s.conj.is_empty() {
                            return Ok(Verdict::Skipped);
                        }
                        let c = self.tpo(self.contract(ix.t, ix.s1, op));
                        let bel = c.belief_worlds();
                        holds_if(!bel.is_subset(&s.disj), statement, || {
                            format!("⟦[Ψ⊖S]⟧ = {bel} ⊆ ⟦⋁S⟧ = {}; Ψ⊖S = {c}", s.disj)
                        })
                    }
                    _ => {
                        let c = self.tpo(self.contract(ix.t, ix.s1, op));
                        let nc = conj_models(
                            atoms,
                            &s.members.iter().map(WorldSet::complement).collect::<Vec<_>>(),
                        );
                        let pc = &s.conj;
                        for_pairs(id, atoms, &t, &c, |x, y| match id {
                            CMinus1 => !(nc.contains(x) && nc.contains(y)) || t.leq(x, y) == c.leq(x, y),
                            CMinus2 => !(pc.contains(x) && pc.contains(y)) || t.leq(x, y) == c.leq(x, y),
                            CMinus3 => !(nc.contains(x) && !nc.contains(y) && Tpo::lt(&t, x, y)) || Tpo::lt(&c, x, y),
                            _ => !(nc.contains(x) && !nc.contains(y) && t.leq(x, y)) || c.leq(x, y),
                        })
                    }
                }
            }
            FAgg | ParAgg | Ub | Lb | Spu | Wpu => {
                let (t1, t2) = (self.tpo(ix.t), self.tpo(ix.t2));
                let entries = [(*t1).clone(), (*t2).clone()];
                let profile = Profile::new(entries.to_vec())?;
                let agg = aggregate(self.ops.parallel.aggregator, &profile);
                let s = &ix.a;
                let mins: Vec<WorldSet> = entries.iter().map(|e| e.min_set(s)).collect();
                let agg_min = agg.min_set(s);
                let union = mins.iter().fold(WorldSet::empty(atoms), |acc, m| acc.union(m));
                let shown = || format!("aggregate {agg}, S = {s}, min ⊕ = {agg_min}, mins = {mins:?}");
                match id {
                    Ub => holds_if(agg_min.is_subset(&union), statement, shown),
                    Lb => holds_if(mins.iter().any(|m| m.is_subset(&agg_min)), statement, shown),
                    FAgg => {
                        let factors = (0..1u32 << mins.len()).any(|x| {
                            let u = (0..mins.len())
                                .filter(|j| x >> j & 1 == 1)
                                .fold(WorldSet::empty(atoms), |acc, j| acc.union(&mins[j]));
                            u == agg_min
                        });
                        holds_if(factors, statement, shown)
                    }
                    Spu | Wpu => {
                        for x in s.iter() {
                            for y in s.iter() {
                                let ok = if id == Spu {
                                    !entries.iter().all(|e| e.lt(x, y)) || agg.lt(x, y)
                                } else {
                                    !entries.iter().all(|e| e.leq(x, y)) || agg.leq(x, y)
                                };
                                if !ok {
                                    return Ok(violated(
                                        format!("{} [x={}, y={}]", statement(), x.label(atoms), y.label(atoms)),
                                        format!("profile {t1}, {t2}; aggregate {agg}"),
                                    ));
                                }
                            }
                        }
                        Verdict::Holds
                    }
                    _ => {
                        // Min-set form: S is an upper set of the aggregate.
                        let rest = s.complement();
                        let upper = rest.iter().all(|x| s.iter().all(|y| agg.lt(x, y)));
                        if upper && !union.is_subset(&agg_min) {
                            return Ok(violated(format!("{} [min form]", statement()), shown()));
                        }
                        // Relational form, for pairs inside S.
                        for x in s.iter() {
                            for y in s.iter() {
                                if !agg.lt(x, y) {
                                    continue;
                                }
                                let ok = entries.iter().all(|e| {
                                    worlds(atoms).any(|z| agg.compare(x, z).is_eq() && e.lt(z, y))
                                });
                                if !ok {
                                    return Ok(violated(
                                        format!("{} [x={}, y={}]", statement(), x.label(atoms), y.label(atoms)),
                                        format!("profile {t1}, {t2}; aggregate {agg}"),
                                    ));
                                }
                            }
                        }
                        Verdict::Holds
                    }
                }
            }
        })
    }
}
