//! Parallel (set-input) revision and contraction built by aggregating the
//! serial changes by each member of the input set.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::aggregation::{aggregate, Strategy};
use crate::error::{Error, Result};
use crate::logic::{conj_models, FormulaSet, Language, WorldSet};
use crate::serial::{SerialContraction, SerialRevision};
use crate::tpo::{Profile, Tpo};

/// Parallel revision: revise by each member with `base`, aggregate the
/// posteriors, then revise the aggregate by the conjunction with `finisher`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParallelRevisionOperator {
    pub base: SerialRevision,
    pub finisher: SerialRevision,
    pub aggregator: Strategy,
}

impl Default for ParallelRevisionOperator {
    fn default() -> Self {
        ParallelRevisionOperator {
            base: SerialRevision::Natural,
            finisher: SerialRevision::Natural,
            aggregator: Strategy::Full,
        }
    }
}

impl ParallelRevisionOperator {
    pub fn new(base: SerialRevision, finisher: SerialRevision, aggregator: Strategy) -> Self {
        ParallelRevisionOperator {
            base,
            finisher,
            aggregator,
        }
    }

    /// Every base × finisher × strategy combination.
    pub fn all() -> Vec<ParallelRevisionOperator> {
        let mut out = Vec::new();
        for base in SerialRevision::ALL {
            for finisher in SerialRevision::ALL {
                for aggregator in Strategy::ALL {
                    out.push(ParallelRevisionOperator::new(base, finisher, aggregator));
                }
            }
        }
        out
    }

    /// Revision by a set given as member model sets, in member order. The
    /// empty set revises by `T`.
    pub fn apply(&self, t: &Tpo, members: &[WorldSet]) -> Result<Tpo> {
        let atoms = t.atoms();
        let top = [WorldSet::full(atoms)];
        let members = if members.is_empty() { &top[..] } else { members };
        let conj = conj_models(atoms, members);
        if conj.is_empty() {
            return Err(Error::InconsistentInput {
                culprit: minimal_inconsistent_subset(atoms, members),
            });
        }
        let profile = members
            .iter()
            .map(|m| self.base.apply(t, m))
            .collect::<Result<Vec<_>>>()?;
        let aggregated = aggregate(self.aggregator, &Profile::new(profile)?);
        self.finisher.apply(&aggregated, &conj)
    }

    /// The TeamQueue aggregate of the member revisions, before finishing.
    pub fn aggregate_only(&self, t: &Tpo, members: &[WorldSet]) -> Result<Tpo> {
        let profile = members
            .iter()
            .enumerate()
            .map(|(i, m)| {
                self.base.apply(t, m).map_err(|_| Error::InconsistentInput {
                    culprit: vec![i],
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(aggregate(self.aggregator, &Profile::new(profile)?))
    }

    pub fn revise(&self, t: &Tpo, s: &FormulaSet, lang: &Language) -> Result<Tpo> {
        self.apply(t, &s.member_models(lang))
    }
}

impl fmt::Display for ParallelRevisionOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parallel(base={}, finisher={}, agg={})",
            self.base, self.finisher, self.aggregator
        )
    }
}

/// Splits `head(k1=v1, k2=v2)` into its key/value pairs.
fn parse_call<'a>(text: &'a str, head: &str) -> Result<Vec<(&'a str, &'a str)>> {
    let bad = || Error::UnknownOperator(text.to_string());
    let body = text
        .trim()
        .strip_prefix(head)
        .map(str::trim_start)
        .and_then(|t| t.strip_prefix('('))
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(bad)?;
    body.split(',')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            Ok((k.trim(), v.trim()))
        })
        .collect()
}

impl FromStr for ParallelRevisionOperator {
    type Err = Error;

    /// Parses `parallel(base=natural, finisher=natural, agg=stq)`; omitted keys
    /// take their defaults.
    fn from_str(s: &str) -> Result<Self> {
        let mut op = ParallelRevisionOperator::default();
        for (key, value) in parse_call(s, "parallel")? {
            match key {
                "base" => op.base = value.parse()?,
                "finisher" => op.finisher = value.parse()?,
                "agg" => op.aggregator = value.parse()?,
                _ => return Err(Error::UnknownOperator(s.to_string())),
            }
        }
        Ok(op)
    }
}

/// Parallel contraction: contract by each member, then aggregate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParallelContractionOperator {
    pub base: SerialContraction,
    pub aggregator: Strategy,
}

impl Default for ParallelContractionOperator {
    fn default() -> Self {
        ParallelContractionOperator {
            base: SerialContraction::Natural,
            aggregator: Strategy::Full,
        }
    }
}

impl ParallelContractionOperator {
    pub fn new(base: SerialContraction, aggregator: Strategy) -> Self {
        ParallelContractionOperator { base, aggregator }
    }

    /// Contraction by member model sets. The empty set leaves `t` unchanged.
    pub fn apply(&self, t: &Tpo, members: &[WorldSet]) -> Tpo {
        if members.is_empty() {
            return t.clone();
        }
        let profile: Vec<Tpo> = members.iter().map(|m| self.base.apply(t, m)).collect();
        aggregate(
            self.aggregator,
            &Profile::new(profile).expect("nonempty profile"),
        )
    }

    pub fn contract(&self, t: &Tpo, s: &FormulaSet, lang: &Language) -> Tpo {
        self.apply(t, &s.member_models(lang))
    }
}

impl fmt::Display for ParallelContractionOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parallel-contract(base={}, agg={})",
            self.base, self.aggregator
        )
    }
}

impl FromStr for ParallelContractionOperator {
    type Err = Error;

    /// Parses `parallel-contract(base=natural-contract, agg=stq)`.
    fn from_str(s: &str) -> Result<Self> {
        let mut op = ParallelContractionOperator::default();
        for (key, value) in parse_call(s, "parallel-contract")? {
            match key {
                "base" => op.base = value.parse()?,
                "agg" => op.aggregator = value.parse()?,
                _ => return Err(Error::UnknownOperator(s.to_string())),
            }
        }
        Ok(op)
    }
}

macro_rules! serde_as_string {
    ($ty:ty) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                String::deserialize(d)?
                    .parse()
                    .map_err(serde::de::Error::custom)
            }
        }
    };
}

serde_as_string!(ParallelRevisionOperator);
serde_as_string!(ParallelContractionOperator);

/// Indices of an inclusion-minimal inconsistent subset of `members`, found
/// by deletion. Empty if the members are jointly consistent.
pub fn minimal_inconsistent_subset(atoms: usize, members: &[WorldSet]) -> Vec<usize> {
    if !conj_models(atoms, members).is_empty() {
        return Vec::new();
    }
    let mut kept: Vec<usize> = (0..members.len()).collect();
    let mut i = 0;
    while i < kept.len() {
        let without: Vec<WorldSet> = kept
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, &j)| members[j].clone())
            .collect();
        if conj_models(atoms, &without).is_empty() {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    kept
}

/// Belief worlds under the set-generalised Levi identity:
/// `[Ψ ⊖ ¬S] ∪ S`, i.e. the contraction's belief worlds inside `⟦⋀S⟧`.
/// The result may be empty even when `S` is consistent.
pub fn levi_parallel_beliefs(
    t: &Tpo,
    members: &[WorldSet],
    op: &ParallelContractionOperator,
) -> WorldSet {
    let negated: Vec<WorldSet> = members.iter().map(WorldSet::complement).collect();
    let contracted = op.apply(t, &negated);
    contracted
        .belief_worlds()
        .intersection(&conj_models(t.atoms(), members))
}

/// Belief worlds under the set-generalised Harper identity:
/// `[Ψ] ∩ [Ψ ⊛ ¬S]`, whose model set is the union of the two.
pub fn harper_parallel_beliefs(
    t: &Tpo,
    members: &[WorldSet],
    op: &ParallelRevisionOperator,
) -> Result<WorldSet> {
    let negated: Vec<WorldSet> = members.iter().map(WorldSet::complement).collect();
    let revised = op.apply(t, &negated)?;
    Ok(t.belief_worlds().union(revised.belief_worlds()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::World;

    const X: World = World(0b00);
    const Y: World = World(0b01);
    const Z: World = World(0b10);
    const W: World = World(0b11);

    fn set(ws: &[World]) -> WorldSet {
        WorldSet::from_worlds(2, ws.iter().copied())
    }

    fn tpo(blocks: &[&[World]]) -> Tpo {
        Tpo::from_blocks(blocks.iter().map(|b| set(b)).collect()).unwrap()
    }

    #[test]
    fn two_revision_instance() {
        let t = tpo(&[&[X], &[Y, Z, W]]);
        let s = [set(&[Z, W]), set(&[Y, W])];
        let op = ParallelRevisionOperator::default();
        let agg = op.aggregate_only(&t, &s).unwrap();
        assert_eq!(agg.belief_worlds(), &set(&[Y, Z, W]));
        assert!(!agg.belief_worlds().is_subset(&set(&[W])));
        let out = op.apply(&t, &s).unwrap();
        assert_eq!(out, tpo(&[&[W], &[Y, Z], &[X]]));
    }

    #[test]
    fn singleton_matches_serial_beliefs() {
        let t = tpo(&[&[Y], &[X, W], &[Z]]);
        for op in ParallelRevisionOperator::all() {
            for mask in 1..16 {
                let a = WorldSet::from_mask(2, mask);
                let par = op.apply(&t, std::slice::from_ref(&a)).unwrap();
                let ser = op.base.apply(&t, &a).unwrap();
                assert_eq!(par.belief_worlds(), ser.belief_worlds());
            }
        }
    }

    #[test]
    fn empty_set_is_revision_by_tautology() {
        let t = tpo(&[&[Y], &[X, W], &[Z]]);
        for op in ParallelRevisionOperator::all() {
            assert_eq!(op.apply(&t, &[]).unwrap(), t);
            assert_eq!(op.apply(&t, &[WorldSet::full(2)]).unwrap(), t);
        }
    }

    #[test]
    fn inconsistent_input_names_a_minimal_subset() {
        let t = Tpo::uniform(2);
        let s = [set(&[Z, W]), set(&[X, Y, Z, W]), set(&[X, Y]), set(&[Y, W])];
        match ParallelRevisionOperator::default().apply(&t, &s) {
            Err(Error::InconsistentInput { culprit }) => assert_eq!(culprit, vec![0, 2]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn contraction_examples() {
        let t = tpo(&[&[Z, W], &[X], &[Y]]);
        let op = ParallelContractionOperator::default();
        let a = set(&[Z, W]);
        let b = set(&[Y, W]);
        let serial_a = SerialContraction::Natural.apply(&t, &a);
        assert_eq!(op.apply(&t, std::slice::from_ref(&a)), serial_a);
        assert_eq!(op.apply(&t, &[a.clone(), a.clone()]), serial_a);

        // Intersective identity: the beliefs after contracting by {A, B} are
        // the union of the two serial belief model sets.
        let serial_b = SerialContraction::Natural.apply(&t, &b);
        let expected = serial_a.belief_worlds().union(serial_b.belief_worlds());
        for agg in [Strategy::Full, Strategy::FirstThenFull] {
            let out = ParallelContractionOperator::new(SerialContraction::Natural, agg)
                .apply(&t, &[a.clone(), b.clone()]);
            assert_eq!(out.belief_worlds(), &expected);
        }
        assert_eq!(expected, set(&[X, Z, W]));
    }

    #[test]
    fn levi_and_harper_on_singletons() {
        let t = tpo(&[&[Y], &[X, W], &[Z]]);
        let contraction = ParallelContractionOperator::default();
        let revision = ParallelRevisionOperator::default();
        for mask in 1..16 {
            let a = WorldSet::from_mask(2, mask);
            let levi = levi_parallel_beliefs(&t, std::slice::from_ref(&a), &contraction);
            assert_eq!(levi, t.min_set(&a));
            if mask != 15 {
                let harper =
                    harper_parallel_beliefs(&t, std::slice::from_ref(&a), &revision).unwrap();
                let serial = SerialContraction::Natural.apply(&t, &a);
                assert_eq!(&harper, serial.belief_worlds());
            }
        }
        let top = [WorldSet::full(2)];
        assert_eq!(&levi_parallel_beliefs(&t, &top, &contraction), t.belief_worlds());
    }

    #[test]
    fn levi_can_be_inconsistent_for_consistent_input() {
        let t = tpo(&[&[X], &[Y, Z], &[W]]);
        let s = [set(&[Z, W]), set(&[Y, W])];
        let levi = levi_parallel_beliefs(&t, &s, &ParallelContractionOperator::default());
        assert!(levi.is_empty());
    }

    #[test]
    fn config_strings() {
        let op: ParallelRevisionOperator = "parallel(base=lex, finisher=restrained, agg=round-robin)"
            .parse()
            .unwrap();
        assert_eq!(
            op,
            ParallelRevisionOperator::new(
                SerialRevision::Lexicographic,
                SerialRevision::Restrained,
                Strategy::RoundRobin
            )
        );
        assert_eq!(op.to_string().parse::<ParallelRevisionOperator>().unwrap(), op);
        assert_eq!(
            "parallel()".parse::<ParallelRevisionOperator>().unwrap(),
            ParallelRevisionOperator::default()
        );
        assert!("parallel(base=foo)".parse::<ParallelRevisionOperator>().is_err());
        assert!("serial(base=lex)".parse::<ParallelRevisionOperator>().is_err());
        let c: ParallelContractionOperator = "parallel-contract(agg=first-then-full)".parse().unwrap();
        assert_eq!(c.aggregator, Strategy::FirstThenFull);
        assert_eq!(c.to_string().parse::<ParallelContractionOperator>().unwrap(), c);
    }
}
