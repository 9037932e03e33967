//! TeamQueue aggregation of profiles of TPOs.
//!
//! At step `i` a team `a(i) ⊆ I` is selected, and block `T_i` of the output
//! is the union of the team members' minimal elements among the worlds not
//! yet placed. The recursion stops once every world is placed.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::WorldSet;
use crate::tpo::{Profile, Tpo};

/// Chooses the team for each aggregation step.
pub trait TeamSelection {
    /// The 0-based indices of the profile entries on the team at `step`
    /// (1-based). Must be nonempty and within `0..profile.len()`.
    fn team(&self, profile: &Profile, step: usize) -> Vec<usize>;
}

/// The named selection strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Synchronous TeamQueue: the whole profile at every step.
    #[serde(rename = "stq")]
    Full,
    /// One queue per step, cycling through the profile.
    RoundRobin,
    /// Whole profile at the first step, round-robin afterwards.
    FirstThenFull,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Full, Strategy::RoundRobin, Strategy::FirstThenFull];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Full => "stq",
            Strategy::RoundRobin => "round-robin",
            Strategy::FirstThenFull => "first-then-full",
        }
    }

    /// Whether the first team is always the whole profile.
    pub fn first_team_is_full(self) -> bool {
        matches!(self, Strategy::Full | Strategy::FirstThenFull)
    }

    /// 1-based team for a profile of `n` entries, as written in the
    /// aggregation recursion.
    pub fn team_for(self, n: usize, step: usize) -> Vec<usize> {
        assert!(n > 0 && step > 0);
        let round_robin = || vec![(step - 1) % n + 1];
        match self {
            Strategy::Full => (1..=n).collect(),
            Strategy::RoundRobin => round_robin(),
            Strategy::FirstThenFull if step == 1 => (1..=n).collect(),
            Strategy::FirstThenFull => round_robin(),
        }
    }
}

impl TeamSelection for Strategy {
    fn team(&self, profile: &Profile, step: usize) -> Vec<usize> {
        self.team_for(profile.len(), step)
            .into_iter()
            .map(|j| j - 1)
            .collect()
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        make_strategy(s)
    }
}

/// Looks up a strategy by its configuration name (`full` is accepted for `stq`).
pub fn make_strategy(name: &str) -> Result<Strategy> {
    match name.trim() {
        "stq" | "full" => Ok(Strategy::Full),
        "round-robin" => Ok(Strategy::RoundRobin),
        "first-then-full" => Ok(Strategy::FirstThenFull),
        other => Err(Error::UnknownStrategy(other.to_string())),
    }
}

/// Runs the TeamQueue recursion with an arbitrary team selection.
pub fn aggregate_with(selection: &dyn TeamSelection, profile: &Profile) -> Tpo {
    let atoms = profile.atoms();
    let mut remaining = WorldSet::full(atoms);
    let mut blocks = Vec::new();
    let mut step = 1;
    while !remaining.is_empty() {
        let team = selection.team(profile, step);
        assert!(!team.is_empty(), "team selection returned an empty team");
        let block = team.iter().fold(WorldSet::empty(atoms), |acc, &j| {
            acc.union(&profile.entries()[j].min_set(&remaining))
        });
        // Cannot be empty while worlds remain, since each entry covers W;
        // skipped rather than emitted if a selection ever makes it so.
        if !block.is_empty() {
            remaining = remaining.difference(&block);
            blocks.push(block);
        }
        step += 1;
    }
    Tpo::from_blocks_unchecked(blocks)
}

pub fn aggregate(strategy: Strategy, profile: &Profile) -> Tpo {
    aggregate_with(&strategy, profile)
}

/// The Synchronous TeamQueue aggregate.
pub fn stq(profile: &Profile) -> Tpo {
    aggregate(Strategy::Full, profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::World;

    const X: World = World(0b00);
    const Y: World = World(0b01);
    const Z: World = World(0b10);
    const W: World = World(0b11);

    fn tpo(blocks: &[&[World]]) -> Tpo {
        Tpo::from_blocks(
            blocks
                .iter()
                .map(|b| WorldSet::from_worlds(2, b.iter().copied()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn stq_on_two_revision_profile() {
        let p = Profile::new(vec![
            tpo(&[&[Z, W], &[X], &[Y]]),
            tpo(&[&[Y, W], &[X], &[Z]]),
        ])
        .unwrap();
        assert_eq!(stq(&p), tpo(&[&[Y, Z, W], &[X]]));
    }

    #[test]
    fn single_entry_and_idempotence() {
        let t = tpo(&[&[W], &[X, Z], &[Y]]);
        for s in Strategy::ALL {
            assert_eq!(aggregate(s, &Profile::new(vec![t.clone()]).unwrap()), t);
            assert_eq!(
                aggregate(s, &Profile::new(vec![t.clone(), t.clone()]).unwrap()),
                t
            );
        }
    }

    #[test]
    fn team_examples() {
        assert_eq!(Strategy::Full.team_for(2, 7), vec![1, 2]);
        assert_eq!(Strategy::RoundRobin.team_for(3, 4), vec![1]);
        assert_eq!(Strategy::FirstThenFull.team_for(2, 1), vec![1, 2]);
        assert_eq!(Strategy::FirstThenFull.team_for(2, 2), vec![2]);
    }

    #[test]
    fn round_robin_on_unequal_lengths() {
        // A four-block entry next to a single-block one: round-robin keeps
        // alternating long after the flat entry could contribute anything new.
        let long = tpo(&[&[X], &[Y], &[Z], &[W]]);
        let flat = Tpo::uniform(2);
        let p = Profile::new(vec![long.clone(), flat.clone()]).unwrap();
        assert_eq!(aggregate(Strategy::RoundRobin, &p), tpo(&[&[X], &[Y, Z, W]]));
        let q = Profile::new(vec![flat, long]).unwrap();
        assert_eq!(aggregate(Strategy::RoundRobin, &q), Tpo::uniform(2));
        let r = Profile::new(vec![
            tpo(&[&[X], &[Y], &[Z], &[W]]),
            tpo(&[&[W], &[Z], &[Y], &[X]]),
        ])
        .unwrap();
        assert_eq!(
            aggregate(Strategy::RoundRobin, &r),
            tpo(&[&[X], &[W], &[Y], &[Z]])
        );
    }

    #[test]
    fn stq_bottom_is_union_of_bottoms() {
        let p = Profile::new(vec![tpo(&[&[X], &[Y, Z, W]]), tpo(&[&[Z], &[X, Y, W]])]).unwrap();
        let out = stq(&p);
        assert_eq!(
            out.belief_worlds(),
            &WorldSet::from_worlds(2, [X, Z])
        );
    }

    #[test]
    fn strategy_names() {
        for s in Strategy::ALL {
            assert_eq!(make_strategy(s.name()).unwrap(), s);
        }
        assert_eq!(make_strategy("full").unwrap(), Strategy::Full);
        assert!(make_strategy("dictator").is_err());
    }
}
