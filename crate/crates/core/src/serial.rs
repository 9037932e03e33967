//! Serial (single-sentence) revision and contraction of TPOs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::{Formula, Language, WorldSet};
use crate::tpo::Tpo;

/// The registered serial revision operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SerialRevision {
    /// Minimal change: only the best input-worlds move, to the bottom.
    Natural,
    /// All input-worlds move below all other worlds, order kept on each side.
    #[serde(rename = "lex")]
    Lexicographic,
    /// Best input-worlds to the bottom, prior ties broken in favour of the input.
    Restrained,
}

impl SerialRevision {
    pub const ALL: [SerialRevision; 3] = [
        SerialRevision::Natural,
        SerialRevision::Lexicographic,
        SerialRevision::Restrained,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SerialRevision::Natural => "natural",
            SerialRevision::Lexicographic => "lex",
            SerialRevision::Restrained => "restrained",
        }
    }

    /// Revises `t` by the proposition with model set `input`.
    pub fn apply(self, t: &Tpo, input: &WorldSet) -> Result<Tpo> {
        if input.is_empty() {
            return Err(Error::InconsistentInput { culprit: vec![0] });
        }
        Ok(match self {
            SerialRevision::Natural => natural_revise(t, input),
            SerialRevision::Lexicographic => lex_revise(t, input),
            SerialRevision::Restrained => restrained_revise(t, input),
        })
    }

    pub fn apply_formula(self, t: &Tpo, input: &Formula, lang: &Language) -> Result<Tpo> {
        self.apply(t, &input.models(lang))
    }

    /// Whether the operator satisfies the independence postulate.
    pub fn satisfies_independence(self) -> bool {
        !matches!(self, SerialRevision::Natural)
    }
}

impl fmt::Display for SerialRevision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SerialRevision {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "natural" => Ok(SerialRevision::Natural),
            "lex" | "lexicographic" => Ok(SerialRevision::Lexicographic),
            "restrained" => Ok(SerialRevision::Restrained),
            other => Err(Error::UnknownOperator(other.to_string())),
        }
    }
}

/// The registered serial contraction operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SerialContraction {
    #[serde(rename = "natural-contract")]
    Natural,
}

impl SerialContraction {
    pub const ALL: [SerialContraction; 1] = [SerialContraction::Natural];

    pub fn name(self) -> &'static str {
        match self {
            SerialContraction::Natural => "natural-contract",
        }
    }

    /// Contracts `t` by the proposition with model set `input`. Contraction
    /// by a tautology is the identity.
    pub fn apply(self, t: &Tpo, input: &WorldSet) -> Tpo {
        match self {
            SerialContraction::Natural => natural_contract(t, input),
        }
    }

    pub fn apply_formula(self, t: &Tpo, input: &Formula, lang: &Language) -> Tpo {
        self.apply(t, &input.models(lang))
    }
}

impl fmt::Display for SerialContraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SerialContraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "natural-contract" | "natural" => Ok(SerialContraction::Natural),
            other => Err(Error::UnknownOperator(other.to_string())),
        }
    }
}

/// Moves `bottom` into a new lowest block, keeping the rest in place.
fn promote(t: &Tpo, bottom: WorldSet) -> Tpo {
    let mut blocks = Vec::with_capacity(t.block_count() + 1);
    for b in t.blocks() {
        blocks.push(b.difference(&bottom));
    }
    blocks.insert(0, bottom);
    Tpo::from_blocks_unchecked(blocks)
}

/// `min(⪯, ⟦A⟧)` becomes the new lowest block; nothing else changes.
pub fn natural_revise(t: &Tpo, input: &WorldSet) -> Tpo {
    promote(t, t.min_set(input))
}

/// Every input-world ends up below every other world; relative order is
/// kept within each side.
pub fn lex_revise(t: &Tpo, input: &WorldSet) -> Tpo {
    let outside = input.complement();
    let blocks = t
        .blocks()
        .iter()
        .map(|b| b.intersection(input))
        .chain(t.blocks().iter().map(|b| b.intersection(&outside)))
        .collect();
    Tpo::from_blocks_unchecked(blocks)
}

/// `min(⪯, ⟦A⟧)` to the bottom; strict prior preferences are kept and each
/// prior block is split with its input-worlds first.
pub fn restrained_revise(t: &Tpo, input: &WorldSet) -> Tpo {
    let bottom = t.min_set(input);
    let outside = input.complement();
    let mut blocks = Vec::with_capacity(2 * t.block_count() + 1);
    blocks.push(bottom.clone());
    for b in t.blocks() {
        let rest = b.difference(&bottom);
        blocks.push(rest.intersection(input));
        blocks.push(rest.intersection(&outside));
    }
    Tpo::from_blocks_unchecked(blocks)
}

/// The best `¬A`-worlds join the lowest block; nothing else changes.
pub fn natural_contract(t: &Tpo, input: &WorldSet) -> Tpo {
    let negation = input.complement();
    if negation.is_empty() {
        return t.clone();
    }
    let bottom = t.belief_worlds().union(&t.min_set(&negation));
    promote(t, bottom)
}
