//! Total preorders over worlds, stored as ordered partitions.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::logic::{World, WorldSet};

/// A total preorder over `W` as an ordered partition `⟨S1, …, Sm⟩`.
///
/// Blocks are indifference classes, listed from most to least plausible.
/// Every block is nonempty, blocks are pairwise disjoint and they cover `W`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tpo {
    blocks: Vec<WorldSet>,
}

impl Tpo {
    pub fn from_blocks(blocks: Vec<WorldSet>) -> Result<Tpo> {
        Self::validate_blocks(&blocks)?;
        Ok(Tpo { blocks })
    }

    /// Builds from blocks known to form a partition; empty blocks are dropped.
    pub(crate) fn from_blocks_unchecked(mut blocks: Vec<WorldSet>) -> Tpo {
        blocks.retain(|b| !b.is_empty());
        debug_assert!(Self::validate_blocks(&blocks).is_ok(), "{blocks:?}");
        Tpo { blocks }
    }

    fn validate_blocks(blocks: &[WorldSet]) -> Result<()> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::InvalidTpo("no blocks".into()))?;
        let atoms = first.atoms();
        let mut seen = WorldSet::empty(atoms);
        for (i, block) in blocks.iter().enumerate() {
            if block.atoms() != atoms {
                return Err(Error::InvalidTpo("blocks over different languages".into()));
            }
            if block.is_empty() {
                return Err(Error::InvalidTpo(format!("block {} is empty", i + 1)));
            }
            if block.intersects(&seen) {
                return Err(Error::InvalidTpo(format!(
                    "block {} overlaps an earlier block",
                    i + 1
                )));
            }
            seen = seen.union(block);
        }
        if !seen.is_full() {
            return Err(Error::InvalidTpo(format!(
                "blocks do not cover W (missing {})",
                seen.complement()
            )));
        }
        Ok(())
    }

    /// The TPO with a single block: every world equally plausible.
    pub fn uniform(atoms: usize) -> Tpo {
        Tpo {
            blocks: vec![WorldSet::full(atoms)],
        }
    }

    /// Builds the TPO where `x ⪯ y` iff `ranks[x] <= ranks[y]`. Rank values
    /// need not be contiguous.
    pub fn from_ranks(atoms: usize, ranks: &[usize]) -> Tpo {
        assert_eq!(ranks.len(), 1 << atoms, "one rank per world");
        let mut levels: Vec<usize> = ranks.to_vec();
        levels.sort_unstable();
        levels.dedup();
        let blocks = levels
            .iter()
            .map(|level| {
                WorldSet::from_worlds(
                    atoms,
                    ranks
                        .iter()
                        .enumerate()
                        .filter(|(_, r)| *r == level)
                        .map(|(w, _)| World(w as u32)),
                )
            })
            .collect();
        Tpo { blocks }
    }

    /// Parses blocks of bit-string labels, lowest block first.
    pub fn from_labels<S: AsRef<str>>(atoms: usize, blocks: &[Vec<S>]) -> Result<Tpo> {
        let sets = blocks
            .iter()
            .map(|b| WorldSet::parse_labels(atoms, b))
            .collect::<Result<Vec<_>>>()?;
        Tpo::from_blocks(sets)
    }

    /// Parses the canonical rendering, e.g. `[{01,10} < {11} < {00}]`.
    pub fn parse(text: &str) -> Result<Tpo> {
        let bad = || Error::InvalidTpo(format!("cannot parse `{text}`"));
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        let mut blocks: Vec<Vec<&str>> = Vec::new();
        for part in inner.split('<') {
            let body = part
                .trim()
                .strip_prefix('{')
                .and_then(|t| t.strip_suffix('}'))
                .ok_or_else(bad)?;
            blocks.push(
                body.split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .collect(),
            );
        }
        let atoms = blocks
            .iter()
            .flatten()
            .next()
            .map(|l| l.len())
            .ok_or_else(bad)?;
        Tpo::from_labels(atoms, &blocks)
    }

    pub fn atoms(&self) -> usize {
        self.blocks[0].atoms()
    }

    pub fn blocks(&self) -> &[WorldSet] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn into_blocks(self) -> Vec<WorldSet> {
        self.blocks
    }

    /// `min(⪯, s)`: the members of `s` in the lowest block that meets `s`.
    pub fn min_set(&self, s: &WorldSet) -> WorldSet {
        self.blocks
            .iter()
            .map(|b| b.intersection(s))
            .find(|m| !m.is_empty())
            .unwrap_or_else(|| WorldSet::empty(self.atoms()))
    }

    /// 1-based index of the block holding `x`.
    pub fn rank(&self, x: World) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(x))
            .map(|i| i + 1)
            .expect("world outside W")
    }

    /// `Less` when `x` is strictly more plausible than `y`.
    pub fn compare(&self, x: World, y: World) -> Ordering {
        self.rank(x).cmp(&self.rank(y))
    }

    /// `x ⪯ y`
    pub fn leq(&self, x: World, y: World) -> bool {
        self.rank(x) <= self.rank(y)
    }

    /// `x ≺ y`
    pub fn lt(&self, x: World, y: World) -> bool {
        self.rank(x) < self.rank(y)
    }

    /// Models of the belief set: the lowest block.
    pub fn belief_worlds(&self) -> &WorldSet {
        &self.blocks[0]
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.blocks.iter().map(WorldSet::render).collect();
        format!("[{}]", parts.join(" < "))
    }

    /// Conditionals `X > Y` accepted in this state: `min(⪯, X) ⊆ Y`.
    pub fn conditional_set(&self) -> Result<ConditionalSet> {
        let atoms = self.atoms();
        let mut set = ConditionalSet::empty(atoms)?;
        let subsets = WorldSet::all_subsets(atoms)?;
        for x in &subsets {
            let min = self.min_set(x).mask();
            for y in 0..subsets.len() as u64 {
                if min & !y == 0 {
                    set.insert_masks(x.mask(), y);
                }
            }
        }
        Ok(set)
    }
}

impl fmt::Debug for Tpo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for Tpo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for Tpo {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for Tpo {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Tpo::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// A nonempty tuple of TPOs over the same worlds.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    entries: Vec<Tpo>,
}

impl Profile {
    pub fn new(entries: Vec<Tpo>) -> Result<Profile> {
        let first = entries
            .first()
            .ok_or_else(|| Error::InvalidTpo("empty profile".into()))?;
        if entries.iter().any(|t| t.atoms() != first.atoms()) {
            return Err(Error::InvalidTpo("profile mixes languages".into()));
        }
        Ok(Profile { entries })
    }

    pub fn entries(&self) -> &[Tpo] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn atoms(&self) -> usize {
        self.entries[0].atoms()
    }
}

/// Largest world count for which conditional sets are materialized.
const CONDITIONAL_MAX_ATOMS: usize = 3;

/// A set of conditionals `X > Y`, keyed by the antecedent and consequent
/// model sets and stored as a bitmap over all `2^|W| × 2^|W|` pairs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ConditionalSet {
    atoms: u8,
    bits: Vec<u64>,
}

impl ConditionalSet {
    pub fn empty(atoms: usize) -> Result<ConditionalSet> {
        if atoms > CONDITIONAL_MAX_ATOMS {
            return Err(Error::SizeGuard(format!(
                "conditional sets need at most {CONDITIONAL_MAX_ATOMS} atoms, got {atoms}"
            )));
        }
        let pairs = 1usize << (2 << atoms);
        Ok(ConditionalSet {
            atoms: atoms as u8,
            bits: vec![0; pairs.div_ceil(64)],
        })
    }

    fn subsets(&self) -> u64 {
        1u64 << (1u64 << self.atoms)
    }

    fn slot(&self, x: u64, y: u64) -> usize {
        (x * self.subsets() + y) as usize
    }

    fn insert_masks(&mut self, x: u64, y: u64) {
        let i = self.slot(x, y);
        self.bits[i / 64] |= 1 << (i % 64);
    }

    fn contains_masks(&self, x: u64, y: u64) -> bool {
        let i = self.slot(x, y);
        (self.bits[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn atoms(&self) -> usize {
        self.atoms as usize
    }

    pub fn insert(&mut self, antecedent: &WorldSet, consequent: &WorldSet) {
        self.insert_masks(antecedent.mask(), consequent.mask());
    }

    pub fn contains(&self, antecedent: &WorldSet, consequent: &WorldSet) -> bool {
        self.contains_masks(antecedent.mask(), consequent.mask())
    }

    pub fn intersection(&self, other: &ConditionalSet) -> ConditionalSet {
        assert_eq!(self.atoms, other.atoms);
        ConditionalSet {
            atoms: self.atoms,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = (WorldSet, WorldSet)> + '_ {
        let n = self.subsets();
        let atoms = self.atoms();
        (0..n).flat_map(move |x| {
            (0..n)
                .filter(move |&y| self.contains_masks(x, y))
                .map(move |y| (WorldSet::from_mask(atoms, x), WorldSet::from_mask(atoms, y)))
        })
    }

    /// The ranked model of the rational closure of this set.
    ///
    /// Worlds are peeled level by level: a remaining world sits at the current
    /// level when it satisfies the material counterpart of every still-active
    /// conditional. A conditional stays active only while its antecedent has
    /// not met any placed level. Fails with [`Error::Unsatisfiable`] when some
    /// worlds can never be placed.
    pub fn rational_closure(&self) -> Result<Tpo> {
        let atoms = self.atoms();
        let n = self.subsets();
        // For each antecedent with at least one consequent, the intersection of
        // its consequents: a world in X outside it violates some X > Y.
        let mut active: Vec<(u64, u64)> = Vec::new();
        for x in 0..n {
            let mut meet: Option<u64> = None;
            for y in 0..n {
                if self.contains_masks(x, y) {
                    meet = Some(meet.map_or(y, |m| m & y));
                }
            }
            if let Some(k) = meet {
                if x & !k != 0 {
                    active.push((x, k));
                }
            }
        }

        let mut remaining = n - 1; // the mask of W
        let mut blocks = Vec::new();
        while remaining != 0 {
            let violators = active.iter().fold(0u64, |acc, (x, k)| acc | (x & !k));
            let level = remaining & !violators;
            if level == 0 {
                return Err(Error::Unsatisfiable);
            }
            blocks.push(WorldSet::from_mask(atoms, level));
            remaining &= !level;
            active.retain(|(x, _)| x & level == 0);
        }
        Ok(Tpo::from_blocks_unchecked(blocks))
    }
}

impl fmt::Debug for ConditionalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConditionalSet")
            .field("atoms", &self.atoms)
            .field("len", &self.len())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Worlds of the two-atom language in the x, y, z, w naming: A is the
    // first atom, B the second.
    const X: World = World(0b00);
    const Y: World = World(0b01);
    const Z: World = World(0b10);
    const W: World = World(0b11);

    fn set(ws: &[World]) -> WorldSet {
        WorldSet::from_worlds(2, ws.iter().copied())
    }

    fn x_below_rest() -> Tpo {
        Tpo::from_blocks(vec![set(&[X]), set(&[Y, Z, W])]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(Tpo::from_blocks(vec![]).is_err());
        assert!(Tpo::from_blocks(vec![set(&[X, Y])]).is_err());
        assert!(Tpo::from_blocks(vec![set(&[X, Y]), set(&[Y, Z, W])]).is_err());
        assert!(Tpo::from_blocks(vec![set(&[X, Y, Z, W]), set(&[])]).is_err());
        assert!(Tpo::parse("[{00} < {01,10,11}]").is_ok());
        assert!(Tpo::parse("[{00} < {01,10}]").is_err());
        assert!(Tpo::parse("{00}").is_err());
    }

    #[test]
    fn min_set_examples() {
        let t = x_below_rest();
        assert_eq!(t.min_set(&set(&[Z, W])), set(&[Z, W]));
        assert_eq!(t.min_set(&WorldSet::full(2)), set(&[X]));
        assert_eq!(t.min_set(&set(&[])), set(&[]));
        assert_eq!(t.belief_worlds(), &set(&[X]));
    }

    #[test]
    fn rank_and_compare() {
        let t = x_below_rest();
        assert_eq!(t.rank(X), 1);
        assert_eq!(t.rank(Z), 2);
        assert_eq!(Tpo::uniform(2).rank(W), 1);
        assert_eq!(t.compare(X, Y), Ordering::Less);
        assert_eq!(t.compare(Y, Z), Ordering::Equal);
        assert_eq!(t.compare(Y, X), Ordering::Greater);
    }

    #[test]
    fn rendering_round_trip() {
        let t = Tpo::parse("[{01,10} < {11} < {00}]").unwrap();
        assert_eq!(t.render(), "[{01,10} < {11} < {00}]");
        assert_eq!(Tpo::parse(&t.render()).unwrap(), t);
        assert_eq!(x_below_rest().render(), "[{00} < {01,10,11}]");
    }

    #[test]
    fn from_ranks_compresses() {
        let t = Tpo::from_ranks(2, &[5, 9, 5, 0]);
        assert_eq!(t.render(), "[{11} < {00,10} < {01}]");
    }

    #[test]
    fn conditional_set_examples() {
        let t = x_below_rest();
        let c = t.conditional_set().unwrap();
        assert!(c.contains(&set(&[X, Y]), &set(&[X])));
        assert!(c.contains(&set(&[]), &set(&[])));
        assert!(c.contains(&set(&[Y, Z]), &set(&[Y, Z])));
        assert!(!c.contains(&set(&[Y, Z]), &set(&[Y])));
    }

    #[test]
    fn rational_closure_of_single_state() {
        let t = Tpo::parse("[{01,10} < {11} < {00}]").unwrap();
        let c = t.conditional_set().unwrap();
        assert_eq!(c.rational_closure().unwrap(), t);
        let twice = c.intersection(&c);
        assert_eq!(twice.rational_closure().unwrap(), t);
    }

    #[test]
    fn rational_closure_of_two_revision_posteriors() {
        // Posteriors of natural revision of x ≺ {y,z,w} by A and by B.
        let by_a = Tpo::from_blocks(vec![set(&[Z, W]), set(&[X]), set(&[Y])]).unwrap();
        let by_b = Tpo::from_blocks(vec![set(&[Y, W]), set(&[X]), set(&[Z])]).unwrap();
        let g = by_a
            .conditional_set()
            .unwrap()
            .intersection(&by_b.conditional_set().unwrap());
        let expected = Tpo::from_blocks(vec![set(&[Y, Z, W]), set(&[X])]).unwrap();
        assert_eq!(g.rational_closure().unwrap(), expected);
    }

    #[test]
    fn unsatisfiable_conditionals_are_reported() {
        let mut g = ConditionalSet::empty(2).unwrap();
        // W > ⊥ cannot be satisfied by any ranking.
        g.insert(&WorldSet::full(2), &set(&[]));
        assert_eq!(g.rational_closure(), Err(Error::Unsatisfiable));
    }

    #[test]
    fn conditional_set_size_guard() {
        assert!(Tpo::uniform(4).conditional_set().is_err());
        assert_eq!(Tpo::uniform(3).conditional_set().unwrap().atoms(), 3);
    }
}
