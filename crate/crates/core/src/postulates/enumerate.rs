//! Instance generators: every TPO over a small `W`, every set of
//! propositions up to a size bound, and seeded random draws.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::logic::WorldSet;
use crate::tpo::Tpo;

/// Largest `|W|` accepted by [`enumerate_tpos`].
pub const MAX_ENUMERATED_WORLDS: usize = 8;

/// Streams every ordered partition of `W`, i.e. every TPO, exactly once.
///
/// Partitions are produced in lexicographic order of their block masks,
/// lowest block first.
pub fn enumerate_tpos(atoms: usize) -> Result<OrderedPartitions> {
    if atoms == 0 || (1usize << atoms) > MAX_ENUMERATED_WORLDS {
        return Err(Error::SizeGuard(format!(
            "exhaustive TPO enumeration needs 1 <= |W| <= {MAX_ENUMERATED_WORLDS}, got {} atoms",
            atoms
        )));
    }
    Ok(OrderedPartitions::new(atoms))
}

pub struct OrderedPartitions {
    atoms: usize,
    // (worlds still to place, current first block chosen from them)
    stack: Vec<(u64, u64)>,
    fresh: bool,
}

impl OrderedPartitions {
    fn new(atoms: usize) -> Self {
        let full = (1u64 << (1u64 << atoms)) - 1;
        let mut it = OrderedPartitions {
            atoms,
            stack: Vec::new(),
            fresh: true,
        };
        it.descend(full);
        it
    }

    /// Fills the stack below `rest` with the smallest choice at each level.
    fn descend(&mut self, mut rest: u64) {
        while rest != 0 {
            let first = rest & rest.wrapping_neg();
            self.stack.push((rest, first));
            rest &= !first;
        }
    }

    fn current(&self) -> Tpo {
        Tpo::from_blocks_unchecked(
            self.stack
                .iter()
                .map(|&(_, block)| WorldSet::from_mask(self.atoms, block))
                .collect(),
        )
    }
}

impl Iterator for OrderedPartitions {
    type Item = Tpo;

    fn next(&mut self) -> Option<Tpo> {
        if self.fresh {
            self.fresh = false;
            return Some(self.current());
        }
        while let Some((rest, block)) = self.stack.pop() {
            // Next submask of `rest` in increasing order; 0 means exhausted.
            let next = block.wrapping_sub(rest) & rest;
            if next != 0 {
                self.stack.push((rest, next));
                self.descend(rest & !next);
                return Some(self.current());
            }
        }
        None
    }
}

/// Every proposition over `atoms` atoms (all subsets of `W`), by mask.
pub fn all_propositions(atoms: usize) -> Result<Vec<WorldSet>> {
    WorldSet::all_subsets(atoms)
}

/// Every set of distinct propositions with at most `max_size` members, as
/// member lists in increasing mask order. Includes the empty set.
pub fn enumerate_sets(props: &[WorldSet], max_size: usize) -> Vec<Vec<WorldSet>> {
    fn extend(
        props: &[WorldSet],
        start: usize,
        left: usize,
        current: &mut Vec<WorldSet>,
        out: &mut Vec<Vec<WorldSet>>,
    ) {
        out.push(current.clone());
        if left == 0 {
            return;
        }
        for i in start..props.len() {
            current.push(props[i].clone());
            extend(props, i + 1, left - 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    extend(props, 0, max_size, &mut Vec::new(), &mut out);
    out
}

pub fn random_tpo<R: Rng + ?Sized>(atoms: usize, rng: &mut R) -> Tpo {
    let n = 1usize << atoms;
    let levels = rng.gen_range(1..=n);
    let ranks: Vec<usize> = (0..n).map(|_| rng.gen_range(0..levels)).collect();
    Tpo::from_ranks(atoms, &ranks)
}

pub fn random_proposition<R: Rng + ?Sized>(atoms: usize, rng: &mut R) -> WorldSet {
    let n = 1u32 << atoms;
    let mask = if n == 64 {
        rng.gen::<u64>()
    } else {
        rng.gen_range(0..(1u64 << n))
    };
    WorldSet::from_mask(atoms, mask)
}

/// A random set of distinct propositions with at most `max_size` members.
pub fn random_set<R: Rng + ?Sized>(atoms: usize, max_size: usize, rng: &mut R) -> Vec<WorldSet> {
    let size = rng.gen_range(0..=max_size);
    let mut out: Vec<WorldSet> = Vec::with_capacity(size);
    while out.len() < size {
        let p = random_proposition(atoms, rng);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out.shuffle(rng);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Ordered Bell (Fubini) numbers: a(n) = Σ_{k=1..n} C(n,k) a(n−k).
    fn fubini(n: usize) -> u64 {
        let mut a = vec![1u64; n + 1];
        for m in 1..=n {
            let mut binom = 1u64;
            let mut sum = 0u64;
            for k in 1..=m {
                binom = binom * (m - k + 1) as u64 / k as u64;
                sum += binom * a[m - k];
            }
            a[m] = sum;
        }
        a[n]
    }

    #[test]
    fn fubini_oracle_values() {
        assert_eq!(
            (0..=5).map(fubini).collect::<Vec<_>>(),
            vec![1, 1, 3, 13, 75, 541]
        );
    }

    #[test]
    fn counts_match_fubini() {
        for atoms in 1..=2 {
            let all: Vec<Tpo> = enumerate_tpos(atoms).unwrap().collect();
            assert_eq!(all.len() as u64, fubini(1 << atoms));
            let distinct: HashSet<&Tpo> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
        }
        assert_eq!(enumerate_tpos(3).unwrap().count() as u64, fubini(8));
    }

    #[test]
    fn one_atom_listing() {
        let rendered: Vec<String> = enumerate_tpos(1).unwrap().map(|t| t.render()).collect();
        assert_eq!(rendered, vec!["[{0} < {1}]", "[{1} < {0}]", "[{0,1}]"]);
    }

    #[test]
    fn size_guard() {
        assert!(matches!(enumerate_tpos(4), Err(Error::SizeGuard(_))));
        assert!(enumerate_tpos(0).is_err());
    }

    #[test]
    fn set_enumeration() {
        let props = all_propositions(2).unwrap();
        assert_eq!(enumerate_sets(&props, 0).len(), 1);
        assert_eq!(enumerate_sets(&props, 1).len(), 17);
        assert_eq!(enumerate_sets(&props, 2).len(), 1 + 16 + 120);
    }
}
