use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Maximum number of atoms a [`Language`](super::Language) may declare.
pub const MAX_ATOMS: usize = 16;

/// A propositional valuation, identified by its index in `[0, 2^atoms)`.
///
/// The first declared atom is the most significant bit, so the index written
/// in binary is the world's bit-string in atom order (`"10"` is index 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct World(pub u32);

impl World {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Truth value of atom `atom` (0-based, declaration order).
    pub fn value(self, atom: usize, atoms: usize) -> bool {
        debug_assert!(atom < atoms);
        (self.0 >> (atoms - 1 - atom)) & 1 == 1
    }

    pub fn label(self, atoms: usize) -> String {
        (0..atoms)
            .map(|i| if self.value(i, atoms) { '1' } else { '0' })
            .collect()
    }

    /// Parses a bit-string such as `"01"`. The string length fixes the atom
    /// count.
    pub fn parse_label(text: &str) -> Result<(World, usize)> {
        let atoms = text.len();
        if atoms == 0 || atoms > MAX_ATOMS {
            return Err(Error::InvalidWorld(text.to_string()));
        }
        let mut index = 0u32;
        for c in text.chars() {
            index <<= 1;
            match c {
                '0' => {}
                '1' => index |= 1,
                _ => return Err(Error::InvalidWorld(text.to_string())),
            }
        }
        Ok((World(index), atoms))
    }
}

/// A subset of the worlds over a fixed number of atoms, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WorldSet {
    atoms: u8,
    words: SmallVec<[u64; 1]>,
}

fn word_count(atoms: usize) -> usize {
    (1usize << atoms).div_ceil(64)
}

impl WorldSet {
    pub fn empty(atoms: usize) -> Self {
        assert!(atoms <= MAX_ATOMS, "atom count {atoms} exceeds {MAX_ATOMS}");
        WorldSet {
            atoms: atoms as u8,
            words: SmallVec::from_elem(0, word_count(atoms)),
        }
    }

    pub fn full(atoms: usize) -> Self {
        let mut set = Self::empty(atoms);
        for w in set.words.iter_mut() {
            *w = u64::MAX;
        }
        set.trim();
        set
    }

    pub fn singleton(atoms: usize, world: World) -> Self {
        let mut set = Self::empty(atoms);
        set.insert(world);
        set
    }

    pub fn from_worlds<I: IntoIterator<Item = World>>(atoms: usize, worlds: I) -> Self {
        let mut set = Self::empty(atoms);
        for w in worlds {
            set.insert(w);
        }
        set
    }

    /// Builds a set from the low `2^atoms` bits of `mask`; only valid for
    /// languages with at most six atoms.
    pub fn from_mask(atoms: usize, mask: u64) -> Self {
        assert!(atoms <= 6, "from_mask needs at most 6 atoms");
        let mut set = Self::empty(atoms);
        set.words[0] = mask;
        set.trim();
        set
    }

    /// The low word of the bitset; exact when the language has at most six atoms.
    pub fn mask(&self) -> u64 {
        self.words[0]
    }

    /// Parses bit-string labels, e.g. `["10", "01"]`.
    pub fn parse_labels<S: AsRef<str>>(atoms: usize, labels: &[S]) -> Result<Self> {
        let mut set = Self::empty(atoms);
        for label in labels {
            let (w, n) = World::parse_label(label.as_ref())?;
            if n != atoms {
                return Err(Error::InvalidWorld(label.as_ref().to_string()));
            }
            set.insert(w);
        }
        Ok(set)
    }

    fn trim(&mut self) {
        let n = self.universe_size();
        if n < 64 {
            self.words[0] &= (1u64 << n) - 1;
        }
    }

    pub fn atoms(&self) -> usize {
        self.atoms as usize
    }

    /// Number of worlds in the ambient universe `W`.
    pub fn universe_size(&self) -> usize {
        1usize << self.atoms
    }

    pub fn contains(&self, world: World) -> bool {
        let i = world.index();
        i < self.universe_size() && (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn insert(&mut self, world: World) {
        let i = world.index();
        assert!(i < self.universe_size(), "world {i} outside universe");
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, world: World) {
        let i = world.index();
        if i < self.universe_size() {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe_size()
    }

    fn check_compatible(&self, other: &WorldSet) {
        assert_eq!(self.atoms, other.atoms, "world sets over different languages");
    }

    pub fn union(&self, other: &WorldSet) -> WorldSet {
        self.check_compatible(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
        out
    }

    pub fn intersection(&self, other: &WorldSet) -> WorldSet {
        self.check_compatible(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
        out
    }

    pub fn difference(&self, other: &WorldSet) -> WorldSet {
        self.check_compatible(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
        out
    }

    pub fn complement(&self) -> WorldSet {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.trim();
        out
    }

    pub fn is_subset(&self, other: &WorldSet) -> bool {
        self.check_compatible(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &WorldSet) -> bool {
        self.check_compatible(other);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = World> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros();
                bits &= bits - 1;
                Some(World((wi * 64) as u32 + tz))
            })
        })
    }

    pub fn first(&self) -> Option<World> {
        self.iter().next()
    }

    /// `{01,10}`: worlds in ascending index order.
    pub fn render(&self) -> String {
        let labels: Vec<String> = self.iter().map(|w| w.label(self.atoms())).collect();
        format!("{{{}}}", labels.join(","))
    }

    pub fn labels(&self) -> Vec<String> {
        self.iter().map(|w| w.label(self.atoms())).collect()
    }

    /// Every subset of a universe over `atoms` atoms, in mask order. Only for
    /// at most three atoms (256 subsets).
    pub fn all_subsets(atoms: usize) -> Result<Vec<WorldSet>> {
        if atoms > 3 {
            return Err(Error::SizeGuard(format!(
                "subset enumeration needs at most 3 atoms, got {atoms}"
            )));
        }
        let n = 1u64 << (1u64 << atoms);
        Ok((0..n).map(|m| WorldSet::from_mask(atoms, m)).collect())
    }
}

impl fmt::Debug for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_follow_atom_order() {
        assert_eq!(World(2).label(2), "10");
        assert!(World(2).value(0, 2));
        assert!(!World(2).value(1, 2));
        assert_eq!(World::parse_label("011").unwrap(), (World(3), 3));
        assert!(World::parse_label("0a").is_err());
        assert!(World::parse_label("").is_err());
    }

    #[test]
    fn set_algebra() {
        let a = WorldSet::from_mask(2, 0b1100);
        let b = WorldSet::from_mask(2, 0b1010);
        assert_eq!(a.intersection(&b).mask(), 0b1000);
        assert_eq!(a.union(&b).mask(), 0b1110);
        assert_eq!(a.difference(&b).mask(), 0b0100);
        assert_eq!(a.complement().mask(), 0b0011);
        assert!(WorldSet::empty(2).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(WorldSet::full(2).len(), 4);
        assert_eq!(a.render(), "{10,11}");
    }

    #[test]
    fn large_universe() {
        let mut s = WorldSet::empty(8);
        s.insert(World(200));
        s.insert(World(3));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![World(3), World(200)]);
        assert_eq!(s.complement().len(), 254);
        assert_eq!(WorldSet::full(16).len(), 65536);
    }
}
