//! The propositional language: atoms, worlds, formulas and their model sets.
//!
//! Belief sets are handled semantically throughout the crate: a deductively
//! closed set of sentences over a finite language is identified with its set
//! of models, so `B ∈ K` becomes `models(K) ⊆ models(B)`.

mod formula;
mod parse;
mod worlds;

pub use formula::{Formula, FormulaSet};
pub use parse::parse_formula;
pub use worlds::{World, WorldSet, MAX_ATOMS};

use crate::error::{Error, Result};

/// An ordered list of atom names. The order fixes world indexing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Language {
    atoms: Vec<String>,
}

fn valid_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name != "T"
        && name != "F"
}

impl Language {
    pub fn new<I, S>(atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        if atoms.is_empty() || atoms.len() > MAX_ATOMS {
            return Err(Error::InvalidLanguage(format!(
                "expected 1..={MAX_ATOMS} atoms, got {}",
                atoms.len()
            )));
        }
        for (i, name) in atoms.iter().enumerate() {
            if !valid_atom_name(name) {
                return Err(Error::InvalidLanguage(format!("bad atom name `{name}`")));
            }
            if atoms[..i].contains(name) {
                return Err(Error::InvalidLanguage(format!("duplicate atom `{name}`")));
            }
        }
        Ok(Language { atoms })
    }

    /// Atoms named `A`, `B`, `C`, ... (at most 16).
    pub fn with_atom_count(count: usize) -> Result<Self> {
        if count == 0 || count > MAX_ATOMS {
            return Err(Error::InvalidLanguage(format!(
                "expected 1..={MAX_ATOMS} atoms, got {count}"
            )));
        }
        // `F` and `T` are constants, so skip them.
        let names = ('A'..='Z')
            .filter(|c| *c != 'F' && *c != 'T')
            .take(count)
            .map(String::from);
        Language::new(names)
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn world_count(&self) -> usize {
        1 << self.atoms.len()
    }

    pub fn atom_name(&self, index: usize) -> &str {
        &self.atoms[index]
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    pub fn worlds(&self) -> impl Iterator<Item = World> {
        (0..self.world_count() as u32).map(World)
    }

    pub fn all_worlds(&self) -> WorldSet {
        WorldSet::full(self.atom_count())
    }

    pub fn atom_models(&self, atom: usize) -> WorldSet {
        let n = self.atom_count();
        WorldSet::from_worlds(n, self.worlds().filter(|w| w.value(atom, n)))
    }

    pub fn world_label(&self, world: World) -> String {
        world.label(self.atom_count())
    }

    pub fn parse_world(&self, label: &str) -> Result<World> {
        let (world, atoms) = World::parse_label(label)?;
        if atoms != self.atom_count() {
            return Err(Error::InvalidWorld(label.to_string()));
        }
        Ok(world)
    }

    pub fn parse(&self, text: &str) -> Result<Formula> {
        parse_formula(text, self)
    }

    pub fn models(&self, f: &Formula) -> WorldSet {
        f.models(self)
    }

    pub fn is_consistent(&self, f: &Formula) -> bool {
        !f.models(self).is_empty()
    }

    pub fn entails(&self, f: &Formula, g: &Formula) -> bool {
        f.models(self).is_subset(&g.models(self))
    }

    /// `Cn(S1) = Cn(S2)`.
    pub fn cn_equal(&self, s1: &FormulaSet, s2: &FormulaSet) -> bool {
        s1.conj().models(self) == s2.conj().models(self)
    }
}

/// `⋀` over model sets: the intersection, or `W` for an empty slice.
pub fn conj_models(atoms: usize, members: &[WorldSet]) -> WorldSet {
    members
        .iter()
        .fold(WorldSet::full(atoms), |acc, m| acc.intersection(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Language {
        Language::new(["A", "B"]).unwrap()
    }

    #[test]
    fn language_validation() {
        assert!(Language::new(Vec::<String>::new()).is_err());
        assert!(Language::new(["A", "A"]).is_err());
        assert!(Language::new(["1x"]).is_err());
        assert!(Language::new(["T"]).is_err());
        assert!(Language::new(["p_1", "Q2"]).is_ok());
        assert!(Language::with_atom_count(17).is_err());
        let big = Language::with_atom_count(16).unwrap();
        assert_eq!(big.world_count(), 65536);
        assert!(!big.atoms().iter().any(|a| a == "T" || a == "F"));
    }

    #[test]
    fn models_examples() {
        let lang = ab();
        let m = lang.models(&lang.parse("A & B").unwrap());
        assert_eq!(m.labels(), vec!["11"]);
        assert!(lang.models(&lang.parse("A | ~A").unwrap()).is_full());
        assert!(lang.models(&lang.parse("A & ~A").unwrap()).is_empty());
    }

    #[test]
    fn consequence_examples() {
        let lang = ab();
        let p = |s: &str| lang.parse(s).unwrap();
        assert!(lang.entails(&p("A & B"), &p("A")));
        assert!(!lang.entails(&p("A"), &p("A & B")));
        assert!(!lang.is_consistent(&p("A & ~A")));
        let s1: FormulaSet = [p("A"), p("B")].into_iter().collect();
        let s2: FormulaSet = [p("A & B")].into_iter().collect();
        assert!(lang.cn_equal(&s1, &s2));
    }

    #[test]
    fn set_notation() {
        let lang = ab();
        let p = |s: &str| lang.parse(s).unwrap();
        let s: FormulaSet = [p("A"), p("B")].into_iter().collect();
        assert_eq!(s.conj(), p("A & B"));
        let single: FormulaSet = [p("A")].into_iter().collect();
        assert_eq!(single.conj(), p("A"));
        assert_eq!(FormulaSet::new().conj(), Formula::Verum);

        assert_eq!(s.neg_set(), [p("~A"), p("~B")].into_iter().collect());
        assert!(FormulaSet::new().neg_set().is_empty());
        let negated: FormulaSet = [p("~A")].into_iter().collect();
        assert_eq!(negated.neg_set().members(), &[p("~~A")]);

        let at = |l: &str| s.sat_subset(lang.parse_world(l).unwrap(), 2);
        assert_eq!(at("11"), s);
        assert_eq!(at("10"), single);
        assert!(at("00").is_empty());
    }

    #[test]
    fn syntactic_dedup_only() {
        let lang = ab();
        let p = |s: &str| lang.parse(s).unwrap();
        let s: FormulaSet = [p("A"), p("A"), p("~~A")].into_iter().collect();
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn canonical_dnf() {
        let lang = ab();
        for m in WorldSet::all_subsets(2).unwrap() {
            assert_eq!(Formula::from_models(&m, &lang).models(&lang), m);
        }
    }
}
