use super::{Language, World, WorldSet};

/// Propositional formula. Atoms are indices into the ambient [`Language`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(usize),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Verum,
    Falsum,
}

// Binding strength, tighter binds higher.
const PREC_IFF: u8 = 1;
const PREC_IMPLIES: u8 = 2;
const PREC_OR: u8 = 3;
const PREC_AND: u8 = 4;
const PREC_NOT: u8 = 5;

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    /// Truth value at a single world, by direct recursion.
    pub fn eval(&self, world: World, atoms: usize) -> bool {
        match self {
            Formula::Atom(i) => world.value(*i, atoms),
            Formula::Not(f) => !f.eval(world, atoms),
            Formula::And(a, b) => a.eval(world, atoms) && b.eval(world, atoms),
            Formula::Or(a, b) => a.eval(world, atoms) || b.eval(world, atoms),
            Formula::Implies(a, b) => !a.eval(world, atoms) || b.eval(world, atoms),
            Formula::Iff(a, b) => a.eval(world, atoms) == b.eval(world, atoms),
            Formula::Verum => true,
            Formula::Falsum => false,
        }
    }

    /// Model set, computed by set algebra over the atoms' model sets.
    pub fn models(&self, lang: &Language) -> WorldSet {
        match self {
            Formula::Atom(i) => lang.atom_models(*i),
            Formula::Not(f) => f.models(lang).complement(),
            Formula::And(a, b) => a.models(lang).intersection(&b.models(lang)),
            Formula::Or(a, b) => a.models(lang).union(&b.models(lang)),
            Formula::Implies(a, b) => a.models(lang).complement().union(&b.models(lang)),
            Formula::Iff(a, b) => {
                let (ma, mb) = (a.models(lang), b.models(lang));
                ma.intersection(&mb)
                    .union(&ma.complement().intersection(&mb.complement()))
            }
            Formula::Verum => lang.all_worlds(),
            Formula::Falsum => WorldSet::empty(lang.atom_count()),
        }
    }

    pub fn max_atom(&self) -> Option<usize> {
        match self {
            Formula::Atom(i) => Some(*i),
            Formula::Not(f) => f.max_atom(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.max_atom().max(b.max_atom())
            }
            Formula::Verum | Formula::Falsum => None,
        }
    }

    /// Canonical disjunctive normal form whose models are exactly `models`:
    /// one full conjunction per world, `F` for the empty set, `T` for `W`.
    pub fn from_models(models: &WorldSet, lang: &Language) -> Formula {
        if models.is_empty() {
            return Formula::Falsum;
        }
        if models.is_full() {
            return Formula::Verum;
        }
        let n = lang.atom_count();
        models
            .iter()
            .map(|w| {
                (0..n)
                    .map(|i| {
                        if w.value(i, n) {
                            Formula::Atom(i)
                        } else {
                            Formula::not(Formula::Atom(i))
                        }
                    })
                    .reduce(Formula::and)
                    .expect("at least one atom")
            })
            .reduce(Formula::or)
            .expect("nonempty model set")
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => PREC_IFF,
            Formula::Implies(..) => PREC_IMPLIES,
            Formula::Or(..) => PREC_OR,
            Formula::And(..) => PREC_AND,
            _ => PREC_NOT + 1,
        }
    }

    /// Renders in the concrete ASCII syntax accepted by the parser, with the
    /// minimum parentheses needed to parse back to the same tree.
    pub fn render(&self, lang: &Language) -> String {
        let mut out = String::new();
        self.write(lang, &mut out);
        out
    }

    fn write(&self, lang: &Language, out: &mut String) {
        match self {
            Formula::Atom(i) => out.push_str(lang.atom_name(*i)),
            Formula::Verum => out.push('T'),
            Formula::Falsum => out.push('F'),
            Formula::Not(f) => {
                out.push('~');
                f.write_operand(lang, out, f.precedence() < PREC_NOT);
            }
            Formula::And(a, b) => self.write_binary(lang, out, a, b, " & ", PREC_AND, false),
            Formula::Or(a, b) => self.write_binary(lang, out, a, b, " | ", PREC_OR, false),
            Formula::Implies(a, b) => {
                self.write_binary(lang, out, a, b, " -> ", PREC_IMPLIES, true)
            }
            Formula::Iff(a, b) => self.write_binary(lang, out, a, b, " <-> ", PREC_IFF, false),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn write_binary(
        &self,
        lang: &Language,
        out: &mut String,
        left: &Formula,
        right: &Formula,
        op: &str,
        prec: u8,
        right_assoc: bool,
    ) {
        // Left-associative operators need parentheses on a right operand of
        // equal precedence; `->` needs them on the left instead.
        let (paren_left, paren_right) = if right_assoc {
            (left.precedence() <= prec, right.precedence() < prec)
        } else {
            (left.precedence() < prec, right.precedence() <= prec)
        };
        left.write_operand(lang, out, paren_left);
        out.push_str(op);
        right.write_operand(lang, out, paren_right);
    }

    fn write_operand(&self, lang: &Language, out: &mut String, parens: bool) {
        if parens {
            out.push('(');
            self.write(lang, out);
            out.push(')');
        } else {
            self.write(lang, out);
        }
    }
}

/// A finite set of formulas, deduplicated under syntactic equality only.
/// Insertion order is kept; it fixes the index set `I` of the members.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FormulaSet {
    members: Vec<Formula>,
}

impl FormulaSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, f: Formula) -> bool {
        if self.members.contains(&f) {
            false
        } else {
            self.members.push(f);
            true
        }
    }

    pub fn members(&self) -> &[Formula] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Formula> {
        self.members.iter()
    }

    /// `⋀S`; the empty conjunction is `T`.
    pub fn conj(&self) -> Formula {
        self.members
            .iter()
            .cloned()
            .reduce(Formula::and)
            .unwrap_or(Formula::Verum)
    }

    /// `¬S`: elementwise negation, without simplification.
    pub fn neg_set(&self) -> FormulaSet {
        self.members.iter().cloned().map(Formula::not).collect()
    }

    /// `(S|x)`: the members true at `world`.
    pub fn sat_subset(&self, world: World, atoms: usize) -> FormulaSet {
        self.members
            .iter()
            .filter(|f| f.eval(world, atoms))
            .cloned()
            .collect()
    }

    pub fn union(&self, other: &FormulaSet) -> FormulaSet {
        let mut out = self.clone();
        for f in &other.members {
            out.insert(f.clone());
        }
        out
    }

    /// Model sets of the members, in member order.
    pub fn member_models(&self, lang: &Language) -> Vec<WorldSet> {
        self.members.iter().map(|f| f.models(lang)).collect()
    }

    pub fn render(&self, lang: &Language) -> String {
        let parts: Vec<String> = self.members.iter().map(|f| f.render(lang)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl FromIterator<Formula> for FormulaSet {
    fn from_iter<T: IntoIterator<Item = Formula>>(iter: T) -> Self {
        let mut set = FormulaSet::new();
        for f in iter {
            set.insert(f);
        }
        set
    }
}

impl<'a> IntoIterator for &'a FormulaSet {
    type Item = &'a Formula;
    type IntoIter = std::slice::Iter<'a, Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}
