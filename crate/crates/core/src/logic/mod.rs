//! Goal formulas: propositional logic over pair atoms `p(i,j)`.
//!
//! The atom `p(i,j)` says "players `i` and `j` sit in the same block"; it is
//! unordered, so `p(2,1)` and `p(1,2)` are the same variable. Implication and
//! biconditional are first-class AST nodes and print back through the same
//! connectives they were written with.
//!
//! Partitions are exactly the models of [`trans_formula`], the conjunction of
//! all transitivity implications over unordered triples.

mod parse;

pub use parse::parse_formula;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition, Player};

/// An unordered pair variable `p(i,j)` with `i < j` after normalisation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairVar {
    lo: Player,
    hi: Player,
}

impl PairVar {
    /// Normalises the endpoint order; rejects reflexive pairs like `p(3,3)`.
    pub fn new(a: Player, b: Player) -> Result<Self> {
        if a == b {
            return Err(Error::SamePlayer { player: a });
        }
        if a.0 == 0 || b.0 == 0 {
            return Err(Error::UnknownPlayer {
                player: Player(0),
                n: 0,
            });
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        Ok(PairVar { lo, hi })
    }

    pub fn lo(&self) -> Player {
        self.lo
    }

    pub fn hi(&self) -> Player {
        self.hi
    }

    pub fn contains(&self, i: Player) -> bool {
        self.lo == i || self.hi == i
    }

    /// The endpoint that is not `i`, if `i` is an endpoint at all.
    pub fn partner(&self, i: Player) -> Option<Player> {
        if self.lo == i {
            Some(self.hi)
        } else if self.hi == i {
            Some(self.lo)
        } else {
            None
        }
    }
}

impl fmt::Display for PairVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p({},{})", self.lo, self.hi)
    }
}

/// A propositional formula over pair atoms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Top,
    Bot,
    Atom(PairVar),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    /// The atom `p(a,b)`.
    pub fn atom(a: u32, b: u32) -> Result<Self> {
        Ok(Formula::Atom(PairVar::new(Player(a), Player(b))?))
    }

    // Named for the `phi.not()` builder chain alongside `and`/`or`, not as
    // an operator.
    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, rhs: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: Formula) -> Self {
        Formula::Implies(Box::new(self), Box::new(rhs))
    }

    pub fn iff(self, rhs: Formula) -> Self {
        Formula::Iff(Box::new(self), Box::new(rhs))
    }

    /// Left-folded conjunction; the empty conjunction is `⊤`.
    pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        let mut it = items.into_iter();
        match it.next() {
            None => Formula::Top,
            Some(first) => it.fold(first, Formula::and),
        }
    }

    /// Left-folded disjunction; the empty disjunction is `⊥`.
    pub fn disj<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        let mut it = items.into_iter();
        match it.next() {
            None => Formula::Bot,
            Some(first) => it.fold(first, Formula::or),
        }
    }

    /// Node count, leaves included.
    pub fn size(&self) -> usize {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(_) => 1,
            Formula::Not(a) => 1 + a.size(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Rebuilds the formula with every atom replaced by `f(atom)`.
    pub fn map_atoms<F: FnMut(PairVar) -> Formula>(&self, f: &mut F) -> Formula {
        match self {
            Formula::Top => Formula::Top,
            Formula::Bot => Formula::Bot,
            Formula::Atom(v) => f(*v),
            Formula::Not(a) => a.map_atoms(f).not(),
            Formula::And(a, b) => a.map_atoms(f).and(b.map_atoms(f)),
            Formula::Or(a, b) => a.map_atoms(f).or(b.map_atoms(f)),
            Formula::Implies(a, b) => a.map_atoms(f).implies(b.map_atoms(f)),
            Formula::Iff(a, b) => a.map_atoms(f).iff(b.map_atoms(f)),
        }
    }

    /// Fallible variant of [`Formula::map_atoms`].
    pub fn try_map_atoms<F: FnMut(PairVar) -> Result<Formula>>(&self, f: &mut F) -> Result<Formula> {
        Ok(match self {
            Formula::Top => Formula::Top,
            Formula::Bot => Formula::Bot,
            Formula::Atom(v) => f(*v)?,
            Formula::Not(a) => a.try_map_atoms(f)?.not(),
            Formula::And(a, b) => a.try_map_atoms(f)?.and(b.try_map_atoms(f)?),
            Formula::Or(a, b) => a.try_map_atoms(f)?.or(b.try_map_atoms(f)?),
            Formula::Implies(a, b) => a.try_map_atoms(f)?.implies(b.try_map_atoms(f)?),
            Formula::Iff(a, b) => a.try_map_atoms(f)?.iff(b.try_map_atoms(f)?),
        })
    }

    /// The conjuncts along the left-leaning `&` spine (a single non-`And`
    /// formula is its own spine). Useful for counting how many clauses a
    /// conjunction was built from.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        fn walk<'a>(phi: &'a Formula, out: &mut Vec<&'a Formula>) {
            match phi {
                Formula::And(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }

    /// The disjuncts along the `|` spine.
    pub fn disjuncts(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        fn walk<'a>(phi: &'a Formula, out: &mut Vec<&'a Formula>) {
            match phi {
                Formula::Or(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }
}

/// Fully parenthesised canonical text; re-parsing yields an identical AST.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Top => f.write_str("true"),
            Formula::Bot => f.write_str("false"),
            Formula::Atom(v) => write!(f, "{v}"),
            Formula::Not(a) => write!(f, "~{a}"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::Implies(a, b) => write!(f, "({a} -> {b})"),
            Formula::Iff(a, b) => write!(f, "({a} <-> {b})"),
        }
    }
}

/// Evaluates `phi` in the model `pi`: an atom `p(i,j)` is true when `i` and
/// `j` share a block. Atoms mentioning players outside the ambient set are
/// domain errors.
pub fn evaluate(pi: &Partition, phi: &Formula) -> Result<bool> {
    Ok(match phi {
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Atom(v) => {
            if v.hi.0 > pi.n() {
                return Err(Error::AtomOutOfRange { var: *v, n: pi.n() });
            }
            pi.same_block(v.lo, v.hi)?
        }
        Formula::Not(a) => !evaluate(pi, a)?,
        Formula::And(a, b) => evaluate(pi, a)? && evaluate(pi, b)?,
        Formula::Or(a, b) => evaluate(pi, a)? || evaluate(pi, b)?,
        Formula::Implies(a, b) => !evaluate(pi, a)? || evaluate(pi, b)?,
        Formula::Iff(a, b) => evaluate(pi, a)? == evaluate(pi, b)?,
    })
}

/// A simultaneous substitution of formulas for pair variables. Images are
/// substituted in one pass and are not themselves rewritten.
#[derive(Debug, Clone, Default)]
pub struct Substitution {
    map: BTreeMap<PairVar, Formula>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn bind(mut self, var: PairVar, image: Formula) -> Self {
        self.map.insert(var, image);
        self
    }

    pub fn get(&self, var: PairVar) -> Option<&Formula> {
        self.map.get(&var)
    }
}

impl FromIterator<(PairVar, Formula)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (PairVar, Formula)>>(iter: I) -> Self {
        Substitution {
            map: iter.into_iter().collect(),
        }
    }
}

/// Applies a simultaneous substitution.
pub fn substitute(phi: &Formula, subst: &Substitution) -> Formula {
    phi.map_atoms(&mut |v| match subst.get(v) {
        Some(image) => image.clone(),
        None => Formula::Atom(v),
    })
}

/// The transitivity axiom for `{1..n}`: for every unordered triple
/// `i < j < k`, the three implications
/// `p(i,j) & p(j,k) -> p(i,k)`, `p(i,j) & p(i,k) -> p(j,k)` and
/// `p(i,k) & p(j,k) -> p(i,j)`. For `n < 3` there is nothing to say and the
/// result is `⊤`. The partitions of `{1..n}` are exactly the models.
pub fn trans_formula(n: u32) -> Formula {
    let mut conjuncts = Vec::new();
    let atom = |a: u32, b: u32| Formula::atom(a, b).expect("distinct indices");
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                conjuncts.push(atom(i, j).and(atom(j, k)).implies(atom(i, k)));
                conjuncts.push(atom(i, j).and(atom(i, k)).implies(atom(j, k)));
                conjuncts.push(atom(i, k).and(atom(j, k)).implies(atom(i, j)));
            }
        }
    }
    Formula::conj(conjuncts)
}

/// The set of pair variables occurring in `phi`.
pub fn free_pairs(phi: &Formula) -> BTreeSet<PairVar> {
    let mut out = BTreeSet::new();
    fn walk(phi: &Formula, out: &mut BTreeSet<PairVar>) {
        match phi {
            Formula::Top | Formula::Bot => {}
            Formula::Atom(v) => {
                out.insert(*v);
            }
            Formula::Not(a) => walk(a, out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                walk(a, out);
                walk(b, out);
            }
        }
    }
    walk(phi, &mut out);
    out
}

/// Whether every atom of `phi` has `i` as an endpoint (so `phi` is written in
/// player `i`'s own variables).
pub fn is_syntactically_local(phi: &Formula, i: Player) -> bool {
    free_pairs(phi).iter().all(|v| v.contains(i))
}

/// Whether `phi`'s truth value depends only on player `i`'s block: for every
/// two partitions of `{1..n}` that give `i` the same coalition, `phi` agrees.
/// Decided by enumeration, so `n` is limited to 8; for larger games check
/// [`is_syntactically_local`] instead.
pub fn is_i_local(phi: &Formula, i: Player, n: u32) -> Result<bool> {
    if n > 8 {
        return Err(Error::Guard {
            what: "semantic locality check",
            n,
            max: 8,
            hint: "; is_syntactically_local scales to any n",
        });
    }
    let mut seen: BTreeMap<Vec<Player>, bool> = BTreeMap::new();
    for pi in enumerate_partitions(n)? {
        let key: Vec<Player> = pi.coalition_of(i)?.iter().copied().collect();
        let value = evaluate(&pi, phi)?;
        match seen.get(&key) {
            Some(&prev) if prev != value => return Ok(false),
            Some(_) => {}
            None => {
                seen.insert(key, value);
            }
        }
    }
    Ok(true)
}
