//! SAT back end: formulas over pair atoms compile to CNF (together with the
//! transitivity axiom), an embedded DPLL solver finds models, and models
//! decode back into partitions.
//!
//! Pair variables come first in the numbering — `p(i,j)` with `i < j` maps
//! to `(i-1)·n − i·(i-1)/2 + (j-i)`, filling `1..C(n,2)` row by row — and
//! Tseitin auxiliaries follow, so a model's pair-variable prefix is all the
//! decoder needs.

mod cardinality;
mod dpll;
mod search;

pub use search::{
    exists_blocking_coalition, exists_weakly_blocking_coalition, find_pareto, greedy_core,
    max_welfare,
};

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::logic::{Formula, PairVar};
use crate::partitions::{Coalition, Partition, Player};

/// The pair-variable numbering for a fixed `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarMap {
    n: u32,
}

impl VarMap {
    pub fn new(n: u32) -> Self {
        VarMap { n }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of pair variables, `C(n,2)`.
    pub fn pair_count(&self) -> usize {
        let n = self.n as usize;
        n.saturating_sub(1) * n / 2
    }

    /// The 1-based DIMACS variable for a pair atom.
    pub fn index(&self, v: PairVar) -> Result<i32> {
        let (i, j) = (v.lo().0, v.hi().0);
        if j > self.n {
            return Err(Error::AtomOutOfRange { var: v, n: self.n });
        }
        let n = self.n as i64;
        let (i, j) = (i as i64, j as i64);
        Ok(((i - 1) * n - i * (i - 1) / 2 + (j - i)) as i32)
    }

    /// The pair atom for a 1-based DIMACS variable in `1..=pair_count()`.
    pub fn pair(&self, index: i32) -> Option<PairVar> {
        if index < 1 || index as usize > self.pair_count() {
            return None;
        }
        let mut rest = index;
        for i in 1..self.n {
            let row = (self.n - i) as i32;
            if rest <= row {
                return Some(
                    PairVar::new(Player(i), Player(i + rest as u32))
                        .expect("row offsets give distinct players"),
                );
            }
            rest -= row;
        }
        None
    }

    /// All pairs in index order `p(1,2), p(1,3), …, p(n-1,n)`.
    pub fn pairs(&self) -> impl Iterator<Item = PairVar> + '_ {
        (1..=self.pair_count() as i32).map(|ix| self.pair(ix).expect("index in range"))
    }
}

/// A compiled CNF: pair variables first, then auxiliaries. Constructed by
/// [`compile_cnf`], which always conjoins the transitivity axiom, so models
/// restricted to the pair variables are exactly partitions.
#[derive(Debug, Clone)]
pub struct CnfDoc {
    var_map: VarMap,
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfDoc {
    pub fn var_map(&self) -> &VarMap {
        &self.var_map
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// Serialises to DIMACS with a comment naming each pair variable.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for v in self.var_map.pairs() {
            let ix = self.var_map.index(v).expect("enumerated pairs are in range");
            let _ = writeln!(out, "c pair {} {} = {}", v.lo(), v.hi(), ix);
        }
        let _ = writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                let _ = write!(out, "{lit} ");
            }
            let _ = writeln!(out, "0");
        }
        out
    }
}

/// Result of a satisfiability call on a compiled document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Unsat,
    Sat {
        /// The model's pair-variable prefix, decoded.
        partition: Partition,
        /// The full assignment, auxiliaries included, indexed by `var - 1`.
        assignment: Vec<bool>,
    },
}

impl SolveResult {
    pub fn partition(&self) -> Option<&Partition> {
        match self {
            SolveResult::Sat { partition, .. } => Some(partition),
            SolveResult::Unsat => None,
        }
    }
}

/// Tseitin transformation with full (two-sided) definitions, so every model
/// of the source formula extends uniquely to the auxiliaries.
pub(crate) struct CnfBuilder {
    next_var: i32,
    pub(crate) clauses: Vec<Vec<i32>>,
    true_lit: Option<i32>,
}

impl CnfBuilder {
    /// `reserved` variables belong to the caller; auxiliaries start above.
    pub(crate) fn new(reserved: usize) -> Self {
        CnfBuilder {
            next_var: reserved as i32 + 1,
            clauses: Vec::new(),
            true_lit: None,
        }
    }

    pub(crate) fn fresh(&mut self) -> i32 {
        let v = self.next_var;
        self.next_var += 1;
        v
    }

    pub(crate) fn num_vars(&self) -> usize {
        (self.next_var - 1) as usize
    }

    /// A literal that is true in every model (allocated on first use).
    pub(crate) fn constant_true(&mut self) -> i32 {
        match self.true_lit {
            Some(t) => t,
            None => {
                let t = self.fresh();
                self.clauses.push(vec![t]);
                self.true_lit = Some(t);
                t
            }
        }
    }

    /// Returns a literal equivalent to `phi`, mapping atoms through `atom`.
    pub(crate) fn tseitin<F>(&mut self, phi: &Formula, atom: &mut F) -> Result<i32>
    where
        F: FnMut(PairVar) -> Result<i32>,
    {
        Ok(match phi {
            Formula::Top => self.constant_true(),
            Formula::Bot => -self.constant_true(),
            Formula::Atom(v) => atom(*v)?,
            Formula::Not(a) => -self.tseitin(a, atom)?,
            Formula::And(a, b) => {
                let (la, lb) = (self.tseitin(a, atom)?, self.tseitin(b, atom)?);
                let x = self.fresh();
                // x ↔ (la ∧ lb)
                self.clauses.push(vec![-x, la]);
                self.clauses.push(vec![-x, lb]);
                self.clauses.push(vec![x, -la, -lb]);
                x
            }
            Formula::Or(a, b) => {
                let (la, lb) = (self.tseitin(a, atom)?, self.tseitin(b, atom)?);
                let x = self.fresh();
                // x ↔ (la ∨ lb)
                self.clauses.push(vec![-x, la, lb]);
                self.clauses.push(vec![x, -la]);
                self.clauses.push(vec![x, -lb]);
                x
            }
            Formula::Implies(a, b) => {
                let (la, lb) = (self.tseitin(a, atom)?, self.tseitin(b, atom)?);
                let x = self.fresh();
                // x ↔ (¬la ∨ lb)
                self.clauses.push(vec![-x, -la, lb]);
                self.clauses.push(vec![x, la]);
                self.clauses.push(vec![x, -lb]);
                x
            }
            Formula::Iff(a, b) => {
                let (la, lb) = (self.tseitin(a, atom)?, self.tseitin(b, atom)?);
                let x = self.fresh();
                // x ↔ (la ↔ lb)
                self.clauses.push(vec![-x, -la, lb]);
                self.clauses.push(vec![-x, la, -lb]);
                self.clauses.push(vec![x, la, lb]);
                self.clauses.push(vec![x, -la, -lb]);
                x
            }
        })
    }
}

/// Emits the transitivity axiom directly as 3-literal clauses (one per
/// implication, no auxiliaries).
pub(crate) fn push_trans_clauses(clauses: &mut Vec<Vec<i32>>, map: &VarMap) {
    let n = map.n();
    let ix = |a: u32, b: u32| {
        map.index(PairVar::new(Player(a), Player(b)).expect("distinct"))
            .expect("in range")
    };
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let (ij, ik, jk) = (ix(i, j), ix(i, k), ix(j, k));
                clauses.push(vec![-ij, -jk, ik]);
                clauses.push(vec![-ij, -ik, jk]);
                clauses.push(vec![-ik, -jk, ij]);
            }
        }
    }
}

/// Compiles `phi ∧ trans` over players `{1..n}` to CNF. Models restricted to
/// the pair-variable prefix are exactly the partitions satisfying `phi`.
pub fn compile_cnf(phi: &Formula, n: u32) -> Result<CnfDoc> {
    if n == 0 {
        return Err(Error::NoPlayers);
    }
    let var_map = VarMap::new(n);
    let mut builder = CnfBuilder::new(var_map.pair_count());
    push_trans_clauses(&mut builder.clauses, &var_map);
    let root = builder.tseitin(phi, &mut |v| var_map.index(v))?;
    builder.clauses.push(vec![root]);
    Ok(CnfDoc {
        var_map,
        num_vars: builder.num_vars(),
        clauses: builder.clauses,
    })
}

/// Reads a DIMACS file (comments and `p cnf` header allowed) back into a
/// clause list; the companion of [`CnfDoc::to_dimacs`].
pub fn parse_dimacs(text: &str) -> Result<(usize, Vec<Vec<i32>>)> {
    let mut num_vars = 0usize;
    let mut clauses = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut offset = 0usize;
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.starts_with('c') || trimmed.is_empty() {
            offset += line.len() + 1;
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("p ") {
            let fields: Vec<&str> = rest.split_whitespace().collect();
            if fields.len() != 3 || fields[0] != "cnf" {
                return Err(Error::parse(offset, "malformed DIMACS header"));
            }
            num_vars = fields[1]
                .parse()
                .map_err(|_| Error::parse(offset, "bad variable count"))?;
            offset += line.len() + 1;
            continue;
        }
        for tok in trimmed.split_whitespace() {
            let lit: i32 = tok
                .parse()
                .map_err(|_| Error::parse(offset, format!("`{tok}` is not a literal")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                if lit.unsigned_abs() as usize > num_vars {
                    return Err(Error::parse(
                        offset,
                        format!("literal {lit} exceeds the declared {num_vars} variables"),
                    ));
                }
                current.push(lit);
            }
        }
        offset += line.len() + 1;
    }
    if !current.is_empty() {
        return Err(Error::parse(offset, "last clause is not 0-terminated"));
    }
    Ok((num_vars, clauses))
}

/// Runs the embedded DPLL solver on a compiled document.
pub fn sat(doc: &CnfDoc) -> SolveResult {
    match dpll::solve(doc.num_vars, &doc.clauses) {
        None => SolveResult::Unsat,
        Some(assignment) => {
            let partition = decode_model(&assignment, doc.var_map())
                .expect("compiled documents embed the transitivity clauses");
            SolveResult::Sat {
                partition,
                assignment,
            }
        }
    }
}

/// Raw clause-level satisfiability: a total assignment indexed by
/// `variable - 1`, or `None` when unsatisfiable. This is the entry point
/// for externally produced clause sets (for instance re-parsed DIMACS
/// text); the compiled encodings use it internally as well.
pub fn solve_clauses(num_vars: usize, clauses: &[Vec<i32>]) -> Option<Vec<bool>> {
    dpll::solve(num_vars, clauses)
}

/// Decodes a pair-variable assignment into a partition: players are grouped
/// by the true pair variables. The assignment must honour transitivity —
/// if the implied grouping disagrees with any pair variable, this is an
/// integrity error, not a partition.
pub fn decode_model(assignment: &[bool], map: &VarMap) -> Result<Partition> {
    if assignment.len() < map.pair_count() {
        return Err(Error::AssignmentTooShort {
            got: assignment.len(),
            need: map.pair_count(),
        });
    }
    let n = map.n();
    let truth = |a: u32, b: u32| -> bool {
        let v = PairVar::new(Player(a), Player(b)).expect("distinct players");
        let ix = map.index(v).expect("pairs of the map are in range");
        assignment[(ix - 1) as usize]
    };
    // Union by scanning: block of i = all j connected directly to i.
    let mut block_of: Vec<Option<usize>> = vec![None; n as usize];
    let mut blocks: Vec<Coalition> = Vec::new();
    for i in 1..=n {
        if block_of[(i - 1) as usize].is_some() {
            continue;
        }
        let idx = blocks.len();
        let mut block = Coalition::new();
        block.insert(Player(i));
        block_of[(i - 1) as usize] = Some(idx);
        for j in i + 1..=n {
            if truth(i, j) {
                if let Some(prev) = block_of[(j - 1) as usize] {
                    if prev != idx {
                        return Err(Error::NotAPartition {
                            i: Player(i),
                            j: Player(j),
                        });
                    }
                }
                block.insert(Player(j));
                block_of[(j - 1) as usize] = Some(idx);
            }
        }
        blocks.push(block);
    }
    // Verify: the grouping must reproduce the assignment exactly.
    for i in 1..=n {
        for j in i + 1..=n {
            let same = block_of[(i - 1) as usize] == block_of[(j - 1) as usize];
            if same != truth(i, j) {
                return Err(Error::NotAPartition {
                    i: Player(i),
                    j: Player(j),
                });
            }
        }
    }
    Partition::new(n, blocks)
}

/// Encodes a partition as its pair-variable assignment.
pub fn encode_partition(pi: &Partition, map: &VarMap) -> Result<Vec<bool>> {
    if pi.n() != map.n() {
        return Err(Error::PartitionSizeMismatch {
            partition_n: pi.n(),
            game_n: map.n(),
        });
    }
    map.pairs()
        .map(|v| pi.same_block(v.lo(), v.hi()))
        .collect()
}

/// Streams every partition satisfying the compiled formula, by repeatedly
/// solving and then blocking the found pair-variable prefix (auxiliaries are
/// left free, so each partition appears exactly once).
pub fn enumerate_models(doc: &CnfDoc) -> ModelEnumerator {
    ModelEnumerator {
        var_map: *doc.var_map(),
        num_vars: doc.num_vars,
        clauses: doc.clauses.clone(),
        exhausted: false,
    }
}

/// See [`enumerate_models`].
pub struct ModelEnumerator {
    var_map: VarMap,
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
    exhausted: bool,
}

impl Iterator for ModelEnumerator {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.exhausted {
            return None;
        }
        match dpll::solve(self.num_vars, &self.clauses) {
            None => {
                self.exhausted = true;
                None
            }
            Some(assignment) => {
                let partition = decode_model(&assignment, &self.var_map)
                    .expect("compiled documents embed the transitivity clauses");
                let blocking: Vec<i32> = (1..=self.var_map.pair_count() as i32)
                    .map(|v| if assignment[(v - 1) as usize] { -v } else { v })
                    .collect();
                self.clauses.push(blocking);
                Some(partition)
            }
        }
    }
}

/// Entailment over partitions: `phi ⊨ psi` when no partition satisfies
/// `phi ∧ ¬psi`.
pub fn p_entails(phi: &Formula, psi: &Formula, n: u32) -> Result<bool> {
    let doc = compile_cnf(&phi.clone().and(psi.clone().not()), n)?;
    Ok(matches!(sat(&doc), SolveResult::Unsat))
}
