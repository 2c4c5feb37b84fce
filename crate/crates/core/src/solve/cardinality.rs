//! Sequential-counter cardinality constraints (Sinz 2005).
//!
//! `at_most` introduces registers `s[i][j]` meaning "at least `j` of the
//! first `i` literals are true" and forbids overflowing `k`; `at_least`
//! bounds the negated literals instead.

/// Appends clauses forcing at most `k` of `lits` to be true. Fresh registers
/// are drawn from `next_var`, which the caller advances past its own
/// variables beforehand.
pub(crate) fn at_most(clauses: &mut Vec<Vec<i32>>, next_var: &mut i32, lits: &[i32], k: usize) {
    let n = lits.len();
    if k >= n {
        return; // nothing to forbid
    }
    if k == 0 {
        for &lit in lits {
            clauses.push(vec![-lit]);
        }
        return;
    }
    // s[i][j], 0-based i, 1-based j: at least j of lits[..=i] are true.
    let mut fresh = |count: usize| -> Vec<i32> {
        let base = *next_var;
        *next_var += count as i32;
        (0..count as i32).map(|d| base + d).collect()
    };
    let mut prev: Vec<i32> = fresh(k);
    clauses.push(vec![-lits[0], prev[0]]); // x1 → s[0][1]
    for &reg in &prev[1..] {
        clauses.push(vec![-reg]); // one literal cannot reach j+1 ≥ 2
    }
    for (i, &lit) in lits.iter().enumerate().skip(1) {
        if i == n - 1 {
            // Only the overflow clause is needed for the last literal.
            clauses.push(vec![-lit, -prev[k - 1]]);
            break;
        }
        let here = fresh(k);
        clauses.push(vec![-lit, here[0]]); // xi → s[i][1]
        clauses.push(vec![-prev[0], here[0]]); // counts never decrease
        for j in 1..k {
            clauses.push(vec![-lit, -prev[j - 1], here[j]]); // xi lifts the count
            clauses.push(vec![-prev[j], here[j]]);
        }
        clauses.push(vec![-lit, -prev[k - 1]]); // xi would overflow k
        prev = here;
    }
}

/// Appends clauses forcing at least `k` of `lits` to be true.
pub(crate) fn at_least(clauses: &mut Vec<Vec<i32>>, next_var: &mut i32, lits: &[i32], k: usize) {
    if k == 0 {
        return;
    }
    if k > lits.len() {
        clauses.push(Vec::new()); // impossible demand
        return;
    }
    let negated: Vec<i32> = lits.iter().map(|&l| -l).collect();
    at_most(clauses, next_var, &negated, lits.len() - k);
}
