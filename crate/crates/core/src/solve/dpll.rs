//! A small complete DPLL solver with unit propagation.
//!
//! Clauses are slices of nonzero literals: positive for the variable,
//! negative for its negation, variables numbered from 1. The instances this
//! crate produces are tiny (tens of variables), so the solver favours
//! clarity: propagation rescans the clause list and branching picks the
//! first unassigned variable, trying `true` first. Both choices are
//! deterministic, which keeps model enumeration reproducible.

/// Searches for a satisfying assignment; returns one total assignment
/// (indexed by `var - 1`) or `None` when the clauses are unsatisfiable.
pub(crate) fn solve(num_vars: usize, clauses: &[Vec<i32>]) -> Option<Vec<bool>> {
    let mut assign: Vec<Option<bool>> = vec![None; num_vars + 1];
    if !search(clauses, &mut assign) {
        return None;
    }
    Some((1..=num_vars).map(|v| assign[v].unwrap_or(false)).collect())
}

fn lit_value(lit: i32, assign: &[Option<bool>]) -> Option<bool> {
    assign[lit.unsigned_abs() as usize].map(|v| v == (lit > 0))
}

fn set(lit: i32, assign: &mut [Option<bool>]) {
    assign[lit.unsigned_abs() as usize] = Some(lit > 0);
}

/// One propagation pass: repeatedly asserts unit clauses until a fixpoint.
/// Returns `false` on conflict; records assignments in `trail` for undo.
fn propagate(clauses: &[Vec<i32>], assign: &mut [Option<bool>], trail: &mut Vec<usize>) -> bool {
    loop {
        let mut unit: Option<i32> = None;
        for clause in clauses {
            let mut unassigned: Option<i32> = None;
            let mut open = 0usize;
            let mut satisfied = false;
            for &lit in clause {
                match lit_value(lit, assign) {
                    Some(true) => {
                        satisfied = true;
                        break;
                    }
                    Some(false) => {}
                    None => {
                        open += 1;
                        if open == 1 {
                            unassigned = Some(lit);
                        } else {
                            break; // two open literals: nothing to learn here
                        }
                    }
                }
            }
            if satisfied {
                continue;
            }
            match open {
                0 => return false, // all literals false
                1 => {
                    unit = unassigned;
                    break;
                }
                _ => {}
            }
        }
        match unit {
            Some(lit) => {
                set(lit, assign);
                trail.push(lit.unsigned_abs() as usize);
            }
            None => return true,
        }
    }
}

fn search(clauses: &[Vec<i32>], assign: &mut Vec<Option<bool>>) -> bool {
    let mut trail: Vec<usize> = Vec::new();
    if !propagate(clauses, assign, &mut trail) {
        for v in trail {
            assign[v] = None;
        }
        return false;
    }
    let branch = (1..assign.len()).find(|&v| assign[v].is_none());
    let var = match branch {
        // Every variable assigned and no clause conflicting: each clause has
        // a true literal, so this is a model.
        None => return true,
        Some(v) => v,
    };
    for value in [true, false] {
        assign[var] = Some(value);
        if search(clauses, assign) {
            return true;
        }
        assign[var] = None;
    }
    for v in trail {
        assign[v] = None;
    }
    false
}
