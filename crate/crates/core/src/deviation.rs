//! Substitutions that mirror partition deviations inside formulas.
//!
//! Each operation here rewrites a formula so that evaluating the result at a
//! partition `π` answers a question about a *deviated* partition:
//!
//! * [`deviation_subst`] fixes player `i`'s neighbourhood to a concrete
//!   coalition `B` (a Boolean vector over `i`'s variables, encoded as the set
//!   of partners assigned `⊤`).
//! * [`forget_exists`] existentially quantifies player `i`'s variables away:
//!   the result holds at `π` exactly when `i` could join some block of
//!   `π` without `i` (or stand alone) and make the formula true.
//! * [`group_subst`] lets a whole group `T` break away and stand alone.
//! * [`swap_subst`] exchanges two players' seats.
//! * [`move_subst`] sends player `i` into player `j`'s block; it is only
//!   sound for formulas over `i`'s own variables and rejects anything else.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::logic::{trans_formula, Formula};
use crate::partitions::{Coalition, Player};

/// Substitutes `p(i,j) ↦ ⊤` for `j ∈ B` and `p(i,j) ↦ ⊥` for `j ∉ B`;
/// atoms without endpoint `i` are untouched. Evaluating the result at `π`
/// asks whether the formula would hold if `i` sat exactly with `B`.
pub fn deviation_subst(phi: &Formula, i: Player, joins: &Coalition) -> Result<Formula> {
    if joins.contains(&i) {
        return Err(Error::PlayerInTarget { player: i });
    }
    Ok(phi.map_atoms(&mut |v| match v.partner(i) {
        Some(other) if joins.contains(&other) => Formula::Top,
        Some(_) => Formula::Bot,
        None => Formula::Atom(v),
    }))
}

/// Existential forgetting `∃̂i φ`: the disjunction, over all `B ⊆ N∖{i}`, of
/// `deviation_subst(φ ∧ trans, i, B)`. At a partition `π` this holds exactly
/// when some block of `π|−i` (or the empty coalition) would satisfy `φ` once
/// `i` joins it. The disjunction has `2^(n−1)` members, so `n` is capped at 10.
pub fn forget_exists(i: Player, phi: &Formula, n: u32) -> Result<Formula> {
    if n == 0 || n > 10 {
        return Err(Error::Guard {
            what: "existential forgetting",
            n,
            max: 10,
            hint: "; the disjunction has 2^(n-1) members",
        });
    }
    if i.0 == 0 || i.0 > n {
        return Err(Error::UnknownPlayer { player: i, n });
    }
    let partners: Vec<Player> = (1..=n).map(Player).filter(|&p| p != i).collect();
    let body = phi.clone().and(trans_formula(n));
    let mut disjuncts = Vec::with_capacity(1 << partners.len());
    for mask in 0u32..(1 << partners.len()) {
        let joins: Coalition = partners
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &p)| p)
            .collect();
        disjuncts.push(deviation_subst(&body, i, &joins)?);
    }
    Ok(Formula::disj(disjuncts))
}

/// Substitutes for a group `T` breaking away to stand alone: atoms inside `T`
/// become `⊤`, atoms from `T` to the outside become `⊥`, and atoms entirely
/// outside `T` are untouched.
pub fn group_subst(phi: &Formula, group: &Coalition) -> Result<Formula> {
    if group.is_empty() {
        return Err(Error::EmptyGroup);
    }
    Ok(phi.map_atoms(&mut |v| {
        let lo_in = group.contains(&v.lo());
        let hi_in = group.contains(&v.hi());
        match (lo_in, hi_in) {
            (true, true) => Formula::Top,
            (false, false) => Formula::Atom(v),
            _ => Formula::Bot,
        }
    }))
}

/// Renames seats for the exchange `π[i⇄j]`: `p(i,k)` and `p(j,k)` trade
/// for every `k ∉ {i,j}`, while `p(i,j)` and all other atoms stay put.
/// Evaluating the result at `π` evaluates the original at `π[i⇄j]`.
pub fn swap_subst(phi: &Formula, i: Player, j: Player) -> Result<Formula> {
    if i == j {
        return Err(Error::SamePlayer { player: i });
    }
    Ok(phi.map_atoms(&mut |v| {
        let image = if let Some(k) = v.partner(i) {
            if k == j {
                v
            } else {
                pair_of(j, k)
            }
        } else if let Some(k) = v.partner(j) {
            pair_of(i, k)
        } else {
            v
        };
        Formula::Atom(image)
    }))
}

fn pair_of(a: Player, b: Player) -> crate::logic::PairVar {
    crate::logic::PairVar::new(a, b).expect("swap endpoints are distinct")
}

/// Rewrites a goal of player `i` for the move "i joins π(j)": `p(i,j) ↦ ⊤`
/// and `p(i,k) ↦ p(j,k)` for the remaining partners. Sound only for formulas
/// over `i`'s variables, so any other atom is rejected.
pub fn move_subst(phi: &Formula, i: Player, j: Player) -> Result<Formula> {
    if i == j {
        return Err(Error::SamePlayer { player: i });
    }
    phi.try_map_atoms(&mut |v| match v.partner(i) {
        None => Err(Error::NonLocalAtom { var: v, player: i }),
        Some(k) if k == j => Ok(Formula::Top),
        Some(k) => Ok(Formula::Atom(pair_of(j, k))),
    })
}

/// All subsets of `{1..n} ∖ {i}` in the mask order used by
/// [`forget_exists`]; exposed for tests that sweep deviation targets.
pub fn partner_subsets(i: Player, n: u32) -> Vec<Coalition> {
    let partners: Vec<Player> = (1..=n).map(Player).filter(|&p| p != i).collect();
    let mut out = Vec::with_capacity(1 << partners.len());
    for mask in 0u32..(1 << partners.len()) {
        out.push(
            partners
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, &p)| p)
                .collect::<BTreeSet<Player>>(),
        );
    }
    out
}
