//! Searches built on the SAT core: welfare maximisation, a Pareto-optimal
//! witness, the greedy core construction, and blocking-coalition existence.

use crate::concepts;
use crate::error::{Error, Result};
use crate::game::BooleanHedonicGame;
use crate::logic::Formula;
use crate::partitions::{Coalition, Partition, Player};
use crate::solve::{
    cardinality, decode_model, push_trans_clauses, solve_clauses, CnfBuilder, VarMap,
};

/// The highest achievable number of satisfied players, with a partition
/// attaining it. Encodes one selector literal per goal (true exactly when
/// the goal holds) and walks the threshold down from `n` until satisfiable;
/// the threshold `0` always is.
pub fn max_welfare(game: &BooleanHedonicGame) -> Result<(u32, Partition)> {
    let n = game.n();
    let var_map = VarMap::new(n);
    let mut builder = CnfBuilder::new(var_map.pair_count());
    push_trans_clauses(&mut builder.clauses, &var_map);
    let selectors: Vec<i32> = game
        .goals()
        .iter()
        .map(|g| builder.tseitin(g, &mut |v| var_map.index(v)))
        .collect::<Result<_>>()?;
    let base_clauses = builder.clauses.clone();
    let base_vars = builder.num_vars() as i32;
    for k in (0..=n as usize).rev() {
        let mut clauses = base_clauses.clone();
        let mut next_var = base_vars + 1;
        cardinality::at_least(&mut clauses, &mut next_var, &selectors, k);
        if let Some(model) = solve_clauses((next_var - 1) as usize, &clauses) {
            let partition = decode_model(&model, &var_map)
                .expect("the encoding embeds the transitivity clauses");
            return Ok((k as u32, partition));
        }
    }
    unreachable!("threshold 0 imposes no cardinality constraint, so some partition satisfies it")
}

/// A Pareto-optimal partition, built greedily: walk the players in order and
/// keep each goal that is still jointly satisfiable with the goals kept so
/// far; any model of the kept set satisfies exactly a maximal consistent
/// goal set, so no partition dominates it.
pub fn find_pareto(game: &BooleanHedonicGame) -> Result<Partition> {
    let n = game.n();
    let mut kept: Vec<Formula> = Vec::new();
    for i in game.players() {
        let goal = game.goal(i)?.clone();
        let candidate = Formula::conj(kept.iter().cloned().chain([goal.clone()]));
        let doc = super::compile_cnf(&candidate, n)?;
        if super::sat(&doc).partition().is_some() {
            kept.push(goal);
        }
    }
    let doc = super::compile_cnf(&Formula::conj(kept), n)?;
    match super::sat(&doc) {
        super::SolveResult::Sat { partition, .. } => Ok(partition),
        super::SolveResult::Unsat => unreachable!("every kept prefix was checked satisfiable"),
    }
}

/// Assigns membership variables `1..=r` to the players of `universe` in
/// ascending order.
fn membership_vars(universe: &[Player]) -> impl Fn(Player) -> Option<i32> + '_ {
    move |p: Player| {
        universe
            .iter()
            .position(|&q| q == p)
            .map(|ix| ix as i32 + 1)
    }
}

/// Core-stable partition by greedy extraction: repeatedly split off a
/// largest coalition whose members are all satisfied standing alone; when
/// none exists the leftovers become singletons. Every extracted member is
/// satisfied, so no group of them can strictly improve; and no group of
/// leftovers can either, or it would have been extracted.
pub fn greedy_core(game: &BooleanHedonicGame) -> Result<Partition> {
    if game.is_relaxed() {
        return Err(Error::RequiresStrictGame {
            what: "the greedy core construction",
        });
    }
    let n = game.n();
    let mut remaining: Vec<Player> = game.players().collect();
    let mut blocks: Vec<Coalition> = Vec::new();
    while !remaining.is_empty() {
        match largest_self_satisfying(game, &remaining)? {
            None => break,
            Some(found) => {
                remaining.retain(|p| !found.contains(p));
                blocks.push(found);
            }
        }
    }
    for p in remaining {
        blocks.push([p].into_iter().collect());
    }
    Partition::new(n, blocks)
}

/// The largest `S ⊆ remaining` such that `S` standing alone satisfies every
/// member, found by a descending cardinality search over a membership
/// encoding: goal atoms `p(i,j)` become `m_j` when `j` is still available
/// and `⊥` when `j` is already seated elsewhere.
fn largest_self_satisfying(
    game: &BooleanHedonicGame,
    remaining: &[Player],
) -> Result<Option<Coalition>> {
    let r = remaining.len();
    let mut builder = CnfBuilder::new(r);
    let falsum = -builder.constant_true();
    let var_of = membership_vars(remaining);
    for (ix, &i) in remaining.iter().enumerate() {
        let m_i = ix as i32 + 1;
        let satisfied = builder.tseitin(game.goal(i)?, &mut |v| {
            let j = v.partner(i).ok_or(Error::NonLocalAtom { var: v, player: i })?;
            Ok(var_of(j).map_or(falsum, |m_j| m_j))
        })?;
        builder.clauses.push(vec![-m_i, satisfied]);
    }
    let base_vars = builder.num_vars() as i32;
    let members: Vec<i32> = (1..=r as i32).collect();
    for k in (1..=r).rev() {
        let mut clauses = builder.clauses.clone();
        let mut next_var = base_vars + 1;
        cardinality::at_least(&mut clauses, &mut next_var, &members, k);
        if let Some(model) = solve_clauses((next_var - 1) as usize, &clauses) {
            let found: Coalition = remaining
                .iter()
                .enumerate()
                .filter(|(ix, _)| model[*ix])
                .map(|(_, &p)| p)
                .collect();
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// Searches for a strictly blocking coalition at `pi`: a nonempty group
/// whose members are all unsatisfied and would all be satisfied standing
/// alone. Strict-mode games get a membership encoding (atoms `p(i,j)`
/// become membership variables `m_j`); relaxed games fall back to scanning
/// subsets of the unsatisfied players, which is capped at 20 of them.
pub fn exists_blocking_coalition(
    game: &BooleanHedonicGame,
    pi: &Partition,
) -> Result<Option<Coalition>> {
    let profile = game.satisfaction_profile(pi)?;
    if game.is_relaxed() {
        let universe: Vec<Player> = game
            .players()
            .filter(|i| !profile.satisfied.contains(i))
            .collect();
        guard_fallback(universe.len())?;
        return concepts::first_group_matching(&universe, &mut |group| {
            concepts::blocks(game, group, pi)
        });
    }
    let n = game.n() as usize;
    let mut builder = CnfBuilder::new(n);
    let mut nonempty: Vec<i32> = Vec::new();
    for i in game.players() {
        let m_i = i.0 as i32;
        if profile.satisfied.contains(&i) {
            builder.clauses.push(vec![-m_i]); // cannot strictly improve
            continue;
        }
        let satisfied_alone = builder.tseitin(game.goal(i)?, &mut |v| {
            let j = v.partner(i).ok_or(Error::NonLocalAtom { var: v, player: i })?;
            Ok(j.0 as i32)
        })?;
        builder.clauses.push(vec![-m_i, satisfied_alone]);
        nonempty.push(m_i);
    }
    builder.clauses.push(nonempty);
    match solve_clauses(builder.num_vars(), &builder.clauses) {
        None => Ok(None),
        Some(model) => {
            let group: Coalition = game.players().filter(|i| model[(i.0 - 1) as usize]).collect();
            assert!(
                concepts::blocks(game, &group, pi)?,
                "the membership encoding produced a non-blocking group"
            );
            Ok(Some(group))
        }
    }
}

/// Searches for a weakly blocking coalition at `pi`: standing alone keeps
/// every satisfied member satisfied and newly satisfies at least one member.
/// Strict-mode games get the membership encoding; relaxed games fall back to
/// scanning all groups, capped at 20 players.
pub fn exists_weakly_blocking_coalition(
    game: &BooleanHedonicGame,
    pi: &Partition,
) -> Result<Option<Coalition>> {
    let profile = game.satisfaction_profile(pi)?;
    if game.is_relaxed() {
        let universe: Vec<Player> = game.players().collect();
        guard_fallback(universe.len())?;
        return concepts::first_group_matching(&universe, &mut |group| {
            concepts::weakly_blocks(game, group, pi)
        });
    }
    let n = game.n() as usize;
    let mut builder = CnfBuilder::new(n);
    let mut improvers: Vec<i32> = Vec::new();
    for i in game.players() {
        let m_i = i.0 as i32;
        let satisfied_alone = builder.tseitin(game.goal(i)?, &mut |v| {
            let j = v.partner(i).ok_or(Error::NonLocalAtom { var: v, player: i })?;
            Ok(j.0 as i32)
        })?;
        if profile.satisfied.contains(&i) {
            // Joining must not cost a satisfied member its goal.
            builder.clauses.push(vec![-m_i, satisfied_alone]);
        } else {
            // d_i ↔ (m_i ∧ satisfied_alone): member i strictly improves.
            let d_i = builder.fresh();
            builder.clauses.push(vec![-d_i, m_i]);
            builder.clauses.push(vec![-d_i, satisfied_alone]);
            builder.clauses.push(vec![d_i, -m_i, -satisfied_alone]);
            improvers.push(d_i);
        }
    }
    builder.clauses.push(improvers); // someone strictly improves
    match solve_clauses(builder.num_vars(), &builder.clauses) {
        None => Ok(None),
        Some(model) => {
            let group: Coalition = game.players().filter(|i| model[(i.0 - 1) as usize]).collect();
            assert!(
                concepts::weakly_blocks(game, &group, pi)?,
                "the membership encoding produced a group that does not weakly block"
            );
            Ok(Some(group))
        }
    }
}

fn guard_fallback(count: usize) -> Result<()> {
    if count > 20 {
        return Err(Error::Guard {
            what: "the blocking-coalition scan for relaxed games",
            n: count as u32,
            max: 20,
            hint: "; relaxed goals rule out the membership encoding",
        });
    }
    Ok(())
}
