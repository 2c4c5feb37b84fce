//! Stability and optimality concepts for Boolean hedonic games.
//!
//! Every concept comes as a direct checker over a concrete partition
//! ([`check_concept`] and the `is_*`/`check_*` functions). The stability
//! concepts whose defining condition is expressible inside the goal language
//! additionally come as a single formula whose models are exactly the stable
//! partitions (`*_formula`); those formulas feed the SAT back end.

use std::fmt;
use std::str::FromStr;

use crate::deviation::{deviation_subst, forget_exists, group_subst, move_subst, swap_subst};
use crate::error::{Error, Result};
use crate::game::BooleanHedonicGame;
use crate::logic::Formula;
use crate::partitions::{Coalition, Partition, Player};
use crate::solve::{
    compile_cnf, exists_blocking_coalition, exists_weakly_blocking_coalition, max_welfare, sat,
    SolveResult,
};

/// The solution concepts this crate can decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Concept {
    IndividuallyRational,
    Perfect,
    NashStable,
    CoreStable,
    StrictCoreStable,
    EnvyFree,
    ParetoOptimal,
    WelfareOptimal,
}

impl Concept {
    /// Every concept, in the order reports are listed when "all" is asked for.
    pub const ALL: [Concept; 8] = [
        Concept::IndividuallyRational,
        Concept::Perfect,
        Concept::NashStable,
        Concept::CoreStable,
        Concept::StrictCoreStable,
        Concept::EnvyFree,
        Concept::ParetoOptimal,
        Concept::WelfareOptimal,
    ];

    /// The stable command-line identifier of the concept.
    pub fn identifier(self) -> &'static str {
        match self {
            Concept::IndividuallyRational => "ir",
            Concept::Perfect => "perfect",
            Concept::NashStable => "nash",
            Concept::CoreStable => "core",
            Concept::StrictCoreStable => "strict-core",
            Concept::EnvyFree => "envy-free",
            Concept::ParetoOptimal => "pareto",
            Concept::WelfareOptimal => "welfare-optimal",
        }
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.identifier())
    }
}

impl FromStr for Concept {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Concept::ALL
            .into_iter()
            .find(|c| c.identifier() == s)
            .ok_or_else(|| Error::UnknownConcept { name: s.to_string() })
    }
}

/// Evidence that a concept fails at a partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A player who strictly gains by moving to `target` (empty = stand alone).
    Deviation { player: Player, target: Coalition },
    /// A coalition that (weakly) blocks by standing alone.
    Group(Coalition),
    /// A player who strictly gains by swapping places with another.
    Envy { envious: Player, envied: Player },
}

fn join(group: &Coalition) -> String {
    group
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Deviation { player, target } if target.is_empty() => {
                write!(f, "{player} -> alone")
            }
            Witness::Deviation { player, target } => write!(f, "{player} -> {}", join(target)),
            Witness::Group(group) => f.write_str(&join(group)),
            Witness::Envy { envious, envied } => write!(f, "{envious} envies {envied}"),
        }
    }
}

/// The outcome of checking one concept at one partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptReport {
    pub concept: Concept,
    pub holds: bool,
    /// Present exactly when the concept fails for a reason a single
    /// deviation, group or swap can exhibit.
    pub witness: Option<Witness>,
}

impl ConceptReport {
    fn pass(concept: Concept) -> Self {
        ConceptReport {
            concept,
            holds: true,
            witness: None,
        }
    }

    fn fail(concept: Concept, witness: Witness) -> Self {
        ConceptReport {
            concept,
            holds: false,
            witness: Some(witness),
        }
    }
}

/// Checks one concept at `pi`, reporting a witness when it fails.
pub fn check_concept(
    game: &BooleanHedonicGame,
    pi: &Partition,
    concept: Concept,
) -> Result<ConceptReport> {
    match concept {
        Concept::IndividuallyRational => check_individual_rationality(game, pi),
        Concept::Perfect => check_perfect(game, pi),
        Concept::NashStable => check_nash_stability(game, pi),
        Concept::CoreStable => check_core_stability(game, pi),
        Concept::StrictCoreStable => check_strict_core_stability(game, pi),
        Concept::EnvyFree => check_envy_freeness(game, pi),
        Concept::ParetoOptimal => check_pareto_optimality(game, pi),
        Concept::WelfareOptimal => check_welfare_optimality(game, pi),
    }
}

/// Whether `pi` gives player `i` at least what standing alone would give.
pub fn is_acceptable(game: &BooleanHedonicGame, i: Player, pi: &Partition) -> Result<bool> {
    let alone = pi.move_to(&[i].into_iter().collect(), &Coalition::new())?;
    Ok(game.is_satisfied(i, pi)? || !game.is_satisfied(i, &alone)?)
}

/// No player strictly gains by standing alone.
pub fn check_individual_rationality(
    game: &BooleanHedonicGame,
    pi: &Partition,
) -> Result<ConceptReport> {
    game.check_partition(pi)?;
    for i in game.players() {
        if !is_acceptable(game, i, pi)? {
            return Ok(ConceptReport::fail(
                Concept::IndividuallyRational,
                Witness::Deviation {
                    player: i,
                    target: Coalition::new(),
                },
            ));
        }
    }
    Ok(ConceptReport::pass(Concept::IndividuallyRational))
}

pub fn is_individually_rational(game: &BooleanHedonicGame, pi: &Partition) -> Result<bool> {
    Ok(check_individual_rationality(game, pi)?.holds)
}

/// The partitions satisfying this formula are exactly the individually
/// rational ones: for each player, being satisfied alone implies being
/// satisfied as seated.
pub fn ir_formula(game: &BooleanHedonicGame) -> Result<Formula> {
    let conjuncts = game
        .players()
        .map(|i| {
            let goal = game.goal(i)?;
            Ok(deviation_subst(goal, i, &Coalition::new())?.implies(goal.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Formula::conj(conjuncts))
}

/// Every player's goal holds.
pub fn is_perfect(game: &BooleanHedonicGame, pi: &Partition) -> Result<bool> {
    Ok(game.satisfaction_profile(pi)?.satisfied.len() == game.n() as usize)
}

pub fn check_perfect(game: &BooleanHedonicGame, pi: &Partition) -> Result<ConceptReport> {
    Ok(ConceptReport {
        concept: Concept::Perfect,
        holds: is_perfect(game, pi)?,
        witness: None,
    })
}

/// The conjunction of all goals: its models are exactly the perfect
/// partitions.
pub fn perfect_formula(game: &BooleanHedonicGame) -> Formula {
    Formula::conj(game.goals().iter().cloned())
}

/// No single player strictly gains by joining an existing coalition or
/// standing alone. Candidate targets are tried in ascending order with
/// "stand alone" last, so the reported witness is deterministic.
pub fn check_nash_stability(game: &BooleanHedonicGame, pi: &Partition) -> Result<ConceptReport> {
    game.check_partition(pi)?;
    for i in game.players() {
        if game.is_satisfied(i, pi)? {
            continue; // already satisfied, no strict gain possible
        }
        let mover: Coalition = [i].into_iter().collect();
        let mut targets: Vec<Coalition> = pi.restrict_minus(&mover).into_iter().collect();
        targets.push(Coalition::new());
        for target in targets {
            let moved = pi.move_to(&mover, &target)?;
            if game.is_satisfied(i, &moved)? {
                return Ok(ConceptReport::fail(
                    Concept::NashStable,
                    Witness::Deviation { player: i, target },
                ));
            }
        }
    }
    Ok(ConceptReport::pass(Concept::NashStable))
}

pub fn is_nash_stable(game: &BooleanHedonicGame, pi: &Partition) -> Result<bool> {
    Ok(check_nash_stability(game, pi)?.holds)
}

/// Nash stability as a formula: for each player, "the goal is achievable by
/// some unilateral move" implies "the goal already holds". Built on
/// [`forget_exists`], so it is limited to 10 players.
pub fn nash_formula(game: &BooleanHedonicGame) -> Result<Formula> {
    let n = game.n();
    let conjuncts = game
        .players()
        .map(|i| {
            let goal = game.goal(i)?;
            Ok(forget_exists(i, goal, n)?.implies(goal.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Formula::conj(conjuncts))
}

/// Nash stability as a polynomial-size formula, available for strict-mode
/// games: a unilateral move lands either next to some other player `j` or
/// alone, and each case is a single substitution of the mover's goal.
pub fn nash_formula_compact(game: &BooleanHedonicGame) -> Result<Formula> {
    if game.is_relaxed() {
        return Err(Error::RequiresStrictGame {
            what: "the compact Nash-stability formula",
        });
    }
    let conjuncts = game
        .players()
        .map(|i| {
            let goal = game.goal(i)?;
            let mut cases: Vec<Formula> = game
                .players()
                .filter(|&j| j != i)
                .map(|j| Ok(move_subst(goal, i, j)?.implies(goal.clone())))
                .collect::<Result<_>>()?;
            cases.push(deviation_subst(goal, i, &Coalition::new())?.implies(goal.clone()));
            Ok(Formula::conj(cases))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Formula::conj(conjuncts))
}

/// Whether `group`, by standing alone, makes every member strictly better
/// off (all members unsatisfied at `pi`, all satisfied after).
pub fn blocks(game: &BooleanHedonicGame, group: &Coalition, pi: &Partition) -> Result<bool> {
    if group.is_empty() {
        return Err(Error::EmptyGroup);
    }
    let moved = pi.move_to(group, &Coalition::new())?;
    for &i in group {
        if game.is_satisfied(i, pi)? || !game.is_satisfied(i, &moved)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `group`, by standing alone, keeps every satisfied member
/// satisfied and makes at least one member strictly better off.
pub fn weakly_blocks(game: &BooleanHedonicGame, group: &Coalition, pi: &Partition) -> Result<bool> {
    if group.is_empty() {
        return Err(Error::EmptyGroup);
    }
    let moved = pi.move_to(group, &Coalition::new())?;
    let mut someone_gains = false;
    for &i in group {
        let before = game.is_satisfied(i, pi)?;
        let after = game.is_satisfied(i, &moved)?;
        if before && !after {
            return Ok(false);
        }
        someone_gains |= after && !before;
    }
    Ok(someone_gains)
}

/// The condition "`group` blocks" as a formula over the current partition.
pub fn blocking_formula(game: &BooleanHedonicGame, group: &Coalition) -> Result<Formula> {
    if group.is_empty() {
        return Err(Error::EmptyGroup);
    }
    let conjuncts = group
        .iter()
        .map(|&i| {
            let goal = game.goal(i)?;
            Ok(goal.clone().not().and(group_subst(goal, group)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Formula::conj(conjuncts))
}

/// The condition "`group` weakly blocks" as a formula over the current
/// partition.
pub fn weak_blocking_formula(game: &BooleanHedonicGame, group: &Coalition) -> Result<Formula> {
    if group.is_empty() {
        return Err(Error::EmptyGroup);
    }
    let keeps_satisfied = group
        .iter()
        .map(|&j| {
            let goal = game.goal(j)?;
            Ok(goal.clone().implies(group_subst(goal, group)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let someone_gains = group
        .iter()
        .map(|&i| {
            let goal = game.goal(i)?;
            Ok(goal.clone().not().and(group_subst(goal, group)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Formula::conj(keeps_satisfied).and(Formula::disj(someone_gains)))
}

/// Visits the nonempty subsets of `universe` (assumed sorted ascending) in
/// lexicographic order of their sorted member lists, returning the first
/// one the predicate accepts.
pub(crate) fn first_group_matching<F>(universe: &[Player], pred: &mut F) -> Result<Option<Coalition>>
where
    F: FnMut(&Coalition) -> Result<bool>,
{
    fn visit<F>(
        universe: &[Player],
        start: usize,
        current: &mut Coalition,
        pred: &mut F,
    ) -> Result<Option<Coalition>>
    where
        F: FnMut(&Coalition) -> Result<bool>,
    {
        for ix in start..universe.len() {
            current.insert(universe[ix]);
            if pred(current)? {
                return Ok(Some(current.clone()));
            }
            if let Some(found) = visit(universe, ix + 1, current, pred)? {
                return Ok(Some(found));
            }
            current.remove(&universe[ix]);
        }
        Ok(None)
    }
    visit(universe, 0, &mut Coalition::new(), pred)
}

/// All nonempty subsets of `universe` in the same lexicographic order.
fn groups_lex(universe: &[Player]) -> Vec<Coalition> {
    let mut out = Vec::new();
    let mut current = Coalition::new();
    fn visit(universe: &[Player], start: usize, current: &mut Coalition, out: &mut Vec<Coalition>) {
        for ix in start..universe.len() {
            current.insert(universe[ix]);
            out.push(current.clone());
            visit(universe, ix + 1, current, out);
            current.remove(&universe[ix]);
        }
    }
    visit(universe, 0, &mut current, &mut out);
    out
}

/// No coalition blocks. Up to 6 players every group is scanned in
/// lexicographic order, so the witness is the least blocking group; beyond
/// that the search is delegated to the SAT back end.
pub fn check_core_stability(game: &BooleanHedonicGame, pi: &Partition) -> Result<ConceptReport> {
    game.check_partition(pi)?;
    let found = if game.n() <= 6 {
        let universe: Vec<Player> = game.players().collect();
        first_group_matching(&universe, &mut |group| blocks(game, group, pi))?
    } else {
        exists_blocking_coalition(game, pi)?
    };
    Ok(match found {
        None => ConceptReport::pass(Concept::CoreStable),
        Some(group) => ConceptReport::fail(Concept::CoreStable, Witness::Group(group)),
    })
}

pub fn is_core_stable(game: &BooleanHedonicGame, pi: &Partition) -> Result<bool> {
    Ok(check_core_stability(game, pi)?.holds)
}

/// No coalition weakly blocks. Same search strategy as the core check.
pub fn check_strict_core_stability(
    game: &BooleanHedonicGame,
    pi: &Partition,
) -> Result<ConceptReport> {
    game.check_partition(pi)?;
    let found = if game.n() <= 6 {
        let universe: Vec<Player> = game.players().collect();
        first_group_matching(&universe, &mut |group| weakly_blocks(game, group, pi))?
    } else {
        exists_weakly_blocking_coalition(game, pi)?
    };
    Ok(match found {
        None => ConceptReport::pass(Concept::StrictCoreStable),
        Some(group) => ConceptReport::fail(Concept::StrictCoreStable, Witness::Group(group)),
    })
}

pub fn is_strict_core_stable(game: &BooleanHedonicGame, pi: &Partition) -> Result<bool> {
    Ok(check_strict_core_stability(game, pi)?.holds)
}

fn guard_coalition_formula(what: &'static str, n: u32) -> Result<()> {
    if n > 6 {
        return Err(Error::Guard {
            what,
            n,
            max: 6,
            hint: "; it conjoins a clause per nonempty coalition",
        });
    }
    Ok(())
}

/// Core stability as a formula: for every nonempty coalition, some member
/// would not strictly gain if it stood alone. Exponential in the number of
/// players, hence limited to 6.
pub fn core_formula(game: &BooleanHedonicGame) -> Result<Formula> {
    guard_coalition_formula("the core-stability formula", game.n())?;
    let universe: Vec<Player> = game.players().collect();
    let conjuncts = groups_lex(&universe)
        .into_iter()
        .map(|group| {
            let disjuncts = group
                .iter()
                .map(|&i| {
                    let goal = game.goal(i)?;
                    Ok(group_subst(goal, &group)?.implies(goal.clone()))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Formula::disj(disjuncts))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Formula::conj(conjuncts))
}

/// Strict core stability as a formula: for every nonempty coalition, either
/// some satisfied member would lose by it standing alone, or no member
/// would gain. Exponential in the number of players, hence limited to 6.
pub fn strict_core_formula(game: &BooleanHedonicGame) -> Result<Formula> {
    guard_coalition_formula("the strict-core-stability formula", game.n())?;
    let universe: Vec<Player> = game.players().collect();
    let conjuncts = groups_lex(&universe)
        .into_iter()
        .map(|group| {
            let loses = group
                .iter()
                .map(|&j| {
                    let goal = game.goal(j)?;
                    Ok(goal.clone().and(group_subst(goal, &group)?.not()))
                })
                .collect::<Result<Vec<_>>>()?;
            let nobody_gains = group
                .iter()
                .map(|&i| {
                    let goal = game.goal(i)?;
                    Ok(group_subst(goal, &group)?.implies(goal.clone()))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Formula::disj(loses).or(Formula::conj(nobody_gains)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Formula::conj(conjuncts))
}

/// No player strictly gains by swapping places with another. Ordered pairs
/// are scanned ascending, so the witness is deterministic.
pub fn check_envy_freeness(game: &BooleanHedonicGame, pi: &Partition) -> Result<ConceptReport> {
    game.check_partition(pi)?;
    for i in game.players() {
        if game.is_satisfied(i, pi)? {
            continue; // already satisfied, no strict gain possible
        }
        for j in game.players().filter(|&j| j != i) {
            let swapped = pi.swap(i, j)?;
            if game.is_satisfied(i, &swapped)? {
                return Ok(ConceptReport::fail(
                    Concept::EnvyFree,
                    Witness::Envy {
                        envious: i,
                        envied: j,
                    },
                ));
            }
        }
    }
    Ok(ConceptReport::pass(Concept::EnvyFree))
}

pub fn is_envy_free(game: &BooleanHedonicGame, pi: &Partition) -> Result<bool> {
    Ok(check_envy_freeness(game, pi)?.holds)
}

/// Envy-freeness as a formula, available for strict-mode games: for each
/// ordered pair, holding the goal after the swap implies holding it now.
pub fn envy_free_formula(game: &BooleanHedonicGame) -> Result<Formula> {
    if game.is_relaxed() {
        return Err(Error::RequiresStrictGame {
            what: "the envy-freeness formula",
        });
    }
    let mut conjuncts = Vec::new();
    for i in game.players() {
        let goal = game.goal(i)?;
        for j in game.players().filter(|&j| j != i) {
            conjuncts.push(swap_subst(goal, i, j)?.implies(goal.clone()));
        }
    }
    Ok(Formula::conj(conjuncts))
}

/// No partition satisfies a strict superset of the players satisfied here,
/// decided by one unsatisfiability query: keep every satisfied goal and ask
/// for at least one currently unsatisfied goal on top.
pub fn is_pareto_optimal(game: &BooleanHedonicGame, pi: &Partition) -> Result<bool> {
    let profile = game.satisfaction_profile(pi)?;
    let mut keep = Vec::new();
    let mut gain = Vec::new();
    for i in game.players() {
        let goal = game.goal(i)?.clone();
        if profile.satisfied.contains(&i) {
            keep.push(goal);
        } else {
            gain.push(goal);
        }
    }
    let dominator = Formula::conj(keep).and(Formula::disj(gain));
    let doc = compile_cnf(&dominator, game.n())?;
    Ok(matches!(sat(&doc), SolveResult::Unsat))
}

pub fn check_pareto_optimality(game: &BooleanHedonicGame, pi: &Partition) -> Result<ConceptReport> {
    Ok(ConceptReport {
        concept: Concept::ParetoOptimal,
        holds: is_pareto_optimal(game, pi)?,
        witness: None,
    })
}

/// The number of satisfied players is the maximum over all partitions.
pub fn is_welfare_optimal(game: &BooleanHedonicGame, pi: &Partition) -> Result<bool> {
    let (best, _) = max_welfare(game)?;
    Ok(game.welfare(pi)? == best)
}

pub fn check_welfare_optimality(
    game: &BooleanHedonicGame,
    pi: &Partition,
) -> Result<ConceptReport> {
    Ok(ConceptReport {
        concept: Concept::WelfareOptimal,
        holds: is_welfare_optimal(game, pi)?,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::evaluate;
    use crate::partitions::{coalition, enumerate_partitions, parse_partition};
    use crate::testgames::{g1, g2, g3};

    fn part(text: &str) -> Partition {
        parse_partition(text).unwrap()
    }

    #[test]
    fn identifiers_round_trip() {
        for concept in Concept::ALL {
            assert_eq!(concept.identifier().parse::<Concept>().unwrap(), concept);
        }
        assert!(matches!(
            "nash-stable".parse::<Concept>(),
            Err(Error::UnknownConcept { .. })
        ));
    }

    #[test]
    fn witnesses_render_as_short_phrases() {
        let alone = Witness::Deviation {
            player: Player(4),
            target: Coalition::new(),
        };
        assert_eq!(alone.to_string(), "4 -> alone");
        let join = Witness::Deviation {
            player: Player(1),
            target: coalition([2, 3]),
        };
        assert_eq!(join.to_string(), "1 -> 2,3");
        assert_eq!(Witness::Group(coalition([1, 2, 4])).to_string(), "1,2,4");
        let envy = Witness::Envy {
            envious: Player(3),
            envied: Player(4),
        };
        assert_eq!(envy.to_string(), "3 envies 4");
    }

    #[test]
    fn the_example_game_has_a_unique_perfect_partition() {
        let game = g1();
        let perfect: Vec<Partition> = enumerate_partitions(4)
            .unwrap()
            .filter(|pi| is_perfect(&game, pi).unwrap())
            .collect();
        assert_eq!(perfect, vec![part("1,2,3|4")]);
        for concept in Concept::ALL {
            let report = check_concept(&game, &part("1,2,3|4"), concept).unwrap();
            assert!(report.holds, "{concept} should hold");
            assert_eq!(report.witness, None);
        }
    }

    #[test]
    fn nash_failure_reports_the_least_improving_move() {
        let report = check_nash_stability(&g1(), &part("1|2,3|4")).unwrap();
        assert!(!report.holds);
        assert_eq!(
            report.witness,
            Some(Witness::Deviation {
                player: Player(1),
                target: coalition([2, 3]),
            })
        );
        // The move in the witness indeed satisfies the mover.
        let moved = part("1|2,3|4")
            .move_to(&coalition([1]), &coalition([2, 3]))
            .unwrap();
        assert!(g1().is_satisfied(Player(1), &moved).unwrap());
    }

    #[test]
    fn core_holds_but_strict_core_fails_at_the_pair_split() {
        let game = g1();
        let pi = part("1,4|2,3");
        assert!(is_core_stable(&game, &pi).unwrap());
        let report = check_strict_core_stability(&game, &pi).unwrap();
        assert!(!report.holds);
        // {1,2,3} is the least weakly blocking group; {1,2,4} also blocks.
        assert_eq!(report.witness, Some(Witness::Group(coalition([1, 2, 3]))));
        assert!(weakly_blocks(&game, &coalition([1, 2, 4]), &pi).unwrap());
    }

    #[test]
    fn envy_failure_names_the_first_envious_pair() {
        let report = check_envy_freeness(&g1(), &part("1|2,4|3")).unwrap();
        assert!(!report.holds);
        assert_eq!(
            report.witness,
            Some(Witness::Envy {
                envious: Player(3),
                envied: Player(4),
            })
        );
    }

    #[test]
    fn exactly_two_partitions_fail_individual_rationality() {
        let game = g1();
        let mut failures = Vec::new();
        for pi in enumerate_partitions(4).unwrap() {
            let report = check_individual_rationality(&game, &pi).unwrap();
            if !report.holds {
                assert_eq!(
                    report.witness,
                    Some(Witness::Deviation {
                        player: Player(4),
                        target: Coalition::new(),
                    })
                );
                failures.push(pi);
            }
        }
        assert_eq!(failures, vec![part("1,2,3,4"), part("1|2,3,4")]);
    }

    #[test]
    fn the_two_player_standoff_has_no_nash_stable_partition() {
        let game = g2();
        for pi in enumerate_partitions(2).unwrap() {
            assert!(!is_nash_stable(&game, &pi).unwrap(), "{pi}");
        }
        // The compact formula agrees: it is unsatisfiable.
        let formula = nash_formula_compact(&game).unwrap();
        let doc = compile_cnf(&formula, 2).unwrap();
        assert!(matches!(sat(&doc), SolveResult::Unsat));
    }

    #[test]
    fn the_line_game_has_an_empty_strict_core() {
        let game = g3();
        for pi in enumerate_partitions(3).unwrap() {
            let report = check_strict_core_stability(&game, &pi).unwrap();
            assert!(!report.holds, "{pi}");
            let witness = match report.witness {
                Some(Witness::Group(group)) => group,
                other => panic!("expected a group witness, got {other:?}"),
            };
            assert!(witness == coalition([1, 2]) || witness == coalition([2, 3]), "{pi}");
            assert!(weakly_blocks(&game, &witness, &pi).unwrap());
        }
    }

    #[test]
    fn formulas_agree_with_the_checkers_on_the_example_game() {
        let game = g1();
        let ir = ir_formula(&game).unwrap();
        let nash = nash_formula(&game).unwrap();
        let nash_compact = nash_formula_compact(&game).unwrap();
        let core = core_formula(&game).unwrap();
        let strict = strict_core_formula(&game).unwrap();
        let envy = envy_free_formula(&game).unwrap();
        let perfect = perfect_formula(&game);
        for pi in enumerate_partitions(4).unwrap() {
            assert_eq!(
                evaluate(&pi, &ir).unwrap(),
                is_individually_rational(&game, &pi).unwrap(),
                "ir at {pi}"
            );
            assert_eq!(
                evaluate(&pi, &nash).unwrap(),
                is_nash_stable(&game, &pi).unwrap(),
                "nash at {pi}"
            );
            assert_eq!(
                evaluate(&pi, &nash_compact).unwrap(),
                is_nash_stable(&game, &pi).unwrap(),
                "compact nash at {pi}"
            );
            assert_eq!(
                evaluate(&pi, &core).unwrap(),
                is_core_stable(&game, &pi).unwrap(),
                "core at {pi}"
            );
            assert_eq!(
                evaluate(&pi, &strict).unwrap(),
                is_strict_core_stable(&game, &pi).unwrap(),
                "strict core at {pi}"
            );
            assert_eq!(
                evaluate(&pi, &envy).unwrap(),
                is_envy_free(&game, &pi).unwrap(),
                "envy at {pi}"
            );
            assert_eq!(
                evaluate(&pi, &perfect).unwrap(),
                is_perfect(&game, &pi).unwrap(),
                "perfect at {pi}"
            );
        }
    }

    #[test]
    fn blocking_formulas_match_the_predicates() {
        let game = g1();
        let universe: Vec<Player> = game.players().collect();
        for group in groups_lex(&universe) {
            let strict = blocking_formula(&game, &group).unwrap();
            let weak = weak_blocking_formula(&game, &group).unwrap();
            for pi in enumerate_partitions(4).unwrap() {
                assert_eq!(
                    evaluate(&pi, &strict).unwrap(),
                    blocks(&game, &group, &pi).unwrap(),
                    "blocks({group:?}) at {pi}"
                );
                assert_eq!(
                    evaluate(&pi, &weak).unwrap(),
                    weakly_blocks(&game, &group, &pi).unwrap(),
                    "weakly_blocks({group:?}) at {pi}"
                );
            }
        }
    }

    #[test]
    fn pareto_and_welfare_verdicts_on_the_example_game() {
        let game = g1();
        assert!(is_pareto_optimal(&game, &part("1,2,3|4")).unwrap());
        assert!(is_welfare_optimal(&game, &part("1,2,3|4")).unwrap());
        // Singletons satisfy only player 4 and are dominated by 1,2,3|4.
        assert!(!is_pareto_optimal(&game, &part("1|2|3|4")).unwrap());
        assert!(!is_welfare_optimal(&game, &part("1|2|3|4")).unwrap());
        // A perfect partition is always Pareto-optimal (no strict superset).
        let welfare_optima: Vec<Partition> = enumerate_partitions(4)
            .unwrap()
            .filter(|pi| is_welfare_optimal(&game, pi).unwrap())
            .collect();
        assert_eq!(welfare_optima, vec![part("1,2,3|4")]);
    }

    #[test]
    fn lexicographic_group_order_is_respected() {
        let universe: Vec<Player> = (1..=3).map(Player).collect();
        let listed: Vec<String> = groups_lex(&universe).iter().map(join).collect();
        assert_eq!(
            listed,
            vec!["1", "1,2", "1,2,3", "1,3", "2", "2,3", "3"]
        );
        // first_group_matching visits the same order.
        let mut seen = Vec::new();
        let found = first_group_matching(&universe, &mut |group| {
            seen.push(join(group));
            Ok(group.len() == 2 && group.contains(&Player(3)))
        })
        .unwrap();
        assert_eq!(found, Some(coalition([1, 3])));
        assert_eq!(seen, vec!["1", "1,2", "1,2,3", "1,3"]);
    }

    #[test]
    fn formula_guards_reject_oversized_games() {
        let goals = (1..=7)
            .map(|_| Formula::Top)
            .collect::<Vec<_>>();
        let game = BooleanHedonicGame::new(goals).unwrap();
        assert!(matches!(core_formula(&game), Err(Error::Guard { .. })));
        assert!(matches!(strict_core_formula(&game), Err(Error::Guard { .. })));
        // The direct checkers still work beyond the formula guard.
        assert!(is_core_stable(&game, &Partition::grand(7)).unwrap());
    }

    #[test]
    fn relaxed_games_cannot_use_strict_only_formulas() {
        let relaxed = BooleanHedonicGame::new_relaxed(vec![
            Formula::atom(2, 3).unwrap(),
            Formula::Top,
            Formula::Top,
        ])
        .unwrap();
        assert!(matches!(
            nash_formula_compact(&relaxed),
            Err(Error::RequiresStrictGame { .. })
        ));
        assert!(matches!(
            envy_free_formula(&relaxed),
            Err(Error::RequiresStrictGame { .. })
        ));
        // The checker side still works on relaxed games.
        assert!(is_envy_free(&relaxed, &Partition::grand(3)).unwrap());
    }
}
