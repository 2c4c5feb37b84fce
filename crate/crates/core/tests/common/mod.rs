//! Helpers shared by the integration-test binaries: fixture loading,
//! independent oracles, and seeded random generators.
#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use hedonic::game::{BooleanHedonicGame, GameDocument};
use hedonic::logic::Formula;
use hedonic::partitions::{Coalition, Player};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Loads a game fixture from the repository's `fixtures/` directory.
pub fn load_game(name: &str) -> BooleanHedonicGame {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect();
    let text = fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read fixture {}: {e}", path.display()));
    let doc: GameDocument =
        serde_json::from_str(&text).unwrap_or_else(|e| panic!("fixture {name} is not JSON: {e}"));
    BooleanHedonicGame::from_document(&doc)
        .unwrap_or_else(|e| panic!("fixture {name} is not a valid game: {e}"))
}

/// The number of partitions of an `n`-element set, computed independently
/// of the library via the Bell triangle: each row starts with the previous
/// row's last entry and adds the neighbour above-left.
pub fn bell_number(n: u32) -> u64 {
    let mut row = vec![1u64];
    for _ in 1..=n {
        let mut next = vec![*row.last().unwrap()];
        for &above in &row {
            let last = *next.last().unwrap();
            next.push(last + above);
        }
        row = next;
    }
    row[0]
}

/// All nonempty subsets of `universe`, in lexicographic order of their
/// sorted member lists.
pub fn nonempty_subsets(universe: &[Player]) -> Vec<Coalition> {
    let mut out = Vec::new();
    fn visit(universe: &[Player], start: usize, current: &mut Coalition, out: &mut Vec<Coalition>) {
        for ix in start..universe.len() {
            current.insert(universe[ix]);
            out.push(current.clone());
            visit(universe, ix + 1, current, out);
            current.remove(&universe[ix]);
        }
    }
    visit(universe, 0, &mut Coalition::new(), &mut out);
    out
}

/// A random formula over the pair variables of players `1..=n` (any pair),
/// with roughly `2^depth` nodes.
pub fn random_formula(rng: &mut ChaCha8Rng, n: u32, depth: u32) -> Formula {
    assert!(n >= 2, "pair variables need at least two players");
    if depth == 0 {
        return match rng.gen_range(0..10) {
            0 => Formula::Top,
            1 => Formula::Bot,
            _ => {
                let i = rng.gen_range(1..=n);
                let mut j = rng.gen_range(1..=n - 1);
                if j >= i {
                    j += 1;
                }
                Formula::atom(i, j).expect("distinct players")
            }
        };
    }
    let left = random_formula(rng, n, depth - 1);
    match rng.gen_range(0..5) {
        0 => left.not(),
        1 => left.and(random_formula(rng, n, depth - 1)),
        2 => left.or(random_formula(rng, n, depth - 1)),
        3 => left.implies(random_formula(rng, n, depth - 1)),
        _ => left.iff(random_formula(rng, n, depth - 1)),
    }
}

/// A random formula over player `i`'s own pair variables only.
pub fn random_local_formula(rng: &mut ChaCha8Rng, i: Player, n: u32, depth: u32) -> Formula {
    assert!(n >= 2 && i.0 >= 1 && i.0 <= n);
    if depth == 0 {
        return match rng.gen_range(0..10) {
            0 => Formula::Top,
            1 => Formula::Bot,
            _ => {
                let mut j = rng.gen_range(1..=n - 1);
                if j >= i.0 {
                    j += 1;
                }
                Formula::atom(i.0, j).expect("distinct players")
            }
        };
    }
    let left = random_local_formula(rng, i, n, depth - 1);
    match rng.gen_range(0..5) {
        0 => left.not(),
        1 => left.and(random_local_formula(rng, i, n, depth - 1)),
        2 => left.or(random_local_formula(rng, i, n, depth - 1)),
        3 => left.implies(random_local_formula(rng, i, n, depth - 1)),
        _ => left.iff(random_local_formula(rng, i, n, depth - 1)),
    }
}

/// A random strict-mode game: each player marks a random set of the
/// coalitions containing it as satisfactory, and the goal is built from
/// that list.
pub fn random_strict_game(rng: &mut ChaCha8Rng, n: u32) -> BooleanHedonicGame {
    let goals = (1..=n)
        .map(Player)
        .map(|i| {
            let others: Vec<Player> = (1..=n).map(Player).filter(|&j| j != i).collect();
            let mut satisfactory = Vec::new();
            // Every coalition containing i is {i} ∪ (subset of the others).
            let mut own = Coalition::new();
            own.insert(i);
            if rng.gen_bool(0.3) {
                satisfactory.push(own.clone());
            }
            for mut subset in nonempty_subsets(&others) {
                if rng.gen_bool(0.3) {
                    subset.insert(i);
                    satisfactory.push(subset);
                }
            }
            hedonic::game::goal_from_coalition_list(i, &satisfactory, n)
                .expect("generated coalitions contain their owner")
        })
        .collect();
    BooleanHedonicGame::new(goals).expect("coalition-list goals are local")
}

/// A random 3-literal CNF over `num_vars` variables.
pub fn random_cnf(rng: &mut ChaCha8Rng, num_vars: usize, num_clauses: usize) -> Vec<Vec<i32>> {
    (0..num_clauses)
        .map(|_| {
            (0..3)
                .map(|_| {
                    let v = rng.gen_range(1..=num_vars as i32);
                    if rng.gen_bool(0.5) {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect()
}

/// Exhaustive satisfiability oracle: scans all `2^num_vars` assignments.
pub fn truth_table_sat(num_vars: usize, clauses: &[Vec<i32>]) -> Option<Vec<bool>> {
    assert!(num_vars <= 20, "truth-table oracle is exponential");
    'next: for mask in 0u64..(1u64 << num_vars) {
        let assignment: Vec<bool> = (0..num_vars).map(|v| mask >> v & 1 == 1).collect();
        for clause in clauses {
            let satisfied = clause
                .iter()
                .any(|&lit| assignment[(lit.unsigned_abs() - 1) as usize] == (lit > 0));
            if !satisfied {
                continue 'next;
            }
        }
        return Some(assignment);
    }
    None
}

/// Whether a total assignment satisfies every clause.
pub fn satisfies(assignment: &[bool], clauses: &[Vec<i32>]) -> bool {
    clauses.iter().all(|clause| {
        clause
            .iter()
            .any(|&lit| assignment[(lit.unsigned_abs() - 1) as usize] == (lit > 0))
    })
}

// ---------------------------------------------------------------------------
// Shared property sweeps. Each sweep draws `trials` random instances from a
// fixed seed, asserts the property on every partition, and returns the number
// of instances exercised so callers can enforce a minimum.
// ---------------------------------------------------------------------------

pub const SEED_DEVIATION: u64 = 11;
pub const SEED_FORGETTING: u64 = 12;
pub const SEED_GROUP: u64 = 13;
pub const SEED_SWAP: u64 = 14;
pub const SEED_MOVE: u64 = 15;
pub const SEED_CHARACTERIZATION: u64 = 16;
pub const SEED_PARETO_CORE: u64 = 17;
pub const SEED_WELFARE: u64 = 18;
pub const SEED_BLOCKING: u64 = 19;
pub const SEED_DPLL: u64 = 20;

use hedonic::concepts;
use hedonic::deviation::{
    deviation_subst, forget_exists, group_subst, move_subst, partner_subsets, swap_subst,
};
use hedonic::logic::{evaluate, trans_formula};
use hedonic::partitions::enumerate_partitions;
use hedonic::solve;
use rand::SeedableRng;

fn random_n(rng: &mut ChaCha8Rng) -> u32 {
    rng.gen_range(2..=5)
}

/// Substituting a partner set into a goal predicts the goal's value after
/// the corresponding unilateral move; with the transitivity axiom conjoined,
/// the substitution is additionally false for every partner set that does
/// not name an existing coalition.
pub fn deviation_substitution_sweep(seed: u64, trials: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let n = random_n(&mut rng);
        let i = Player(rng.gen_range(1..=n));
        let phi = random_formula(&mut rng, n, 3);
        let mover: Coalition = [i].into_iter().collect();
        let with_trans = phi.clone().and(trans_formula(n));
        let substituted: Vec<(Coalition, Formula, Formula)> = partner_subsets(i, n)
            .into_iter()
            .map(|b| {
                let plain = deviation_subst(&phi, i, &b).unwrap();
                let guarded = deviation_subst(&with_trans, i, &b).unwrap();
                (b, plain, guarded)
            })
            .collect();
        for pi in enumerate_partitions(n).unwrap() {
            let residual = pi.restrict_minus(&mover);
            for (b, plain, guarded) in &substituted {
                let legal = b.is_empty() || residual.contains(b);
                if legal {
                    let moved = pi.move_to(&mover, b).unwrap();
                    assert_eq!(
                        evaluate(&pi, plain).unwrap(),
                        evaluate(&moved, &phi).unwrap(),
                        "substitution for {i} joining {b:?} diverged at {pi} on {phi}"
                    );
                }
                let lhs = evaluate(&pi, guarded).unwrap();
                let rhs = legal && evaluate(&pi.move_to(&mover, b).unwrap(), &phi).unwrap();
                assert_eq!(
                    lhs, rhs,
                    "guarded substitution for {i} joining {b:?} diverged at {pi} on {phi}"
                );
            }
        }
    }
    trials
}

/// The forgetting disjunction holds exactly when some unilateral move of the
/// player (joining an existing coalition or standing alone) makes the
/// formula true.
pub fn forgetting_sweep(seed: u64, trials: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let n = random_n(&mut rng);
        let i = Player(rng.gen_range(1..=n));
        let phi = random_formula(&mut rng, n, 3);
        let exists = forget_exists(i, &phi, n).unwrap();
        let mover: Coalition = [i].into_iter().collect();
        for pi in enumerate_partitions(n).unwrap() {
            let mut targets: Vec<Coalition> = pi.restrict_minus(&mover).into_iter().collect();
            targets.push(Coalition::new());
            let reachable = targets
                .iter()
                .any(|t| evaluate(&pi.move_to(&mover, t).unwrap(), &phi).unwrap());
            assert_eq!(
                evaluate(&pi, &exists).unwrap(),
                reachable,
                "forgetting diverged for {i} at {pi} on {phi}"
            );
        }
    }
    trials
}

/// The group substitution predicts a formula's value after the group walks
/// out to stand alone together.
pub fn group_deviation_sweep(seed: u64, trials: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let n = random_n(&mut rng);
        let phi = random_formula(&mut rng, n, 3);
        let mask = rng.gen_range(1u32..(1 << n));
        let group: Coalition = (1..=n).filter(|j| mask >> (j - 1) & 1 == 1).map(Player).collect();
        let subst = group_subst(&phi, &group).unwrap();
        for pi in enumerate_partitions(n).unwrap() {
            let moved = pi.move_to(&group, &Coalition::new()).unwrap();
            assert_eq!(
                evaluate(&pi, &subst).unwrap(),
                evaluate(&moved, &phi).unwrap(),
                "group substitution for {group:?} diverged at {pi} on {phi}"
            );
        }
    }
    trials
}

/// The swap substitution predicts a formula's value after two players trade
/// places.
pub fn swap_sweep(seed: u64, trials: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let n = random_n(&mut rng);
        let i = Player(rng.gen_range(1..=n));
        let mut j = Player(rng.gen_range(1..=n - 1));
        if j.0 >= i.0 {
            j = Player(j.0 + 1);
        }
        let phi = random_formula(&mut rng, n, 3);
        let subst = swap_subst(&phi, i, j).unwrap();
        for pi in enumerate_partitions(n).unwrap() {
            assert_eq!(
                evaluate(&pi, &subst).unwrap(),
                evaluate(&pi.swap(i, j).unwrap(), &phi).unwrap(),
                "swap substitution for {i}<->{j} diverged at {pi} on {phi}"
            );
        }
    }
    trials
}

/// The move substitution predicts a local goal's value after its owner
/// joins the named player's coalition.
pub fn move_substitution_sweep(seed: u64, trials: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let n = random_n(&mut rng);
        let i = Player(rng.gen_range(1..=n));
        let mut j = Player(rng.gen_range(1..=n - 1));
        if j.0 >= i.0 {
            j = Player(j.0 + 1);
        }
        let phi = random_local_formula(&mut rng, i, n, 3);
        let subst = move_subst(&phi, i, j).unwrap();
        let mover: Coalition = [i].into_iter().collect();
        for pi in enumerate_partitions(n).unwrap() {
            let mut target = pi.coalition_of(j).unwrap().clone();
            target.remove(&i);
            let moved = pi.move_to(&mover, &target).unwrap();
            assert_eq!(
                evaluate(&pi, &subst).unwrap(),
                evaluate(&moved, &phi).unwrap(),
                "move substitution for {i} joining {j} diverged at {pi} on {phi}"
            );
        }
    }
    trials
}

/// Every concept formula agrees with its direct checker on every partition,
/// and the compact Nash formula agrees with the forgetting-based one.
pub fn characterization_sweep(seed: u64, trials: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let n = random_n(&mut rng);
        let game = random_strict_game(&mut rng, n);
        let ir = concepts::ir_formula(&game).unwrap();
        let perfect = concepts::perfect_formula(&game);
        let nash = concepts::nash_formula(&game).unwrap();
        let nash_compact = concepts::nash_formula_compact(&game).unwrap();
        let core = concepts::core_formula(&game).unwrap();
        let strict_core = concepts::strict_core_formula(&game).unwrap();
        let envy = concepts::envy_free_formula(&game).unwrap();
        for pi in enumerate_partitions(n).unwrap() {
            assert_eq!(
                evaluate(&pi, &ir).unwrap(),
                concepts::is_individually_rational(&game, &pi).unwrap(),
                "ir formula diverged at {pi}"
            );
            assert_eq!(
                evaluate(&pi, &perfect).unwrap(),
                concepts::is_perfect(&game, &pi).unwrap(),
                "perfect formula diverged at {pi}"
            );
            let nash_holds = concepts::is_nash_stable(&game, &pi).unwrap();
            assert_eq!(
                evaluate(&pi, &nash).unwrap(),
                nash_holds,
                "nash formula diverged at {pi}"
            );
            assert_eq!(
                evaluate(&pi, &nash_compact).unwrap(),
                nash_holds,
                "compact nash formula diverged at {pi}"
            );
            assert_eq!(
                evaluate(&pi, &core).unwrap(),
                concepts::is_core_stable(&game, &pi).unwrap(),
                "core formula diverged at {pi}"
            );
            assert_eq!(
                evaluate(&pi, &strict_core).unwrap(),
                concepts::is_strict_core_stable(&game, &pi).unwrap(),
                "strict-core formula diverged at {pi}"
            );
            assert_eq!(
                evaluate(&pi, &envy).unwrap(),
                concepts::is_envy_free(&game, &pi).unwrap(),
                "envy-freeness formula diverged at {pi}"
            );
        }
    }
    trials
}

/// The greedy constructions return what they promise: `find_pareto` passes
/// the Pareto check and `greedy_core` passes the exhaustive core check.
pub fn pareto_core_sweep(seed: u64, trials: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let n = random_n(&mut rng);
        let game = random_strict_game(&mut rng, n);
        let pareto = solve::find_pareto(&game).unwrap();
        assert!(
            concepts::is_pareto_optimal(&game, &pareto).unwrap(),
            "find_pareto returned a dominated partition {pareto}"
        );
        let core = solve::greedy_core(&game).unwrap();
        assert!(
            concepts::is_core_stable(&game, &core).unwrap(),
            "greedy_core returned a blocked partition {core}"
        );
    }
    trials
}

/// The SAT-backed welfare optimum equals the brute-force maximum over all
/// partitions, and its witness attains it.
pub fn welfare_sweep(seed: u64, trials: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let n = random_n(&mut rng);
        let game = random_strict_game(&mut rng, n);
        let brute = enumerate_partitions(n)
            .unwrap()
            .map(|pi| game.welfare(&pi).unwrap())
            .max()
            .unwrap();
        let (best, witness) = solve::max_welfare(&game).unwrap();
        assert_eq!(best, brute, "welfare optimum diverged from brute force");
        assert_eq!(game.welfare(&witness).unwrap(), best, "witness misses the optimum");
    }
    trials
}
