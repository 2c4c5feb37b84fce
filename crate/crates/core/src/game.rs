//! Boolean hedonic games: one goal formula per player over pair atoms.
//!
//! In a *strict* game every goal is written in its owner's variables (every
//! atom of `γi` has `i` as an endpoint), so a player's satisfaction depends
//! only on its own block. A *relaxed* game admits arbitrary formulas, which
//! can express any yes/no preference over whole partitions; some encodings
//! are then unavailable (they say so).
//!
//! Preferences are dichotomous: a player strictly prefers satisfying
//! partitions to non-satisfying ones and is indifferent otherwise.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::{evaluate, free_pairs, is_syntactically_local, parse_formula, Formula};
use crate::partitions::{Coalition, Partition, Player};

/// A Boolean hedonic game over players `{1..n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanHedonicGame {
    goals: Vec<Formula>,
    relaxed: bool,
}

/// How player `i` ranks one partition against another.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preference {
    StrictlyPrefers,
    Indifferent,
    StrictlyDisprefers,
}

/// A partition together with the set of players whose goal it satisfies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatisfactionProfile {
    pub satisfied: BTreeSet<Player>,
    pub welfare: u32,
}

/// On-disk shape of a game: the player list (which must be `1..n` in order)
/// and one goal formula per player, keyed by the player id as a string.
/// `relaxed` admits goals that mention other players' pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GameDocument {
    pub players: Vec<u32>,
    pub goals: std::collections::BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relaxed: Option<bool>,
}

impl BooleanHedonicGame {
    /// Builds a strict-mode game; `goals[k]` belongs to player `k+1` and must
    /// be written in that player's variables.
    pub fn new(goals: Vec<Formula>) -> Result<Self> {
        Self::build(goals, false)
    }

    /// Builds a relaxed game: goals may mention any pair of players.
    pub fn new_relaxed(goals: Vec<Formula>) -> Result<Self> {
        Self::build(goals, true)
    }

    fn build(goals: Vec<Formula>, relaxed: bool) -> Result<Self> {
        let n = goals.len() as u32;
        let mut problems = Vec::new();
        if n == 0 {
            problems.push("a game needs at least one player".to_string());
        }
        for (k, goal) in goals.iter().enumerate() {
            let owner = Player(k as u32 + 1);
            for v in free_pairs(goal) {
                if v.hi().0 > n {
                    problems.push(format!(
                        "goal for player {owner}: atom {v} is out of range for {n} players"
                    ));
                }
            }
            if !relaxed && !is_syntactically_local(goal, owner) {
                let culprit = free_pairs(goal)
                    .into_iter()
                    .find(|v| !v.contains(owner))
                    .expect("a non-local goal has a foreign atom");
                problems.push(format!(
                    "goal for player {owner}: atom {culprit} does not belong to player {owner} \
                     (use relaxed mode for goals about other players)"
                ));
            }
        }
        if !problems.is_empty() {
            return Err(Error::InvalidGame { problems });
        }
        Ok(BooleanHedonicGame { goals, relaxed })
    }

    /// Loads a game from its document form, parsing every goal.
    pub fn from_document(doc: &GameDocument) -> Result<Self> {
        let n = doc.players.len() as u32;
        let mut problems = Vec::new();
        for (k, &id) in doc.players.iter().enumerate() {
            if id != k as u32 + 1 {
                problems.push(format!(
                    "the player list must be 1..{n} in order, found {id} at index {k}"
                ));
            }
        }
        let mut goals = Vec::with_capacity(doc.players.len());
        for k in 1..=n {
            match doc.goals.get(&k.to_string()) {
                None => problems.push(format!("missing goal for player {k}")),
                Some(text) => match parse_formula(text, n) {
                    Ok(goal) => goals.push(goal),
                    Err(e) => problems.push(format!("goal for player {k}: {e}")),
                },
            }
        }
        for key in doc.goals.keys() {
            match key.parse::<u32>() {
                Ok(id) if id >= 1 && id <= n => {}
                _ => problems.push(format!("goal key `{key}` does not name a player")),
            }
        }
        if !problems.is_empty() {
            return Err(Error::InvalidGame { problems });
        }
        let relaxed = doc.relaxed.unwrap_or(false);
        Self::build(goals, relaxed)
    }

    /// Serialises back to the document form.
    pub fn to_document(&self) -> GameDocument {
        GameDocument {
            players: (1..=self.n()).collect(),
            goals: self
                .goals
                .iter()
                .enumerate()
                .map(|(k, g)| ((k + 1).to_string(), g.to_string()))
                .collect(),
            relaxed: if self.relaxed { Some(true) } else { None },
        }
    }

    /// Number of players.
    pub fn n(&self) -> u32 {
        self.goals.len() as u32
    }

    /// The players `1..n` in order.
    pub fn players(&self) -> impl Iterator<Item = Player> {
        (1..=self.n()).map(Player)
    }

    /// Player `i`'s goal formula.
    pub fn goal(&self, i: Player) -> Result<&Formula> {
        if i.0 == 0 || i.0 > self.n() {
            return Err(Error::UnknownPlayer {
                player: i,
                n: self.n(),
            });
        }
        Ok(&self.goals[(i.0 - 1) as usize])
    }

    /// All goals, indexed by player - 1.
    pub fn goals(&self) -> &[Formula] {
        &self.goals
    }

    /// Whether goals may mention other players' pairs.
    pub fn is_relaxed(&self) -> bool {
        self.relaxed
    }

    /// Rejects partitions over a different ambient player set.
    pub fn check_partition(&self, pi: &Partition) -> Result<()> {
        if pi.n() != self.n() {
            return Err(Error::PartitionSizeMismatch {
                partition_n: pi.n(),
                game_n: self.n(),
            });
        }
        Ok(())
    }

    /// Whether `pi` satisfies player `i`'s goal.
    pub fn is_satisfied(&self, i: Player, pi: &Partition) -> Result<bool> {
        self.check_partition(pi)?;
        evaluate(pi, self.goal(i)?)
    }

    /// How player `i` ranks `pi` against `other`: strictly better iff `pi`
    /// satisfies the goal and `other` does not.
    pub fn prefers(&self, i: Player, pi: &Partition, other: &Partition) -> Result<Preference> {
        let here = self.is_satisfied(i, pi)?;
        let there = self.is_satisfied(i, other)?;
        Ok(match (here, there) {
            (true, false) => Preference::StrictlyPrefers,
            (false, true) => Preference::StrictlyDisprefers,
            _ => Preference::Indifferent,
        })
    }

    /// The satisfied set and its size in one pass.
    pub fn satisfaction_profile(&self, pi: &Partition) -> Result<SatisfactionProfile> {
        let mut satisfied = BTreeSet::new();
        for i in self.players() {
            if self.is_satisfied(i, pi)? {
                satisfied.insert(i);
            }
        }
        Ok(SatisfactionProfile {
            welfare: satisfied.len() as u32,
            satisfied,
        })
    }

    /// Number of players whose goal `pi` satisfies.
    pub fn welfare(&self, pi: &Partition) -> Result<u32> {
        Ok(self.satisfaction_profile(pi)?.welfare)
    }
}

/// Builds the canonical goal of a player from an explicit list of coalitions
/// it finds satisfactory: a disjunction, one conjunction per coalition,
/// saying "my block is exactly this set". Every listed coalition must
/// contain `i`; the empty list yields the never-satisfied goal `⊥`.
pub fn goal_from_coalition_list(
    i: Player,
    satisfactory: &[Coalition],
    n: u32,
) -> Result<Formula> {
    if i.0 == 0 || i.0 > n {
        return Err(Error::UnknownPlayer { player: i, n });
    }
    let mut disjuncts = Vec::with_capacity(satisfactory.len());
    for coalition in satisfactory {
        if !coalition.contains(&i) {
            return Err(Error::OwnerNotInCoalition { player: i });
        }
        let mut conjuncts = Vec::new();
        for j in (1..=n).map(Player).filter(|&j| j != i) {
            let atom = Formula::atom(i.0, j.0).expect("distinct players");
            conjuncts.push(if coalition.contains(&j) { atom } else { atom.not() });
        }
        disjuncts.push(Formula::conj(conjuncts));
    }
    Ok(Formula::disj(disjuncts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{coalition, enumerate_partitions, parse_partition};

    use crate::testgames::g1 as example_game;

    fn part(text: &str) -> Partition {
        parse_partition(text).unwrap()
    }

    #[test]
    fn strict_mode_rejects_foreign_atoms() {
        let goals = vec![
            Formula::atom(2, 3).unwrap(), // not player 1's atom
            Formula::Top,
            Formula::Top,
        ];
        match BooleanHedonicGame::new(goals) {
            Err(Error::InvalidGame { problems }) => {
                assert_eq!(problems.len(), 1);
                assert!(problems[0].contains("p(2,3)"));
            }
            other => panic!("expected a validation report, got {other:?}"),
        }
    }

    #[test]
    fn relaxed_mode_accepts_foreign_atoms() {
        let goals = vec![Formula::atom(2, 3).unwrap(), Formula::Top, Formula::Top];
        let game = BooleanHedonicGame::new_relaxed(goals).unwrap();
        assert!(game.is_relaxed());
        assert!(game.is_satisfied(Player(1), &part("1|2,3")).unwrap());
        assert!(!game.is_satisfied(Player(1), &part("1,2|3")).unwrap());
    }

    #[test]
    fn document_round_trip() {
        let game = example_game();
        let doc = game.to_document();
        let back = BooleanHedonicGame::from_document(&doc).unwrap();
        assert_eq!(back, game);
    }

    #[test]
    fn document_validation_reports_every_problem() {
        let mut goals = std::collections::BTreeMap::new();
        goals.insert("1".to_string(), "p(1,2".to_string()); // parse error
        goals.insert("3".to_string(), "true".to_string()); // no player 3
        let doc = GameDocument {
            players: vec![1, 2],
            goals,
            relaxed: None,
        };
        match BooleanHedonicGame::from_document(&doc) {
            Err(Error::InvalidGame { problems }) => {
                assert!(problems.iter().any(|p| p.contains("player 1")));
                assert!(problems.iter().any(|p| p.contains("missing goal for player 2")));
                assert!(problems.iter().any(|p| p.contains("`3`")));
            }
            other => panic!("expected a validation report, got {other:?}"),
        }
    }

    #[test]
    fn satisfaction_at_the_paper_partition() {
        let game = example_game();
        let pi = part("1,2,3|4");
        for i in 1..=4 {
            assert!(game.is_satisfied(Player(i), &pi).unwrap(), "player {i}");
        }
        assert_eq!(game.welfare(&pi).unwrap(), 4);
        // [1,2|3,4]: player 1 wants a triple, 3 refuses to sit with 4.
        let pi2 = part("1,2|3,4");
        assert!(!game.is_satisfied(Player(1), &pi2).unwrap());
        assert!(!game.is_satisfied(Player(3), &pi2).unwrap());
        assert!(game.is_satisfied(Player(4), &pi2).unwrap());
        assert_eq!(game.welfare(&pi2).unwrap(), 1);
    }

    #[test]
    fn preferences_are_dichotomous() {
        let game = example_game();
        let good = part("1,2,3|4");
        let bad = part("1,2|3,4");
        assert_eq!(
            game.prefers(Player(1), &good, &bad).unwrap(),
            Preference::StrictlyPrefers
        );
        assert_eq!(
            game.prefers(Player(1), &bad, &good).unwrap(),
            Preference::StrictlyDisprefers
        );
        assert_eq!(
            game.prefers(Player(4), &good, &bad).unwrap(),
            Preference::Indifferent
        );
    }

    #[test]
    fn goal_from_coalition_list_mirrors_the_preference_table() {
        // Player 4's satisfactory coalitions in the worked example.
        let sat = vec![
            coalition([4, 1]),
            coalition([4, 2]),
            coalition([4, 3]),
            coalition([4, 1, 2]),
            coalition([4, 1, 3]),
            coalition([4]),
        ];
        let rebuilt = goal_from_coalition_list(Player(4), &sat, 4).unwrap();
        let gamma4 = parse_formula("~(p(4,2) & p(4,3))", 4).unwrap();
        for pi in enumerate_partitions(4).unwrap() {
            assert_eq!(
                evaluate(&pi, &rebuilt).unwrap(),
                evaluate(&pi, &gamma4).unwrap(),
                "differs at {pi}"
            );
        }
    }

    #[test]
    fn goal_from_coalition_list_edge_cases() {
        assert_eq!(
            goal_from_coalition_list(Player(1), &[], 3).unwrap(),
            Formula::Bot
        );
        let lone = goal_from_coalition_list(Player(1), &[coalition([1])], 3).unwrap();
        let want = Formula::atom(1, 2).unwrap().not().and(Formula::atom(1, 3).unwrap().not());
        assert_eq!(lone, want);
        // Coalitions not containing the owner are rejected.
        assert!(goal_from_coalition_list(Player(1), &[coalition([2])], 3).is_err());
    }

    #[test]
    fn mismatched_partition_size_is_a_domain_error() {
        let game = example_game();
        assert!(game.is_satisfied(Player(1), &part("1,2,3")).is_err());
    }
}
