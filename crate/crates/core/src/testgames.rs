//! Example games shared by the unit tests of several modules.

use crate::game::BooleanHedonicGame;
use crate::logic::parse_formula;

/// Four players: 1 wants any two companions, 2 wants exactly two specific
/// companions, 3 wants 1 or 2 but not 4, and 4 only objects to hosting both
/// 2 and 3.
pub(crate) fn g1() -> BooleanHedonicGame {
    let n = 4;
    let goals = vec![
        parse_formula("same(1,2,3) | same(1,2,4) | same(1,3,4)", n).unwrap(),
        parse_formula(
            "(same(2,1,3) & ~p(2,4)) | (same(2,1,4) & ~p(2,3)) | (same(2,3,4) & ~p(2,1))",
            n,
        )
        .unwrap(),
        parse_formula("(p(3,1) | p(3,2)) & ~p(3,4)", n).unwrap(),
        parse_formula("~(p(4,2) & p(4,3))", n).unwrap(),
    ];
    BooleanHedonicGame::new(goals).unwrap()
}

/// Two players with opposed goals: 1 wants to pair up, 2 wants to be alone.
pub(crate) fn g2() -> BooleanHedonicGame {
    let goals = vec![
        parse_formula("p(1,2)", 2).unwrap(),
        parse_formula("~p(2,1)", 2).unwrap(),
    ];
    BooleanHedonicGame::new(goals).unwrap()
}

/// Three players on a line: 1 and 3 each want player 2 exclusively, and 2
/// wants exactly one neighbour.
pub(crate) fn g3() -> BooleanHedonicGame {
    let goals = vec![
        parse_formula("p(1,2) & ~p(1,3)", 3).unwrap(),
        parse_formula("(p(2,1) & ~p(2,3)) | (p(2,3) & ~p(2,1))", 3).unwrap(),
        parse_formula("p(3,2) & ~p(3,1)", 3).unwrap(),
    ];
    BooleanHedonicGame::new(goals).unwrap()
}
