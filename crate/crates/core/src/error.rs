use crate::logic::PairVar;
use crate::partitions::Player;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A player id outside the ambient set `{1..n}` was used.
    #[error("unknown player {player}: the ambient player set is 1..={n}")]
    UnknownPlayer { player: Player, n: u32 },

    /// An atom mentions a player outside the ambient set.
    #[error("atom {var} is out of range: the ambient player set is 1..={n}")]
    AtomOutOfRange { var: PairVar, n: u32 },

    /// The join target handed to a move is neither a residual block nor empty.
    #[error("illegal join target {target:?}: it is not a block of the partition with the movers removed, nor empty")]
    IllegalMoveTarget { target: Vec<Player> },

    /// An operation that needs a nonempty group received an empty one.
    #[error("the group of movers must be nonempty")]
    EmptyGroup,

    /// Two distinct players were required.
    #[error("players must be distinct, got {player} twice")]
    SamePlayer { player: Player },

    /// The deviating player may not be a member of the coalition it joins.
    #[error("player {player} cannot join a coalition that already lists it")]
    PlayerInTarget { player: Player },

    /// The ambient player set may not be empty.
    #[error("the ambient player set is empty")]
    NoPlayers,

    /// An exhaustive construction was asked for more players than it can afford.
    #[error("{what} is limited to n <= {max}, got n = {n}{hint}")]
    Guard {
        what: &'static str,
        n: u32,
        max: u32,
        hint: &'static str,
    },

    /// Text input could not be parsed; `position` is a byte offset.
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    /// A game document failed validation; one message per problem.
    #[error("invalid game: {}", problems.join("; "))]
    InvalidGame { problems: Vec<String> },

    /// A substitution that is only sound for goals over one player's variables
    /// met an atom belonging to somebody else.
    #[error("atom {var} is not among player {player}'s variables")]
    NonLocalAtom { var: PairVar, player: Player },

    /// The requested encoding needs goals local to their players.
    #[error("{what} requires a strict-mode game: relaxed goals cannot be encoded")]
    RequiresStrictGame { what: &'static str },

    /// A concept name that none of the known identifiers matches.
    #[error("unknown concept `{name}`; expected one of ir, perfect, nash, core, strict-core, envy-free, pareto, welfare-optimal")]
    UnknownConcept { name: String },

    /// A partition over the wrong ambient player set was supplied.
    #[error("the partition covers players 1..={partition_n} but the game has players 1..={game_n}")]
    PartitionSizeMismatch { partition_n: u32, game_n: u32 },

    /// A coalition offered as satisfactory for a player does not contain it.
    #[error("a satisfactory coalition for player {player} must contain player {player}")]
    OwnerNotInCoalition { player: Player },

    /// A raw assignment handed to the decoder does not describe a partition.
    #[error("assignment violates transitivity: players {i} and {j} are connected but their pair variable is false")]
    NotAPartition { i: Player, j: Player },

    /// An assignment was shorter than the pair-variable block.
    #[error("assignment has {got} values but {need} pair variables are required")]
    AssignmentTooShort { got: usize, need: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
