//! Cards, instances, playing sequences and their rules.

mod io;
mod model;
mod random;
mod rules;

use thiserror::Error;

pub use io::{parse_instance, parse_plays, serialize_instance, serialize_sequence, ParseError};
pub(crate) use io::content_lines;
pub use model::{cards, matches, transpose, Card, GameMode, Instance, Move, PlayingSequence};
pub use random::{generate_random, random_cards};
pub use rules::{check_feasible, is_feasible, winner_condition, Outcome, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("an instance needs at least one player")]
    NoPlayers,
    #[error("colors and numbers must be at least 1")]
    EmptyRange,
    #[error("player {player}: color out of range in {card} (colors {colors})")]
    ColorOutOfRange { player: usize, card: Card, colors: u32 },
    #[error("player {player}: number out of range in {card} (numbers {numbers})")]
    NumberOutOfRange { player: usize, card: Card, numbers: u32 },
    #[error("{given} hand sizes given for {players} players")]
    HandSizes { players: usize, given: usize },
    #[error("move {step}: player {player} does not exist ({players} players)")]
    BadPlayer { step: usize, player: usize, players: usize },
    #[error("move {step}: card {card} is not in the hand of player {player}")]
    NotInHand { step: usize, player: usize, card: Card },
    #[error("mode {mode} needs {} players, the instance has {players}", mode.players())]
    ModePlayers { mode: GameMode, players: usize },
}

/// The nine-card solitaire instance used throughout the documentation, with a
/// playing sequence that empties the hand.
pub fn example1() -> (Instance, PlayingSequence) {
    let hand = cards(&[(1, 3), (2, 2), (2, 3), (2, 3), (2, 4), (3, 2), (3, 4), (4, 1), (4, 3)]);
    let inst = Instance::new(4, 4, vec![hand]).expect("valid instance");
    let order = cards(&[(1, 3), (2, 3), (2, 4), (3, 4), (3, 2), (2, 2), (2, 3), (4, 3), (4, 1)]);
    let seq = PlayingSequence::solitaire(&inst, &order).expect("every card is in the hand");
    (inst, seq)
}
