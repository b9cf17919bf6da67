use thiserror::Error;

use super::model::{Card, GameMode, Instance, PlayingSequence};
use super::GameError;

/// Why a playing sequence is not feasible.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    /// The sequence does not even refer to the instance correctly.
    #[error(transparent)]
    Input(#[from] GameError),
    #[error("move {step}: card {card} of player {player} was already played")]
    Reused { step: usize, player: usize, card: Card },
    #[error("move {step}: {card} does not match the previous card {prev}")]
    NoMatch { step: usize, prev: Card, card: Card },
    #[error("move {step}: player {expected} must move, not player {found}")]
    WrongTurn { step: usize, expected: usize, found: usize },
    #[error("move {step}: the game is already over")]
    AfterEnd { step: usize },
}

impl Violation {
    /// True for malformed references (bad player, card absent from a hand,
    /// wrong player count) as opposed to rule violations.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Violation::Input(_))
    }
}

/// Result of a finished (or partial) playing sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Player 1's hand is empty.
    Cleared,
    /// Player 1 still holds cards.
    NotCleared,
    /// Uncooperative play ended; the player who moved last wins.
    Winner(usize),
    /// Uncooperative play can still be extended.
    Unfinished,
}

impl Outcome {
    /// Success for player 1 under the mode's win condition.
    pub fn player1_succeeds(self) -> bool {
        matches!(self, Outcome::Cleared | Outcome::Winner(1))
    }
}

/// Remaining-card bookkeeping shared by the feasibility and outcome checks.
struct Table<'a> {
    inst: &'a Instance,
    left: Vec<Vec<bool>>,
}

impl<'a> Table<'a> {
    fn new(inst: &'a Instance) -> Self {
        Table { inst, left: inst.hands().iter().map(|h| vec![true; h.len()]).collect() }
    }

    fn can_play(&self, player: usize, after: Card) -> bool {
        self.inst
            .hand(player)
            .iter()
            .zip(&self.left[player - 1])
            .any(|(c, &l)| l && c.matches(&after))
    }

    fn hand_empty(&self, player: usize) -> bool {
        self.left[player - 1].iter().all(|&l| !l)
    }
}

fn check_players(inst: &Instance, mode: GameMode) -> Result<(), GameError> {
    if inst.players() != mode.players() {
        return Err(GameError::ModePlayers { mode, players: inst.players() });
    }
    Ok(())
}

/// Replays `seq` under the turn rules of `mode`.
///
/// Player 1 always opens with any card. In `Uno1` every move is player 1's. In
/// `Coop2` the turn passes to the other player unless they hold no playable
/// card, in which case they are skipped; the game ends as soon as a play empties
/// the mover's hand. In `Uncoop2` players strictly alternate.
pub fn check_feasible(inst: &Instance, seq: &PlayingSequence, mode: GameMode) -> Result<(), Violation> {
    replay(inst, seq, mode).map(|_| ())
}

pub fn is_feasible(inst: &Instance, seq: &PlayingSequence, mode: GameMode) -> bool {
    check_feasible(inst, seq, mode).is_ok()
}

fn replay<'a>(inst: &'a Instance, seq: &PlayingSequence, mode: GameMode) -> Result<Table<'a>, Violation> {
    check_players(inst, mode)?;
    let mut table = Table::new(inst);
    let mut last: Option<(Card, usize)> = None;
    let mut over = false;

    for (j, mv) in seq.moves.iter().enumerate() {
        let step = j + 1;
        if mv.player == 0 || mv.player > inst.players() {
            return Err(GameError::BadPlayer { step, player: mv.player, players: inst.players() }.into());
        }
        if inst.hand(mv.player).get(mv.occurrence) != Some(&mv.card) {
            return Err(GameError::NotInHand { step, player: mv.player, card: mv.card }.into());
        }
        if !table.left[mv.player - 1][mv.occurrence] {
            return Err(Violation::Reused { step, player: mv.player, card: mv.card });
        }
        if over {
            return Err(Violation::AfterEnd { step });
        }
        let expected = match last {
            None => 1,
            Some((prev, prev_player)) => {
                if !prev.matches(&mv.card) {
                    return Err(Violation::NoMatch { step, prev, card: mv.card });
                }
                match mode {
                    GameMode::Uno1 => 1,
                    GameMode::Uncoop2 => 3 - prev_player,
                    GameMode::Coop2 => {
                        let other = 3 - prev_player;
                        if table.can_play(other, prev) {
                            other
                        } else {
                            prev_player
                        }
                    }
                }
            }
        };
        if mv.player != expected {
            return Err(Violation::WrongTurn { step, expected, found: mv.player });
        }
        table.left[mv.player - 1][mv.occurrence] = false;
        last = Some((mv.card, mv.player));
        if mode != GameMode::Uncoop2 && table.hand_empty(mv.player) {
            over = true;
        }
    }
    Ok(table)
}

/// Outcome of a feasible sequence under `mode`.
///
/// `Uno1`/`Coop2`: cleared iff player 1's hand is fully consumed. `Uncoop2`: the
/// winner is whoever made the last move of a sequence the next player cannot
/// extend; an empty hand for player 1 means player 2 wins without a move.
pub fn winner_condition(inst: &Instance, seq: &PlayingSequence, mode: GameMode) -> Result<Outcome, Violation> {
    let table = replay(inst, seq, mode)?;
    Ok(match mode {
        GameMode::Uno1 | GameMode::Coop2 => {
            if table.hand_empty(1) {
                Outcome::Cleared
            } else {
                Outcome::NotCleared
            }
        }
        GameMode::Uncoop2 => match seq.moves.last() {
            None if table.hand_empty(1) => Outcome::Winner(2),
            None => Outcome::Unfinished,
            Some(mv) => {
                if table.can_play(3 - mv.player, mv.card) {
                    Outcome::Unfinished
                } else {
                    Outcome::Winner(mv.player)
                }
            }
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::model::{cards, Move};
    use crate::game::example1;

    #[test]
    fn example1_sequence_is_feasible_and_clears() {
        let (inst, seq) = example1();
        assert_eq!(check_feasible(&inst, &seq, GameMode::Uno1), Ok(()));
        assert_eq!(winner_condition(&inst, &seq, GameMode::Uno1), Ok(Outcome::Cleared));
    }

    #[test]
    fn empty_sequence_is_feasible_but_does_not_clear() {
        let (inst, _) = example1();
        let empty = PlayingSequence::default();
        assert!(is_feasible(&inst, &empty, GameMode::Uno1));
        assert_eq!(winner_condition(&inst, &empty, GameMode::Uno1), Ok(Outcome::NotCleared));
    }

    #[test]
    fn non_matching_pair_is_infeasible() {
        let inst = Instance::solitaire(cards(&[(1, 1), (2, 2)]));
        let seq = PlayingSequence::solitaire(&inst, &cards(&[(1, 1), (2, 2)])).unwrap();
        assert!(matches!(check_feasible(&inst, &seq, GameMode::Uno1), Err(Violation::NoMatch { step: 2, .. })));
    }

    #[test]
    fn uncoop_two_card_game_goes_to_player_two() {
        let inst = Instance::two_player(cards(&[(1, 1)]), cards(&[(1, 2)]));
        let seq = PlayingSequence::resolve(&inst, &[(1, Card::new(1, 1)), (2, Card::new(1, 2))]).unwrap();
        assert_eq!(winner_condition(&inst, &seq, GameMode::Uncoop2), Ok(Outcome::Winner(2)));
        let opening = PlayingSequence::resolve(&inst, &[(1, Card::new(1, 1))]).unwrap();
        assert_eq!(winner_condition(&inst, &opening, GameMode::Uncoop2), Ok(Outcome::Unfinished));
    }

    #[test]
    fn uncoop_requires_strict_alternation() {
        let inst = Instance::two_player(cards(&[(1, 1), (1, 2)]), cards(&[(3, 3)]));
        let seq = PlayingSequence::resolve(&inst, &[(1, Card::new(1, 1)), (1, Card::new(1, 2))]).unwrap();
        assert!(matches!(
            check_feasible(&inst, &seq, GameMode::Uncoop2),
            Err(Violation::WrongTurn { step: 2, expected: 2, found: 1 })
        ));
        // The same line is a legal cooperative skip.
        assert_eq!(winner_condition(&inst, &seq, GameMode::Coop2), Ok(Outcome::Cleared));
    }

    #[test]
    fn coop_forbids_skipping_a_player_who_can_play() {
        let inst = Instance::two_player(cards(&[(1, 1), (1, 2)]), cards(&[(1, 3)]));
        let seq = PlayingSequence::resolve(&inst, &[(1, Card::new(1, 1)), (1, Card::new(1, 2))]).unwrap();
        assert!(matches!(
            check_feasible(&inst, &seq, GameMode::Coop2),
            Err(Violation::WrongTurn { step: 2, expected: 2, found: 1 })
        ));
    }

    #[test]
    fn coop_game_ends_when_player_two_finishes() {
        let inst = Instance::two_player(cards(&[(1, 1), (1, 3)]), cards(&[(1, 2)]));
        let seq = PlayingSequence::resolve(
            &inst,
            &[(1, Card::new(1, 1)), (2, Card::new(1, 2)), (1, Card::new(1, 3))],
        )
        .unwrap();
        assert!(matches!(check_feasible(&inst, &seq, GameMode::Coop2), Err(Violation::AfterEnd { step: 3 })));
    }

    #[test]
    fn input_errors_are_classified() {
        let inst = Instance::solitaire(cards(&[(1, 1)]));
        let bad_player = PlayingSequence::new(vec![Move::new(2, Card::new(1, 1), 0)]);
        let err = check_feasible(&inst, &bad_player, GameMode::Uno1).unwrap_err();
        assert!(err.is_input_error());
        let absent = PlayingSequence::new(vec![Move::new(1, Card::new(2, 2), 0)]);
        assert!(check_feasible(&inst, &absent, GameMode::Uno1).unwrap_err().is_input_error());
        let wrong_mode = check_feasible(&inst, &PlayingSequence::default(), GameMode::Coop2).unwrap_err();
        assert!(wrong_mode.is_input_error());
        let reused = PlayingSequence::new(vec![Move::new(1, Card::new(1, 1), 0), Move::new(1, Card::new(1, 1), 0)]);
        assert!(!check_feasible(&inst, &reused, GameMode::Uno1).unwrap_err().is_input_error());
    }
}
