use std::fmt;

use super::GameError;

/// A card is a (color, number) pair; both coordinates are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Card {
    pub color: u32,
    pub number: u32,
}

impl Card {
    pub const fn new(color: u32, number: u32) -> Self {
        Card { color, number }
    }

    /// Two cards match when they share a color or a number.
    pub fn matches(&self, other: &Card) -> bool {
        matches(*self, *other)
    }

    pub fn transposed(&self) -> Card {
        Card::new(self.number, self.color)
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.color, self.number)
    }
}

impl From<(u32, u32)> for Card {
    fn from((color, number): (u32, u32)) -> Self {
        Card::new(color, number)
    }
}

pub fn matches(t: Card, u: Card) -> bool {
    t.color == u.color || t.number == u.number
}

/// Builds a card list from `(color, number)` tuples.
pub fn cards(list: &[(u32, u32)]) -> Vec<Card> {
    list.iter().map(|&c| Card::from(c)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GameMode {
    /// Solitaire: one player must play every card.
    Uno1,
    /// Cooperative two-player: both players try to empty hand 1 first.
    Coop2,
    /// Uncooperative two-player: the last player able to play wins.
    Uncoop2,
}

impl GameMode {
    pub fn players(self) -> usize {
        match self {
            GameMode::Uno1 => 1,
            GameMode::Coop2 | GameMode::Uncoop2 => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GameMode::Uno1 => "uno1",
            GameMode::Coop2 => "coop2",
            GameMode::Uncoop2 => "uncoop2",
        }
    }
}

impl fmt::Display for GameMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Player count, the color/number ranges, and one card multiset per player.
///
/// Hands keep their input order; the position of a card inside its hand is its
/// occurrence index, which is how duplicate cards are told apart.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    colors: u32,
    numbers: u32,
    hands: Vec<Vec<Card>>,
}

impl Instance {
    pub fn new(colors: u32, numbers: u32, hands: Vec<Vec<Card>>) -> Result<Self, GameError> {
        if hands.is_empty() {
            return Err(GameError::NoPlayers);
        }
        if colors == 0 || numbers == 0 {
            return Err(GameError::EmptyRange);
        }
        for (p, hand) in hands.iter().enumerate() {
            for card in hand {
                if card.color == 0 || card.color > colors {
                    return Err(GameError::ColorOutOfRange { player: p + 1, card: *card, colors });
                }
                if card.number == 0 || card.number > numbers {
                    return Err(GameError::NumberOutOfRange { player: p + 1, card: *card, numbers });
                }
            }
        }
        Ok(Instance { colors, numbers, hands })
    }

    /// Single-player instance whose ranges are the smallest that fit `cards`.
    pub fn solitaire(cards: Vec<Card>) -> Self {
        let colors = cards.iter().map(|c| c.color).max().unwrap_or(1).max(1);
        let numbers = cards.iter().map(|c| c.number).max().unwrap_or(1).max(1);
        Instance::new(colors, numbers, vec![cards]).expect("ranges cover every card")
    }

    /// Two-player instance whose ranges are the smallest that fit both hands.
    pub fn two_player(hand1: Vec<Card>, hand2: Vec<Card>) -> Self {
        let all = hand1.iter().chain(hand2.iter());
        let colors = all.clone().map(|c| c.color).max().unwrap_or(1).max(1);
        let numbers = all.map(|c| c.number).max().unwrap_or(1).max(1);
        Instance::new(colors, numbers, vec![hand1, hand2]).expect("ranges cover every card")
    }

    pub fn players(&self) -> usize {
        self.hands.len()
    }

    pub fn colors(&self) -> u32 {
        self.colors
    }

    pub fn numbers(&self) -> u32 {
        self.numbers
    }

    pub fn hands(&self) -> &[Vec<Card>] {
        &self.hands
    }

    /// Hand of player `player` (1-based).
    pub fn hand(&self, player: usize) -> &[Card] {
        &self.hands[player - 1]
    }

    pub fn card_count(&self) -> usize {
        self.hands.iter().map(Vec::len).sum()
    }

    /// Every card with its owner (1-based) and occurrence index, in player order.
    pub fn occurrences(&self) -> impl Iterator<Item = (usize, usize, Card)> + '_ {
        self.hands
            .iter()
            .enumerate()
            .flat_map(|(p, hand)| hand.iter().enumerate().map(move |(k, &c)| (p + 1, k, c)))
    }

    /// Swaps the roles of colors and numbers.
    pub fn transpose(&self) -> Instance {
        Instance {
            colors: self.numbers,
            numbers: self.colors,
            hands: self
                .hands
                .iter()
                .map(|h| h.iter().map(Card::transposed).collect())
                .collect(),
        }
    }
}

pub fn transpose(inst: &Instance) -> Instance {
    inst.transpose()
}

/// One discard: `player` (1-based) plays the card at position `occurrence` of
/// their initial hand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub player: usize,
    pub card: Card,
    pub occurrence: usize,
}

impl Move {
    pub fn new(player: usize, card: Card, occurrence: usize) -> Self {
        Move { player, card, occurrence }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.player, self.card)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PlayingSequence {
    pub moves: Vec<Move>,
}

impl PlayingSequence {
    pub fn new(moves: Vec<Move>) -> Self {
        PlayingSequence { moves }
    }

    /// Resolves `(player, card)` pairs against `inst`, consuming the first unused
    /// occurrence of each card in that player's hand.
    pub fn resolve(inst: &Instance, plays: &[(usize, Card)]) -> Result<Self, GameError> {
        let mut used: Vec<Vec<bool>> = inst.hands().iter().map(|h| vec![false; h.len()]).collect();
        let mut moves = Vec::with_capacity(plays.len());
        for (step, &(player, card)) in plays.iter().enumerate() {
            if player == 0 || player > inst.players() {
                return Err(GameError::BadPlayer { step: step + 1, player, players: inst.players() });
            }
            let slot = inst
                .hand(player)
                .iter()
                .enumerate()
                .position(|(k, &c)| c == card && !used[player - 1][k])
                .ok_or(GameError::NotInHand { step: step + 1, player, card })?;
            used[player - 1][slot] = true;
            moves.push(Move::new(player, card, slot));
        }
        Ok(PlayingSequence { moves })
    }

    /// Solitaire convenience: every card played by player 1.
    pub fn solitaire(inst: &Instance, plays: &[Card]) -> Result<Self, GameError> {
        let plays: Vec<(usize, Card)> = plays.iter().map(|&c| (1, c)).collect();
        Self::resolve(inst, &plays)
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn cards(&self) -> impl Iterator<Item = Card> + '_ {
        self.moves.iter().map(|m| m.card)
    }

    pub fn transpose(&self) -> PlayingSequence {
        PlayingSequence {
            moves: self
                .moves
                .iter()
                .map(|m| Move::new(m.player, m.card.transposed(), m.occurrence))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn match_relation_examples() {
        assert!(matches(Card::new(1, 3), Card::new(2, 3)));
        assert!(matches(Card::new(1, 1), Card::new(1, 1)));
        assert!(!matches(Card::new(1, 2), Card::new(3, 4)));
    }

    #[test]
    fn transpose_swaps_coordinates_and_ranges() {
        let inst = Instance::new(2, 3, vec![cards(&[(1, 3), (2, 2)])]).unwrap();
        let t = inst.transpose();
        assert_eq!(t.hand(1), cards(&[(3, 1), (2, 2)]).as_slice());
        assert_eq!((t.colors(), t.numbers()), (3, 2));
        assert_eq!(t.transpose(), inst);
    }

    #[test]
    fn instance_rejects_out_of_range_cards() {
        let err = Instance::new(4, 4, vec![cards(&[(5, 1)])]).unwrap_err();
        assert!(err.to_string().contains("color out of range"), "{err}");
        let err = Instance::new(4, 4, vec![cards(&[(1, 0)])]).unwrap_err();
        assert!(err.to_string().contains("number out of range"), "{err}");
    }

    #[test]
    fn resolve_consumes_duplicates_in_input_order() {
        let inst = Instance::solitaire(cards(&[(2, 3), (1, 1), (2, 3)]));
        let seq = PlayingSequence::solitaire(&inst, &cards(&[(2, 3), (2, 3)])).unwrap();
        assert_eq!(seq.moves[0].occurrence, 0);
        assert_eq!(seq.moves[1].occurrence, 2);
        let err = PlayingSequence::solitaire(&inst, &cards(&[(2, 3), (2, 3), (2, 3)])).unwrap_err();
        assert!(matches!(err, GameError::NotInHand { step: 3, .. }));
    }
}
