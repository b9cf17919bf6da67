//! Exact deciders with certificates for solitaire and cooperative two-player
//! play.
//!
//! Both are depth-first searches over card occurrences held in a `u128`
//! bitmask. Dead states `(remaining, last card)` are memoized up to a byte
//! budget. Identical cards in one hand are interchangeable, so only the first
//! of a run of duplicates is tried at each node.

use rustc_hash::FxHashSet;
use thiserror::Error;

use crate::game::{winner_condition, Card, GameMode, Instance, Move, PlayingSequence};

pub const MAX_SEARCH_CARDS: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("{found} cards exceed the search limit of {limit}")]
    TooManyCards { found: usize, limit: usize },
    #[error("expected a {expected}-player instance, got {found} players")]
    Players { expected: usize, found: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Try playable cards with the fewest onward matches first.
    pub heuristic: bool,
    /// Upper bound on memo table memory.
    pub memo_budget_bytes: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { heuristic: true, memo_budget_bytes: 256 << 20 }
    }
}

/// Answer of an exact solve. `sequence` is present iff `answer` is yes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub answer: bool,
    pub sequence: Option<PlayingSequence>,
    pub nodes_expanded: u64,
}

/// A node of the search as seen by the move-ordering heuristic.
#[derive(Debug, Clone, Copy)]
pub struct SearchState<'a> {
    /// Every card occurrence of the instance.
    pub cards: &'a [Card],
    /// Occurrences not yet played.
    pub remaining: u128,
    /// Occurrences the player to move may play now.
    pub playable: u128,
}

/// Playable occurrences ordered by ascending forward-degree (matches among the
/// other remaining cards), ties by occurrence order. Never drops a move.
pub fn search_order_heuristic(state: &SearchState<'_>) -> Vec<usize> {
    let matches = match_masks(state.cards);
    order_moves(&matches, state.remaining, state.playable, true)
}

fn match_masks(cards: &[Card]) -> Vec<u128> {
    cards
        .iter()
        .enumerate()
        .map(|(i, a)| {
            cards
                .iter()
                .enumerate()
                .filter(|&(j, b)| i != j && a.matches(b))
                .fold(0u128, |m, (j, _)| m | (1 << j))
        })
        .collect()
}

fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            i
        })
    })
}

fn order_moves(matches: &[u128], remaining: u128, playable: u128, heuristic: bool) -> Vec<usize> {
    let mut moves: Vec<usize> = bits(playable).collect();
    if heuristic {
        moves.sort_by_key(|&c| ((matches[c] & remaining & !(1u128 << c)).count_ones(), c));
    }
    moves
}

struct Search {
    cards: Vec<Card>,
    owner: Vec<usize>,
    occurrence: Vec<usize>,
    matches: Vec<u128>,
    hands: Vec<u128>,
    opts: SearchOptions,
    dead: FxHashSet<(u128, u8)>,
    memo_cap: usize,
    nodes: u64,
    path: Vec<usize>,
}

impl Search {
    fn new(inst: &Instance, opts: SearchOptions) -> Result<Self, SolveError> {
        let n = inst.card_count();
        if n > MAX_SEARCH_CARDS {
            return Err(SolveError::TooManyCards { found: n, limit: MAX_SEARCH_CARDS });
        }
        let mut cards = Vec::with_capacity(n);
        let mut owner = Vec::with_capacity(n);
        let mut occurrence = Vec::with_capacity(n);
        let mut hands = vec![0u128; inst.players()];
        for (p, k, card) in inst.occurrences() {
            hands[p - 1] |= 1 << cards.len();
            cards.push(card);
            owner.push(p);
            occurrence.push(k);
        }
        let matches = match_masks(&cards);
        Ok(Search {
            cards,
            owner,
            occurrence,
            matches,
            hands,
            opts,
            dead: FxHashSet::default(),
            // key plus table overhead
            memo_cap: opts.memo_budget_bytes / 48,
            nodes: 0,
            path: Vec::new(),
        })
    }

    fn all(&self) -> u128 {
        self.hands.iter().fold(0, |m, h| m | h)
    }

    /// Every card still needed by player 1 is reachable from `last` through
    /// matches among the remaining cards.
    fn reachable(&self, remaining: u128, last: usize) -> bool {
        let target = remaining & self.hands[0];
        let mut seen = 1u128 << last;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.matches[v] & remaining & !seen;
            seen |= fresh;
            frontier |= fresh;
            if target & !seen == 0 {
                return true;
            }
        }
        target & !seen == 0
    }

    fn mover(&self, remaining: u128, last: usize) -> usize {
        let q = self.owner[last];
        if self.hands.len() == 1 {
            return q;
        }
        let other = 3 - q;
        if self.matches[last] & remaining & self.hands[other - 1] != 0 {
            other
        } else {
            q
        }
    }

    /// Distinct moves in search order: a duplicate of an already listed card
    /// from the same hand is skipped.
    fn candidates(&self, remaining: u128, playable: u128) -> Vec<usize> {
        let ordered = order_moves(&self.matches, remaining, playable, self.opts.heuristic);
        let mut out: Vec<usize> = Vec::with_capacity(ordered.len());
        for c in ordered {
            if !out.iter().any(|&d| self.cards[d] == self.cards[c] && self.owner[d] == self.owner[c]) {
                out.push(c);
            }
        }
        out
    }

    /// Called right after `last` was played; `remaining` excludes it.
    fn extend(&mut self, remaining: u128, last: usize) -> bool {
        self.nodes += 1;
        let q = self.owner[last];
        if remaining & self.hands[q - 1] == 0 {
            return q == 1;
        }
        if !self.reachable(remaining, last) || self.dead.contains(&(remaining, last as u8)) {
            return false;
        }
        let mover = self.mover(remaining, last);
        let playable = self.matches[last] & remaining & self.hands[mover - 1];
        for c in self.candidates(remaining, playable) {
            self.path.push(c);
            if self.extend(remaining & !(1 << c), c) {
                return true;
            }
            self.path.pop();
        }
        if self.dead.len() < self.memo_cap {
            self.dead.insert((remaining, last as u8));
        }
        false
    }

    fn run(mut self, inst: &Instance, mode: GameMode) -> Certificate {
        let all = self.all();
        let found = if self.hands[0] == 0 {
            true
        } else {
            let mut found = false;
            for c in self.candidates(all, self.hands[0]) {
                self.path.push(c);
                if self.extend(all & !(1 << c), c) {
                    found = true;
                    break;
                }
                self.path.pop();
            }
            found
        };
        let sequence = found.then(|| {
            PlayingSequence::new(
                self.path
                    .iter()
                    .map(|&c| Move::new(self.owner[c], self.cards[c], self.occurrence[c]))
                    .collect(),
            )
        });
        if let Some(seq) = &sequence {
            let outcome = winner_condition(inst, seq, mode);
            assert!(
                matches!(outcome, Ok(o) if o.player1_succeeds()),
                "solver produced an invalid certificate: {outcome:?}"
            );
        }
        Certificate { answer: found, sequence, nodes_expanded: self.nodes }
    }
}

/// Can one player discard every card of `cards` (a Hamiltonian path in the
/// solitaire match graph)?
pub fn solve_uno1_exact(cards: &[Card]) -> Result<Certificate, SolveError> {
    solve_uno1_with(cards, SearchOptions::default())
}

pub fn solve_uno1_with(cards: &[Card], opts: SearchOptions) -> Result<Certificate, SolveError> {
    let inst = Instance::solitaire(cards.to_vec());
    Ok(Search::new(&inst, opts)?.run(&inst, GameMode::Uno1))
}

/// Can both players cooperate so that player 1's hand empties first, with
/// forced play and skips for a player holding no playable card?
pub fn solve_uno2_coop(inst: &Instance) -> Result<Certificate, SolveError> {
    solve_uno2_coop_with(inst, SearchOptions::default())
}

pub fn solve_uno2_coop_with(inst: &Instance, opts: SearchOptions) -> Result<Certificate, SolveError> {
    if inst.players() != 2 {
        return Err(SolveError::Players { expected: 2, found: inst.players() });
    }
    Ok(Search::new(inst, opts)?.run(inst, GameMode::Coop2))
}
