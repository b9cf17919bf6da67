//! Exponential ground truth for the polynomial and heuristic algorithms.
//!
//! Nothing here calls into the solvers it checks: Hamiltonian paths come from a
//! subset dynamic program, game values from plain memoized game trees.

use std::collections::HashMap;

use thiserror::Error;

use crate::game::{Card, GameMode, Instance, Move, PlayingSequence};
use crate::geography::{UvgVerdict, Verdict};
use crate::unograph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_cards: usize,
    pub max_nodes: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_vertices: 20, max_cards: 12, max_nodes: 50_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} {found} exceeds the oracle budget of {limit}")]
    Budget { what: &'static str, found: u64, limit: u64 },
    #[error("mode {mode} needs {} players, the instance has {players}", mode.players())]
    Players { mode: GameMode, players: usize },
    #[error("start vertex {0} is not in the graph")]
    NoSuchVertex(usize),
}

fn over(what: &'static str, found: usize, limit: usize) -> OracleError {
    OracleError::Budget { what, found: found as u64, limit: limit as u64 }
}

/// Hamiltonian path by dynamic programming over vertex subsets: `ends[S]` is the
/// set of vertices where a path covering exactly `S` can end. With `start`, paths
/// must begin there.
pub fn hamiltonian_path_bruteforce(
    g: &Graph,
    start: Option<usize>,
    budget: OracleBudget,
) -> Result<Option<Vec<usize>>, OracleError> {
    let n = g.order();
    if n > budget.max_vertices.min(31) {
        return Err(over("vertex count", n, budget.max_vertices.min(31)));
    }
    if let Some(s) = start {
        if s >= n {
            return Err(OracleError::NoSuchVertex(s));
        }
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut ends = vec![0u32; full as usize + 1];
    for v in 0..n {
        if start.is_none_or(|s| s == v) {
            ends[1 << v] = 1 << v;
        }
    }
    for mask in 1..=full {
        let mut e = ends[mask as usize];
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut next = adj[v] & !mask;
            while next != 0 {
                let w = next.trailing_zeros();
                next &= next - 1;
                ends[(mask | (1 << w)) as usize] |= 1 << w;
            }
        }
    }
    if ends[full as usize] == 0 {
        return Ok(None);
    }
    let mut path = Vec::with_capacity(n);
    let mut mask = full;
    let mut v = ends[full as usize].trailing_zeros() as usize;
    loop {
        path.push(v);
        let rest = mask & !(1 << v);
        if rest == 0 {
            break;
        }
        let prev = ends[rest as usize] & adj[v];
        v = prev.trailing_zeros() as usize;
        mask = rest;
    }
    path.reverse();
    Ok(Some(path))
}

struct Deal {
    cards: Vec<Card>,
    owner: Vec<usize>,
    occurrence: Vec<usize>,
    players: usize,
}

impl Deal {
    fn new(inst: &Instance) -> Self {
        let mut deal = Deal { cards: vec![], owner: vec![], occurrence: vec![], players: inst.players() };
        for (p, k, c) in inst.occurrences() {
            deal.cards.push(c);
            deal.owner.push(p);
            deal.occurrence.push(k);
        }
        deal
    }

    /// Unplayed cards of `player` that may follow `last`.
    fn options(&self, used: u32, last: Option<usize>, player: usize) -> Vec<usize> {
        (0..self.cards.len())
            .filter(|&i| used & (1 << i) == 0 && self.owner[i] == player)
            .filter(|&i| last.is_none_or(|l| self.cards[l].matches(&self.cards[i])))
            .collect()
    }

    fn hand_done(&self, used: u32, player: usize) -> bool {
        (0..self.cards.len()).all(|i| self.owner[i] != player || used & (1 << i) != 0)
    }

    fn to_move(&self, i: usize) -> Move {
        Move::new(self.owner[i], self.cards[i], self.occurrence[i])
    }
}

struct Tree<'a> {
    deal: &'a Deal,
    memo: HashMap<(u32, usize, usize), bool>,
    nodes: u64,
    max_nodes: u64,
}

impl Tree<'_> {
    fn tick(&mut self) -> Result<(), OracleError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(OracleError::Budget { what: "game-tree nodes", found: self.nodes, limit: self.max_nodes });
        }
        Ok(())
    }

    /// Uncooperative: does the player to move (who must follow `last`) win?
    fn mover_wins(&mut self, used: u32, last: Option<usize>, mover: usize) -> Result<bool, OracleError> {
        let key = (used, last.map_or(usize::MAX, |l| l), mover);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        self.tick()?;
        let mut win = false;
        for c in self.deal.options(used, last, mover) {
            if !self.mover_wins(used | (1 << c), Some(c), 3 - mover)? {
                win = true;
                break;
            }
        }
        self.memo.insert(key, win);
        Ok(win)
    }

    /// Cooperative: after `last` was played by its owner, can play continue so
    /// that player 1 empties their hand first?
    fn cooperate(&mut self, used: u32, last: usize) -> Result<bool, OracleError> {
        let who = self.deal.owner[last];
        if self.deal.hand_done(used, who) {
            return Ok(who == 1);
        }
        let key = (used, last, 0);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        self.tick()?;
        let next = if self.deal.players == 1 { who } else { 3 - who };
        let mut options = self.deal.options(used, Some(last), next);
        if options.is_empty() {
            // skipped: the previous player goes again if they can
            options = self.deal.options(used, Some(last), who);
        }
        let mut ok = false;
        for c in options {
            if self.cooperate(used | (1 << c), c)? {
                ok = true;
                break;
            }
        }
        self.memo.insert(key, ok);
        Ok(ok)
    }

    fn cooperative_line(&mut self, mut used: u32, mut last: usize, line: &mut Vec<usize>) -> Result<(), OracleError> {
        loop {
            let who = self.deal.owner[last];
            if self.deal.hand_done(used, who) {
                return Ok(());
            }
            let next = if self.deal.players == 1 { who } else { 3 - who };
            let mut options = self.deal.options(used, Some(last), next);
            if options.is_empty() {
                options = self.deal.options(used, Some(last), who);
            }
            let mut chosen = None;
            for c in options {
                if self.cooperate(used | (1 << c), c)? {
                    chosen = Some(c);
                    break;
                }
            }
            let c = chosen.expect("line follows a successful state");
            line.push(c);
            used |= 1 << c;
            last = c;
        }
    }
}

/// Exact game value by exhaustive search.
///
/// `Uncoop2`: the winner is the last player to play. `Coop2` and `Uno1`: the
/// winner is 1 iff some line empties hand 1 first, else 2.
pub fn uno_minimax(inst: &Instance, mode: GameMode, budget: OracleBudget) -> Result<Verdict, OracleError> {
    if inst.players() != mode.players() {
        return Err(OracleError::Players { mode, players: inst.players() });
    }
    let n = inst.card_count();
    if n > budget.max_cards.min(32) {
        return Err(over("card count", n, budget.max_cards.min(32)));
    }
    let deal = Deal::new(inst);
    let mut tree = Tree { deal: &deal, memo: HashMap::new(), nodes: 0, max_nodes: budget.max_nodes };
    let seq = |line: &[usize]| PlayingSequence::new(line.iter().map(|&i| deal.to_move(i)).collect());

    match mode {
        GameMode::Uncoop2 => {
            let player1_wins = tree.mover_wins(0, None, 1)?;
            let mut line = Vec::new();
            let (mut used, mut last, mut mover) = (0u32, None, 1);
            loop {
                let options = deal.options(used, last, mover);
                let Some(&fallback) = options.first() else { break };
                let mut pick = fallback;
                for &c in &options {
                    if !tree.mover_wins(used | (1 << c), Some(c), 3 - mover)? {
                        pick = c;
                        break;
                    }
                }
                line.push(pick);
                used |= 1 << pick;
                last = Some(pick);
                mover = 3 - mover;
            }
            let opening = player1_wins.then(|| deal.to_move(line[0]));
            Ok(Verdict { winner: if player1_wins { 1 } else { 2 }, opening_move: opening, principal_line: seq(&line) })
        }
        GameMode::Coop2 | GameMode::Uno1 => {
            if deal.hand_done(0, 1) {
                return Ok(Verdict { winner: 1, opening_move: None, principal_line: PlayingSequence::default() });
            }
            for c in deal.options(0, None, 1) {
                if tree.cooperate(1 << c, c)? {
                    let mut line = vec![c];
                    tree.cooperative_line(1 << c, c, &mut line)?;
                    return Ok(Verdict { winner: 1, opening_move: Some(deal.to_move(c)), principal_line: seq(&line) });
                }
            }
            Ok(Verdict { winner: 2, opening_move: None, principal_line: PlayingSequence::default() })
        }
    }
}

/// Geography value by exhaustive search over (remaining vertices, token).
pub fn uvg_minimax(g: &Graph, start: usize) -> Result<UvgVerdict, OracleError> {
    uvg_minimax_with(g, start, OracleBudget::default())
}

pub fn uvg_minimax_with(g: &Graph, start: usize, budget: OracleBudget) -> Result<UvgVerdict, OracleError> {
    let n = g.order();
    if n > budget.max_vertices.min(32) {
        return Err(over("vertex count", n, budget.max_vertices.min(32)));
    }
    if start >= n {
        return Err(OracleError::NoSuchVertex(start));
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();

    fn wins(adj: &[u32], alive: u32, token: usize, memo: &mut HashMap<(u32, usize), bool>) -> bool {
        if let Some(&v) = memo.get(&(alive, token)) {
            return v;
        }
        let rest = alive & !(1 << token);
        let mut moves = adj[token] & rest;
        let mut result = false;
        while moves != 0 {
            let w = moves.trailing_zeros() as usize;
            moves &= moves - 1;
            if !wins(adj, rest, w, memo) {
                result = true;
                break;
            }
        }
        memo.insert((alive, token), result);
        result
    }

    let mut memo = HashMap::new();
    let all: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mover_wins = wins(&adj, all, start, &mut memo);
    let mut line = vec![start];
    let (mut alive, mut token) = (all, start);
    loop {
        let rest = alive & !(1 << token);
        let moves = adj[token] & rest;
        if moves == 0 {
            break;
        }
        let mut pick = moves.trailing_zeros() as usize;
        let mut m = moves;
        while m != 0 {
            let w = m.trailing_zeros() as usize;
            m &= m - 1;
            if !wins(&adj, rest, w, &mut memo) {
                pick = w;
                break;
            }
        }
        line.push(pick);
        alive = rest;
        token = pick;
    }
    let opening = if mover_wins { line.get(1).copied() } else { None };
    Ok(UvgVerdict { mover_wins, opening, principal_line: line })
}
