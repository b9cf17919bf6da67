//! Hardness reductions from Hamiltonian path to UNO, with witness maps in both
//! directions.
//!
//! * vertex/edge: hand 1 gets a card `(i,i)` per vertex, hand 2 a card `(i,j)`
//!   per edge. A Hamiltonian path becomes cooperative play alternating vertex
//!   and edge cards.
//! * node gadget (cubic graphs): one solitaire card `(v, e)` per vertex and
//!   incident edge; the three cards of a vertex form a triangle, and cards of
//!   the two ends of an edge share a number.

use std::fmt;

use thiserror::Error;

use crate::game::{content_lines, Card, Instance, Move, PlayingSequence};
use crate::unograph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("edge ({0},{1}) is a loop")]
    Loop(usize, usize),
    #[error("edge ({0},{1}) is repeated")]
    Duplicate(usize, usize),
    #[error("vertex {vertex} is outside 1..={order}")]
    VertexRange { vertex: usize, order: usize },
    #[error("the graph has no vertices")]
    Empty,
    #[error("vertex {vertex} has degree {degree}, a cubic graph needs 3")]
    NotCubic { vertex: usize, degree: usize },
    #[error("hand 1 has {hand1} cards and hand 2 has {hand2}; padding needs hand 1 no larger")]
    Unbalanced { hand1: usize, hand2: usize },
    #[error("not a Hamiltonian path: {0}")]
    NotHamiltonian(String),
    #[error("not a full winning sequence of the reduced instance: {0}")]
    BadSequence(String),
}

/// Undirected graph without loops or parallel edges. Vertices are 0-based here
/// and 1-based in files and cards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, ReductionError> {
        let mut list = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(ReductionError::VertexRange { vertex: w + 1, order: n });
                }
            }
            if u == v {
                return Err(ReductionError::Loop(u + 1, v + 1));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(ReductionError::Duplicate(w[0].0 + 1, w[0].1 + 1));
        }
        Ok(SimpleGraph { n, edges: list })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Edges `(u, v)` with `u < v`, sorted; the position of an edge is its id minus one.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn to_graph(&self) -> Graph {
        Graph::undirected(self.n, &self.edges)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// 0-based index of edge `{u, v}` in [`SimpleGraph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn is_connected(&self) -> bool {
        self.to_graph().is_connected()
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.edges.len() == self.n - 1 && self.is_connected()
    }

    pub fn is_cubic(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) == 3)
    }

    /// Checks that `path` visits every vertex once along edges.
    pub fn check_hamiltonian(&self, path: &[usize]) -> Result<(), ReductionError> {
        if path.len() != self.n {
            return Err(ReductionError::NotHamiltonian(format!("{} vertices for a graph of {}", path.len(), self.n)));
        }
        let mut seen = vec![false; self.n];
        for &v in path {
            if v >= self.n || std::mem::replace(&mut seen[v], true) {
                return Err(ReductionError::NotHamiltonian(format!("vertex {} repeated or unknown", v + 1)));
            }
        }
        if let Some(w) = path.windows(2).find(|w| !self.has_edge(w[0], w[1])) {
            return Err(ReductionError::NotHamiltonian(format!("no edge {}-{}", w[0] + 1, w[1] + 1)));
        }
        Ok(())
    }
}

/// Reads `graph 1`, `v <count>`, then `e <i> <j>` lines (1-based).
pub fn parse_graph(text: &str) -> Result<SimpleGraph, ReductionError> {
    let err = |line: usize, message: &str| ReductionError::Parse { line, message: message.to_string() };
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, "graph 1")) => {}
        Some((line, _)) => return Err(err(line, "expected header `graph 1`")),
        None => return Err(err(1, "empty graph file")),
    }
    let n = match lines.next() {
        Some((line, l)) => match l.split_whitespace().collect::<Vec<_>>()[..] {
            ["v", count] => count.parse::<usize>().map_err(|_| err(line, "malformed vertex count"))?,
            _ => return Err(err(line, "expected `v <count>`")),
        },
        None => return Err(err(1, "missing `v <count>` line")),
    };
    let mut edges = Vec::new();
    for (line, l) in lines {
        let (i, j) = match l.split_whitespace().collect::<Vec<_>>()[..] {
            ["e", i, j] => match (i.parse::<usize>(), j.parse::<usize>()) {
                (Ok(i), Ok(j)) if i >= 1 && j >= 1 => (i, j),
                _ => return Err(err(line, "malformed edge")),
            },
            _ => return Err(err(line, "expected `e <i> <j>`")),
        };
        edges.push((i - 1, j - 1));
    }
    SimpleGraph::new(n, &edges)
}

pub fn serialize_graph(g: &SimpleGraph) -> String {
    let mut out = format!("graph 1\nv {}\n", g.n);
    for &(u, v) in &g.edges {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// Conditions under which the vertex/edge reduction is not guaranteed to be
/// faithful. The construction is still produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lint {
    Disconnected,
    Tree,
}

impl fmt::Display for Lint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lint::Disconnected => f.write_str("warning: graph is disconnected"),
            Lint::Tree => f.write_str("warning: graph is a tree, so hand 1 outnumbers hand 2"),
        }
    }
}

pub fn hp_source_lints(g: &SimpleGraph) -> Vec<Lint> {
    let mut out = Vec::new();
    if !g.is_connected() {
        out.push(Lint::Disconnected);
    }
    if g.is_tree() {
        out.push(Lint::Tree);
    }
    out
}

fn vertex_card(v: usize) -> Card {
    Card::new(v as u32 + 1, v as u32 + 1)
}

fn edge_card(u: usize, v: usize) -> Card {
    Card::new(u.min(v) as u32 + 1, u.max(v) as u32 + 1)
}

/// Hand 1: `(i,i)` for every vertex; hand 2: `(i,j)` for every edge, in sorted order.
pub fn hp_to_uno2(g: &SimpleGraph) -> Result<Instance, ReductionError> {
    if g.n == 0 {
        return Err(ReductionError::Empty);
    }
    let hand1 = (0..g.n).map(vertex_card).collect();
    let hand2 = g.edges.iter().map(|&(u, v)| edge_card(u, v)).collect();
    let size = g.n as u32;
    Ok(Instance::new(size, size, vec![hand1, hand2]).expect("cards lie in 1..=n"))
}

/// Balances the hands of a vertex/edge instance on `n` vertices so that play
/// is forced to begin at vertex `start` (1-based).
pub fn pad_equal_hands(inst: &Instance, start: usize, n: usize) -> Result<Instance, ReductionError> {
    let (h1, h2) = (inst.hand(1).len(), inst.hand(2).len());
    if h1 > h2 {
        return Err(ReductionError::Unbalanced { hand1: h1, hand2: h2 });
    }
    if start == 0 || start > n {
        return Err(ReductionError::VertexRange { vertex: start, order: n });
    }
    if h1 == h2 {
        return Ok(inst.clone());
    }
    let (top, next) = (n as u32 + 2, n as u32 + 1);
    let mut hand1 = inst.hand(1).to_vec();
    hand1.extend(std::iter::repeat_n(Card::new(top, top), h2 - h1));
    hand1.push(Card::new(top, next));
    let mut hand2 = inst.hand(2).to_vec();
    hand2.push(Card::new(start as u32, next));
    let colors = inst.colors().max(top);
    let numbers = inst.numbers().max(top);
    Ok(Instance::new(colors, numbers, vec![hand1, hand2]).expect("padding stays in range"))
}

/// One card `(v, e)` per vertex `v` and incident edge `e`; edge ids are
/// positions in sorted edge order, starting at 1.
pub fn hpc_to_uno1(g: &SimpleGraph) -> Result<Vec<Card>, ReductionError> {
    if g.n == 0 {
        return Err(ReductionError::Empty);
    }
    if let Some(v) = (0..g.n).find(|&v| g.degree(v) != 3) {
        return Err(ReductionError::NotCubic { vertex: v + 1, degree: g.degree(v) });
    }
    Ok(gadget_cards(g))
}

fn gadget_cards(g: &SimpleGraph) -> Vec<Card> {
    let mut cards = Vec::with_capacity(2 * g.edges.len());
    for v in 0..g.n {
        for (id, &(a, b)) in g.edges.iter().enumerate() {
            if a == v || b == v {
                cards.push(Card::new(v as u32 + 1, id as u32 + 1));
            }
        }
    }
    cards
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionKind {
    /// [`hp_to_uno2`], cooperative two-player.
    VertexEdge,
    /// [`hpc_to_uno1`], solitaire.
    NodeGadget,
}

/// The reduced instance for `kind`.
pub fn reduce(g: &SimpleGraph, kind: ReductionKind) -> Result<Instance, ReductionError> {
    match kind {
        ReductionKind::VertexEdge => hp_to_uno2(g),
        ReductionKind::NodeGadget => Ok(Instance::solitaire(hpc_to_uno1(g)?)),
    }
}

/// Turns a Hamiltonian path (0-based vertices) into a winning sequence of the
/// reduced instance.
pub fn map_hp_to_sequence(
    g: &SimpleGraph,
    path: &[usize],
    kind: ReductionKind,
) -> Result<PlayingSequence, ReductionError> {
    g.check_hamiltonian(path)?;
    let inst = reduce(g, kind)?;
    let plays: Vec<(usize, Card)> = match kind {
        ReductionKind::VertexEdge => {
            let mut plays = vec![(1, vertex_card(path[0]))];
            for w in path.windows(2) {
                plays.push((2, edge_card(w[0], w[1])));
                plays.push((1, vertex_card(w[1])));
            }
            plays
        }
        ReductionKind::NodeGadget => gadget_walk(g, path).into_iter().map(|c| (1, c)).collect(),
    };
    Ok(PlayingSequence::resolve(&inst, &plays).expect("every mapped card is dealt"))
}

fn check_full_walk(inst: &Instance, seq: &PlayingSequence) -> Result<(), ReductionError> {
    let bad = |m: String| Err(ReductionError::BadSequence(m));
    let mut used: Vec<Vec<bool>> = inst.hands().iter().map(|h| vec![false; h.len()]).collect();
    for (j, m) in seq.moves.iter().enumerate() {
        if m.player == 0 || m.player > inst.players() || inst.hand(m.player).get(m.occurrence) != Some(&m.card) {
            return bad(format!("move {}: {m} is not dealt", j + 1));
        }
        if std::mem::replace(&mut used[m.player - 1][m.occurrence], true) {
            return bad(format!("move {}: {m} is played twice", j + 1));
        }
        if j > 0 && !seq.moves[j - 1].card.matches(&m.card) {
            return bad(format!("move {}: {m} does not match the previous card", j + 1));
        }
    }
    if used[0].iter().any(|&u| !u) {
        return bad("hand 1 is not emptied".into());
    }
    Ok(())
}

/// Each vertex's triangle is traversed entering on the edge from the previous
/// vertex and leaving on the edge to the next one, with the third card between.
fn gadget_walk(g: &SimpleGraph, path: &[usize]) -> Vec<Card> {
    let id = |u: usize, v: usize| g.edge_index(u, v).expect("path edge") as u32 + 1;
    let incident = |v: usize| -> Vec<u32> {
        g.edges.iter().enumerate().filter(|(_, &(a, b))| a == v || b == v).map(|(i, _)| i as u32 + 1).collect()
    };
    let n = path.len();
    let mut walk = Vec::with_capacity(3 * n);
    for (pos, &v) in path.iter().enumerate() {
        let color = v as u32 + 1;
        let e_in = (pos > 0).then(|| id(path[pos - 1], v));
        let e_out = (pos + 1 < n).then(|| id(v, path[pos + 1]));
        let others: Vec<u32> = incident(v).into_iter().filter(|&e| Some(e) != e_in && Some(e) != e_out).collect();
        let mut numbers = Vec::with_capacity(3);
        numbers.extend(e_in);
        numbers.extend(&others);
        numbers.extend(e_out);
        walk.extend(numbers.into_iter().map(|e| Card::new(color, e)));
    }
    walk
}

/// Recovers a Hamiltonian path (0-based) from a sequence of the reduced
/// instance that plays every card of hand 1, each card matching the previous.
///
/// Turn order is not checked for the vertex/edge reduction: on trees, player 2
/// runs out of cards first, so a path's witness is not a cooperative win there,
/// yet it still encodes the path.
pub fn map_sequence_to_hp(
    g: &SimpleGraph,
    seq: &PlayingSequence,
    kind: ReductionKind,
) -> Result<Vec<usize>, ReductionError> {
    let inst = reduce(g, kind)?;
    check_full_walk(&inst, seq)?;
    let path = match kind {
        ReductionKind::VertexEdge => seq
            .moves
            .iter()
            .filter(|m| m.player == 1)
            .map(|m| m.card.color as usize - 1)
            .collect(),
        ReductionKind::NodeGadget => {
            let mut walk: Vec<Card> = seq.cards().collect();
            make_gadgets_consecutive(&mut walk);
            let mut path: Vec<usize> = Vec::new();
            for t in walk {
                let v = t.color as usize - 1;
                if path.last() != Some(&v) {
                    path.push(v);
                }
            }
            path
        }
    };
    g.check_hamiltonian(&path)?;
    Ok(path)
}

/// A triangle split across the walk leaves one of its cards alone at an end of
/// the walk (the card's only outside neighbor cannot both enter and leave).
/// Moving that card between the other two keeps the walk valid.
fn make_gadgets_consecutive(walk: &mut Vec<Card>) {
    loop {
        let Some(color) = split_color(walk) else { return };
        let n = walk.len();
        let lone = if walk[0].color == color && walk.get(1).map(|t| t.color) != Some(color) {
            0
        } else if walk[n - 1].color == color && walk[n - 2].color != color {
            n - 1
        } else {
            // Not the shape a valid walk can take; leave it for the Hamiltonian check.
            return;
        };
        let card = walk.remove(lone);
        let Some(pair) = walk.windows(2).position(|w| w[0].color == color && w[1].color == color) else {
            walk.insert(lone, card);
            return;
        };
        walk.insert(pair + 1, card);
    }
}

fn split_color(walk: &[Card]) -> Option<u32> {
    let mut finished: Vec<u32> = Vec::new();
    for (i, t) in walk.iter().enumerate() {
        if i > 0 && walk[i - 1].color != t.color {
            finished.push(walk[i - 1].color);
        }
        if finished.contains(&t.color) {
            return Some(t.color);
        }
    }
    None
}

/// Moves of a sequence as `(player, card)` pairs; convenient for fixtures.
pub fn plays_of(seq: &PlayingSequence) -> Vec<(usize, Card)> {
    seq.moves.iter().map(|m: &Move| (m.player, m.card)).collect()
}
