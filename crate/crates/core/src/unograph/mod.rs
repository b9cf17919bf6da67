//! Match graphs over card occurrences.
//!
//! The solitaire graph joins every pair of matching cards and is the line graph
//! of the color/number incidence bigraph. The two-player graph keeps only
//! matches across hands, which makes it bipartite with the hands as sides.

mod canon;
mod dot;

use std::collections::VecDeque;

use thiserror::Error;

use crate::game::{Card, Instance};

pub use canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use dot::export_dot;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("expected a {expected}-player instance, got {found} players")]
    Players { expected: usize, found: usize },
    #[error("graph is not bipartite (odd cycle through {} vertices)", .0.len())]
    NotBipartite(Vec<usize>),
    #[error("vertex {0} is not in the graph")]
    NoSuchVertex(usize),
    #[error("graph has {found} vertices, the limit is {limit}")]
    TooLarge { found: usize, limit: usize },
}

/// Plain adjacency lists. Undirected graphs store each edge in both lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    directed: bool,
}

impl Graph {
    /// Undirected graph from an edge list; duplicate edges and loops are dropped.
    pub fn undirected(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Graph { adj, directed: false }
    }

    pub fn directed(n: usize, arcs: &[(usize, usize)]) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in arcs {
            if u != v {
                adj[u].push(v);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Graph { adj, directed: true }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)`; for undirected graphs each edge once with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if self.directed || u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        let arcs: usize = self.adj.iter().map(Vec::len).sum();
        if self.directed {
            arcs
        } else {
            arcs / 2
        }
    }

    /// Subgraph induced by `keep`, relabelled in increasing vertex order.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> = self.adj[v]
                    .iter()
                    .filter(|&&w| index[w] != usize::MAX)
                    .map(|&w| index[w])
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        Graph { adj, directed: self.directed }
    }

    pub fn is_connected(&self) -> bool {
        if self.order() == 0 {
            return true;
        }
        let mut seen = vec![false; self.order()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.order()
    }
}

/// Label of a vertex in a match graph: which card occurrence it stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub card: Card,
    /// 1-based owner.
    pub player: usize,
    /// Position in the owner's hand.
    pub occurrence: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnoGraph {
    vertices: Vec<Vertex>,
    graph: Graph,
}

impl UnoGraph {
    pub fn new(vertices: Vec<Vertex>, graph: Graph) -> Self {
        assert_eq!(vertices.len(), graph.order(), "one label per vertex");
        UnoGraph { vertices, graph }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> Vertex {
        self.vertices[v]
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    /// Vertex index of `(player, occurrence)`.
    pub fn index_of(&self, player: usize, occurrence: usize) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| v.player == player && v.occurrence == occurrence)
    }
}

fn labels(inst: &Instance) -> Vec<Vertex> {
    inst.occurrences()
        .map(|(player, occurrence, card)| Vertex { card, player, occurrence })
        .collect()
}

/// Solitaire match graph: one vertex per card, an edge for every matching pair.
pub fn build_uno1_graph(cards: &[Card]) -> UnoGraph {
    let vertices: Vec<Vertex> = cards
        .iter()
        .enumerate()
        .map(|(k, &card)| Vertex { card, player: 1, occurrence: k })
        .collect();
    let mut edges = Vec::new();
    for u in 0..cards.len() {
        for v in u + 1..cards.len() {
            if cards[u].matches(&cards[v]) {
                edges.push((u, v));
            }
        }
    }
    UnoGraph::new(vertices, Graph::undirected(cards.len(), &edges))
}

/// Two-player match graph: matching cards in different hands.
pub fn build_uno2_graph(inst: &Instance) -> Result<UnoGraph, GraphError> {
    if inst.players() != 2 {
        return Err(GraphError::Players { expected: 2, found: inst.players() });
    }
    let vertices = labels(inst);
    let mut edges = Vec::new();
    for (u, a) in vertices.iter().enumerate() {
        for (v, b) in vertices.iter().enumerate().skip(u + 1) {
            if a.player != b.player && a.card.matches(&b.card) {
                edges.push((u, v));
            }
        }
    }
    let n = vertices.len();
    Ok(UnoGraph::new(vertices, Graph::undirected(n, &edges)))
}

/// The match graph for any player count. With three or more players it is
/// directed: an arc runs from `u` to `v` when `v`'s card matches and its owner
/// is the next player after `u`'s.
pub fn build_unop_graph(inst: &Instance) -> UnoGraph {
    match inst.players() {
        1 => build_uno1_graph(inst.hand(1)),
        2 => build_uno2_graph(inst).expect("two players"),
        p => {
            let vertices = labels(inst);
            let mut arcs = Vec::new();
            for (u, a) in vertices.iter().enumerate() {
                for (v, b) in vertices.iter().enumerate() {
                    if b.player == a.player % p + 1 && a.card.matches(&b.card) {
                        arcs.push((u, v));
                    }
                }
            }
            let n = vertices.len();
            UnoGraph::new(vertices, Graph::directed(n, &arcs))
        }
    }
}

/// Bipartite multigraph with colors on one side, numbers on the other and one
/// edge per card.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bigraph {
    pub colors: Vec<u32>,
    pub numbers: Vec<u32>,
    /// `(color, number)` per edge; parallel edges are kept.
    pub edges: Vec<(u32, u32)>,
}

pub fn incidence_bigraph(cards: &[Card]) -> Bigraph {
    let mut colors: Vec<u32> = cards.iter().map(|c| c.color).collect();
    let mut numbers: Vec<u32> = cards.iter().map(|c| c.number).collect();
    colors.sort_unstable();
    colors.dedup();
    numbers.sort_unstable();
    numbers.dedup();
    Bigraph { colors, numbers, edges: cards.iter().map(|c| (c.color, c.number)).collect() }
}

/// Line graph of a bigraph: one vertex per edge, adjacent when two edges share
/// an endpoint. Parallel edges share both endpoints and are adjacent.
pub fn line_graph(g: &Bigraph) -> UnoGraph {
    let mut by_color: Vec<Vec<usize>> = vec![Vec::new(); g.colors.len()];
    let mut by_number: Vec<Vec<usize>> = vec![Vec::new(); g.numbers.len()];
    for (e, &(x, y)) in g.edges.iter().enumerate() {
        let ci = g.colors.binary_search(&x).expect("edge color is a vertex");
        let ni = g.numbers.binary_search(&y).expect("edge number is a vertex");
        by_color[ci].push(e);
        by_number[ni].push(e);
    }
    let mut edges = Vec::new();
    for star in by_color.iter().chain(by_number.iter()) {
        for (i, &a) in star.iter().enumerate() {
            for &b in &star[i + 1..] {
                edges.push((a, b));
            }
        }
    }
    let vertices = g
        .edges
        .iter()
        .enumerate()
        .map(|(k, &(x, y))| Vertex { card: Card::new(x, y), player: 1, occurrence: k })
        .collect();
    UnoGraph::new(vertices, Graph::undirected(g.edges.len(), &edges))
}

/// A proper 2-coloring; `side[v]` is 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub side: Vec<u8>,
}

/// Either a 2-coloring or an odd cycle (as a closed vertex walk without the
/// repeated first vertex).
pub fn is_bipartite(g: &Graph) -> Result<Bipartition, Vec<usize>> {
    let n = g.order();
    let mut side = vec![u8::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if side[root] != u8::MAX {
            continue;
        }
        side[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if side[v] == u8::MAX {
                    side[v] = 1 - side[u];
                    parent[v] = u;
                    depth[v] = depth[u] + 1;
                    queue.push_back(v);
                } else if side[v] == side[u] {
                    return Err(odd_cycle(u, v, &parent, &depth));
                }
            }
        }
    }
    Ok(Bipartition { side })
}

fn odd_cycle(mut a: usize, mut b: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let mut left = Vec::new();
    let mut right = Vec::new();
    while depth[a] > depth[b] {
        left.push(a);
        a = parent[a];
    }
    while depth[b] > depth[a] {
        right.push(b);
        b = parent[b];
    }
    while a != b {
        left.push(a);
        right.push(b);
        a = parent[a];
        b = parent[b];
    }
    left.push(a);
    left.extend(right.into_iter().rev());
    left
}
