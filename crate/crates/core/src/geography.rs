//! Undirected vertex geography on bipartite graphs, and uncooperative
//! two-player UNO through it.
//!
//! A token sits on a vertex; the mover slides it to a neighbor and the vertex it
//! left is deleted. The mover from `v` wins iff `v` lies in every maximum
//! matching. In uncooperative UNO player 1's free opening card is the start of
//! such a game for player 2, so player 1 wins iff some card of hand 1 is
//! avoidable (missed by some maximum matching) in the two-player match graph.

use std::collections::VecDeque;

use crate::game::{Instance, Move, PlayingSequence};
use crate::unograph::{build_uno2_graph, is_bipartite, Bipartition, Graph, GraphError};

pub use crate::oracles::uvg_minimax;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching { mate: vec![None; n] }
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        self.mate[v]
    }

    pub fn covers(&self, v: usize) -> bool {
        self.mate[v].is_some()
    }

    pub fn size(&self) -> usize {
        self.mate.iter().flatten().count() / 2
    }

    /// Matched pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(u, m)| m.filter(|&v| u < v).map(|v| (u, v)))
            .collect()
    }
}

/// Maximum-cardinality matching of a bipartite graph.
pub fn max_matching(g: &Graph) -> Result<Matching, GraphError> {
    let sides = is_bipartite(g).map_err(GraphError::NotBipartite)?;
    Ok(max_matching_with(g, &sides))
}

/// Hopcroft-Karp with side 0 as the left part.
pub fn max_matching_with(g: &Graph, sides: &Bipartition) -> Matching {
    const INF: usize = usize::MAX;
    let n = g.order();
    let left: Vec<usize> = (0..n).filter(|&v| sides.side[v] == 0).collect();
    let mut mate: Vec<Option<usize>> = vec![None; n];
    let mut dist = vec![INF; n];

    fn augment(u: usize, g: &Graph, mate: &mut [Option<usize>], dist: &mut [usize]) -> bool {
        for &v in g.neighbors(u) {
            let ok = match mate[v] {
                None => true,
                Some(w) => dist[w] == dist[u] + 1 && augment(w, g, mate, dist),
            };
            if ok {
                mate[u] = Some(v);
                mate[v] = Some(u);
                return true;
            }
        }
        dist[u] = INF;
        false
    }

    loop {
        let mut queue = VecDeque::new();
        for &u in &left {
            if mate[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                match mate[v] {
                    None => found = true,
                    Some(w) if dist[w] == INF => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }
        for &u in &left {
            if mate[u].is_none() {
                augment(u, g, &mut mate, &mut dist);
            }
        }
    }
    Matching { mate }
}

/// Vertices missed by at least one maximum matching: those unmatched in `m`
/// plus those reachable from an unmatched vertex by an even alternating path.
/// `m` must be maximum.
pub fn avoidable_vertices(g: &Graph, m: &Matching) -> Vec<usize> {
    let n = g.order();
    let mut even = vec![false; n];
    let mut queue = VecDeque::new();
    for (v, e) in even.iter_mut().enumerate() {
        if !m.covers(v) {
            *e = true;
            queue.push_back(v);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if m.mate(x) == Some(y) {
                continue;
            }
            // y is covered, otherwise x..y would augment a maximum matching.
            if let Some(z) = m.mate(y) {
                if !even[z] {
                    even[z] = true;
                    queue.push_back(z);
                }
            }
        }
    }
    (0..n).filter(|&v| even[v]).collect()
}

/// Same set as [`avoidable_vertices`], by deleting each vertex and comparing
/// matching numbers.
pub fn avoidable_by_deletion(g: &Graph) -> Result<Vec<usize>, GraphError> {
    let full = max_matching(g)?.size();
    let n = g.order();
    Ok((0..n)
        .filter(|&v| {
            let keep: Vec<usize> = (0..n).filter(|&w| w != v).collect();
            max_matching(&g.induced(&keep)).expect("subgraph of a bipartite graph").size() == full
        })
        .collect())
}

/// Outcome of a geography game from a start vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UvgVerdict {
    pub mover_wins: bool,
    /// A winning first move when the mover wins.
    pub opening: Option<usize>,
    /// Token positions of a game where both sides follow [`best_move`],
    /// starting with the start vertex.
    pub principal_line: Vec<usize>,
}

pub fn solve_uvg(g: &Graph, start: usize) -> Result<UvgVerdict, GraphError> {
    if start >= g.order() {
        return Err(GraphError::NoSuchVertex(start));
    }
    let m = max_matching(g)?;
    let mover_wins = !avoidable_vertices(g, &m).contains(&start);
    let principal_line = playout(g, start);
    let opening = if mover_wins { principal_line.get(1).copied() } else { None };
    Ok(UvgVerdict { mover_wins, opening, principal_line })
}

/// Both sides follow [`best_move`] from `start` until the mover is stuck.
pub fn playout(g: &Graph, start: usize) -> Vec<usize> {
    let mut alive = vec![true; g.order()];
    let mut line = vec![start];
    let mut token = start;
    while let Some(next) = best_move(g, &alive, token) {
        alive[token] = false;
        token = next;
        line.push(token);
    }
    line
}

/// Move for the player holding the token in the subgraph of `alive` vertices.
///
/// Prefers a neighbor `w` that is avoidable once the token's vertex is gone:
/// the opponent then moves from an avoidable vertex and loses. Such a neighbor
/// exists exactly when the mover is winning. Otherwise falls back to the
/// neighbor of highest remaining degree. `None` when no move exists.
pub fn best_move(g: &Graph, alive: &[bool], token: usize) -> Option<usize> {
    let options: Vec<usize> = g.neighbors(token).iter().copied().filter(|&w| alive[w]).collect();
    if options.is_empty() {
        return None;
    }
    let keep: Vec<usize> = (0..g.order()).filter(|&v| alive[v] && v != token).collect();
    let sub = g.induced(&keep);
    let local = |v: usize| keep.binary_search(&v).expect("alive vertex");
    if let Ok(m) = max_matching(&sub) {
        let avoidable = avoidable_vertices(&sub, &m);
        if let Some(&w) = options.iter().find(|&&w| avoidable.binary_search(&local(w)).is_ok()) {
            return Some(w);
        }
    }
    options.iter().copied().max_by_key(|&w| (sub.degree(local(w)), std::cmp::Reverse(w)))
}

/// Outcome of uncooperative two-player play.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    /// 1 or 2: the player who makes the last play under optimal play.
    pub winner: usize,
    /// A winning opening card for player 1, when player 1 wins.
    pub opening_move: Option<Move>,
    /// A game in which both players follow [`best_move`].
    pub principal_line: PlayingSequence,
}

pub fn solve_uno2_uncoop(inst: &Instance) -> Result<Verdict, GraphError> {
    let g = build_uno2_graph(inst)?;
    if inst.hand(1).is_empty() {
        return Ok(Verdict { winner: 2, opening_move: None, principal_line: PlayingSequence::default() });
    }
    let sides = Bipartition { side: g.vertices().iter().map(|v| (v.player - 1) as u8).collect() };
    let m = max_matching_with(g.graph(), &sides);
    let avoidable = avoidable_vertices(g.graph(), &m);
    let first_card = |v: usize| g.vertex(v).player == 1;
    let winning = avoidable.iter().copied().find(|&v| first_card(v));
    let to_move = |v: usize| {
        let label = g.vertex(v);
        Move::new(label.player, label.card, label.occurrence)
    };

    let opening = winning.unwrap_or_else(|| (0..g.order()).find(|&v| first_card(v)).expect("hand 1 is not empty"));
    let principal_line = PlayingSequence::new(playout(g.graph(), opening).into_iter().map(to_move).collect());
    Ok(Verdict {
        winner: if winning.is_some() { 1 } else { 2 },
        opening_move: winning.map(to_move),
        principal_line,
    })
}

/// Winner via a virtual start vertex joined to every card of hand 1: player 1
/// is the mover from that vertex.
pub fn uncoop_winner_via_virtual_start(inst: &Instance) -> Result<usize, GraphError> {
    let g = build_uno2_graph(inst)?;
    let n = g.order();
    let mut edges = g.graph().edges();
    edges.extend((0..n).filter(|&v| g.vertex(v).player == 1).map(|v| (v, n)));
    let extended = Graph::undirected(n + 1, &edges);
    let verdict = solve_uvg(&extended, n)?;
    Ok(if verdict.mover_wins { 1 } else { 2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{cards, winner_condition, GameMode, Outcome};

    fn path3() -> Graph {
        Graph::undirected(3, &[(0, 1), (1, 2)])
    }

    #[test]
    fn matching_sizes() {
        assert_eq!(max_matching(&Graph::undirected(2, &[(0, 1)])).unwrap().size(), 1);
        assert_eq!(max_matching(&path3()).unwrap().size(), 1);
        let c4 = Graph::undirected(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(max_matching(&c4).unwrap().size(), 2);
        let triangle = Graph::undirected(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(matches!(max_matching(&triangle), Err(GraphError::NotBipartite(_))));
    }

    #[test]
    fn avoidable_examples() {
        let edge = Graph::undirected(2, &[(0, 1)]);
        assert!(avoidable_vertices(&edge, &max_matching(&edge).unwrap()).is_empty());
        let p = path3();
        assert_eq!(avoidable_vertices(&p, &max_matching(&p).unwrap()), vec![0, 2]);
        let isolated = Graph::undirected(1, &[]);
        assert_eq!(avoidable_vertices(&isolated, &Matching::empty(1)), vec![0]);
        assert_eq!(avoidable_by_deletion(&p).unwrap(), vec![0, 2]);
    }

    #[test]
    fn uvg_examples() {
        assert!(!solve_uvg(&Graph::undirected(1, &[]), 0).unwrap().mover_wins);
        let p = path3();
        let from_middle = solve_uvg(&p, 1).unwrap();
        assert!(from_middle.mover_wins);
        assert_eq!(from_middle.principal_line.len(), 2);
        assert!(!solve_uvg(&p, 0).unwrap().mover_wins);
        assert!(matches!(solve_uvg(&p, 3), Err(GraphError::NoSuchVertex(3))));
    }

    #[test]
    fn best_move_examples() {
        let p = path3();
        let alive = [true; 3];
        let w = best_move(&p, &alive, 1).unwrap();
        assert!(w == 0 || w == 2);
        assert_eq!(best_move(&p, &[true, false, true], 0), None);
    }

    #[test]
    fn uncoop_examples() {
        let edgeless = Instance::two_player(cards(&[(1, 1)]), cards(&[(2, 2)]));
        let v = solve_uno2_uncoop(&edgeless).unwrap();
        assert_eq!(v.winner, 1);
        assert_eq!(v.opening_move.unwrap().card, crate::Card::new(1, 1));

        let forced = Instance::two_player(cards(&[(1, 1)]), cards(&[(1, 2)]));
        let v = solve_uno2_uncoop(&forced).unwrap();
        assert_eq!(v.winner, 2);
        assert_eq!(v.principal_line.len(), 2);

        let either = Instance::two_player(cards(&[(1, 1), (2, 2)]), cards(&[(1, 2)]));
        let v = solve_uno2_uncoop(&either).unwrap();
        assert_eq!(v.winner, 1);
        let g = build_uno2_graph(&either).unwrap();
        let m = max_matching(g.graph()).unwrap();
        // Both hand-1 cards are avoidable: player 1 wins with either opening.
        assert_eq!(avoidable_vertices(g.graph(), &m), vec![0, 1]);

        for inst in [&edgeless, &forced, &either] {
            let v = solve_uno2_uncoop(inst).unwrap();
            assert_eq!(winner_condition(inst, &v.principal_line, GameMode::Uncoop2), Ok(Outcome::Winner(v.winner)));
            assert_eq!(uncoop_winner_via_virtual_start(inst).unwrap(), v.winner);
        }
    }

    #[test]
    fn empty_first_hand_loses() {
        let inst = Instance::two_player(vec![], cards(&[(1, 1)]));
        assert_eq!(solve_uno2_uncoop(&inst).unwrap().winner, 2);
        assert!(solve_uno2_uncoop(&Instance::solitaire(cards(&[(1, 1)]))).is_err());
    }
}
