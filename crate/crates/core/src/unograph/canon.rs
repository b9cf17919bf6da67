//! Canonical labeling for small undirected graphs (at most 64 vertices).
//!
//! Individualization-refinement: color refinement to an equitable ordered
//! partition, then branch on every vertex of the first non-singleton cell and
//! keep the lexicographically smallest relabelled adjacency matrix. Twins are
//! interchangeable by an automorphism, so only one of them is branched on.

use super::Graph;

pub const MAX_CANON_VERTICES: usize = 64;

/// Adjacency matrix rows of the canonically relabelled graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub order: usize,
    pub rows: Vec<u64>,
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    assert!(!g.is_directed(), "canonical form is defined for undirected graphs");
    let n = g.order();
    assert!(n <= MAX_CANON_VERTICES, "canonical form supports at most {MAX_CANON_VERTICES} vertices");
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w)))
        .collect();
    let twin = twin_classes(&adj);
    let mut best = None;
    if n > 0 {
        search(&adj, &twin, vec![(0..n).collect()], &mut best);
    }
    CanonicalForm { order: n, rows: best.unwrap_or_default() }
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

/// `twin[v]` is the smallest `u` with `N(u) - v == N(v) - u`.
fn twin_classes(adj: &[u64]) -> Vec<usize> {
    let n = adj.len();
    (0..n)
        .map(|v| {
            (0..v)
                .find(|&u| adj[u] & !(1 << v) == adj[v] & !(1 << u))
                .unwrap_or(v)
        })
        .collect()
}

fn cell_mask(cell: &[usize]) -> u64 {
    cell.iter().fold(0, |m, &v| m | (1 << v))
}

/// Splits cells by neighbor counts into each splitter cell until stable.
fn refine(adj: &[u64], cells: &mut Vec<Vec<usize>>) {
    'outer: loop {
        for s in 0..cells.len() {
            let splitter = cell_mask(&cells[s]);
            let mut next = Vec::with_capacity(cells.len());
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> =
                    cell.iter().map(|&v| ((adj[v] & splitter).count_ones(), v)).collect();
                keyed.sort_unstable();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
            }
            if next.len() != cells.len() {
                *cells = next;
                continue 'outer;
            }
        }
        return;
    }
}

fn search(adj: &[u64], twin: &[usize], mut cells: Vec<Vec<usize>>, best: &mut Option<Vec<u64>>) {
    refine(adj, &mut cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let rows = relabel(adj, &cells);
        if best.as_ref().is_none_or(|b| rows < *b) {
            *best = Some(rows);
        }
        return;
    };
    let cell = cells[target].clone();
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cell {
        if tried.iter().any(|&w| twin[w] == twin[v]) {
            continue;
        }
        tried.push(v);
        let mut child = Vec::with_capacity(cells.len() + 1);
        child.extend_from_slice(&cells[..target]);
        child.push(vec![v]);
        child.push(cell.iter().copied().filter(|&w| w != v).collect());
        child.extend_from_slice(&cells[target + 1..]);
        search(adj, twin, child, best);
    }
}

fn relabel(adj: &[u64], cells: &[Vec<usize>]) -> Vec<u64> {
    let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
    let mut pos = vec![0usize; adj.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order
        .iter()
        .map(|&v| {
            let mut row = 0u64;
            let mut rest = adj[v];
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                row |= 1 << pos[w];
                rest &= rest - 1;
            }
            row
        })
        .collect()
}
