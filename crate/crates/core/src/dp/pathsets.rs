//! Brute-force ground truth for the layer tables: enumerate every spanning
//! path-set of a prefix's UNO graph and tally the signatures.

use std::collections::BTreeMap;

use super::{order_points, DpError, OrderedPoints, Signature};
use crate::game::Card;

pub const MAX_PATHSET_CARDS: usize = 10;

/// Signature of `paths` (each a list of positions in `points`) against the row
/// of point `layer - 1`. The paths must be vertex-disjoint, cover exactly the
/// first `layer` points, and follow matching cards.
pub fn signature_of(
    paths: &[Vec<usize>],
    layer: usize,
    points: &OrderedPoints,
    colors: u32,
) -> Result<Signature, DpError> {
    if layer == 0 || layer > points.len() {
        return Err(DpError::BadLayer { layer, cards: points.len() });
    }
    let mut seen = vec![false; layer];
    for path in paths {
        if path.is_empty() {
            return Err(DpError::BadPathset("empty path".into()));
        }
        for &p in path {
            if p >= layer {
                return Err(DpError::BadPathset(format!("point {p} is outside the prefix")));
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(DpError::BadPathset(format!("point {p} is used twice")));
            }
        }
        for w in path.windows(2) {
            if !points.card(w[0]).matches(&points.card(w[1])) {
                return Err(DpError::BadPathset(format!("points {} and {} do not match", w[0], w[1])));
            }
        }
    }
    if let Some(p) = seen.iter().position(|&s| !s) {
        return Err(DpError::BadPathset(format!("point {p} is not covered")));
    }
    if let Some(t) = (0..layer).map(|p| points.card(p)).find(|t| t.color == 0 || t.color > colors) {
        return Err(DpError::ColorOutOfRange { card: t, colors });
    }
    let ends: Vec<(usize, usize)> = paths.iter().map(|p| (p[0], p[p.len() - 1])).collect();
    Ok(classify(&ends, layer, points, colors))
}

fn classify(ends: &[(usize, usize)], layer: usize, points: &OrderedPoints, colors: u32) -> Signature {
    let row = points.y(layer - 1);
    let mut sig = Signature::zero(colors);
    for &(a, b) in ends {
        let (on_a, on_b) = (points.y(a) == row, points.y(b) == row);
        match (on_a, on_b) {
            (true, true) => sig.add_h(points.x(a), points.x(b), 1),
            (true, false) => sig.add_v(points.x(a), points.x(b), 1),
            (false, true) => sig.add_v(points.x(b), points.x(a), 1),
            (false, false) => sig.add_d(points.x(a), points.x(b), 1),
        }
    }
    sig
}

struct Forests<'a> {
    points: &'a OrderedPoints,
    layer: usize,
    colors: u32,
    edges: Vec<(usize, usize)>,
    degree: Vec<u8>,
    component: Vec<usize>,
    chosen: Vec<(usize, usize)>,
    tally: BTreeMap<Signature, u64>,
}

impl Forests<'_> {
    fn walk(&mut self, e: usize) {
        if e == self.edges.len() {
            let ends = self.path_ends();
            *self.tally.entry(classify(&ends, self.layer, self.points, self.colors)).or_default() += 1;
            return;
        }
        self.walk(e + 1);
        let (u, v) = self.edges[e];
        if self.degree[u] < 2 && self.degree[v] < 2 && self.component[u] != self.component[v] {
            let saved = self.component.clone();
            let (from, to) = (self.component[v], self.component[u]);
            for c in self.component.iter_mut() {
                if *c == from {
                    *c = to;
                }
            }
            self.degree[u] += 1;
            self.degree[v] += 1;
            self.chosen.push((u, v));
            self.walk(e + 1);
            self.chosen.pop();
            self.degree[u] -= 1;
            self.degree[v] -= 1;
            self.component = saved;
        }
    }

    /// Both ends of every path (a lone point is its own two ends).
    fn path_ends(&self) -> Vec<(usize, usize)> {
        let mut ends: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for p in 0..self.layer {
            match self.degree[p] {
                0 => ends.entry(self.component[p]).or_default().extend([p, p]),
                1 => ends.entry(self.component[p]).or_default().push(p),
                _ => {}
            }
        }
        ends.into_values().map(|e| (e[0], e[1])).collect()
    }
}

/// Multiset of signatures over all spanning path-sets of the first `layer`
/// cards in scan order.
pub fn enumerate_pathsets(cards: &[Card], colors: u32, layer: usize) -> Result<BTreeMap<Signature, u64>, DpError> {
    if cards.len() > MAX_PATHSET_CARDS {
        return Err(DpError::TooLarge { cards: cards.len(), limit: MAX_PATHSET_CARDS });
    }
    if layer == 0 || layer > cards.len() {
        return Err(DpError::BadLayer { layer, cards: cards.len() });
    }
    if let Some(&card) = cards.iter().find(|t| t.color == 0 || t.color > colors) {
        return Err(DpError::ColorOutOfRange { card, colors });
    }
    let points = order_points(cards);
    let mut edges = Vec::new();
    for u in 0..layer {
        for v in u + 1..layer {
            if points.card(u).matches(&points.card(v)) {
                edges.push((u, v));
            }
        }
    }
    let mut forests = Forests {
        points: &points,
        layer,
        colors,
        edges,
        degree: vec![0; layer],
        component: (0..layer).collect(),
        chosen: Vec::new(),
        tally: BTreeMap::new(),
    };
    forests.walk(0);
    Ok(forests.tally)
}
