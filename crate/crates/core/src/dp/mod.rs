//! Polynomial-time solitaire decision for a bounded number of colors.
//!
//! Cards are lattice points (x = color, y = number) scanned row by row. After
//! each prefix the table maps every reachable endpoint signature to the number
//! of spanning path-sets of the prefix's UNO graph having that signature. A path
//! endpoint is either on the current row (it matches every later card of the
//! row) or below it (it only matches later cards of its own column), so the
//! signature is all the future needs to know.

mod pathsets;
mod signature;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rustc_hash::{FxHashMap, FxHashSet};
use thiserror::Error;

use crate::game::Card;

pub use pathsets::{enumerate_pathsets, signature_of, MAX_PATHSET_CARDS};
pub use signature::Signature;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DpError {
    #[error("card {card} has a color outside 1..={colors}")]
    ColorOutOfRange { card: Card, colors: u32 },
    #[error("{cards} cards exceed the enumeration cap of {limit}")]
    TooLarge { cards: usize, limit: usize },
    #[error("layer {layer} is outside 1..={cards}")]
    BadLayer { layer: usize, cards: usize },
    #[error("invalid path-set: {0}")]
    BadPathset(String),
}

/// Cards in scan order: by number, then color, then input position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedPoints {
    points: Vec<(Card, usize)>,
}

impl OrderedPoints {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn card(&self, i: usize) -> Card {
        self.points[i].0
    }

    pub fn x(&self, i: usize) -> u32 {
        self.points[i].0.color
    }

    pub fn y(&self, i: usize) -> u32 {
        self.points[i].0.number
    }

    /// Position of point `i` in the input card list.
    pub fn occurrence(&self, i: usize) -> usize {
        self.points[i].1
    }

    pub fn cards(&self) -> Vec<Card> {
        self.points.iter().map(|p| p.0).collect()
    }
}

pub fn order_points(cards: &[Card]) -> OrderedPoints {
    let mut points: Vec<(Card, usize)> = cards.iter().copied().zip(0..).collect();
    points.sort_by_key(|&(c, i)| (c.number, c.color, i));
    OrderedPoints { points }
}

/// One layer of the table, projected onto signatures.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DpTable {
    pub layer: usize,
    pub entries: BTreeMap<Signature, BigUint>,
}

impl DpTable {
    pub fn count(&self, s: &Signature) -> BigUint {
        self.entries.get(s).cloned().unwrap_or_default()
    }

    /// Total number of spanning path-sets of the prefix.
    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }
}

impl fmt::Display for DpTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, n) in &self.entries {
            writeln!(f, "{s} {n}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DpMode {
    /// Exact path-set counts per signature.
    #[default]
    Count,
    /// Reachability only, with pruning of states that cannot finish as one path.
    Decide,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpResult {
    pub answer: bool,
    /// Final layer; empty in `Decide` mode.
    pub table: DpTable,
    /// Largest number of live states in any layer.
    pub peak_states: usize,
}

/// Yes iff the cards can all be played in one matching sequence, i.e. the
/// UNO graph has a Hamiltonian path. Colors must lie in `1..=colors`.
pub fn dp_decide(cards: &[Card], colors: u32) -> Result<DpResult, DpError> {
    dp_decide_with(cards, colors, DpMode::Count)
}

pub fn dp_decide_with(cards: &[Card], colors: u32, mode: DpMode) -> Result<DpResult, DpError> {
    check_colors(cards, colors)?;
    let points = order_points(cards);
    let lattice = Lattice::new(colors as usize);
    match mode {
        DpMode::Count => {
            let mut peak = 0;
            let last = lattice.count_layers(&points, |_, _| {}, &mut peak);
            let table = lattice.project(&last, points.len());
            let answer = points.is_empty() || last.keys().any(|s| lattice.paths(s) == 1);
            Ok(DpResult { answer, table, peak_states: peak })
        }
        DpMode::Decide => {
            let (answer, peak) = lattice.decide(&points);
            Ok(DpResult { answer, table: DpTable::default(), peak_states: peak })
        }
    }
}

/// Every layer's table, for comparison against brute-force enumeration.
pub fn dp_layers(cards: &[Card], colors: u32) -> Result<Vec<DpTable>, DpError> {
    check_colors(cards, colors)?;
    let points = order_points(cards);
    let lattice = Lattice::new(colors as usize);
    let mut layers = Vec::with_capacity(points.len());
    let mut peak = 0;
    lattice.count_layers(&points, |l, table| layers.push(lattice.project(table, l)), &mut peak);
    Ok(layers)
}

/// Decides with the smaller of the two dimensions as the color axis,
/// transposing the cards when there are fewer numbers than colors.
pub fn decide_uno1(cards: &[Card], mode: DpMode) -> Result<bool, DpError> {
    let c = cards.iter().map(|t| t.color).max().unwrap_or(1);
    let b = cards.iter().map(|t| t.number).max().unwrap_or(1);
    if b < c {
        let flipped: Vec<Card> = cards.iter().map(Card::transposed).collect();
        Ok(dp_decide_with(&flipped, b, mode)?.answer)
    } else {
        Ok(dp_decide_with(cards, c, mode)?.answer)
    }
}

fn check_colors(cards: &[Card], colors: u32) -> Result<(), DpError> {
    match cards.iter().find(|t| t.color == 0 || t.color > colors) {
        Some(&card) => Err(DpError::ColorOutOfRange { card, colors }),
        None => Ok(()),
    }
}

/// Internal state: path counts per endpoint class, with one-card paths kept
/// apart from longer paths whose two ends fall in the same class (they admit one
/// attachment instead of two).
type State = Vec<u16>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    /// Both ends on the row, x-coordinates `a <= b`, at least two cards.
    Row(usize, usize),
    /// A single card on the row.
    RowSingle(usize),
    /// Row end at `a`, lower end at `b`.
    Mixed(usize, usize),
    /// Both ends below, `a <= b`, at least two cards.
    Low(usize, usize),
    LowSingle(usize),
}

/// A free end left over after attaching the new card: on the row or below, and its x.
#[derive(Debug, Clone, Copy)]
struct End {
    on_row: bool,
    x: usize,
}

struct Lattice {
    c: usize,
    pair: Vec<usize>,
    pairs: usize,
}

impl Lattice {
    fn new(c: usize) -> Self {
        let mut pair = vec![0; c * c];
        let mut next = 0;
        for a in 0..c {
            for b in a..c {
                pair[a * c + b] = next;
                pair[b * c + a] = next;
                next += 1;
            }
        }
        Lattice { c, pair, pairs: next }
    }

    fn width(&self) -> usize {
        2 * self.pairs + self.c * self.c + 2 * self.c
    }

    fn slot(&self, class: Class) -> usize {
        let (c, p) = (self.c, self.pairs);
        match class {
            Class::Row(a, b) => self.pair[a * c + b],
            Class::RowSingle(a) => p + a,
            Class::Mixed(a, b) => p + c + a * c + b,
            Class::Low(a, b) => p + c + c * c + self.pair[a * c + b],
            Class::LowSingle(a) => 2 * p + c + c * c + a,
        }
    }

    fn classes(&self) -> Vec<Class> {
        let c = self.c;
        let mut out = Vec::with_capacity(self.width());
        for a in 0..c {
            for b in a..c {
                out.push(Class::Row(a, b));
            }
        }
        out.extend((0..c).map(Class::RowSingle));
        for a in 0..c {
            out.extend((0..c).map(|b| Class::Mixed(a, b)));
        }
        for a in 0..c {
            for b in a..c {
                out.push(Class::Low(a, b));
            }
        }
        out.extend((0..c).map(Class::LowSingle));
        let mut ordered = vec![Class::RowSingle(0); out.len()];
        for class in out {
            ordered[self.slot(class)] = class;
        }
        ordered
    }

    fn paths(&self, s: &State) -> usize {
        s.iter().map(|&m| m as usize).sum()
    }

    /// The path that `t` joins, seen from each compatible end: what remains free.
    fn ends(class: Class, k: usize) -> Vec<End> {
        let on = |x| End { on_row: true, x };
        let off = |x| End { on_row: false, x };
        match class {
            Class::Row(a, b) => vec![on(b), on(a)],
            Class::RowSingle(a) => vec![on(a)],
            Class::Mixed(a, b) => {
                let mut v = vec![off(b)];
                if b == k {
                    v.push(on(a));
                }
                v
            }
            Class::Low(a, b) => {
                let mut v = Vec::new();
                if a == k {
                    v.push(off(b));
                }
                if b == k {
                    v.push(off(a));
                }
                v
            }
            Class::LowSingle(a) => {
                if a == k {
                    vec![off(a)]
                } else {
                    vec![]
                }
            }
        }
    }

    fn join(u: End, w: End) -> Class {
        match (u.on_row, w.on_row) {
            (true, true) => Class::Row(u.x.min(w.x), u.x.max(w.x)),
            (true, false) => Class::Mixed(u.x, w.x),
            (false, true) => Class::Mixed(w.x, u.x),
            (false, false) => Class::Low(u.x.min(w.x), u.x.max(w.x)),
        }
    }

    /// Moves every path off the finished row.
    fn lower(&self, s: &State, classes: &[Class]) -> State {
        let mut out = vec![0u16; s.len()];
        for (i, &class) in classes.iter().enumerate() {
            if s[i] == 0 {
                continue;
            }
            let to = match class {
                Class::Row(a, b) | Class::Low(a, b) => Class::Low(a, b),
                Class::Mixed(a, b) => Class::Low(a.min(b), a.max(b)),
                Class::RowSingle(a) | Class::LowSingle(a) => Class::LowSingle(a),
            };
            out[self.slot(to)] += s[i];
        }
        out
    }

    /// All ways to add a card of color `k` on the current row, with multiplicity.
    fn successors(&self, s: &State, k: usize, classes: &[Class], emit: &mut dyn FnMut(State, u64)) {
        let t = End { on_row: true, x: k };
        let mut alone = s.clone();
        alone[self.slot(Class::RowSingle(k))] += 1;
        emit(alone, 1);

        let live: Vec<(usize, u64, Vec<End>)> = classes
            .iter()
            .enumerate()
            .filter(|&(i, _)| s[i] > 0)
            .map(|(i, &class)| (i, s[i] as u64, Self::ends(class, k)))
            .filter(|(_, _, e)| !e.is_empty())
            .collect();

        for (i, m, ends) in &live {
            for &e in ends {
                let mut next = s.clone();
                next[*i] -= 1;
                next[self.slot(Self::join(t, e))] += 1;
                emit(next, *m);
            }
        }
        for (x, (i, mi, ei)) in live.iter().enumerate() {
            for (j, mj, ej) in &live[x..] {
                let ways = if i == j {
                    if *mi < 2 {
                        continue;
                    }
                    mi * (mi - 1) / 2
                } else {
                    mi * mj
                };
                for &u in ei {
                    for &w in ej {
                        let mut next = s.clone();
                        next[*i] -= 1;
                        next[*j] -= 1;
                        next[self.slot(Self::join(u, w))] += 1;
                        emit(next, ways);
                    }
                }
            }
        }
    }

    fn count_layers(
        &self,
        points: &OrderedPoints,
        mut each: impl FnMut(usize, &FxHashMap<State, BigUint>),
        peak: &mut usize,
    ) -> FxHashMap<State, BigUint> {
        let classes = self.classes();
        let mut table: FxHashMap<State, BigUint> = FxHashMap::default();
        table.insert(vec![0; self.width()], BigUint::one());
        for l in 0..points.len() {
            if l == 0 || points.y(l) > points.y(l - 1) {
                let mut lowered: FxHashMap<State, BigUint> = FxHashMap::default();
                for (s, n) in table {
                    *lowered.entry(self.lower(&s, &classes)).or_default() += n;
                }
                table = lowered;
            }
            let k = points.x(l) as usize - 1;
            let mut next: FxHashMap<State, BigUint> = FxHashMap::default();
            for (s, n) in &table {
                self.successors(s, k, &classes, &mut |t, w| {
                    *next.entry(t).or_insert_with(BigUint::zero) += n * w;
                });
            }
            table = next;
            *peak = (*peak).max(table.len());
            each(l + 1, &table);
        }
        table
    }

    /// Folds one-card paths into the matching same-class slot. For existence
    /// this loses nothing: both offer the same free ends.
    fn merge_singles(&self, s: &mut State) {
        for a in 0..self.c {
            let row = self.slot(Class::RowSingle(a));
            let low = self.slot(Class::LowSingle(a));
            s[self.slot(Class::Row(a, a))] += std::mem::take(&mut s[row]);
            s[self.slot(Class::Low(a, a))] += std::mem::take(&mut s[low]);
        }
    }

    /// Whether a state can still end as a single path. Each later card merges at
    /// most two paths, and a free end below the row is only reachable from
    /// later cards of its own column, each of which absorbs at most two ends.
    fn viable(&self, s: &State, classes: &[Class], remaining: usize, future_col: &[usize]) -> bool {
        if self.paths(s) > remaining + 1 {
            return false;
        }
        let mut low_ends = vec![0usize; self.c];
        for (i, &class) in classes.iter().enumerate() {
            let m = s[i] as usize;
            if m == 0 {
                continue;
            }
            match class {
                Class::Mixed(_, b) => low_ends[b] += m,
                Class::Low(a, b) => {
                    low_ends[a] += m;
                    low_ends[b] += m;
                }
                Class::LowSingle(a) => low_ends[a] += 2 * m,
                Class::Row(..) | Class::RowSingle(_) => {}
            }
        }
        let stranded: usize =
            (0..self.c).map(|i| low_ends[i].saturating_sub(2 * future_col[i])).sum();
        stranded <= 2
    }

    fn decide(&self, points: &OrderedPoints) -> (bool, usize) {
        let n = points.len();
        if n == 0 {
            return (true, 0);
        }
        let classes = self.classes();
        let mut future_col = vec![0usize; self.c];
        for l in 0..n {
            future_col[points.x(l) as usize - 1] += 1;
        }
        let mut table: FxHashSet<State> = FxHashSet::default();
        table.insert(vec![0; self.width()]);
        let mut peak = 0;
        for l in 0..n {
            if l == 0 || points.y(l) > points.y(l - 1) {
                table = table.iter().map(|s| self.lower(s, &classes)).collect();
            }
            let k = points.x(l) as usize - 1;
            future_col[k] -= 1;
            let remaining = n - l - 1;
            let mut next: FxHashSet<State> = FxHashSet::default();
            for s in &table {
                self.successors(s, k, &classes, &mut |mut t, _| {
                    self.merge_singles(&mut t);
                    if self.viable(&t, &classes, remaining, &future_col) {
                        next.insert(t);
                    }
                });
            }
            table = next;
            peak = peak.max(table.len());
            if table.is_empty() {
                return (false, peak);
            }
        }
        (table.iter().any(|s| self.paths(s) == 1), peak)
    }

    fn project(&self, table: &FxHashMap<State, BigUint>, layer: usize) -> DpTable {
        let classes = self.classes();
        let mut entries: BTreeMap<Signature, BigUint> = BTreeMap::new();
        for (s, n) in table {
            let mut sig = Signature::zero(self.c as u32);
            for (i, &class) in classes.iter().enumerate() {
                let m = s[i] as u32;
                if m == 0 {
                    continue;
                }
                let id = |x: usize| x as u32 + 1;
                match class {
                    Class::Row(a, b) => sig.add_h(id(a), id(b), m),
                    Class::RowSingle(a) => sig.add_h(id(a), id(a), m),
                    Class::Mixed(a, b) => sig.add_v(id(a), id(b), m),
                    Class::Low(a, b) => sig.add_d(id(a), id(b), m),
                    Class::LowSingle(a) => sig.add_d(id(a), id(a), m),
                }
            }
            *entries.entry(sig).or_default() += n;
        }
        DpTable { layer, entries }
    }
}
