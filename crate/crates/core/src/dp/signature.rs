use std::fmt;

/// Path counts of a path-set keyed by where its ends lie, relative to the row of
/// the last scanned card.
///
/// `h{i,j}`: both ends on the row, at colors `i` and `j` (unordered).
/// `v(i,j)`: one end on the row at color `i`, the other below at color `j`.
/// `d{i,j}`: both ends below the row (unordered).
/// A one-card path counts as `h{i,i}` or `d{i,i}`. Colors are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    colors: u32,
    h: Vec<u32>,
    v: Vec<u32>,
    d: Vec<u32>,
}

impl Signature {
    pub fn zero(colors: u32) -> Self {
        let pairs = (colors * (colors + 1) / 2) as usize;
        Signature {
            colors,
            h: vec![0; pairs],
            v: vec![0; (colors * colors) as usize],
            d: vec![0; pairs],
        }
    }

    pub fn colors(&self) -> u32 {
        self.colors
    }

    fn check(&self, i: u32, j: u32) {
        assert!(
            (1..=self.colors).contains(&i) && (1..=self.colors).contains(&j),
            "color pair ({i},{j}) outside 1..={}",
            self.colors
        );
    }

    fn pair(&self, i: u32, j: u32) -> usize {
        self.check(i, j);
        let (a, b) = (i.min(j) - 1, i.max(j) - 1);
        // rows before `a` hold c, c - 1, ..., c - a + 1 entries
        (a * self.colors - a * a.saturating_sub(1) / 2 + (b - a)) as usize
    }

    pub fn h(&self, i: u32, j: u32) -> u32 {
        self.h[self.pair(i, j)]
    }

    pub fn v(&self, row_end: u32, low_end: u32) -> u32 {
        self.check(row_end, low_end);
        self.v[((row_end - 1) * self.colors + low_end - 1) as usize]
    }

    pub fn d(&self, i: u32, j: u32) -> u32 {
        self.d[self.pair(i, j)]
    }

    pub fn add_h(&mut self, i: u32, j: u32, m: u32) {
        let p = self.pair(i, j);
        self.h[p] += m;
    }

    pub fn add_v(&mut self, row_end: u32, low_end: u32, m: u32) {
        self.check(row_end, low_end);
        self.v[((row_end - 1) * self.colors + low_end - 1) as usize] += m;
    }

    pub fn add_d(&mut self, i: u32, j: u32, m: u32) {
        let p = self.pair(i, j);
        self.d[p] += m;
    }

    /// Number of paths in the path-set.
    pub fn paths(&self) -> u32 {
        self.h.iter().chain(&self.v).chain(&self.d).sum()
    }

    /// Exactly one entry equal to 1 and the rest zero: a Hamiltonian path.
    pub fn is_single_path(&self) -> bool {
        self.paths() == 1
    }

    /// Nonzero entries as `(kind, i, j, count)`, kind one of `'h'`, `'v'`, `'d'`.
    pub fn entries(&self) -> Vec<(char, u32, u32, u32)> {
        let c = self.colors;
        let mut out = Vec::new();
        for i in 1..=c {
            for j in i..=c {
                if self.h(i, j) > 0 {
                    out.push(('h', i, j, self.h(i, j)));
                }
            }
        }
        for i in 1..=c {
            for j in 1..=c {
                if self.v(i, j) > 0 {
                    out.push(('v', i, j, self.v(i, j)));
                }
            }
        }
        for i in 1..=c {
            for j in i..=c {
                if self.d(i, j) > 0 {
                    out.push(('d', i, j, self.d(i, j)));
                }
            }
        }
        out
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries = self.entries();
        if entries.is_empty() {
            return f.write_str("0");
        }
        for (n, (kind, i, j, m)) in entries.into_iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            match kind {
                'v' => write!(f, "v({i},{j})={m}")?,
                _ => write!(f, "{kind}{{{i},{j}}}={m}")?,
            }
        }
        Ok(())
    }
}
