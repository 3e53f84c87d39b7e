use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{IncidenceSource, Probe, Vertex, Weight};

/// Which family the oracle samples from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Random `d`-regular graph containing `(v0, v1)`.
    Plus,
    /// Two random halves joined only by the bridge `(v0, v1)`.
    Minus,
}

/// One query and its answer. `fresh` marks answers that matched a new cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TranscriptEntry {
    pub vertex: Vertex,
    pub index: usize,
    pub answer: Option<(Vertex, usize)>,
    pub fresh: bool,
}

/// A block of cells: `rows × d` plus an optional sentinel cell that stands
/// for "no neighbor".
#[derive(Debug, Clone)]
struct Matrix {
    first_cell: usize,
    first_row: usize,
    rows: usize,
    sentinel: bool,
    empty: usize,
}

impl Matrix {
    fn cell_count(&self, d: usize) -> usize {
        self.rows * d + usize::from(self.sentinel)
    }
}

/// Builds a random `d`-regular multigraph on demand, one matched cell pair
/// per fresh query.
#[derive(Debug, Clone)]
pub struct LazyRegularOracle {
    variant: Variant,
    n: usize,
    d: usize,
    v0: Vertex,
    v1: Vertex,
    t0: usize,
    t1: usize,
    seed: u64,
    rng: ChaCha8Rng,
    mats: Vec<Matrix>,
    mate: HashMap<usize, usize>,
    row_vertex: Vec<Option<Vertex>>,
    vertex_row: Vec<Option<usize>>,
    unallocated: usize,
    transcript: Vec<TranscriptEntry>,
}

/// Uniform element of `0..bound` satisfying `keep`, given that exactly
/// `count` elements do. Rejection sampling while they are dense enough.
fn uniform_where(rng: &mut ChaCha8Rng, bound: usize, count: usize, keep: impl Fn(usize) -> bool) -> usize {
    debug_assert!(count > 0);
    if count * 8 >= bound {
        loop {
            let x = rng.random_range(0..bound);
            if keep(x) {
                return x;
            }
        }
    }
    let k = rng.random_range(0..count);
    (0..bound).filter(|&x| keep(x)).nth(k).expect("count matches predicate")
}

enum Cell {
    Slot { row: usize, col: usize },
    Sentinel,
}

impl LazyRegularOracle {
    pub fn new(variant: Variant, n: usize, d: usize, v0: Vertex, v1: Vertex, seed: u64) -> Result<Self> {
        if n < 2 || d == 0 {
            return Err(Error::usage(format!("need n >= 2 and d >= 1, got n={n}, d={d}")));
        }
        if v0 == v1 || v0 >= n || v1 >= n {
            return Err(Error::usage(format!("special pair ({v0},{v1}) invalid for n={n}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t0 = rng.random_range(0..d);
        let t1 = rng.random_range(0..d);
        let mut o = LazyRegularOracle {
            variant,
            n,
            d,
            v0,
            v1,
            t0,
            t1,
            seed,
            rng,
            mats: Vec::new(),
            mate: HashMap::new(),
            row_vertex: vec![None; n],
            vertex_row: vec![None; n],
            unallocated: n,
            transcript: Vec::new(),
        };
        match variant {
            Variant::Plus => {
                // The sentinel pads an odd number of cells.
                o.push_matrix(n, (n * d) % 2 == 1);
                for v in 0..n {
                    o.allocate(v, v);
                }
                o.link(v0 * d + t0, v1 * d + t1);
            }
            Variant::Minus => {
                let (r0, r1) = (n / 2, n - n / 2);
                // One cell of each matrix is taken by the bridge, so the sentinel
                // pads whenever the remaining count is odd.
                o.push_matrix(r0, (r0 * d - 1) % 2 == 1);
                o.push_matrix(r1, (r1 * d - 1) % 2 == 1);
                let i0 = o.rng.random_range(0..r0);
                let i1 = r0 + o.rng.random_range(0..r1);
                o.allocate(v0, i0);
                o.allocate(v1, i1);
                let c0 = o.slot_cell(i0, t0);
                let c1 = o.slot_cell(i1, t1);
                o.link(c0, c1);
            }
        }
        Ok(o)
    }

    pub fn plus(n: usize, d: usize, v0: Vertex, v1: Vertex, seed: u64) -> Result<Self> {
        Self::new(Variant::Plus, n, d, v0, v1, seed)
    }

    pub fn minus(n: usize, d: usize, v0: Vertex, v1: Vertex, seed: u64) -> Result<Self> {
        Self::new(Variant::Minus, n, d, v0, v1, seed)
    }

    fn push_matrix(&mut self, rows: usize, sentinel: bool) {
        let (first_cell, first_row) = self
            .mats
            .last()
            .map_or((0, 0), |m| (m.first_cell + m.cell_count(self.d), m.first_row + m.rows));
        let mut m = Matrix {
            first_cell,
            first_row,
            rows,
            sentinel,
            empty: 0,
        };
        m.empty = m.cell_count(self.d);
        self.mats.push(m);
    }

    fn matrix_of_row(&self, row: usize) -> usize {
        self.mats.iter().position(|m| row < m.first_row + m.rows).expect("row in range")
    }

    fn matrix_of_cell(&self, cell: usize) -> usize {
        self.mats
            .iter()
            .position(|m| cell < m.first_cell + m.cell_count(self.d))
            .expect("cell in range")
    }

    fn slot_cell(&self, row: usize, col: usize) -> usize {
        let m = &self.mats[self.matrix_of_row(row)];
        m.first_cell + (row - m.first_row) * self.d + col
    }

    fn decode(&self, cell: usize) -> Cell {
        let m = &self.mats[self.matrix_of_cell(cell)];
        let local = cell - m.first_cell;
        if local == m.rows * self.d {
            Cell::Sentinel
        } else {
            Cell::Slot {
                row: m.first_row + local / self.d,
                col: local % self.d,
            }
        }
    }

    fn allocate(&mut self, v: Vertex, row: usize) {
        debug_assert!(self.vertex_row[v].is_none() && self.row_vertex[row].is_none());
        self.vertex_row[v] = Some(row);
        self.row_vertex[row] = Some(v);
        self.unallocated -= 1;
    }

    fn link(&mut self, a: usize, b: usize) {
        debug_assert_ne!(a, b);
        self.mate.insert(a, b);
        self.mate.insert(b, a);
        let (ma, mb) = (self.matrix_of_cell(a), self.matrix_of_cell(b));
        self.mats[ma].empty -= 1;
        self.mats[mb].empty -= 1;
    }

    fn answer_of(&self, cell: usize) -> Option<(Vertex, usize)> {
        match self.decode(cell) {
            Cell::Sentinel => None,
            Cell::Slot { row, col } => {
                Some((self.row_vertex[row].expect("matched rows are allocated"), col + 1))
            }
        }
    }

    /// Answers query `(w, i)` with the `i`-th neighbor of `w` and the index
    /// of `w` in that neighbor's list.
    pub fn query(&mut self, w: Vertex, i: usize) -> Result<Option<(Vertex, usize)>> {
        if w >= self.n || i == 0 || i > self.d {
            return Err(Error::usage(format!("query ({w},{i}) outside n={}, d={}", self.n, self.d)));
        }
        if self.vertex_row[w].is_none() {
            let rv = &self.row_vertex;
            let row = uniform_where(&mut self.rng, self.n, self.unallocated, |r| rv[r].is_none());
            self.allocate(w, row);
        }
        let row = self.vertex_row[w].expect("allocated above");
        let cell = self.slot_cell(row, i - 1);
        let (answer, fresh) = match self.mate.get(&cell) {
            Some(&other) => (self.answer_of(other), false),
            None => {
                let m = self.mats[self.matrix_of_row(row)].clone();
                let mate = &self.mate;
                let local = uniform_where(&mut self.rng, m.cell_count(self.d), m.empty - 1, |x| {
                    let c = m.first_cell + x;
                    c != cell && !mate.contains_key(&c)
                });
                let other = m.first_cell + local;
                if let Cell::Slot { row: r, .. } = self.decode(other) {
                    if self.row_vertex[r].is_none() {
                        let vr = &self.vertex_row;
                        let v = uniform_where(&mut self.rng, self.n, self.unallocated, |v| vr[v].is_none());
                        self.allocate(v, r);
                    }
                }
                self.link(cell, other);
                (self.answer_of(other), true)
            }
        };
        self.transcript.push(TranscriptEntry {
            vertex: w,
            index: i,
            answer,
            fresh,
        });
        Ok(answer)
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn degree_bound(&self) -> usize {
        self.d
    }

    pub fn special_pair(&self) -> (Vertex, Vertex) {
        (self.v0, self.v1)
    }

    /// The seeded edge as `((v0, t0), (v1, t1))` with 1-based indices.
    pub fn initial_edge(&self) -> ((Vertex, usize), (Vertex, usize)) {
        ((self.v0, self.t0 + 1), (self.v1, self.t1 + 1))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn transcript(&self) -> &[TranscriptEntry] {
        &self.transcript
    }

    /// Matrix index (0 or 1 for the minus variant) of `v`'s row, if allocated.
    pub fn side_of(&self, v: Vertex) -> Option<usize> {
        self.vertex_row[v].map(|r| self.matrix_of_row(r))
    }

    /// `true` iff some fresh answer named a vertex already seen in an earlier
    /// query or answer. The special pair counts as seen from the start.
    pub fn transcript_collision(&self) -> bool {
        let mut seen: HashSet<Vertex> = HashSet::from([self.v0, self.v1]);
        for t in &self.transcript {
            seen.insert(t.vertex);
            if let Some((v, _)) = t.answer {
                if t.fresh && !seen.insert(v) {
                    return true;
                }
                seen.insert(v);
            }
        }
        false
    }

    /// Queries every cell, returning the realized multigraph's edge list
    /// (loops and parallel copies included, each edge once).
    pub fn exhaust(&mut self) -> Vec<(Vertex, Vertex)> {
        for v in 0..self.n {
            for i in 1..=self.d {
                self.query(v, i).expect("valid query");
            }
        }
        self.realized_edges()
    }

    /// Edges realized so far, each matched cell pair once.
    pub fn realized_edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for (&a, &b) in &self.mate {
            if a < b {
                if let (Some((u, _)), Some((v, _))) = (self.answer_of(a), self.answer_of(b)) {
                    out.push((u.min(v), u.max(v)));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

impl IncidenceSource for LazyRegularOracle {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn degree_bound(&self) -> usize {
        self.d
    }

    fn probe(&mut self, v: Vertex, i: usize) -> Option<Probe> {
        self.query(v, i)
            .expect("access layer validates queries")
            .map(|(u, _)| Probe {
                vertex: u,
                weight: Weight::ONE,
            })
    }
}
