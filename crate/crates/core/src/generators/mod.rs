//! Seeded test-graph families and the lazy regular-graph oracles.

mod lazy;

pub use lazy::{LazyRegularOracle, TranscriptEntry, Variant};

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, Weight};

/// Maximum whole-graph restarts of the regular-graph pairing.
pub const MAX_REGULAR_ATTEMPTS: usize = 1000;

/// A generator family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Regular { n: usize, d: usize },
    Grid { rows: usize, cols: usize },
    Path { n: usize },
    Cycle { n: usize },
    WeightedGrid { rows: usize, cols: usize, max_weight: u64 },
}

impl Family {
    pub fn vertex_count(&self) -> usize {
        match *self {
            Family::Regular { n, .. } | Family::Path { n } | Family::Cycle { n } => n,
            Family::Grid { rows, cols } | Family::WeightedGrid { rows, cols, .. } => rows * cols,
        }
    }

    /// The same family at `n` vertices. Grids must be square with `n` a
    /// perfect square.
    pub fn resized(&self, n: usize) -> Result<Family> {
        let side = || {
            let s = (n as f64).sqrt().round() as usize;
            if s * s == n {
                Ok(s)
            } else {
                Err(Error::usage(format!("grid size {n} is not a perfect square")))
            }
        };
        Ok(match *self {
            Family::Regular { d, .. } => Family::Regular { n, d },
            Family::Path { .. } => Family::Path { n },
            Family::Cycle { .. } => Family::Cycle { n },
            Family::Grid { .. } => {
                let s = side()?;
                Family::Grid { rows: s, cols: s }
            }
            Family::WeightedGrid { max_weight, .. } => {
                let s = side()?;
                Family::WeightedGrid {
                    rows: s,
                    cols: s,
                    max_weight,
                }
            }
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses the display form, e.g. `regular-n2000-d8` or `grid-20x20`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::usage(format!("unknown family `{s}`"));
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let dims = |t: &str| -> Result<(usize, usize)> {
            let (r, c) = t.split_once('x').ok_or_else(bad)?;
            Ok((num(r)?, num(c)?))
        };
        if let Some(rest) = s.strip_prefix("regular-n") {
            let (n, d) = rest.split_once("-d").ok_or_else(bad)?;
            Ok(Family::Regular { n: num(n)?, d: num(d)? })
        } else if let Some(rest) = s.strip_prefix("weighted-grid-") {
            let (rc, w) = rest.split_once("-w").ok_or_else(bad)?;
            let (rows, cols) = dims(rc)?;
            let max_weight = w.parse().map_err(|_| bad())?;
            Ok(Family::WeightedGrid { rows, cols, max_weight })
        } else if let Some(rest) = s.strip_prefix("grid-") {
            let (rows, cols) = dims(rest)?;
            Ok(Family::Grid { rows, cols })
        } else if let Some(n) = s.strip_prefix("path-n") {
            Ok(Family::Path { n: num(n)? })
        } else if let Some(n) = s.strip_prefix("cycle-n") {
            Ok(Family::Cycle { n: num(n)? })
        } else {
            Err(bad())
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Regular { n, d } => write!(f, "regular-n{n}-d{d}"),
            Family::Grid { rows, cols } => write!(f, "grid-{rows}x{cols}"),
            Family::Path { n } => write!(f, "path-n{n}"),
            Family::Cycle { n } => write!(f, "cycle-n{n}"),
            Family::WeightedGrid {
                rows,
                cols,
                max_weight,
            } => write!(f, "weighted-grid-{rows}x{cols}-w{max_weight}"),
        }
    }
}

/// Builds a graph of `family`; equal `(family, seed)` give identical graphs.
pub fn gen_graph(family: Family, seed: u64) -> Result<Graph> {
    match family {
        Family::Path { n } => {
            let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            Graph::unweighted(n, 2, &e)
        }
        Family::Cycle { n } => {
            if n < 3 {
                return Err(Error::usage(format!("a cycle needs n >= 3, got {n}")));
            }
            let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Graph::unweighted(n, 2, &e)
        }
        Family::Grid { rows, cols } => {
            check_grid(rows, cols)?;
            Graph::unweighted(rows * cols, 4, &grid_edges(rows, cols))
        }
        Family::WeightedGrid {
            rows,
            cols,
            max_weight,
        } => {
            check_grid(rows, cols)?;
            if max_weight == 0 {
                return Err(Error::usage("maximum weight must be at least 1"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let edges = grid_edges(rows, cols)
                .into_iter()
                .map(|(u, v)| (u, v, Some(Weight::from_int(rng.random_range(1..=max_weight)))));
            Graph::from_edges(rows * cols, 4, true, edges)
        }
        Family::Regular { n, d } => regular(n, d, seed),
    }
}

fn check_grid(rows: usize, cols: usize) -> Result<()> {
    if rows < 2 || cols < 2 {
        return Err(Error::usage(format!("grid needs rows, cols >= 2, got {rows}x{cols}")));
    }
    Ok(())
}

fn grid_edges(rows: usize, cols: usize) -> Vec<(Vertex, Vertex)> {
    let mut e = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                e.push((v, v + 1));
            }
            if r + 1 < rows {
                e.push((v, v + cols));
            }
        }
    }
    e
}

/// Simple `d`-regular graph from the pairing model.
///
/// Points are paired uniformly at random; a pair that would form a loop or a
/// parallel edge is redrawn. When no valid pair remains the whole pairing
/// restarts.
fn regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if (n * d) % 2 == 1 {
        return Err(Error::usage(format!("n*d must be even, got n={n}, d={d}")));
    }
    if d >= n {
        return Err(Error::usage(format!("need d < n, got n={n}, d={d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_REGULAR_ATTEMPTS {
        if let Some(edges) = try_pairing(n, d, &mut rng) {
            return Graph::unweighted(n, d, &edges);
        }
    }
    Err(Error::Generation(format!(
        "no simple {d}-regular graph on {n} vertices after {MAX_REGULAR_ATTEMPTS} attempts"
    )))
}

fn try_pairing(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(Vertex, Vertex)>> {
    let mut points: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut seen: HashSet<(Vertex, Vertex)> = HashSet::with_capacity(n * d / 2);
    let mut edges = Vec::with_capacity(n * d / 2);
    let ok = |a: Vertex, b: Vertex, seen: &HashSet<(Vertex, Vertex)>| {
        a != b && !seen.contains(&(a.min(b), a.max(b)))
    };
    while !points.is_empty() {
        let m = points.len();
        let mut pick = None;
        for _ in 0..64 {
            let i = rng.random_range(0..m);
            let j = rng.random_range(0..m);
            if i != j && ok(points[i], points[j], &seen) {
                pick = Some((i, j));
                break;
            }
        }
        if pick.is_none() {
            let valid: Vec<(usize, usize)> = (0..m)
                .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
                .filter(|&(i, j)| ok(points[i], points[j], &seen))
                .collect();
            if valid.is_empty() {
                return None;
            }
            pick = Some(valid[rng.random_range(0..valid.len())]);
        }
        let (i, j) = pick?;
        let (a, b) = (points[i], points[j]);
        seen.insert((a.min(b), a.max(b)));
        edges.push((a, b));
        let (hi, lo) = (i.max(j), i.min(j));
        points.swap_remove(hi);
        points.swap_remove(lo);
    }
    Some(edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_names_round_trip() {
        for f in [
            Family::Regular { n: 2000, d: 8 },
            Family::Grid { rows: 20, cols: 30 },
            Family::Path { n: 7 },
            Family::Cycle { n: 9 },
            Family::WeightedGrid { rows: 4, cols: 5, max_weight: 10 },
        ] {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
        assert!("grid-3".parse::<Family>().is_err());
        assert!("torus-n4".parse::<Family>().is_err());
    }

    #[test]
    fn resizing() {
        let g = Family::Grid { rows: 3, cols: 3 };
        assert_eq!(g.resized(100).unwrap(), Family::Grid { rows: 10, cols: 10 });
        assert!(g.resized(99).is_err());
        assert_eq!(Family::Regular { n: 10, d: 3 }.resized(40).unwrap(), Family::Regular { n: 40, d: 3 });
    }

    #[test]
    fn path_and_grid_shapes() {
        let p = gen_graph(Family::Path { n: 5 }, 0).unwrap();
        assert_eq!(p.edge_list().len(), 4);
        assert!((0..4).all(|i| p.has_edge(i, i + 1)));
        assert_eq!(p.degree_bound(), 2);
        let g = gen_graph(Family::Grid { rows: 3, cols: 3 }, 0).unwrap();
        assert_eq!(g.edge_count(), 12);
        assert_eq!((0..9).map(|v| g.degree(v)).max(), Some(4));
    }

    #[test]
    fn regular_is_simple_and_regular() {
        let g = gen_graph(Family::Regular { n: 50, d: 4 }, 7).unwrap();
        assert_eq!(g.edge_count(), 100);
        assert!((0..50).all(|v| g.degree(v) == 4));
    }

    #[test]
    fn dense_regular_succeeds() {
        let g = gen_graph(Family::Regular { n: 200, d: 8 }, 3).unwrap();
        assert!((0..200).all(|v| g.degree(v) == 8));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(gen_graph(Family::Regular { n: 5, d: 3 }, 0), Err(Error::Usage(_))));
        assert!(matches!(gen_graph(Family::Regular { n: 4, d: 4 }, 0), Err(Error::Usage(_))));
        assert!(matches!(gen_graph(Family::Grid { rows: 1, cols: 5 }, 0), Err(Error::Usage(_))));
    }

    #[test]
    fn seeded_output_is_reproducible() {
        for fam in [
            Family::Regular { n: 60, d: 3 },
            Family::WeightedGrid {
                rows: 4,
                cols: 5,
                max_weight: 9,
            },
        ] {
            let a = gen_graph(fam, 11).unwrap().to_text();
            let b = gen_graph(fam, 11).unwrap().to_text();
            let c = gen_graph(fam, 12).unwrap().to_text();
            assert_eq!(a, b);
            assert_ne!(a, c);
        }
    }

    #[test]
    fn weighted_grid_weights_in_range() {
        let g = gen_graph(
            Family::WeightedGrid {
                rows: 5,
                cols: 5,
                max_weight: 3,
            },
            1,
        )
        .unwrap();
        assert!(g.edges().all(|(_, w)| w >= Weight::ONE && w <= Weight::from_int(3)));
    }
}
