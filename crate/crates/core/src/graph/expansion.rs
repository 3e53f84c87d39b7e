use num_rational::Ratio;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, Vertex};
use crate::error::{Error, Result};

/// Largest vertex count for which [`vertex_expansion`] enumerates subsets.
pub const EXHAUSTIVE_EXPANSION_LIMIT: usize = 24;

fn check_size_bound(g: &Graph, s: usize) -> Result<()> {
    let n = g.vertex_count();
    if s == 0 || 2 * s > n {
        return Err(Error::usage(format!("size bound {s} outside 1..={}", n / 2)));
    }
    Ok(())
}

/// Exact `h_s(G)`: the minimum of `|N(S)|/|S|` over nonempty `S` with
/// `|S| ≤ s`, where `N(S)` are the vertices outside `S` adjacent to it.
pub fn vertex_expansion(g: &Graph, s: usize) -> Result<Ratio<u64>> {
    check_size_bound(g, s)?;
    let n = g.vertex_count();
    if n > EXHAUSTIVE_EXPANSION_LIMIT {
        return Err(Error::Capability(format!(
            "exhaustive expansion supports n <= {EXHAUSTIVE_EXPANSION_LIMIT}, got n = {n}; \
             use sampled_vertex_expansion"
        )));
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbor_ids(v).fold(0u32, |m, u| m | (1 << u)))
        .collect();
    let mut best: Option<Ratio<u64>> = None;
    sweep(&nbr, s, 0, 0, 0, 0, &mut best);
    Ok(best.expect("s >= 1 gives at least one subset"))
}

fn sweep(
    nbr: &[u32],
    s: usize,
    start: usize,
    set: u32,
    reach: u32,
    size: usize,
    best: &mut Option<Ratio<u64>>,
) {
    for v in start..nbr.len() {
        let set2 = set | (1 << v);
        let reach2 = reach | nbr[v];
        let boundary = (reach2 & !set2).count_ones() as u64;
        let r = Ratio::new(boundary, size as u64 + 1);
        if best.is_none_or(|b| r < b) {
            *best = Some(r);
        }
        if size + 1 < s {
            sweep(nbr, s, v + 1, set2, reach2, size + 1, best);
        }
    }
}

/// Upper estimate of `h_s(G)` from random subsets, for graphs too large for
/// the exhaustive sweep.
///
/// Each sample is either a BFS-grown connected set or a uniform random set
/// of random size in `1..=s`. The minimum ratio seen is returned.
pub fn sampled_vertex_expansion(g: &Graph, s: usize, samples: usize, seed: u64) -> Result<Ratio<u64>> {
    check_size_bound(g, s)?;
    if samples == 0 {
        return Err(Error::usage("at least one sample is required"));
    }
    let n = g.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut in_set = vec![false; n];
    let mut best: Option<Ratio<u64>> = None;
    for t in 0..samples {
        let size = rng.random_range(1..=s);
        let mut set: Vec<Vertex> = Vec::with_capacity(size);
        let add = |v: Vertex, set: &mut Vec<Vertex>, in_set: &mut Vec<bool>| {
            if !in_set[v] {
                in_set[v] = true;
                set.push(v);
            }
        };
        if t % 2 == 0 {
            add(rng.random_range(0..n), &mut set, &mut in_set);
            let mut i = 0;
            while set.len() < size && i < set.len() {
                let ids: Vec<Vertex> = g.neighbor_ids(set[i]).collect();
                for u in ids {
                    if set.len() < size {
                        add(u, &mut set, &mut in_set);
                    }
                }
                i += 1;
            }
        } else {
            let all: Vec<Vertex> = (0..n).collect();
            for &v in all.choose_multiple(&mut rng, size) {
                add(v, &mut set, &mut in_set);
            }
        }
        let mut boundary = std::collections::HashSet::new();
        for &v in &set {
            boundary.extend(g.neighbor_ids(v).filter(|&u| !in_set[u]));
        }
        let r = Ratio::new(boundary.len() as u64, set.len() as u64);
        if best.is_none_or(|b| r < b) {
            best = Some(r);
        }
        for v in set {
            in_set[v] = false;
        }
    }
    Ok(best.expect("samples >= 1"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::unweighted(n, 2, &e).unwrap()
    }

    /// Brute force over every bitmask, independent of the pruned sweep.
    fn brute(g: &Graph, s: usize) -> Ratio<u64> {
        let n = g.vertex_count();
        let mut best = Ratio::from_integer(u64::MAX);
        for mask in 1u32..(1 << n) {
            let size = mask.count_ones() as usize;
            if size > s {
                continue;
            }
            let mut nb = 0u32;
            for v in 0..n {
                if mask & (1 << v) != 0 {
                    for u in g.neighbor_ids(v) {
                        nb |= 1 << u;
                    }
                }
            }
            let r = Ratio::new((nb & !mask).count_ones() as u64, size as u64);
            best = best.min(r);
        }
        best
    }

    #[test]
    fn cycle_examples() {
        let g = cycle(6);
        assert_eq!(vertex_expansion(&g, 1).unwrap(), Ratio::from_integer(2));
        assert_eq!(vertex_expansion(&g, 2).unwrap(), Ratio::from_integer(1));
    }

    #[test]
    fn complete_graph_k4() {
        let e = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let g = Graph::unweighted(4, 3, &e).unwrap();
        assert_eq!(vertex_expansion(&g, 2).unwrap(), Ratio::from_integer(1));
    }

    #[test]
    fn sweep_matches_bitmask_brute_force() {
        let g = Graph::unweighted(
            9,
            3,
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 3)],
        )
        .unwrap();
        for s in 1..=4 {
            assert_eq!(vertex_expansion(&g, s).unwrap(), brute(&g, s), "s={s}");
        }
    }

    #[test]
    fn limits_are_reported() {
        let g = cycle(30);
        assert!(matches!(vertex_expansion(&g, 2), Err(Error::Capability(_))));
        assert!(matches!(vertex_expansion(&cycle(6), 4), Err(Error::Usage(_))));
        let r = sampled_vertex_expansion(&g, 5, 200, 1).unwrap();
        // Sampling can only overestimate the true minimum 2/5.
        assert!(r >= Ratio::new(2, 5));
        assert!(r <= Ratio::from_integer(2));
    }
}
