use std::collections::{HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::{LazyRegularOracle, Variant};
use crate::graph::UnionFind;

/// A query policy that spends at most `budget` queries and guesses the
/// variant. `true` means "+".
pub trait Strategy {
    fn guess_plus(&self, oracle: &mut LazyRegularOracle, budget: usize) -> Result<bool>;
}

/// BFS from `v0`, then guesses "+" iff `v0` and `v1` stay connected in the
/// revealed multigraph after dropping one copy of the special edge.
#[derive(Debug, Clone, Copy, Default)]
pub struct BfsStrategy;

impl Strategy for BfsStrategy {
    fn guess_plus(&self, oracle: &mut LazyRegularOracle, budget: usize) -> Result<bool> {
        let (v0, v1) = oracle.special_pair();
        let d = oracle.degree_bound();
        let mut used = 0;
        let mut seen = HashSet::from([v0]);
        let mut queue = VecDeque::from([v0]);
        'bfs: while let Some(w) = queue.pop_front() {
            for i in 1..=d {
                if used == budget {
                    break 'bfs;
                }
                used += 1;
                if let Some((u, _)) = oracle.query(w, i)? {
                    if seen.insert(u) {
                        queue.push_back(u);
                    }
                }
            }
        }
        let mut uf = UnionFind::new(oracle.vertex_count());
        let mut dropped = false;
        for (a, b) in oracle.realized_edges() {
            if !dropped && (a.min(b), a.max(b)) == (v0.min(v1), v0.max(v1)) {
                dropped = true;
                continue;
            }
            uf.union(a, b);
        }
        Ok(uf.same(v0, v1))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistinguishReport {
    pub n: usize,
    pub d: usize,
    pub r: usize,
    pub trials: usize,
    /// Fraction of "+" guesses against the plus and minus oracles.
    pub p_plus: f64,
    pub p_minus: f64,
    pub advantage: f64,
    /// Half-width of the 95% normal interval for the difference.
    pub ci_half_width: f64,
    pub collision_rate_plus: f64,
    pub collision_rate_minus: f64,
    pub collision_se_plus: f64,
    pub collision_se_minus: f64,
    /// `8r²/n`.
    pub collision_bound: f64,
}

/// Runs `strategy` with budget `r` against `trials` independent plus and
/// minus instances on `n` vertices of degree `d`.
pub fn distinguishing_experiment(
    n: usize,
    d: usize,
    r: usize,
    trials: usize,
    seed: u64,
    strategy: &impl Strategy,
) -> Result<DistinguishReport> {
    if trials < 100 {
        return Err(Error::usage(format!("need at least 100 trials, got {trials}")));
    }
    if n < 4 || d == 0 {
        return Err(Error::usage(format!("need n >= 4 and d >= 1, got n={n}, d={d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut guesses = [0usize; 2];
    let mut collisions = [0usize; 2];
    for _ in 0..trials {
        let v0 = rng.random_range(0..n);
        let v1 = (v0 + rng.random_range(1..n)) % n;
        for (slot, variant) in [Variant::Plus, Variant::Minus].into_iter().enumerate() {
            let mut oracle = LazyRegularOracle::new(variant, n, d, v0, v1, rng.random())?;
            if strategy.guess_plus(&mut oracle, r)? {
                guesses[slot] += 1;
            }
            if oracle.transcript_collision() {
                collisions[slot] += 1;
            }
        }
    }
    let t = trials as f64;
    let rate = |c: usize| c as f64 / t;
    let se = |p: f64| (p * (1.0 - p) / t).sqrt();
    let (p_plus, p_minus) = (rate(guesses[0]), rate(guesses[1]));
    let (c_plus, c_minus) = (rate(collisions[0]), rate(collisions[1]));
    Ok(DistinguishReport {
        n,
        d,
        r,
        trials,
        p_plus,
        p_minus,
        advantage: (p_plus - p_minus).abs(),
        ci_half_width: 1.96 * (se(p_plus).powi(2) + se(p_minus).powi(2)).sqrt(),
        collision_rate_plus: c_plus,
        collision_rate_minus: c_minus,
        collision_se_plus: se(c_plus),
        collision_se_minus: se(c_minus),
        collision_bound: 8.0 * (r * r) as f64 / n as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_queries_no_advantage() {
        let rep = distinguishing_experiment(100, 3, 0, 100, 1, &BfsStrategy).unwrap();
        assert_eq!(rep.advantage, 0.0);
        assert_eq!(rep.collision_rate_plus, 0.0);
    }

    #[test]
    fn exhausting_reveals_the_bridge() {
        let (n, d) = (60, 3);
        let rep = distinguishing_experiment(n, d, n * d, 100, 2, &BfsStrategy).unwrap();
        assert_eq!(rep.p_minus, 0.0);
        assert!(rep.advantage > 0.9, "{rep:?}");
    }

    #[test]
    fn small_budgets_stay_near_the_bound() {
        let n = 4900;
        let r = 10;
        let rep = distinguishing_experiment(n, 3, r, 400, 3, &BfsStrategy).unwrap();
        assert!(rep.advantage <= 1.0 / 3.0 + rep.ci_half_width);
        assert!(rep.collision_rate_plus <= rep.collision_bound + 3.0 * rep.collision_se_plus + 1e-12);
    }

    #[test]
    fn few_trials_are_rejected() {
        assert!(distinguishing_experiment(100, 3, 1, 99, 0, &BfsStrategy).is_err());
    }
}
