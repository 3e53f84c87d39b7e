use crate::error::{Error, Result};
use crate::graph::Graph;

/// Parameters of the contraction oracle.
///
/// `ell = ⌈c_iter · ln(W/ε)⌉` (at least 1), `γ = ε/(6Wℓ)`,
/// `k_cap = ⌈c2 · d²/γ²⌉` and `final_cap = ⌈3 · c2 · W² d²/ε²⌉`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoruvkaConfig {
    pub epsilon: f64,
    pub seed: u64,
    pub degree_bound: usize,
    pub max_weight: f64,
    pub c_iter: f64,
    pub c2: f64,
    pub ell: usize,
    pub gamma: f64,
    pub k_cap: usize,
    pub final_cap: usize,
}

pub const DEFAULT_C_ITER: f64 = 4.0;
pub const DEFAULT_C2: f64 = 4.0;

fn ceil_to_usize(x: f64) -> usize {
    if x >= usize::MAX as f64 {
        usize::MAX
    } else {
        x.ceil() as usize
    }
}

impl BoruvkaConfig {
    pub fn new(degree_bound: usize, max_weight: f64, epsilon: f64, seed: u64, c_iter: f64, c2: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(Error::usage(format!("epsilon must lie in (0,1], got {epsilon}")));
        }
        if max_weight < 1.0 {
            return Err(Error::usage(format!("maximum weight must be at least 1, got {max_weight}")));
        }
        if !(c_iter > 0.0 && c2 > 0.0) {
            return Err(Error::usage("c_iter and c2 must be positive"));
        }
        let ell = ceil_to_usize(c_iter * (max_weight / epsilon).ln()).max(1);
        let gamma = epsilon / (6.0 * max_weight * ell as f64);
        let d2 = (degree_bound * degree_bound) as f64;
        Ok(BoruvkaConfig {
            epsilon,
            seed,
            degree_bound,
            max_weight,
            c_iter,
            c2,
            ell,
            gamma,
            k_cap: ceil_to_usize(c2 * d2 / (gamma * gamma)).max(1),
            final_cap: ceil_to_usize(3.0 * c2 * max_weight * max_weight * d2 / (epsilon * epsilon)).max(1),
        })
    }

    /// Default constants with `d` and `W` read from the graph.
    pub fn for_graph(g: &Graph, epsilon: f64, seed: u64) -> Result<Self> {
        Self::new(g.degree_bound(), g.max_weight().as_f64(), epsilon, seed, DEFAULT_C_ITER, DEFAULT_C2)
    }

    pub fn with_constants(self, c_iter: f64, c2: f64) -> Result<Self> {
        Self::new(self.degree_bound, self.max_weight, self.epsilon, self.seed, c_iter, c2)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Query bound `Q^i = d²k² + (dk + 1) Q^{i−1}` with `Q^0 = 0` and
    /// `k = k_cap`, saturating at `u128::MAX`.
    pub fn query_bound(&self, level: usize) -> u128 {
        let d = self.degree_bound as u128;
        let k = self.k_cap as u128;
        let dk = d.saturating_mul(k);
        let base = dk.saturating_mul(dk);
        (0..level).fold(0u128, |q, _| base.saturating_add(dk.saturating_add(1).saturating_mul(q)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_quantities() {
        let c = BoruvkaConfig::new(4, 10.0, 0.5, 0, 4.0, 4.0).unwrap();
        // ln 20 = 2.9957...
        assert_eq!(c.ell, 12);
        assert!((c.gamma - 0.5 / 720.0).abs() < 1e-15);
        assert_eq!(c.k_cap, (4.0 * 16.0 * 720.0f64 * 720.0 / 0.25).ceil() as usize);
        assert_eq!(c.final_cap, 76_800);
        let unit = BoruvkaConfig::new(4, 1.0, 1.0, 0, 4.0, 4.0).unwrap();
        assert_eq!(unit.ell, 1);
    }

    #[test]
    fn recurrence() {
        let c = BoruvkaConfig::new(2, 1.0, 1.0, 0, 1.0, 1e-9).unwrap();
        // Tiny c2 forces k_cap = 1, so Q^i = 4 + 3 Q^{i-1}.
        assert_eq!(c.k_cap, 1);
        assert_eq!(c.query_bound(0), 0);
        assert_eq!(c.query_bound(1), 4);
        assert_eq!(c.query_bound(2), 16);
        assert_eq!(c.query_bound(3), 52);
        let big = BoruvkaConfig::new(8, 100.0, 0.1, 0, 4.0, 4.0).unwrap();
        assert_eq!(big.query_bound(big.ell), u128::MAX);
    }
}
