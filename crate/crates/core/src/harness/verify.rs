use std::collections::BTreeSet;
use std::io::Write;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::oracles::{build_oracle, Algorithm, AnyOracle, Params};
use crate::boruvka::exact_mst;
use crate::error::Result;
use crate::graph::{is_connected, CountingAccess, Edge, Graph};
use crate::keyed::{keyed_hash, Purpose};
use crate::oracle::SpanningOracle;

/// Outcome of querying one oracle on every edge of one graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub algorithm: String,
    pub graph: String,
    pub seed: u64,
    pub connected: bool,
    pub edge_count: usize,
    pub sparsity_bound: f64,
    pub total_weight: Option<f64>,
    pub mst_weight: Option<f64>,
    pub max_queries_per_edge: u64,
    pub avg_queries_per_edge: f64,
    /// `None` when no permuted orders were run.
    pub consistent: Option<bool>,
    #[serde(skip)]
    pub epsilon: f64,
}

impl VerificationReport {
    /// Connectivity, sparsity, consistency and, on weighted runs, total
    /// weight within `(1+ε)` of the minimum spanning tree.
    pub fn passes(&self) -> bool {
        let weight_ok = match (self.total_weight, self.mst_weight) {
            (Some(w), Some(a)) => w <= (1.0 + self.epsilon) * a + 1e-9,
            _ => true,
        };
        self.connected && self.edge_count as f64 <= self.sparsity_bound && self.consistent != Some(false) && weight_ok
    }
}

/// YES set of `oracle` queried in `order`, with per-edge query counts.
fn answer_all(g: &Graph, oracle: &AnyOracle, order: &[Edge]) -> Result<(BTreeSet<Edge>, Vec<u64>)> {
    let mut access = CountingAccess::new(g);
    let mut yes = BTreeSet::new();
    let mut counts = Vec::with_capacity(order.len());
    for &e in order {
        access.reset();
        if oracle.query(&mut access, e.lo(), e.hi())? {
            yes.insert(e);
        }
        counts.push(access.queries());
    }
    Ok((yes, counts))
}

/// Queries `alg` on every edge of `g` once per seed.
///
/// With `params.permutations > 0` the full edge set is queried again in that
/// many seeded random orders and the YES sets compared.
pub fn run_verification(
    g: &Graph,
    descriptor: &str,
    alg: Algorithm,
    params: &Params,
    seeds: &[u64],
) -> Result<Vec<VerificationReport>> {
    params.validate()?;
    let edges = g.edge_list();
    let n = g.vertex_count();
    let mst_weight = if g.is_weighted() {
        Some(exact_mst(g)?.1.as_f64())
    } else {
        None
    };
    let mut reports = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        let oracle = build_oracle(g, alg, params, seed)?;
        let (yes, counts) = answer_all(g, &oracle, &edges)?;
        let consistent = if params.permutations == 0 {
            None
        } else {
            let mut same = true;
            for j in 0..params.permutations {
                let mut order = edges.clone();
                let mut rng = ChaCha8Rng::seed_from_u64(keyed_hash(seed, Purpose::Permutation, j as u64, 0));
                order.shuffle(&mut rng);
                // A fresh instance, so no cache can carry answers over.
                let fresh;
                let o = if params.shared_cache {
                    fresh = build_oracle(g, alg, params, seed)?;
                    &fresh
                } else {
                    &oracle
                };
                same &= answer_all(g, o, &order)?.0 == yes;
            }
            Some(same)
        };
        let total: u64 = counts.iter().sum();
        reports.push(VerificationReport {
            algorithm: alg.to_string(),
            graph: descriptor.to_string(),
            seed,
            connected: is_connected(n, &yes),
            edge_count: yes.len(),
            sparsity_bound: (1.0 + params.epsilon) * n as f64,
            total_weight: mst_weight.map(|_| g.total_weight(&yes).as_f64()),
            mst_weight,
            max_queries_per_edge: counts.iter().copied().max().unwrap_or(0),
            avg_queries_per_edge: if counts.is_empty() { 0.0 } else { total as f64 / counts.len() as f64 },
            consistent,
            epsilon: params.epsilon,
        });
    }
    Ok(reports)
}

/// Writes reports as CSV with a header row, sorted by graph, algorithm and
/// seed.
pub fn write_reports_csv<W: Write>(reports: &[VerificationReport], out: W) -> Result<()> {
    let mut sorted: Vec<&VerificationReport> = reports.iter().collect();
    sorted.sort_by(|a, b| (&a.graph, &a.algorithm, a.seed).cmp(&(&b.graph, &b.algorithm, b.seed)));
    let mut w = csv::Writer::from_writer(out);
    if sorted.is_empty() {
        w.write_record([
            "algorithm",
            "graph",
            "seed",
            "connected",
            "edge_count",
            "sparsity_bound",
            "total_weight",
            "mst_weight",
            "max_queries_per_edge",
            "avg_queries_per_edge",
            "consistent",
        ])?;
    }
    for r in sorted {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
