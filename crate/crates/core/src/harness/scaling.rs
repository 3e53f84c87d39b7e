use serde::Serialize;

use super::oracles::{build_oracle, Algorithm, Params};
use crate::error::{Error, Result};
use crate::generators::{gen_graph, Family};
use crate::graph::CountingAccess;
use crate::keyed::{keyed_below, Purpose};
use crate::oracle::SpanningOracle;

/// Per-size query statistics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingRow {
    pub n: usize,
    pub avg_queries: f64,
    pub max_queries: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingReport {
    pub rows: Vec<ScalingRow>,
    /// Least-squares slope of `ln(avg queries)` against `ln n`.
    pub slope: f64,
    pub intercept: f64,
    pub residuals: Vec<f64>,
}

/// Least-squares line `y = slope·x + intercept` with residuals.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> Result<(f64, f64, Vec<f64>)> {
    let m = xs.len();
    if m != ys.len() || m < 2 {
        return Err(Error::usage("least squares needs at least two points"));
    }
    let mx = xs.iter().sum::<f64>() / m as f64;
    let my = ys.iter().sum::<f64>() / m as f64;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::usage("least squares needs distinct x values"));
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals = xs.iter().zip(ys).map(|(x, y)| y - (slope * x + intercept)).collect();
    Ok((slope, intercept, residuals))
}

/// Measures per-edge query counts of `alg` on `family` at each size.
///
/// With `edges_per_run = Some(m)`, each (size, seed) run queries `m` edges
/// drawn by keyed sampling instead of all of them.
pub fn scaling_study(
    family: Family,
    sizes: &[usize],
    alg: Algorithm,
    params: &Params,
    seeds: &[u64],
    edges_per_run: Option<usize>,
) -> Result<ScalingReport> {
    let mut distinct = sizes.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::usage("a scaling study needs at least three distinct sizes"));
    }
    if seeds.is_empty() {
        return Err(Error::usage("a scaling study needs at least one seed"));
    }
    let mut rows = Vec::with_capacity(distinct.len());
    for &n in &distinct {
        let mut total = 0u64;
        let mut count = 0u64;
        let mut max = 0u64;
        for &seed in seeds {
            let g = gen_graph(family.resized(n)?, seed)?;
            let oracle = build_oracle(&g, alg, params, seed)?;
            let edges = g.edge_list();
            let picked: Vec<_> = match edges_per_run {
                Some(m) if m < edges.len() => (0..m as u64)
                    .map(|j| edges[keyed_below(seed, Purpose::EdgeSample, j, n as u64, edges.len())])
                    .collect(),
                _ => edges,
            };
            let mut access = CountingAccess::new(&g);
            for e in picked {
                access.reset();
                oracle.query(&mut access, e.lo(), e.hi())?;
                let q = access.queries();
                total += q;
                count += 1;
                max = max.max(q);
            }
        }
        rows.push(ScalingRow {
            n,
            avg_queries: total as f64 / count.max(1) as f64,
            max_queries: max,
        });
    }
    let xs: Vec<f64> = rows.iter().map(|r| (r.n as f64).ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.avg_queries.max(1.0).ln()).collect();
    let (slope, intercept, residuals) = least_squares(&xs, &ys)?;
    Ok(ScalingReport {
        rows,
        slope,
        intercept,
        residuals,
    })
}
