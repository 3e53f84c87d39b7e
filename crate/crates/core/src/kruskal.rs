//! The rank-Kruskal oracle: an edge is dropped iff it is the highest-ranked
//! edge of some cycle inside a bounded-radius ball around an endpoint.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use crate::centers::{bfs_all, estimator_sample_size};
use crate::error::{Error, Result};
use crate::graph::{is_connected, CountingAccess, Edge, Explorer, Graph, IncidenceSource, UnionFind, Vertex};
use crate::keyed::{keyed_below, Purpose};
use crate::oracle::SpanningOracle;

/// BFS radius and whether both endpoint balls are inspected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KruskalConfig {
    pub k: usize,
    pub check_both_endpoints: bool,
}

impl KruskalConfig {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::usage("kruskal radius must be at least 1"));
        }
        Ok(KruskalConfig {
            k,
            check_both_endpoints: true,
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct KruskalOracle {
    pub cfg: KruskalConfig,
}

impl KruskalOracle {
    pub fn new(cfg: KruskalConfig) -> Self {
        KruskalOracle { cfg }
    }
}

impl SpanningOracle for KruskalOracle {
    fn name(&self) -> &'static str {
        "kruskal"
    }

    fn query<S: IncidenceSource>(
        &self,
        access: &mut CountingAccess<S>,
        x: Vertex,
        y: Vertex,
    ) -> Result<bool> {
        kruskal_edge_query(access, &self.cfg, x, y)
    }
}

/// NO iff `(x, y)` closes a cycle with lower-ranked edges of `C_k(x)`
/// (or of `C_k(y)` when both endpoints are checked).
pub fn kruskal_edge_query<S: IncidenceSource>(
    access: &mut CountingAccess<S>,
    cfg: &KruskalConfig,
    x: Vertex,
    y: Vertex,
) -> Result<bool> {
    let mut ex = Explorer::new(access);
    ex.require_edge(x, y)?;
    let e = Edge::new(x, y);
    let roots: &[Vertex] = if cfg.check_both_endpoints { &[x, y] } else { &[x] };
    for &r in roots {
        let ball = ex.ball(r, cfg.k)?;
        let index: HashMap<Vertex, usize> =
            ball.members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut uf = UnionFind::new(ball.len());
        for f in ball.edges.iter().take_while(|&&f| f < e) {
            uf.union(index[&f.lo()], index[&f.hi()]);
        }
        if uf.same(index[&x], index[&y]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Spanning tree from Kruskal's algorithm with edge rank as the weight.
pub fn rank_kruskal_reference(g: &Graph) -> Result<Vec<Edge>> {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    let tree: Vec<Edge> = g.edge_list().into_iter().filter(|e| uf.union(e.lo(), e.hi())).collect();
    if n > 0 && tree.len() != n - 1 {
        return Err(Error::usage("rank-Kruskal reference needs a connected graph"));
    }
    debug_assert!(is_connected(n, &tree));
    Ok(tree)
}

/// Sample-based choice of the Kruskal radius: the least `k` at which at
/// least a `1 − 3ε/(8d)` fraction of sampled vertices has
/// `|Γ_k(v)| ≤ exp(εk/(4d))`, capped at `n`.
pub fn estimate_k_kruskal<S: IncidenceSource>(
    access: &mut CountingAccess<S>,
    n: usize,
    d: usize,
    epsilon: f64,
    delta: f64,
    seed: u64,
) -> Result<usize> {
    if !(epsilon > 0.0 && epsilon <= 1.0) || !(delta > 0.0 && delta < 1.0) {
        return Err(Error::usage(format!("need epsilon in (0,1], delta in (0,1), got {epsilon}, {delta}")));
    }
    let m = estimator_sample_size(epsilon, delta);
    let rate = epsilon / (4.0 * d as f64);
    // Beyond this radius the threshold exceeds n, so every ball qualifies.
    let horizon = (((n as f64).ln() / rate).ceil() as usize).clamp(1, n.max(1));
    let mut growth = Vec::with_capacity(m);
    for i in 0..m as u64 {
        let v = keyed_below(seed, Purpose::Sample, i, 0, n);
        let mut ex = Explorer::new(access);
        let mut sizes = Vec::new();
        let mut total = 0;
        ex.bfs_distances(v, horizon, |level, _| {
            total += level.len();
            sizes.push(total);
            false
        })?;
        growth.push(sizes);
    }
    let need = (1.0 - 3.0 * epsilon / (8.0 * d as f64)) * m as f64;
    for k in 1..=n {
        let limit = (rate * k as f64).exp();
        let ok = growth
            .iter()
            .filter(|s| *s.get(k).unwrap_or_else(|| s.last().unwrap()) as f64 <= limit)
            .count();
        if ok as f64 >= need {
            return Ok(k);
        }
    }
    Ok(n)
}

/// Cumulative ball sizes `|Γ_0(v)|, |Γ_1(v)|, …` until the component is
/// exhausted.
fn ball_growth(g: &Graph, v: Vertex) -> Vec<usize> {
    let mut by_level = Vec::new();
    for d in bfs_all(g, v).into_iter().flatten() {
        if by_level.len() <= d {
            by_level.resize(d + 1, 0);
        }
        by_level[d] += 1;
    }
    by_level
        .iter()
        .scan(0, |acc, c| {
            *acc += c;
            Some(*acc)
        })
        .collect()
}

/// Exact `k^K_{α,β}`: least `k ≥ 1` such that all but an `α` fraction of
/// the vertices satisfy `|Γ_k(v)| ≤ exp(βk/2)`.
pub fn exact_k_kruskal(g: &Graph, alpha: f64, beta: f64) -> usize {
    let n = g.vertex_count();
    let growth: Vec<Vec<usize>> = (0..n).map(|v| ball_growth(g, v)).collect();
    for k in 1.. {
        let limit = (beta * k as f64 / 2.0).exp();
        let ok = growth
            .iter()
            .filter(|s| *s.get(k).unwrap_or_else(|| s.last().unwrap()) as f64 <= limit)
            .count();
        if ok as f64 >= (1.0 - alpha) * n as f64 {
            return k;
        }
    }
    unreachable!("the threshold eventually exceeds every ball")
}

/// Outcome of the peeling construction.
#[derive(Debug, Clone)]
pub struct HyperfiniteWitness {
    pub k: usize,
    pub beta: f64,
    /// Separating edges, in rank order.
    pub removed: Vec<Edge>,
    /// The remaining components; each is connected after the removal.
    pub components: Vec<Vec<Vertex>>,
    pub max_component_size: usize,
    pub max_component_diameter: usize,
}

/// Peeling witness with `α = β = ε/(2d)` and `k = k^K_{α,β}(G)`.
pub fn hyperfinite_witness(g: &Graph, epsilon: f64) -> HyperfiniteWitness {
    let beta = epsilon / (2.0 * g.degree_bound().max(1) as f64);
    let k = exact_k_kruskal(g, beta, beta);
    hyperfinite_witness_with(g, k, beta)
}

/// Removes every edge at vertices whose `k`-ball exceeds `exp(βk/2)`, then
/// repeatedly detaches the ball `C_{k'}(v)` around the smallest remaining
/// vertex at the first radius where growth drops below a factor `1 + β`.
pub fn hyperfinite_witness_with(g: &Graph, k: usize, beta: f64) -> HyperfiniteWitness {
    let n = g.vertex_count();
    let limit = (beta * k as f64 / 2.0).exp();
    let heavy: Vec<bool> = (0..n)
        .map(|v| {
            let s = ball_growth(g, v);
            *s.get(k).unwrap_or_else(|| s.last().unwrap()) as f64 > limit
        })
        .collect();
    let mut adj: Vec<Vec<Vertex>> = (0..n)
        .map(|v| {
            if heavy[v] {
                Vec::new()
            } else {
                g.neighbor_ids(v).filter(|&u| !heavy[u]).collect()
            }
        })
        .collect();
    let mut removed: Vec<Edge> = g
        .edge_list()
        .into_iter()
        .filter(|e| heavy[e.lo()] || heavy[e.hi()])
        .collect();
    let mut alive = vec![true; n];
    let mut components = Vec::new();
    for v in 0..n {
        if !alive[v] {
            continue;
        }
        let dist = bfs_levels(&adj, v);
        let mut sizes: Vec<usize> = Vec::new();
        for &d in &dist {
            if sizes.len() <= d.1 {
                sizes.resize(d.1 + 1, 0);
            }
            sizes[d.1] += 1;
        }
        let cum: Vec<usize> = sizes
            .iter()
            .scan(0, |a, c| {
                *a += c;
                Some(*a)
            })
            .collect();
        let at = |r: usize| *cum.get(r).unwrap_or(cum.last().unwrap()) as f64;
        let kp = (0..).find(|&r| at(r + 1) < (1.0 + beta) * at(r)).unwrap();
        let mut piece: Vec<Vertex> = dist.iter().filter(|d| d.1 <= kp).map(|d| d.0).collect();
        piece.sort_unstable();
        for &u in &piece {
            alive[u] = false;
        }
        for &u in &piece {
            for &w in &adj[u] {
                if alive[w] {
                    removed.push(Edge::new(u, w));
                }
            }
        }
        for &u in &piece {
            let out: Vec<Vertex> = adj[u].iter().copied().filter(|&w| alive[w]).collect();
            for w in out {
                adj[w].retain(|&z| z != u);
            }
            adj[u].retain(|&w| !alive[w]);
        }
        components.push(piece);
    }
    removed.sort_unstable();
    let max_component_size = components.iter().map(Vec::len).max().unwrap_or(0);
    let max_component_diameter = components
        .iter()
        .map(|c| c.iter().map(|&u| bfs_levels(&adj, u).iter().map(|d| d.1).max().unwrap_or(0)).max().unwrap_or(0))
        .max()
        .unwrap_or(0);
    HyperfiniteWitness {
        k,
        beta,
        removed,
        components,
        max_component_size,
        max_component_diameter,
    }
}

fn bfs_levels(adj: &[Vec<Vertex>], root: Vertex) -> Vec<(Vertex, usize)> {
    let mut seen = HashMap::from([(root, 0usize)]);
    let mut order = vec![(root, 0)];
    let mut i = 0;
    while i < order.len() {
        let (w, dw) = order[i];
        for &u in &adj[w] {
            if let Entry::Vacant(slot) = seen.entry(u) {
                slot.insert(dw + 1);
                order.push((u, dw + 1));
            }
        }
        i += 1;
    }
    order
}
