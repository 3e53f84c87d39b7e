//! The centers oracle: random centers, nearest-center assignment, BFS trees
//! inside each center's region and one lexicographic connecting edge per
//! pair of adjacent regions.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{CountingAccess, Edge, Explorer, Graph, IncidenceSource, Vertex};
use crate::keyed::{keyed_below, Purpose};
use crate::oracle::SpanningOracle;

/// Ball-size threshold `s(n, ε, δ) = √(2n/ε) · ln(n/δ)`.
pub fn ball_threshold(n: usize, epsilon: f64, delta: f64) -> f64 {
    (2.0 * n as f64 / epsilon).sqrt() * (n as f64 / delta).ln()
}

/// Vertices sampled by the k estimators: `⌈(8/ε²) · ln(2/δ)⌉`.
pub fn estimator_sample_size(epsilon: f64, delta: f64) -> usize {
    ((8.0 / (epsilon * epsilon)) * (2.0 / delta).ln()).ceil() as usize
}

/// Parameters and the seeded center list of the centers oracle.
#[derive(Debug, Clone)]
pub struct CentersConfig {
    pub epsilon: f64,
    pub delta: f64,
    pub k: usize,
    pub seed: u64,
    centers: Vec<Vertex>,
    priority: HashMap<Vertex, usize>,
}

impl CentersConfig {
    /// Draws `ℓ = ⌈√(εn/2)⌉` centers uniformly with replacement.
    pub fn new(n: usize, epsilon: f64, delta: f64, k: usize, seed: u64) -> Result<Self> {
        check_eps_delta(epsilon, delta)?;
        if n == 0 {
            return Err(Error::usage("graph has no vertices"));
        }
        let ell = (epsilon * n as f64 / 2.0).sqrt().ceil() as usize;
        let centers = (0..ell as u64)
            .map(|j| keyed_below(seed, Purpose::Center, j, 0, n))
            .collect();
        let mut cfg = Self::with_centers(centers, k)?;
        cfg.epsilon = epsilon;
        cfg.delta = delta;
        cfg.seed = seed;
        Ok(cfg)
    }

    /// Uses an explicit center list; its order breaks distance ties.
    pub fn with_centers(centers: Vec<Vertex>, k: usize) -> Result<Self> {
        let mut priority = HashMap::new();
        for (j, &c) in centers.iter().enumerate() {
            priority.entry(c).or_insert(j);
        }
        Ok(CentersConfig {
            epsilon: 1.0,
            delta: 0.5,
            k,
            seed: 0,
            centers,
            priority,
        })
    }

    /// The drawn list `v_1..v_ℓ`, duplicates included.
    pub fn centers(&self) -> &[Vertex] {
        &self.centers
    }

    pub fn ell(&self) -> usize {
        self.centers.len()
    }

    /// List position of the first draw of `v`, if `v` is a center.
    pub fn priority(&self, v: Vertex) -> Option<usize> {
        self.priority.get(&v).copied()
    }
}

fn check_eps_delta(epsilon: f64, delta: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::usage(format!("epsilon must lie in (0,1], got {epsilon}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::usage(format!("delta must lie in (0,1), got {delta}")));
    }
    Ok(())
}

/// The center a vertex belongs to, if one lies within distance `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CenterAssignment {
    pub vertex: Vertex,
    /// `(center, distance)`.
    pub assigned: Option<(Vertex, usize)>,
}

impl CenterAssignment {
    pub fn center(&self) -> Option<Vertex> {
        self.assigned.map(|(c, _)| c)
    }
}

/// Nearest center within distance `k`, ties broken by list position.
pub fn assign_center<S: IncidenceSource>(
    access: &mut CountingAccess<S>,
    cfg: &CentersConfig,
    v: Vertex,
) -> Result<CenterAssignment> {
    assign_in(&mut Explorer::new(access), cfg, v)
}

fn assign_in<S: IncidenceSource>(
    ex: &mut Explorer<'_, S>,
    cfg: &CentersConfig,
    v: Vertex,
) -> Result<CenterAssignment> {
    let mut found = None;
    ex.bfs_distances(v, cfg.k, |level, depth| {
        found = level
            .iter()
            .filter_map(|&w| cfg.priority(w).map(|p| (p, w)))
            .min()
            .map(|(_, w)| (w, depth));
        found.is_some()
    })?;
    Ok(CenterAssignment { vertex: v, assigned: found })
}

/// The centers oracle with a fixed configuration.
#[derive(Debug, Clone)]
pub struct CentersOracle {
    pub cfg: CentersConfig,
}

impl CentersOracle {
    pub fn new(cfg: CentersConfig) -> Self {
        CentersOracle { cfg }
    }
}

impl SpanningOracle for CentersOracle {
    fn name(&self) -> &'static str {
        "centers"
    }

    fn query<S: IncidenceSource>(
        &self,
        access: &mut CountingAccess<S>,
        x: Vertex,
        y: Vertex,
    ) -> Result<bool> {
        centers_edge_query(access, &self.cfg, x, y)
    }
}

/// Decides whether `(x, y)` is kept by the centers construction.
pub fn centers_edge_query<S: IncidenceSource>(
    access: &mut CountingAccess<S>,
    cfg: &CentersConfig,
    x: Vertex,
    y: Vertex,
) -> Result<bool> {
    let mut ex = Explorer::new(access);
    ex.require_edge(x, y)?;
    let ax = assign_in(&mut ex, cfg, x)?;
    let ay = assign_in(&mut ex, cfg, y)?;
    let ((u, dxu), (v, dyv)) = match (ax.assigned, ay.assigned) {
        (Some(a), Some(b)) => (a, b),
        _ => return Ok(true),
    };
    if u == v {
        if dxu == dyv {
            return Ok(false);
        }
        // Orient so that `far` is one level further from the center.
        let (near, far, dfar) = if dxu < dyv { (x, y, dyv) } else { (y, x, dxu) };
        for p in ex.list(far)?.iter() {
            let w = p.vertex;
            if w < near && assign_in(&mut ex, cfg, w)?.assigned == Some((u, dfar - 1)) {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    match lex_path_in(&mut ex, u, v, dxu, dyv)? {
        Some(path) => Ok(path.contains(&x) && path.contains(&y)),
        None => Ok(false),
    }
}

/// Lexicographically smallest shortest `u`–`v` path, read from the
/// smaller-id endpoint, provided `d(u, v) ≤ 2k + 2`.
pub fn lex_min_shortest_path<S: IncidenceSource>(
    access: &mut CountingAccess<S>,
    u: Vertex,
    v: Vertex,
    k: usize,
) -> Result<Option<Vec<Vertex>>> {
    if u == v {
        return Err(Error::usage("path endpoints must differ"));
    }
    lex_path_in(&mut Explorer::new(access), u, v, k + 1, k)
}

/// Lex-min shortest path certified when `d(u, v) ≤ ru + rv + 1`.
///
/// Every such path lies in `Γ_ru(u) ∪ Γ_rv(v)`, so distances inside the
/// subgraph induced by that union are exact along it.
fn lex_path_in<S: IncidenceSource>(
    ex: &mut Explorer<'_, S>,
    u: Vertex,
    v: Vertex,
    ru: usize,
    rv: usize,
) -> Result<Option<Vec<Vertex>>> {
    let bu = ex.bfs_distances(u, ru, |_, _| false)?;
    let bv = ex.bfs_distances(v, rv, |_, _| false)?;
    let (a, b) = (u.min(v), u.max(v));
    let mut inside: Vec<Vertex> = bu.keys().chain(bv.keys()).copied().collect();
    inside.sort_unstable();
    inside.dedup();
    let da = induced_bfs(ex, &inside, a)?;
    let Some(&len) = da.get(&b) else {
        return Ok(None);
    };
    if len > ru + rv + 1 {
        return Ok(None);
    }
    let db = induced_bfs(ex, &inside, b)?;
    let mut path = vec![a];
    let mut cur = a;
    for s in 0..len {
        let next = ex
            .list(cur)?
            .iter()
            .map(|p| p.vertex)
            .filter(|z| da.get(z) == Some(&(s + 1)) && db.get(z) == Some(&(len - s - 1)))
            .min()
            .expect("a shortest path continues");
        path.push(next);
        cur = next;
    }
    Ok(Some(path))
}

fn induced_bfs<S: IncidenceSource>(
    ex: &mut Explorer<'_, S>,
    inside: &[Vertex],
    root: Vertex,
) -> Result<HashMap<Vertex, usize>> {
    let mut dist = HashMap::from([(root, 0)]);
    let mut queue = VecDeque::from([root]);
    while let Some(w) = queue.pop_front() {
        let dw = dist[&w];
        for p in ex.list(w)?.iter() {
            if inside.binary_search(&p.vertex).is_ok() && !dist.contains_key(&p.vertex) {
                dist.insert(p.vertex, dw + 1);
                queue.push_back(p.vertex);
            }
        }
    }
    Ok(dist)
}

/// Sample-based choice of the BFS depth for the centers oracle.
///
/// For each sampled vertex takes the least radius whose ball reaches
/// `s(n, ε, δ)` vertices (`n` when it never does) and returns the sample
/// quantile at index `⌈(1 − 3ε/(8d)) · s⌉`.
pub fn estimate_k_centers<S: IncidenceSource>(
    access: &mut CountingAccess<S>,
    n: usize,
    d: usize,
    epsilon: f64,
    delta: f64,
    seed: u64,
) -> Result<usize> {
    check_eps_delta(epsilon, delta)?;
    let threshold = ball_threshold(n, epsilon, delta);
    let m = estimator_sample_size(epsilon, delta);
    let mut ks = Vec::with_capacity(m);
    for i in 0..m as u64 {
        let v = keyed_below(seed, Purpose::Sample, i, 0, n);
        let mut ex = Explorer::new(access);
        let mut seen = 0usize;
        let mut reached = None;
        ex.bfs_distances(v, n, |level, depth| {
            seen += level.len();
            if seen as f64 >= threshold {
                reached = Some(depth);
            }
            reached.is_some()
        })?;
        ks.push(reached.unwrap_or(n));
    }
    ks.sort_unstable();
    let idx = ((1.0 - 3.0 * epsilon / (8.0 * d as f64)) * m as f64).ceil() as usize;
    Ok(ks[idx.clamp(1, m) - 1])
}

/// Exact `k^C`: least `k` such that all but an `ε/(2d)` fraction of the
/// vertices have at least `s(n, ε, δ)` vertices within distance `k`.
pub fn exact_k_centers(g: &Graph, epsilon: f64, delta: f64) -> usize {
    let n = g.vertex_count();
    let threshold = ball_threshold(n, epsilon, delta);
    let mut ks: Vec<usize> = (0..n)
        .map(|v| {
            let dist = bfs_all(g, v);
            let mut by_level = vec![0usize; n + 1];
            for d in dist.into_iter().flatten() {
                by_level[d] += 1;
            }
            let mut total = 0;
            for (k, c) in by_level.iter().enumerate() {
                total += c;
                if total as f64 >= threshold {
                    return k;
                }
            }
            n
        })
        .collect();
    ks.sort_unstable();
    let allowed = (epsilon / (2.0 * g.degree_bound() as f64) * n as f64).floor() as usize;
    ks[n - 1 - allowed.min(n - 1)]
}

/// Hop distances from `root` over the whole graph.
pub(crate) fn bfs_all(g: &Graph, root: Vertex) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[root] = Some(0);
    let mut queue = VecDeque::from([root]);
    while let Some(w) = queue.pop_front() {
        let dw = dist[w].expect("queued vertices have distances");
        for u in g.neighbor_ids(w) {
            if dist[u].is_none() {
                dist[u] = Some(dw + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

/// The whole kept edge set, built by the level-by-level sweep over the full
/// graph.
pub fn centers_global_reference(g: &Graph, cfg: &CentersConfig) -> BTreeSet<Edge> {
    let n = g.vertex_count();
    let centers = cfg.centers();
    let dists: Vec<Vec<Option<usize>>> = centers.iter().map(|&c| bfs_all(g, c)).collect();
    let mut owner: Vec<Option<Vertex>> = vec![None; n];
    for i in 0..=cfg.k {
        for (j, &c) in centers.iter().enumerate() {
            for w in 0..n {
                if owner[w].is_none() && dists[j][w] == Some(i) {
                    owner[w] = Some(c);
                }
            }
        }
    }

    let mut kept = BTreeSet::new();
    let mut distinct: Vec<Vertex> = centers.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    for &c in &distinct {
        // BFS tree of the region induced by S(c), min-id parents.
        let mut level = vec![None; n];
        level[c] = Some(0);
        let mut queue = VecDeque::from([c]);
        while let Some(w) = queue.pop_front() {
            for u in g.neighbor_ids(w) {
                if owner[u] == Some(c) && level[u].is_none() {
                    level[u] = Some(level[w].unwrap() + 1);
                    queue.push_back(u);
                }
            }
        }
        for w in (0..n).filter(|&w| owner[w] == Some(c) && w != c) {
            let lw = level[w].expect("regions are connected");
            let parent = g
                .neighbor_ids(w)
                .filter(|&p| owner[p] == Some(c) && level[p] == Some(lw - 1))
                .min()
                .expect("non-root vertices have a parent");
            kept.insert(Edge::new(w, parent));
        }
    }
    for w in (0..n).filter(|&w| owner[w].is_none()) {
        for u in g.neighbor_ids(w) {
            kept.insert(Edge::new(w, u));
        }
    }
    for (i, &a) in distinct.iter().enumerate() {
        for &b in &distinct[i + 1..] {
            let Some(path) = global_lex_path(g, a, b) else {
                continue;
            };
            if path.iter().all(|&z| owner[z] == Some(a) || owner[z] == Some(b)) {
                for pair in path.windows(2) {
                    if owner[pair[0]] != owner[pair[1]] {
                        kept.insert(Edge::new(pair[0], pair[1]));
                    }
                }
            }
        }
    }
    kept
}

/// Lex-min shortest path from `a` (the smaller id) to `b` using full BFS.
fn global_lex_path(g: &Graph, a: Vertex, b: Vertex) -> Option<Vec<Vertex>> {
    let da = bfs_all(g, a);
    let db = bfs_all(g, b);
    let len = da[b]?;
    let mut path = vec![a];
    let mut cur = a;
    for s in 0..len {
        cur = g
            .neighbor_ids(cur)
            .find(|&z| da[z] == Some(s + 1) && db[z] == Some(len - s - 1))?;
        path.push(cur);
    }
    Some(path)
}
