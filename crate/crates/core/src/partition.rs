//! Vertex partitions, partition oracles and the reduction that turns a
//! partition oracle into a spanning-subgraph oracle.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::path::Path;

use crate::boruvka::break_component;
use crate::error::{Error, Result};
use crate::graph::{CountingAccess, Edge, Explorer, Graph, IncidenceSource, Vertex};
use crate::kruskal::hyperfinite_witness;
use crate::oracle::SpanningOracle;

/// A partition of `0..n` into parts. Parts are sorted and ordered by their
/// smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<Vec<Vertex>>,
    lookup: Vec<usize>,
}

impl Partition {
    /// Validates that `parts` are disjoint, nonempty and cover `0..n`.
    pub fn from_parts(n: usize, parts: Vec<Vec<Vertex>>) -> Result<Self> {
        let mut lookup = vec![usize::MAX; n];
        let mut parts: Vec<Vec<Vertex>> = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p
            })
            .collect();
        if parts.iter().any(Vec::is_empty) {
            return Err(Error::usage("partition has an empty part"));
        }
        parts.sort_unstable_by_key(|p| p[0]);
        for (i, p) in parts.iter().enumerate() {
            for &v in p {
                if v >= n {
                    return Err(Error::usage(format!("vertex {v} outside 0..{n}")));
                }
                if lookup[v] != usize::MAX {
                    return Err(Error::usage(format!("vertex {v} lies in two parts")));
                }
                lookup[v] = i;
            }
        }
        if let Some(v) = lookup.iter().position(|&i| i == usize::MAX) {
            return Err(Error::usage(format!("vertex {v} is not covered")));
        }
        Ok(Partition { parts, lookup })
    }

    /// Groups vertices by label; `labels[v]` is the part label of `v`.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let mut by: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
        for (v, &l) in labels.iter().enumerate() {
            by.entry(l).or_default().push(v);
        }
        Self::from_parts(labels.len(), by.into_values().collect())
    }

    /// Parses lines `vertex part-index`; `#` comments and blank lines are
    /// skipped. Every vertex of `0..n` must appear exactly once.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut labels: Vec<Option<usize>> = vec![None; n];
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let lineno = i + 1;
            let mut it = line.split_whitespace();
            let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
                return Err(Error::parse(lineno, "expected `vertex part-index`"));
            };
            let v: usize = a.parse().map_err(|_| Error::parse(lineno, format!("bad vertex `{a}`")))?;
            let p: usize = b.parse().map_err(|_| Error::parse(lineno, format!("bad part index `{b}`")))?;
            if v >= n {
                return Err(Error::parse(lineno, format!("vertex {v} outside 0..{n}")));
            }
            if labels[v].replace(p).is_some() {
                return Err(Error::parse(lineno, format!("vertex {v} listed twice")));
            }
        }
        let labels: Vec<usize> = labels
            .into_iter()
            .enumerate()
            .map(|(v, l)| l.ok_or_else(|| Error::usage(format!("vertex {v} has no part"))))
            .collect::<Result<_>>()?;
        Self::from_labels(&labels)
    }

    pub fn load(path: impl AsRef<Path>, n: usize) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?, n)
    }

    /// One `vertex part-index` line per vertex.
    pub fn to_text(&self) -> String {
        self.lookup
            .iter()
            .enumerate()
            .map(|(v, p)| format!("{v} {p}\n"))
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.lookup.len()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[Vec<Vertex>] {
        &self.parts
    }

    /// Index of the part containing `v`.
    pub fn part_index(&self, v: Vertex) -> usize {
        self.lookup[v]
    }

    /// The part containing `v` (`g_P(v)`).
    pub fn part_of(&self, v: Vertex) -> &[Vertex] {
        &self.parts[self.lookup[v]]
    }

    /// Number of edges whose endpoints lie in different parts.
    pub fn cut_edges(&self, g: &Graph) -> usize {
        g.edges()
            .filter(|(e, _)| self.lookup[e.lo()] != self.lookup[e.hi()])
            .count()
    }
}

/// Consistent local access to one fixed partition.
pub trait PartitionOracle {
    /// The part containing `v`, sorted.
    fn part<S: IncidenceSource>(&self, access: &mut CountingAccess<S>, v: Vertex) -> Result<Vec<Vertex>>;
}

/// Check of the three partition conditions against `(ε, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionReport {
    pub parts: usize,
    pub max_part_size: usize,
    pub sizes_ok: bool,
    pub connected_ok: bool,
    pub cut_edges: usize,
    pub cut_ok: bool,
}

impl PartitionReport {
    pub fn passes(&self) -> bool {
        self.sizes_ok && self.connected_ok && self.cut_ok
    }
}

/// Checks part sizes against `k_bound`, connectivity of every induced part
/// and the cut size against `ε n`.
pub fn partition_validate(g: &Graph, p: &Partition, epsilon: f64, k_bound: usize) -> Result<PartitionReport> {
    let n = g.vertex_count();
    if p.vertex_count() != n {
        return Err(Error::usage(format!(
            "partition covers {} vertices, graph has {n}",
            p.vertex_count()
        )));
    }
    let max_part_size = p.parts().iter().map(Vec::len).max().unwrap_or(0);
    let connected_ok = p.parts().iter().all(|part| induced_connected(g, p, part));
    let cut_edges = p.cut_edges(g);
    Ok(PartitionReport {
        parts: p.len(),
        max_part_size,
        sizes_ok: max_part_size <= k_bound,
        connected_ok,
        cut_edges,
        cut_ok: cut_edges as f64 <= epsilon * n as f64,
    })
}

pub(crate) fn induced_connected(g: &Graph, p: &Partition, part: &[Vertex]) -> bool {
    let idx = p.part_index(part[0]);
    let mut seen = vec![part[0]];
    let mut i = 0;
    while i < seen.len() {
        let w = seen[i];
        for u in g.neighbor_ids(w) {
            if p.part_index(u) == idx && !seen.contains(&u) {
                seen.push(u);
            }
        }
        i += 1;
    }
    seen.len() == part.len()
}

/// Partition oracle backed by a precomputed partition of the whole graph.
#[derive(Debug, Clone)]
pub struct ReferencePartitionOracle {
    pub partition: Partition,
    pub report: PartitionReport,
}

impl ReferencePartitionOracle {
    pub fn from_partition(g: &Graph, partition: Partition, epsilon: f64, k_bound: usize) -> Result<Self> {
        let report = partition_validate(g, &partition, epsilon, k_bound)?;
        Ok(ReferencePartitionOracle { partition, report })
    }
}

impl PartitionOracle for ReferencePartitionOracle {
    fn part<S: IncidenceSource>(&self, access: &mut CountingAccess<S>, v: Vertex) -> Result<Vec<Vertex>> {
        access.check_vertex(v)?;
        Ok(self.partition.part_of(v).to_vec())
    }
}

/// Builds a reference oracle from the peeling witness, breaking parts
/// larger than `k_bound` along their BFS trees. With `k_bound ≥ n` the parts
/// are the connected components.
pub fn reference_partition_oracle(g: &Graph, epsilon: f64, k_bound: usize) -> Result<ReferencePartitionOracle> {
    if k_bound == 0 {
        return Err(Error::usage("k-bound must be at least 1"));
    }
    let n = g.vertex_count();
    let edges = g.edge_list();
    let blocks = if k_bound >= n {
        crate::graph::components_of(n, &edges)
    } else {
        hyperfinite_witness(g, epsilon).components
    };
    let mut parts = Vec::new();
    for block in blocks {
        if block.len() <= k_bound {
            parts.push(block);
            continue;
        }
        let inside: Vec<Edge> = induced_edges(g, &block);
        parts.extend(break_component(&block, &inside, k_bound));
    }
    let partition = Partition::from_parts(n, parts)?;
    ReferencePartitionOracle::from_partition(g, partition, epsilon, k_bound)
}

fn induced_edges(g: &Graph, block: &[Vertex]) -> Vec<Edge> {
    let mut sorted = block.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    for &v in &sorted {
        for u in g.neighbor_ids(v) {
            if u > v && sorted.binary_search(&u).is_ok() {
                out.push(Edge::new(v, u));
            }
        }
    }
    out
}

/// Tiles a `rows × cols` grid (row-major ids) into `tile_rows × tile_cols`
/// rectangles.
pub fn grid_tile_partition(rows: usize, cols: usize, tile_rows: usize, tile_cols: usize) -> Result<Partition> {
    if tile_rows == 0 || tile_cols == 0 {
        return Err(Error::usage("tile sides must be positive"));
    }
    let tiles_per_row = cols.div_ceil(tile_cols);
    let labels: Vec<usize> = (0..rows * cols)
        .map(|v| (v / cols / tile_rows) * tiles_per_row + (v % cols) / tile_cols)
        .collect();
    Partition::from_labels(&labels)
}

/// Spanning oracle from a partition oracle: cut edges are kept, and inside a
/// part the BFS tree from its smallest vertex is kept.
#[derive(Debug, Clone)]
pub struct ReductionOracle<P> {
    pub partition_oracle: P,
}

impl<P: PartitionOracle> SpanningOracle for ReductionOracle<P> {
    fn name(&self) -> &'static str {
        "reduction"
    }

    fn query<S: IncidenceSource>(&self, access: &mut CountingAccess<S>, x: Vertex, y: Vertex) -> Result<bool> {
        Ok(reduction_edge_query(access, &self.partition_oracle, x, y)?.keep)
    }
}

/// Answer of the reduction with the incidence queries it added on top of
/// the partition oracle's own.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionAnswer {
    pub keep: bool,
    pub extra_queries: u64,
}

pub fn reduction_edge_query<S: IncidenceSource, P: PartitionOracle>(
    access: &mut CountingAccess<S>,
    po: &P,
    u: Vertex,
    v: Vertex,
) -> Result<ReductionAnswer> {
    let pu = po.part(access, u)?;
    let pv = po.part(access, v)?;
    for (x, part) in [(u, &pu), (v, &pv)] {
        if part.binary_search(&x).is_err() {
            return Err(Error::ContractViolation(format!(
                "partition oracle returned a part without vertex {x}"
            )));
        }
    }
    let before = access.queries();
    let mut ex = Explorer::new(access);
    ex.require_edge(u, v)?;
    let keep = if pu != pv {
        true
    } else {
        let parent = part_bfs_parents(&mut ex, &pu)?;
        parent.get(&u) == Some(&v) || parent.get(&v) == Some(&u)
    };
    let extra_queries = access.queries() - before;
    Ok(ReductionAnswer { keep, extra_queries })
}

/// BFS tree of the subgraph induced by `part` from its smallest vertex, each
/// vertex taking its smallest neighbor on the previous level as parent.
fn part_bfs_parents<S: IncidenceSource>(ex: &mut Explorer<'_, S>, part: &[Vertex]) -> Result<HashMap<Vertex, Vertex>> {
    let root = part[0];
    let mut depth = HashMap::from([(root, 0usize)]);
    let mut parent = HashMap::new();
    let mut queue = VecDeque::from([root]);
    while let Some(w) = queue.pop_front() {
        for p in ex.list(w)?.iter() {
            let z = p.vertex;
            if part.binary_search(&z).is_err() {
                continue;
            }
            match depth.get(&z) {
                None => {
                    depth.insert(z, depth[&w] + 1);
                    parent.insert(z, w);
                    queue.push_back(z);
                }
                Some(&dz) if dz == depth[&w] + 1 && w < parent[&z] => {
                    parent.insert(z, w);
                }
                _ => {}
            }
        }
    }
    if depth.len() != part.len() {
        return Err(Error::ContractViolation("partition oracle returned a disconnected part".into()));
    }
    Ok(parent)
}
