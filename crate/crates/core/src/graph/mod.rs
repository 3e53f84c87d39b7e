//! Bounded-degree graphs, incidence-list access and the primitives every
//! oracle is built from.

mod access;
mod ball;
mod connectivity;
mod expansion;
mod io;
mod weight;

pub use access::{CountingAccess, Explorer, IncidenceSource};
pub use ball::{bfs_ball, Ball};
pub use connectivity::{is_connected, UnionFind};
pub(crate) use connectivity::components_of;
pub use expansion::{sampled_vertex_expansion, vertex_expansion, EXHAUSTIVE_EXPANSION_LIMIT};
pub use weight::Weight;

use std::fmt;

use crate::error::{Error, Result};

/// Vertex ids are `0..n`; the id order is numeric order.
pub type Vertex = usize;

/// An undirected edge with distinct endpoints, stored as `(min, max)`.
///
/// The derived order is the edge rank: compare the smaller endpoints, then
/// the larger ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    lo: Vertex,
    hi: Vertex,
}

impl Edge {
    pub fn new(u: Vertex, v: Vertex) -> Self {
        debug_assert_ne!(u, v, "edges have distinct endpoints");
        if u < v {
            Edge { lo: u, hi: v }
        } else {
            Edge { lo: v, hi: u }
        }
    }

    pub fn lo(self) -> Vertex {
        self.lo
    }

    pub fn hi(self) -> Vertex {
        self.hi
    }

    pub fn endpoints(self) -> (Vertex, Vertex) {
        (self.lo, self.hi)
    }

    pub fn touches(self, v: Vertex) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoint that is not `v`.
    pub fn other(self, v: Vertex) -> Vertex {
        if self.lo == v {
            self.hi
        } else {
            self.lo
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

/// `true` iff `e` ranks strictly below `f`.
pub fn edge_rank_less(e: Edge, f: Edge) -> bool {
    e < f
}

/// One entry of an incidence list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Probe {
    pub vertex: Vertex,
    pub weight: Weight,
}

/// Immutable incidence-list graph with a known degree bound.
///
/// Lists are sorted by neighbor id, so the i-th neighbor is reproducible.
/// Unweighted graphs report weight 1 on every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    degree_bound: usize,
    adj: Vec<Vec<Probe>>,
    weighted: bool,
    max_weight: Weight,
    edge_count: usize,
}

impl Graph {
    /// Builds and validates a graph from an edge list.
    ///
    /// Weights are required iff `weighted`; every weight must be at least 1.
    pub fn from_edges<I>(n: usize, degree_bound: usize, weighted: bool, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex, Option<Weight>)>,
    {
        let mut builder = GraphBuilder::new(n, degree_bound, weighted);
        for (u, v, w) in edges {
            builder.add(u, v, w).map_err(Error::usage)?;
        }
        Ok(builder.finish())
    }

    /// Unweighted convenience constructor.
    pub fn unweighted(n: usize, degree_bound: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        Self::from_edges(n, degree_bound, false, edges.iter().map(|&(u, v)| (u, v, None)))
    }

    /// Weighted convenience constructor with integer weights.
    pub fn weighted(n: usize, degree_bound: usize, edges: &[(Vertex, Vertex, u64)]) -> Result<Self> {
        Self::from_edges(
            n,
            degree_bound,
            true,
            edges.iter().map(|&(u, v, w)| (u, v, Some(Weight::from_int(w)))),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    /// Maximum edge weight `W` (1 for unweighted or edgeless graphs).
    pub fn max_weight(&self) -> Weight {
        self.max_weight
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Probe] {
        &self.adj[v]
    }

    pub fn neighbor_ids(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].iter().map(|p| p.vertex)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.weight(u, v).is_some()
    }

    pub fn weight(&self, u: Vertex, v: Vertex) -> Option<Weight> {
        let list = self.adj.get(u)?;
        list.binary_search_by_key(&v, |p| p.vertex)
            .ok()
            .map(|i| list[i].weight)
    }

    /// All edges in rank order with their weights.
    pub fn edges(&self) -> impl Iterator<Item = (Edge, Weight)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |p| p.vertex > u)
                .map(move |p| (Edge::new(u, p.vertex), p.weight))
        })
    }

    pub fn edge_list(&self) -> Vec<Edge> {
        self.edges().map(|(e, _)| e).collect()
    }

    /// Sum of the weights of `edges`; panics on a non-edge.
    pub fn total_weight<'a>(&self, edges: impl IntoIterator<Item = &'a Edge>) -> Weight {
        edges
            .into_iter()
            .map(|e| self.weight(e.lo(), e.hi()).expect("edge of graph"))
            .sum()
    }
}

/// Incremental validating builder used by the constructors and the loader.
pub(crate) struct GraphBuilder {
    degree_bound: usize,
    weighted: bool,
    adj: Vec<Vec<Probe>>,
    max_weight: Weight,
    edge_count: usize,
}

impl GraphBuilder {
    pub(crate) fn new(n: usize, degree_bound: usize, weighted: bool) -> Self {
        GraphBuilder {
            degree_bound,
            weighted,
            adj: vec![Vec::new(); n],
            max_weight: Weight::ONE,
            edge_count: 0,
        }
    }

    pub(crate) fn add(&mut self, u: Vertex, v: Vertex, w: Option<Weight>) -> Result<(), String> {
        let n = self.adj.len();
        if u >= n || v >= n {
            return Err(format!("edge ({u},{v}) has an endpoint outside 0..{n}"));
        }
        if u == v {
            return Err(format!("self-loop at vertex {u}"));
        }
        let weight = match (self.weighted, w) {
            (true, Some(w)) => {
                if w < Weight::ONE {
                    return Err(format!("edge ({u},{v}) has weight {w} < 1"));
                }
                w
            }
            (true, None) => return Err(format!("edge ({u},{v}) is missing its weight")),
            (false, Some(_)) => {
                return Err(format!("edge ({u},{v}) has a weight but the graph is unweighted"))
            }
            (false, None) => Weight::ONE,
        };
        if self.adj[u].iter().any(|p| p.vertex == v) {
            return Err(format!("parallel edge ({u},{v})"));
        }
        for x in [u, v] {
            if self.adj[x].len() >= self.degree_bound {
                return Err(format!(
                    "vertex {x} exceeds the degree bound {}",
                    self.degree_bound
                ));
            }
        }
        self.adj[u].push(Probe { vertex: v, weight });
        self.adj[v].push(Probe { vertex: u, weight });
        self.max_weight = self.max_weight.max(weight);
        self.edge_count += 1;
        Ok(())
    }

    pub(crate) fn finish(mut self) -> Graph {
        for list in &mut self.adj {
            list.sort_unstable_by_key(|p| p.vertex);
        }
        Graph {
            degree_bound: self.degree_bound,
            adj: self.adj,
            weighted: self.weighted,
            max_weight: self.max_weight,
            edge_count: self.edge_count,
        }
    }
}
