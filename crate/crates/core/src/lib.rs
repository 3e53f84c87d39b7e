//! Local spanning-subgraph oracles for bounded-degree graphs.

pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod keyed;
pub mod oracle;
pub mod partition;
pub mod boruvka;
pub mod centers;
pub mod kruskal;

pub use error::{Error, Result};
pub use graph::{
    bfs_ball, edge_rank_less, is_connected, vertex_expansion, Ball, CountingAccess, Edge,
    Explorer, Graph, IncidenceSource, Probe, UnionFind, Vertex, Weight,
};
