//! The per-edge decision interface shared by every spanning-subgraph oracle.

use crate::error::Result;
use crate::graph::{CountingAccess, IncidenceSource, Vertex};

/// Decides, one edge at a time, membership in a fixed spanning subgraph.
///
/// Answers are a pure function of the graph, the oracle's parameters and its
/// seed, so any query order yields the same subgraph. Each call is one query
/// episode; incidence queries it issues are counted by `access`.
pub trait SpanningOracle {
    /// Short identifier used in reports.
    fn name(&self) -> &'static str;

    /// `true` (YES) iff edge `(x, y)` belongs to the subgraph.
    fn query<S: IncidenceSource>(
        &self,
        access: &mut CountingAccess<S>,
        x: Vertex,
        y: Vertex,
    ) -> Result<bool>;
}
