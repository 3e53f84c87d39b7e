use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Weight};
use crate::partition::{induced_connected, Partition};

/// A quotient edge: the minimum cut weight and the original edge realizing
/// it, ties broken by rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuotientEdge {
    pub weight: Weight,
    pub realized_by: Edge,
}

/// The contraction `G/P`: one vertex per part, keyed by part index.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub partition: Partition,
    /// Keyed by `(i, j)` with `i < j`.
    pub edges: BTreeMap<(usize, usize), QuotientEdge>,
}

impl Quotient {
    /// Lightest quotient edge at part `p` as `(edge, other part)`.
    pub fn lightest_at(&self, p: usize) -> Option<(QuotientEdge, usize)> {
        self.edges
            .iter()
            .filter(|((a, b), _)| *a == p || *b == p)
            .map(|(&(a, b), &q)| (q, if a == p { b } else { a }))
            .min_by_key(|(q, _)| (q.weight, q.realized_by))
    }
}

/// Contracts every part of `p`; each part must induce a connected subgraph.
pub fn contract(g: &Graph, p: &Partition) -> Result<Quotient> {
    if p.vertex_count() != g.vertex_count() {
        return Err(Error::usage("partition and graph sizes differ"));
    }
    if let Some(bad) = p.parts().iter().position(|part| !induced_connected(g, p, part)) {
        return Err(Error::usage(format!("part {bad} is not connected")));
    }
    let mut edges: BTreeMap<(usize, usize), QuotientEdge> = BTreeMap::new();
    for (e, w) in g.edges() {
        let (a, b) = (p.part_index(e.lo()), p.part_index(e.hi()));
        if a == b {
            continue;
        }
        let key = (a.min(b), a.max(b));
        let cand = QuotientEdge { weight: w, realized_by: e };
        edges
            .entry(key)
            .and_modify(|q| {
                if (cand.weight, cand.realized_by) < (q.weight, q.realized_by) {
                    *q = cand;
                }
            })
            .or_insert(cand);
    }
    Ok(Quotient {
        partition: p.clone(),
        edges,
    })
}
