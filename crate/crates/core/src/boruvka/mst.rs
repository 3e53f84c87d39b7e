use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, UnionFind, Weight};

/// Minimum spanning tree under `(weight, rank)` order, with its weight.
pub fn exact_mst(g: &Graph) -> Result<(Vec<Edge>, Weight)> {
    let n = g.vertex_count();
    let mut edges: Vec<(Weight, Edge)> = g.edges().map(|(e, w)| (w, e)).collect();
    edges.sort_unstable();
    let mut uf = UnionFind::new(n);
    let mut tree = Vec::with_capacity(n.saturating_sub(1));
    let mut total = Weight::ZERO;
    for (w, e) in edges {
        if uf.union(e.lo(), e.hi()) {
            tree.push(e);
            total = total + w;
        }
    }
    if n > 0 && tree.len() != n - 1 {
        return Err(Error::usage("minimum spanning tree needs a connected graph"));
    }
    tree.sort_unstable();
    Ok((tree, total))
}
