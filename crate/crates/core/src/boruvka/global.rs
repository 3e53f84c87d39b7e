use std::collections::BTreeSet;

use super::config::BoruvkaConfig;
use super::contract::{contract, QuotientEdge};
use super::{coin_is_heads, break_component};
use crate::error::Result;
use crate::graph::{Edge, Graph, UnionFind, Vertex};
use crate::partition::Partition;

/// Outcome of the whole-graph contraction process.
#[derive(Debug, Clone)]
pub struct BoruvkaGlobal {
    /// Final parts, after breaking by `final_cap`.
    pub partition: Partition,
    /// Every edge contracted at some level.
    pub contracted: BTreeSet<Edge>,
    /// Components after each level `0..=ℓ`, before the final breaking.
    pub levels: Vec<Partition>,
}

impl BoruvkaGlobal {
    /// The subgraph the local oracle answers YES on: contracted edges plus
    /// the lightest edge between every pair of adjacent final parts.
    pub fn kept_edges(&self, g: &Graph) -> BTreeSet<Edge> {
        let q = contract(g, &self.partition).expect("final parts are connected");
        let mut kept = self.contracted.clone();
        kept.extend(q.edges.values().map(|e| e.realized_by));
        kept
    }
}

/// Splits every group larger than `cap` along the forest edges it contains.
fn break_groups(groups: Vec<Vec<Vertex>>, forest: &mut BTreeSet<Edge>, cap: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::with_capacity(groups.len());
    for group in groups {
        if group.len() <= cap {
            out.push(group);
            continue;
        }
        let inside: BTreeSet<Vertex> = group.iter().copied().collect();
        let edges: Vec<Edge> = forest
            .iter()
            .filter(|e| inside.contains(&e.lo()) && inside.contains(&e.hi()))
            .copied()
            .collect();
        let pieces = break_component(&group, &edges, cap);
        let mut piece_of = std::collections::HashMap::new();
        for (i, p) in pieces.iter().enumerate() {
            for &v in p {
                piece_of.insert(v, i);
            }
        }
        for e in edges {
            if piece_of[&e.lo()] != piece_of[&e.hi()] {
                forest.remove(&e);
            }
        }
        out.extend(pieces);
    }
    out
}

/// Runs the randomized contraction on the whole graph.
pub fn boruvka_global(g: &Graph, cfg: &BoruvkaConfig) -> Result<BoruvkaGlobal> {
    let n = g.vertex_count();
    let mut comps = Partition::from_parts(n, (0..n).map(|v| vec![v]).collect())?;
    let mut levels = vec![comps.clone()];
    let mut contracted = BTreeSet::new();
    let mut forest = BTreeSet::new();
    for level in 1..=cfg.ell {
        let q = contract(g, &comps)?;
        let parts = comps.len();
        let mut lightest: Vec<Option<(QuotientEdge, usize)>> = vec![None; parts];
        for (&(a, b), &e) in &q.edges {
            for (p, other) in [(a, b), (b, a)] {
                let better = match lightest[p] {
                    None => true,
                    Some((cur, _)) => (e.weight, e.realized_by) < (cur.weight, cur.realized_by),
                };
                if better {
                    lightest[p] = Some((e, other));
                }
            }
        }
        let heads: Vec<bool> = comps
            .parts()
            .iter()
            .map(|p| coin_is_heads(cfg.seed, level, *p.last().unwrap()))
            .collect();
        let mut uf = UnionFind::new(parts);
        for p in 0..parts {
            if let Some((e, t)) = lightest[p] {
                if heads[p] && !heads[t] {
                    uf.union(p, t);
                    contracted.insert(e.realized_by);
                    forest.insert(e.realized_by);
                }
            }
        }
        let mut groups: Vec<Vec<Vertex>> = vec![Vec::new(); parts];
        for (p, members) in comps.parts().iter().enumerate() {
            groups[uf.find(p)].extend_from_slice(members);
        }
        groups.retain(|g| !g.is_empty());
        let groups = break_groups(groups, &mut forest, cfg.k_cap);
        comps = Partition::from_parts(n, groups)?;
        levels.push(comps.clone());
    }
    let finals = break_groups(comps.parts().to_vec(), &mut forest, cfg.final_cap);
    Ok(BoruvkaGlobal {
        partition: Partition::from_parts(n, finals)?,
        contracted,
        levels,
    })
}
