use std::collections::HashMap;

use super::access::{CountingAccess, Explorer, IncidenceSource};
use super::{Edge, Vertex};
use crate::error::Result;

/// The radius-`k` neighborhood of a vertex and the subgraph it induces.
#[derive(Debug, Clone)]
pub struct Ball {
    pub center: Vertex,
    pub radius: usize,
    /// Members in BFS order (nondecreasing distance).
    pub members: Vec<Vertex>,
    pub dist: HashMap<Vertex, usize>,
    /// Induced edges in rank order. Loops and parallel copies reported by a
    /// multigraph source are collapsed.
    pub edges: Vec<Edge>,
}

impl Ball {
    pub fn contains(&self, v: Vertex) -> bool {
        self.dist.contains_key(&v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl<S: IncidenceSource> Explorer<'_, S> {
    /// Exact BFS ball of radius `k` around `v`, including induced edges.
    pub fn ball(&mut self, v: Vertex, k: usize) -> Result<Ball> {
        let dist = self.bfs_distances(v, k, |_, _| false)?;
        let mut members: Vec<Vertex> = dist.keys().copied().collect();
        members.sort_unstable_by_key(|&u| (dist[&u], u));
        let mut edges = Vec::new();
        for &u in &members {
            for p in self.list(u)?.iter() {
                if p.vertex > u && dist.contains_key(&p.vertex) {
                    edges.push(Edge::new(u, p.vertex));
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Ball {
            center: v,
            radius: k,
            members,
            dist,
            edges,
        })
    }
}

/// Computes `Γ_k(v)` and the subgraph it induces in a fresh episode.
pub fn bfs_ball<S: IncidenceSource>(
    access: &mut CountingAccess<S>,
    v: Vertex,
    k: usize,
) -> Result<Ball> {
    Explorer::new(access).ball(v, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn grid(rows: usize, cols: usize) -> Graph {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Graph::unweighted(rows * cols, 4, &edges).unwrap()
    }

    #[test]
    fn radius_one_on_path() {
        let g = Graph::unweighted(5, 2, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let mut acc = CountingAccess::new(&g);
        let b = bfs_ball(&mut acc, 2, 1).unwrap();
        let mut m = b.members.clone();
        m.sort();
        assert_eq!(m, vec![1, 2, 3]);
        assert_eq!(b.edges, vec![Edge::new(1, 2), Edge::new(2, 3)]);
    }

    #[test]
    fn radius_zero_is_the_center() {
        let g = grid(3, 3);
        let mut acc = CountingAccess::new(&g);
        let b = bfs_ball(&mut acc, 4, 0).unwrap();
        assert_eq!(b.members, vec![4]);
        assert!(b.edges.is_empty());
        assert_eq!(b.dist[&4], 0);
    }

    #[test]
    fn grid_center_radius_two_covers_everything() {
        // Corners sit at distance 2 from the middle of a 3x3 grid.
        let g = grid(3, 3);
        let mut acc = CountingAccess::new(&g);
        let b = bfs_ball(&mut acc, 4, 2).unwrap();
        assert_eq!(b.len(), 9);
        assert_eq!(b.edges.len(), 12);
        assert_eq!(b.dist[&0], 2);
        assert_eq!(b.dist[&1], 1);
        let d = g.degree_bound() as u64;
        assert!(acc.queries() <= d * 9 + 9);
    }
}
