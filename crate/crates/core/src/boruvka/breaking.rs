use std::collections::{BTreeMap, VecDeque};

use crate::graph::{Edge, Vertex};

/// Splits a connected vertex set into connected pieces of at most `cap`
/// vertices.
///
/// The BFS tree over `edges` is rooted at the smallest vertex, each vertex
/// taking its smallest neighbor on the previous level as parent. Walking the
/// tree bottom-up, a vertex absorbs its children's open groups smallest
/// first while the total stays within `cap`; groups it cannot absorb are
/// emitted as pieces. Pieces come out sorted, ordered by smallest member.
/// The result depends only on the vertex set and the edges given.
pub fn break_component(vertices: &[Vertex], edges: &[Edge], cap: usize) -> Vec<Vec<Vertex>> {
    assert!(cap >= 1, "cap must be positive");
    let mut vs = vertices.to_vec();
    vs.sort_unstable();
    vs.dedup();
    if vs.len() <= cap {
        return if vs.is_empty() { Vec::new() } else { vec![vs] };
    }
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = vs.iter().map(|&v| (v, Vec::new())).collect();
    for e in edges {
        if adj.contains_key(&e.lo()) && adj.contains_key(&e.hi()) {
            adj.get_mut(&e.lo()).unwrap().push(e.hi());
            adj.get_mut(&e.hi()).unwrap().push(e.lo());
        }
    }
    for list in adj.values_mut() {
        list.sort_unstable();
        list.dedup();
    }

    let mut pieces = Vec::new();
    let mut placed: BTreeMap<Vertex, bool> = BTreeMap::new();
    // Every connected component of the given edges is broken separately.
    for &root in &vs {
        if placed.contains_key(&root) {
            continue;
        }
        let mut depth = BTreeMap::from([(root, 0usize)]);
        let mut order = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(w) = queue.pop_front() {
            for &u in &adj[&w] {
                if !depth.contains_key(&u) {
                    depth.insert(u, depth[&w] + 1);
                    order.push(u);
                    queue.push_back(u);
                }
            }
        }
        let mut children: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for &w in &order[1..] {
            let dw = depth[&w];
            let parent = adj[&w]
                .iter()
                .copied()
                .find(|u| depth.get(u) == Some(&(dw - 1)))
                .expect("non-root BFS vertices have a parent");
            children.entry(parent).or_default().push(w);
        }
        let mut open: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for &w in order.iter().rev() {
            let mut groups: Vec<Vec<Vertex>> = children
                .get(&w)
                .map(|cs| cs.iter().map(|c| open.remove(c).expect("children close first")).collect())
                .unwrap_or_default();
            groups.sort_by_key(|g| (g.len(), g[0]));
            let mut mine = vec![w];
            for g in groups {
                if mine.len() + g.len() <= cap {
                    mine.extend(g);
                } else {
                    pieces.push(g);
                }
            }
            open.insert(w, mine);
        }
        pieces.push(open.remove(&root).expect("root group"));
        for &w in &order {
            placed.insert(w, true);
        }
    }
    for p in &mut pieces {
        p.sort_unstable();
    }
    pieces.sort_unstable_by_key(|p| p[0]);
    pieces
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_edges(n: usize) -> Vec<Edge> {
        (1..n).map(|i| Edge::new(i - 1, i)).collect()
    }

    #[test]
    fn small_sets_are_untouched() {
        assert_eq!(break_component(&[3, 1, 2], &path_edges(4), 3), vec![vec![1, 2, 3]]);
    }

    #[test]
    fn path_groups_from_the_leaves() {
        let p = break_component(&[0, 1, 2, 3, 4], &path_edges(5), 2);
        assert_eq!(p, vec![vec![0], vec![1, 2], vec![3, 4]]);
        let p = break_component(&[0, 1, 2, 3, 4, 5], &path_edges(6), 2);
        assert_eq!(p, vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
    }

    #[test]
    fn star_keeps_the_hub_with_the_smallest_leaves() {
        let edges: Vec<Edge> = (1..=6).map(|l| Edge::new(0, l)).collect();
        let p = break_component(&[0, 1, 2, 3, 4, 5, 6], &edges, 3);
        assert_eq!(p, vec![vec![0, 1, 2], vec![3], vec![4], vec![5], vec![6]]);
    }

    #[test]
    fn pieces_are_capped_and_cover() {
        // 4x4 grid.
        let mut edges = Vec::new();
        for r in 0..4 {
            for c in 0..4 {
                let v = r * 4 + c;
                if c < 3 {
                    edges.push(Edge::new(v, v + 1));
                }
                if r < 3 {
                    edges.push(Edge::new(v, v + 4));
                }
            }
        }
        let all: Vec<Vertex> = (0..16).collect();
        for cap in 1..=16 {
            let p = break_component(&all, &edges, cap);
            assert!(p.iter().all(|q| q.len() <= cap));
            let mut c = p.concat();
            c.sort_unstable();
            assert_eq!(c, all);
        }
    }
}
