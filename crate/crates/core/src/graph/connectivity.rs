use super::{Edge, Vertex};

/// Disjoint-set union with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; `false` if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.components -= 1;
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn components(&self) -> usize {
        self.components
    }
}

/// `true` iff `edges` connect all `n` vertices into one component.
pub fn is_connected<'a>(n: usize, edges: impl IntoIterator<Item = &'a Edge>) -> bool {
    if n == 0 {
        return true;
    }
    let mut uf = UnionFind::new(n);
    for e in edges {
        uf.union(e.lo(), e.hi());
    }
    uf.components() == 1
}

/// Components of the graph on `vertices` formed by `edges`, each sorted,
/// ordered by smallest member.
pub(crate) fn components_of(n: usize, edges: &[Edge]) -> Vec<Vec<Vertex>> {
    let mut uf = UnionFind::new(n);
    for e in edges {
        uf.union(e.lo(), e.hi());
    }
    let mut by_root: std::collections::HashMap<usize, Vec<Vertex>> = Default::default();
    for v in 0..n {
        let r = uf.find(v);
        by_root.entry(r).or_default().push(v);
    }
    let mut comps: Vec<Vec<Vertex>> = by_root.into_values().collect();
    comps.sort_unstable_by_key(|c| c[0]);
    comps
}
