use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::rc::Rc;

use super::{Graph, Probe, Vertex};
use crate::error::{Error, Result};

/// Anything that answers incidence-list queries: a stored graph or a lazily
/// generated one.
pub trait IncidenceSource {
    fn vertex_count(&self) -> usize;
    fn degree_bound(&self) -> usize;
    /// The `i`-th (1-based) neighbor of `v`, if any. Callers validate inputs.
    fn probe(&mut self, v: Vertex, i: usize) -> Option<Probe>;
}

impl IncidenceSource for &Graph {
    fn vertex_count(&self) -> usize {
        Graph::vertex_count(self)
    }

    fn degree_bound(&self) -> usize {
        Graph::degree_bound(self)
    }

    fn probe(&mut self, v: Vertex, i: usize) -> Option<Probe> {
        self.neighbors(v).get(i - 1).copied()
    }
}

impl<S: IncidenceSource + ?Sized> IncidenceSource for &mut S {
    fn vertex_count(&self) -> usize {
        (**self).vertex_count()
    }

    fn degree_bound(&self) -> usize {
        (**self).degree_bound()
    }

    fn probe(&mut self, v: Vertex, i: usize) -> Option<Probe> {
        (**self).probe(v, i)
    }
}

/// Counts every incidence query forwarded to the wrapped source.
///
/// One instance belongs to one logical query episode at a time; the counter
/// is read and reset by whoever owns the episode.
#[derive(Debug)]
pub struct CountingAccess<S> {
    source: S,
    queries: u64,
}

impl<S: IncidenceSource> CountingAccess<S> {
    pub fn new(source: S) -> Self {
        CountingAccess { source, queries: 0 }
    }

    pub fn vertex_count(&self) -> usize {
        self.source.vertex_count()
    }

    pub fn degree_bound(&self) -> usize {
        self.source.degree_bound()
    }

    /// Queries issued since construction or the last reset.
    pub fn queries(&self) -> u64 {
        self.queries
    }

    /// Resets the counter, returning its previous value.
    pub fn reset(&mut self) -> u64 {
        std::mem::take(&mut self.queries)
    }

    pub fn source(&self) -> &S {
        &self.source
    }

    pub fn into_source(self) -> S {
        self.source
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        let n = self.vertex_count();
        if v >= n {
            return Err(Error::usage(format!("vertex {v} outside 0..{n}")));
        }
        Ok(())
    }

    /// The `i`-th neighbor of `v` (1-based), or `None` past the end of the list.
    pub fn neighbor(&mut self, v: Vertex, i: usize) -> Result<Option<Probe>> {
        self.check_vertex(v)?;
        let d = self.degree_bound();
        if i == 0 || i > d {
            return Err(Error::usage(format!("index {i} outside 1..={d}")));
        }
        self.queries += 1;
        Ok(self.source.probe(v, i))
    }

    /// Reads the whole incidence list of `v` with `d` queries.
    pub fn incidence_list(&mut self, v: Vertex) -> Result<Vec<Probe>> {
        let d = self.degree_bound();
        let mut out = Vec::with_capacity(d);
        for i in 1..=d {
            if let Some(p) = self.neighbor(v, i)? {
                out.push(p);
            }
        }
        Ok(out)
    }
}

/// Episode-local view over a [`CountingAccess`]: each incidence list is
/// fetched at most once per episode, then served from memory.
pub struct Explorer<'a, S> {
    access: &'a mut CountingAccess<S>,
    lists: HashMap<Vertex, Rc<[Probe]>>,
}

impl<'a, S: IncidenceSource> Explorer<'a, S> {
    pub fn new(access: &'a mut CountingAccess<S>) -> Self {
        Explorer {
            access,
            lists: HashMap::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.access.vertex_count()
    }

    pub fn degree_bound(&self) -> usize {
        self.access.degree_bound()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        self.access.check_vertex(v)
    }

    pub fn list(&mut self, v: Vertex) -> Result<Rc<[Probe]>> {
        match self.lists.entry(v) {
            Entry::Occupied(e) => Ok(Rc::clone(e.get())),
            Entry::Vacant(e) => {
                let list: Rc<[Probe]> = self.access.incidence_list(v)?.into();
                Ok(Rc::clone(e.insert(list)))
            }
        }
    }

    /// Already fetched list, without issuing queries.
    pub fn known_list(&self, v: Vertex) -> Option<Rc<[Probe]>> {
        self.lists.get(&v).cloned()
    }

    /// Fails unless `y` appears in `x`'s incidence list.
    pub fn require_edge(&mut self, x: Vertex, y: Vertex) -> Result<()> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if self.list(x)?.iter().any(|p| p.vertex == y) {
            Ok(())
        } else {
            Err(Error::usage(format!("({x},{y}) is not an edge")))
        }
    }

    /// Level-synchronous BFS from `v` up to depth `max_depth`.
    ///
    /// After each completed level `stop(level, depth)` may end the search
    /// early. Only vertices strictly inside the final depth have their lists
    /// fetched. Returns hop distances of every discovered vertex.
    pub fn bfs_distances(
        &mut self,
        v: Vertex,
        max_depth: usize,
        mut stop: impl FnMut(&[Vertex], usize) -> bool,
    ) -> Result<HashMap<Vertex, usize>> {
        self.check_vertex(v)?;
        let mut dist = HashMap::from([(v, 0)]);
        let mut level = vec![v];
        let mut depth = 0;
        while !level.is_empty() && !stop(&level, depth) && depth < max_depth {
            let mut next = Vec::new();
            for &u in &level {
                for p in self.list(u)?.iter() {
                    if let Entry::Vacant(e) = dist.entry(p.vertex) {
                        e.insert(depth + 1);
                        next.push(p.vertex);
                    }
                }
            }
            level = next;
            depth += 1;
        }
        Ok(dist)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::unweighted(3, 2, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn neighbor_examples() {
        let g = path3();
        let mut acc = CountingAccess::new(&g);
        assert_eq!(acc.neighbor(1, 1).unwrap().unwrap().vertex, 0);
        assert_eq!(acc.neighbor(1, 2).unwrap().unwrap().vertex, 2);
        assert!(acc.neighbor(0, 2).unwrap().is_none());
        assert_eq!(acc.queries(), 3);
    }

    #[test]
    fn isolated_vertex_has_no_neighbors() {
        let g = Graph::unweighted(2, 1, &[]).unwrap();
        let mut acc = CountingAccess::new(&g);
        assert!(acc.neighbor(1, 1).unwrap().is_none());
    }

    #[test]
    fn counter_increments_per_call() {
        let g = Graph::unweighted(4, 2, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let mut acc = CountingAccess::new(&g);
        assert_eq!(acc.queries(), 0);
        let a = acc.neighbor(0, 1).unwrap();
        let b = acc.neighbor(0, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(acc.queries(), 2);
        assert_eq!(acc.reset(), 2);
        assert_eq!(acc.queries(), 0);
    }

    #[test]
    fn invalid_inputs_are_usage_errors() {
        let g = path3();
        let mut acc = CountingAccess::new(&g);
        assert!(matches!(acc.neighbor(3, 1), Err(Error::Usage(_))));
        assert!(matches!(acc.neighbor(0, 0), Err(Error::Usage(_))));
        assert!(matches!(acc.neighbor(0, 3), Err(Error::Usage(_))));
        assert_eq!(acc.queries(), 0);
    }

    #[test]
    fn weights_are_returned_with_neighbors() {
        let g = Graph::weighted(2, 1, &[(0, 1, 7)]).unwrap();
        let mut acc = CountingAccess::new(&g);
        let p = acc.neighbor(1, 1).unwrap().unwrap();
        assert_eq!(p.weight, super::super::Weight::from_int(7));
    }

    #[test]
    fn explorer_fetches_each_list_once() {
        let g = path3();
        let mut acc = CountingAccess::new(&g);
        let mut ex = Explorer::new(&mut acc);
        ex.list(1).unwrap();
        ex.list(1).unwrap();
        drop(ex);
        assert_eq!(acc.queries(), 2);
    }
}
