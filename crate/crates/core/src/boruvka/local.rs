use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use super::config::BoruvkaConfig;
use super::{break_component, coin_is_heads};
use crate::error::{Error, Result};
use crate::graph::{CountingAccess, Edge, Explorer, IncidenceSource, Vertex, Weight};
use crate::oracle::SpanningOracle;
use crate::partition::PartitionOracle;

/// A component at some level together with the contracted edges spanning it.
#[derive(Debug)]
struct Comp {
    members: Vec<Vertex>,
    forest: Vec<Edge>,
}

impl Comp {
    fn singleton(v: Vertex) -> Self {
        Comp {
            members: vec![v],
            forest: Vec::new(),
        }
    }

    fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    fn max(&self) -> Vertex {
        *self.members.last().unwrap()
    }
}

/// Lightest edge leaving a component: `(weight, edge, outside endpoint)`.
type Leaving = Option<(Weight, Edge, Vertex)>;

type Memo = HashMap<(usize, Vertex), Arc<Comp>>;

/// Cross-episode cache of resolved components. Only valid for one graph.
#[derive(Debug, Default)]
pub struct SharedCache(Mutex<Memo>);

struct Sim<'x, 'a, S> {
    ex: &'x mut Explorer<'a, S>,
    cfg: &'x BoruvkaConfig,
    memo: Memo,
    leaving: HashMap<(usize, Vertex), Leaving>,
    shared: Option<&'x SharedCache>,
}

impl<'x, 'a, S: IncidenceSource> Sim<'x, 'a, S> {
    fn new(ex: &'x mut Explorer<'a, S>, cfg: &'x BoruvkaConfig, shared: Option<&'x SharedCache>) -> Self {
        Sim {
            ex,
            cfg,
            memo: HashMap::new(),
            leaving: HashMap::new(),
            shared,
        }
    }

    fn lookup(&mut self, key: (usize, Vertex)) -> Option<Arc<Comp>> {
        if let Some(c) = self.memo.get(&key) {
            return Some(Arc::clone(c));
        }
        let c = Arc::clone(self.shared?.0.lock().unwrap().get(&key)?);
        self.memo.insert(key, Arc::clone(&c));
        Some(c)
    }

    fn store(&mut self, level: usize, comp: Arc<Comp>) {
        let mut shared = self.shared.map(|s| s.0.lock().unwrap());
        for &m in &comp.members {
            self.memo.insert((level, m), Arc::clone(&comp));
            if let Some(s) = shared.as_mut() {
                s.insert((level, m), Arc::clone(&comp));
            }
        }
    }

    /// Stores `members` as one component or, above `cap`, as the pieces of
    /// breaking it along `forest`.
    fn store_broken(&mut self, level: usize, members: Vec<Vertex>, forest: Vec<Edge>, cap: usize) {
        if members.len() <= cap {
            self.store(level, Arc::new(Comp { members, forest }));
            return;
        }
        for piece in break_component(&members, &forest, cap) {
            let inside = |v: Vertex| piece.binary_search(&v).is_ok();
            let forest = forest.iter().filter(|e| inside(e.lo()) && inside(e.hi())).copied().collect();
            self.store(level, Arc::new(Comp { members: piece, forest }));
        }
    }

    fn heads(&self, level: usize, c: &Comp) -> bool {
        coin_is_heads(self.cfg.seed, level, c.max())
    }

    /// Lightest edge leaving `c`, a component of `level`.
    fn leaving(&mut self, level: usize, c: &Comp) -> Result<Leaving> {
        if let Some(&l) = self.leaving.get(&(level, c.max())) {
            return Ok(l);
        }
        let mut best: Leaving = None;
        for &a in &c.members {
            for p in self.ex.list(a)?.iter() {
                if c.contains(p.vertex) {
                    continue;
                }
                let cand = (p.weight, Edge::new(a, p.vertex), p.vertex);
                if best.is_none_or(|b| (cand.0, cand.1) < (b.0, b.1)) {
                    best = Some(cand);
                }
            }
        }
        self.leaving.insert((level, c.max()), best);
        Ok(best)
    }

    /// The level-`level` component of `v`.
    fn resolve(&mut self, level: usize, v: Vertex) -> Result<Arc<Comp>> {
        if level == 0 {
            return Ok(Arc::new(Comp::singleton(v)));
        }
        if let Some(c) = self.lookup((level, v)) {
            return Ok(c);
        }
        let c = self.resolve(level - 1, v)?;
        let center = if !self.heads(level, &c) {
            Some(Arc::clone(&c))
        } else {
            match self.leaving(level - 1, &c)? {
                None => None,
                Some((_, _, b)) => {
                    let d = self.resolve(level - 1, b)?;
                    (!self.heads(level, &d)).then_some(d)
                }
            }
        };
        let Some(t) = center else {
            self.store(level, c);
            return Ok(self.lookup((level, v)).unwrap());
        };
        let mut members = t.members.clone();
        let mut forest = t.forest.clone();
        let mut joined = BTreeSet::new();
        for &a in &t.members {
            let list = self.ex.list(a)?;
            for p in list.iter() {
                if t.contains(p.vertex) {
                    continue;
                }
                let h = self.resolve(level - 1, p.vertex)?;
                if !self.heads(level, &h) || joined.contains(&h.max()) {
                    continue;
                }
                if let Some((_, e, out)) = self.leaving(level - 1, &h)? {
                    if t.contains(out) {
                        joined.insert(h.max());
                        members.extend_from_slice(&h.members);
                        forest.extend_from_slice(&h.forest);
                        forest.push(e);
                    }
                }
            }
        }
        members.sort_unstable();
        forest.sort_unstable();
        self.store_broken(level, members, forest, self.cfg.k_cap);
        Ok(self.lookup((level, v)).unwrap())
    }

    /// The final part of `v`.
    fn part(&mut self, v: Vertex) -> Result<Arc<Comp>> {
        let key = (self.cfg.ell + 1, v);
        if let Some(c) = self.lookup(key) {
            return Ok(c);
        }
        let c = self.resolve(self.cfg.ell, v)?;
        self.store_broken(key.0, c.members.clone(), c.forest.clone(), self.cfg.final_cap);
        Ok(self.lookup(key).unwrap())
    }

    /// Whether `(u, v)` was contracted at any level.
    fn was_contracted(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        let e = Edge::new(u, v);
        for level in 1..=self.cfg.ell {
            let cu = self.resolve(level - 1, u)?;
            if cu.contains(v) {
                continue;
            }
            let cv = self.resolve(level - 1, v)?;
            for (h, t) in [(&cu, &cv), (&cv, &cu)] {
                if self.heads(level, h) && !self.heads(level, t) {
                    if let Some((_, l, _)) = self.leaving(level - 1, h)? {
                        if l == e {
                            return Ok(true);
                        }
                    }
                }
            }
        }
        Ok(false)
    }
}

fn check_level(cfg: &BoruvkaConfig, level: usize) -> Result<()> {
    if level > cfg.ell {
        return Err(Error::usage(format!("level {level} exceeds ell = {}", cfg.ell)));
    }
    Ok(())
}

/// Component `C^level(v)` computed locally, sorted.
pub fn boruvka_local_component<S: IncidenceSource>(
    access: &mut CountingAccess<S>,
    cfg: &BoruvkaConfig,
    v: Vertex,
    level: usize,
) -> Result<Vec<Vertex>> {
    check_level(cfg, level)?;
    access.check_vertex(v)?;
    let mut ex = Explorer::new(access);
    let mut sim = Sim::new(&mut ex, cfg, None);
    Ok(sim.resolve(level, v)?.members.clone())
}

/// Final part of `v` computed locally, sorted.
pub fn boruvka_local_part<S: IncidenceSource>(
    access: &mut CountingAccess<S>,
    cfg: &BoruvkaConfig,
    v: Vertex,
) -> Result<Vec<Vertex>> {
    access.check_vertex(v)?;
    let mut ex = Explorer::new(access);
    let mut sim = Sim::new(&mut ex, cfg, None);
    Ok(sim.part(v)?.members.clone())
}

/// Decides whether `(u, v)` belongs to the light spanning subgraph.
///
/// Inside one final part: YES iff the edge was contracted at some level.
/// Across parts: YES iff it is the lightest edge between the two parts.
pub fn mwsg_edge_query<S: IncidenceSource>(
    access: &mut CountingAccess<S>,
    cfg: &BoruvkaConfig,
    u: Vertex,
    v: Vertex,
) -> Result<bool> {
    edge_query(access, cfg, None, u, v)
}

fn edge_query<S: IncidenceSource>(
    access: &mut CountingAccess<S>,
    cfg: &BoruvkaConfig,
    shared: Option<&SharedCache>,
    u: Vertex,
    v: Vertex,
) -> Result<bool> {
    let mut ex = Explorer::new(access);
    ex.require_edge(u, v)?;
    let mut sim = Sim::new(&mut ex, cfg, shared);
    let pu = sim.part(u)?;
    if pu.contains(v) {
        return sim.was_contracted(u, v);
    }
    let pv = sim.part(v)?;
    let mut best: Option<(Weight, Edge)> = None;
    for &a in &pu.members {
        for p in sim.ex.list(a)?.iter() {
            if pv.contains(p.vertex) {
                let cand = (p.weight, Edge::new(a, p.vertex));
                if best.is_none_or(|b| cand < b) {
                    best = Some(cand);
                }
            }
        }
    }
    Ok(best.map(|b| b.1) == Some(Edge::new(u, v)))
}

/// Local light-spanning-subgraph oracle built on randomized contraction.
#[derive(Debug)]
pub struct BoruvkaOracle {
    pub cfg: BoruvkaConfig,
    shared: Option<SharedCache>,
}

impl BoruvkaOracle {
    pub fn new(cfg: BoruvkaConfig) -> Self {
        BoruvkaOracle { cfg, shared: None }
    }

    /// Reuses resolved components across queries. Answers are unchanged but
    /// query counts no longer reflect a single episode. Use with one graph
    /// only.
    pub fn with_shared_cache(cfg: BoruvkaConfig) -> Self {
        BoruvkaOracle {
            cfg,
            shared: Some(SharedCache::default()),
        }
    }
}

impl SpanningOracle for BoruvkaOracle {
    fn name(&self) -> &'static str {
        "boruvka"
    }

    fn query<S: IncidenceSource>(&self, access: &mut CountingAccess<S>, x: Vertex, y: Vertex) -> Result<bool> {
        edge_query(access, &self.cfg, self.shared.as_ref(), x, y)
    }
}

impl PartitionOracle for BoruvkaOracle {
    fn part<S: IncidenceSource>(&self, access: &mut CountingAccess<S>, v: Vertex) -> Result<Vec<Vertex>> {
        access.check_vertex(v)?;
        let mut ex = Explorer::new(access);
        let mut sim = Sim::new(&mut ex, &self.cfg, self.shared.as_ref());
        Ok(sim.part(v)?.members.clone())
    }
}
