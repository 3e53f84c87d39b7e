use std::fmt;
use std::str::FromStr;

use crate::boruvka::{BoruvkaConfig, BoruvkaOracle, DEFAULT_C2, DEFAULT_C_ITER};
use crate::centers::{estimate_k_centers, CentersConfig, CentersOracle};
use crate::error::{Error, Result};
use crate::graph::{CountingAccess, Graph, IncidenceSource, Vertex};
use crate::kruskal::{estimate_k_kruskal, hyperfinite_witness, KruskalConfig, KruskalOracle};
use crate::oracle::SpanningOracle;
use crate::partition::{reference_partition_oracle, ReductionOracle, ReferencePartitionOracle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Centers,
    Kruskal,
    Reduction,
    Boruvka,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Centers, Algorithm::Kruskal, Algorithm::Reduction, Algorithm::Boruvka];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Centers => "centers",
            Algorithm::Kruskal => "kruskal",
            Algorithm::Reduction => "reduction",
            Algorithm::Boruvka => "boruvka",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::usage(format!("unknown algorithm `{s}`")))
    }
}

/// Oracle parameters shared by the experiments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub epsilon: f64,
    pub delta: f64,
    /// Radius (centers, kruskal) or part-size bound (reduction). Estimated
    /// from the graph when absent. Ignored by boruvka.
    pub k: Option<usize>,
    /// Permuted query orders checked for consistency; 0 skips the check.
    pub permutations: usize,
    /// Lets boruvka reuse components across queries.
    pub shared_cache: bool,
    /// Boruvka level-count constant.
    pub c_iter: f64,
    /// Boruvka component-size constant.
    pub c2: f64,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            epsilon: 0.5,
            delta: 0.1,
            k: None,
            permutations: 5,
            shared_cache: false,
            c_iter: DEFAULT_C_ITER,
            c2: DEFAULT_C2,
        }
    }
}

impl Params {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return Err(Error::usage(format!("epsilon must lie in (0,1], got {}", self.epsilon)));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::usage(format!("delta must lie in (0,1), got {}", self.delta)));
        }
        if self.k == Some(0) {
            return Err(Error::usage("k must be at least 1"));
        }
        Ok(())
    }
}

/// One of the four spanning oracles, built for a specific graph and seed.
#[derive(Debug)]
pub enum AnyOracle {
    Centers(CentersOracle),
    Kruskal(KruskalOracle),
    Reduction(ReductionOracle<ReferencePartitionOracle>),
    Boruvka(BoruvkaOracle),
}

impl AnyOracle {
    /// The radius or part-size bound in use, when the oracle has one.
    pub fn k(&self) -> Option<usize> {
        match self {
            AnyOracle::Centers(o) => Some(o.cfg.k),
            AnyOracle::Kruskal(o) => Some(o.cfg.k),
            AnyOracle::Reduction(o) => Some(o.partition_oracle.report.max_part_size),
            AnyOracle::Boruvka(_) => None,
        }
    }
}

impl SpanningOracle for AnyOracle {
    fn name(&self) -> &'static str {
        match self {
            AnyOracle::Centers(o) => o.name(),
            AnyOracle::Kruskal(o) => o.name(),
            AnyOracle::Reduction(o) => o.name(),
            AnyOracle::Boruvka(o) => o.name(),
        }
    }

    fn query<S: IncidenceSource>(&self, access: &mut CountingAccess<S>, x: Vertex, y: Vertex) -> Result<bool> {
        match self {
            AnyOracle::Centers(o) => o.query(access, x, y),
            AnyOracle::Kruskal(o) => o.query(access, x, y),
            AnyOracle::Reduction(o) => o.query(access, x, y),
            AnyOracle::Boruvka(o) => o.query(access, x, y),
        }
    }
}

/// Builds `alg` for `g`, estimating `k` with `seed` when it is not given.
pub fn build_oracle(g: &Graph, alg: Algorithm, params: &Params, seed: u64) -> Result<AnyOracle> {
    params.validate()?;
    let (n, d) = (g.vertex_count(), g.degree_bound());
    let (eps, delta) = (params.epsilon, params.delta);
    Ok(match alg {
        Algorithm::Centers => {
            let k = match params.k {
                Some(k) => k,
                None => estimate_k_centers(&mut CountingAccess::new(g), n, d, eps, delta, seed)?,
            };
            AnyOracle::Centers(CentersOracle::new(CentersConfig::new(n, eps, delta, k, seed)?))
        }
        Algorithm::Kruskal => {
            let k = match params.k {
                Some(k) => k,
                None => estimate_k_kruskal(&mut CountingAccess::new(g), n, d, eps, delta, seed)?,
            };
            AnyOracle::Kruskal(KruskalOracle::new(KruskalConfig::new(k)?))
        }
        Algorithm::Reduction => {
            let k_bound = match params.k {
                Some(k) => k,
                None => hyperfinite_witness(g, eps).max_component_size.max(1),
            };
            AnyOracle::Reduction(ReductionOracle {
                partition_oracle: reference_partition_oracle(g, eps, k_bound)?,
            })
        }
        Algorithm::Boruvka => {
            let cfg = BoruvkaConfig::for_graph(g, eps, seed)?.with_constants(params.c_iter, params.c2)?;
            AnyOracle::Boruvka(if params.shared_cache {
                BoruvkaOracle::with_shared_cache(cfg)
            } else {
                BoruvkaOracle::new(cfg)
            })
        }
    })
}
