//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use lssg_core::boruvka::{boruvka_global, boruvka_local_component, exact_mst, BoruvkaConfig};
use lssg_core::centers::{centers_edge_query, centers_global_reference, estimate_k_centers, CentersConfig};
use lssg_core::generators::{gen_graph, Family, LazyRegularOracle};
use lssg_core::harness::{
    distinguishing_experiment, run_verification, scaling_study, Algorithm, BfsStrategy, Params, VerificationReport,
};
use lssg_core::kruskal::{hyperfinite_witness, kruskal_edge_query, KruskalConfig};
use lssg_core::partition::{partition_validate, reduction_edge_query, reference_partition_oracle, ReferencePartitionOracle};
use lssg_core::{is_connected, CountingAccess, Edge, Graph, Result};

const EPS: f64 = 0.5;
const DELTA: f64 = 0.1;
const SEEDS: u64 = 50;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn params(k: Option<usize>) -> Params {
    Params {
        epsilon: EPS,
        delta: DELTA,
        k,
        permutations: 0,
        ..Params::default()
    }
}

/// Runs over all seeds, one fresh graph per seed.
fn runs(family: Family, alg: Algorithm, p: &Params) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for seed in 0..SEEDS {
        let g = gen_graph(family, seed)?;
        out.extend(run_verification(&g, &family.to_string(), alg, p, &[seed])?);
    }
    Ok(out)
}

/// Verification runs reused by several criteria.
struct Shared {
    regular_centers: Vec<VerificationReport>,
    weighted_boruvka: Vec<VerificationReport>,
}

const REGULAR: Family = Family::Regular { n: 2000, d: 8 };
const WEIGHTED: Family = Family::WeightedGrid {
    rows: 20,
    cols: 20,
    max_weight: 10,
};

fn criterion1(shared: &mut Shared) -> Result<Outcome> {
    let small = [
        Family::Path { n: 100 },
        Family::Cycle { n: 100 },
        Family::Grid { rows: 20, cols: 20 },
    ];
    let mut total = 0;
    let mut connected = 0;
    let mut failures = Vec::new();
    let mut tally = |reports: &[VerificationReport]| {
        for r in reports {
            total += 1;
            if r.connected {
                connected += 1;
            } else {
                failures.push(format!("{}/{}/{}", r.algorithm, r.graph, r.seed));
            }
        }
    };
    for family in small {
        for alg in Algorithm::ALL {
            tally(&runs(family, alg, &params(None))?);
        }
    }
    shared.regular_centers = runs(REGULAR, Algorithm::Centers, &params(None))?;
    tally(&shared.regular_centers);
    tally(&runs(REGULAR, Algorithm::Kruskal, &params(Some(2)))?);
    tally(&runs(REGULAR, Algorithm::Reduction, &params(Some(64)))?);
    tally(&runs(REGULAR, Algorithm::Boruvka, &params(None))?);
    shared.weighted_boruvka = runs(WEIGHTED, Algorithm::Boruvka, &params(None))?;
    tally(&shared.weighted_boruvka);
    Ok(outcome(
        connected == total && total >= 250,
        format!("connectivity {connected}/{total} runs; failures {failures:?}"),
    ))
}

fn criterion2(shared: &Shared) -> Result<Outcome> {
    let n = REGULAR.vertex_count() as f64;
    let sparse = shared
        .regular_centers
        .iter()
        .filter(|r| r.edge_count as f64 <= 1.5 * n)
        .count();
    let worst = shared.regular_centers.iter().map(|r| r.edge_count).max().unwrap_or(0);
    let mut kruskal_ok = 0;
    let mut kruskal_total = 0;
    let mut kruskal_detail = Vec::new();
    for side in [10, 20, 50] {
        let g = gen_graph(Family::Grid { rows: side, cols: side }, 0)?;
        let reports = run_verification(&g, "grid", Algorithm::Kruskal, &params(None), &[0, 1, 2])?;
        for r in reports {
            kruskal_total += 1;
            if r.edge_count as f64 <= r.sparsity_bound {
                kruskal_ok += 1;
            }
            kruskal_detail.push(format!("n={} |E'|={}", side * side, r.edge_count));
        }
    }
    Ok(outcome(
        sparse >= 45 && kruskal_ok == kruskal_total,
        format!(
            "centers |E'| <= 1.5n in {sparse}/{} seeds (max {worst}); kruskal {kruskal_ok}/{kruskal_total} [{}]",
            shared.regular_centers.len(),
            kruskal_detail.join(", ")
        ),
    ))
}

fn criterion3() -> Result<Outcome> {
    let p = |k| Params {
        permutations: 5,
        ..params(k)
    };
    let grid = gen_graph(Family::Grid { rows: 20, cols: 20 }, 0)?;
    let regular = gen_graph(Family::Regular { n: 500, d: 8 }, 3)?;
    let weighted = gen_graph(WEIGHTED, 3)?;
    let mut checked = 0;
    let mut consistent = 0;
    let mut cases: Vec<(&Graph, Algorithm, Params)> = Vec::new();
    for alg in Algorithm::ALL {
        cases.push((&grid, alg, p(None)));
    }
    cases.push((&regular, Algorithm::Centers, p(None)));
    cases.push((&regular, Algorithm::Kruskal, p(Some(2))));
    cases.push((&regular, Algorithm::Reduction, p(Some(64))));
    cases.push((&regular, Algorithm::Boruvka, p(None)));
    cases.push((&weighted, Algorithm::Boruvka, p(None)));
    cases.push((
        &weighted,
        Algorithm::Boruvka,
        Params {
            shared_cache: true,
            ..p(None)
        },
    ));
    for (g, alg, params) in cases {
        for r in run_verification(g, "", alg, &params, &[7])? {
            checked += 1;
            if r.consistent == Some(true) {
                consistent += 1;
            }
        }
    }
    Ok(outcome(
        consistent == checked,
        format!("identical YES sets over 5 permuted orders in {consistent}/{checked} runs"),
    ))
}

fn criterion4() -> Result<Outcome> {
    let mut pairs = 0;
    let mut agree = 0;
    for seed in 0..20u64 {
        let family = if seed % 2 == 0 {
            Family::Regular { n: 400, d: 4 }
        } else {
            Family::Grid { rows: 20, cols: 20 }
        };
        let g = gen_graph(family, seed)?;
        let n = g.vertex_count();
        let k = estimate_k_centers(&mut CountingAccess::new(&g), n, g.degree_bound(), EPS, DELTA, seed)?;
        let cfg = CentersConfig::new(n, EPS, DELTA, k, seed)?;
        let reference = centers_global_reference(&g, &cfg);
        let mut access = CountingAccess::new(&g);
        let mut local = BTreeSet::new();
        for e in g.edge_list() {
            if centers_edge_query(&mut access, &cfg, e.lo(), e.hi())? {
                local.insert(e);
            }
        }
        pairs += 1;
        agree += usize::from(local == reference);
    }
    let mut graphs = 0;
    let mut equal = 0;
    for seed in 0..10u64 {
        let side = if seed % 2 == 0 { 20 } else { 15 };
        let g = gen_graph(
            Family::WeightedGrid {
                rows: side,
                cols: side,
                max_weight: 10,
            },
            seed,
        )?;
        let cfg = BoruvkaConfig::for_graph(&g, EPS, seed)?;
        let global = boruvka_global(&g, &cfg)?;
        let last = &global.levels[cfg.ell];
        let mut access = CountingAccess::new(&g);
        let mut same = true;
        for v in 0..g.vertex_count() {
            same &= boruvka_local_component(&mut access, &cfg, v, cfg.ell)? == last.part_of(v);
        }
        graphs += 1;
        equal += usize::from(same);
    }
    Ok(outcome(
        agree == pairs && equal == graphs,
        format!("centers local = global on {agree}/{pairs} pairs; boruvka level-ell components equal on {equal}/{graphs} graphs"),
    ))
}

fn criterion5(shared: &Shared) -> Result<Outcome> {
    let mut pure = 0;
    for seed in 0..SEEDS {
        let g = gen_graph(WEIGHTED, seed)?;
        let mst: BTreeSet<Edge> = exact_mst(&g)?.0.into_iter().collect();
        let global = boruvka_global(&g, &BoruvkaConfig::for_graph(&g, EPS, seed)?)?;
        pure += usize::from(global.contracted.is_subset(&mst));
    }
    let light = shared
        .weighted_boruvka
        .iter()
        .filter(|r| r.total_weight.unwrap() <= (1.0 + EPS) * r.mst_weight.unwrap())
        .count();
    let worst = shared
        .weighted_boruvka
        .iter()
        .map(|r| r.total_weight.unwrap() / r.mst_weight.unwrap())
        .fold(0.0, f64::max);
    Ok(outcome(
        pure == SEEDS as usize && light >= 45,
        format!("contracted within MST {pure}/{SEEDS}; weight <= (1+eps)*MST {light}/{SEEDS} (worst ratio {worst:.3})"),
    ))
}

fn criterion6() -> Result<Outcome> {
    let centers = scaling_study(
        Family::Regular { n: 2000, d: 8 },
        &[2000, 8000, 32000],
        Algorithm::Centers,
        &params(None),
        &[0, 1],
        Some(200),
    )?;
    let kruskal = scaling_study(
        Family::Grid { rows: 50, cols: 50 },
        &[2500, 10000, 40000],
        Algorithm::Kruskal,
        &params(Some(3)),
        &[0],
        Some(500),
    )?;
    let mut instrumented = 0;
    let mut within = 0;
    for seed in 0..3u64 {
        let g = gen_graph(
            Family::WeightedGrid {
                rows: 10,
                cols: 10,
                max_weight: 10,
            },
            seed,
        )?;
        let default = BoruvkaConfig::for_graph(&g, EPS, seed)?;
        let mut tight = default;
        tight.k_cap = 4;
        tight.final_cap = 4;
        for cfg in [default, tight] {
            for level in 1..=cfg.ell {
                for v in 0..g.vertex_count() {
                    let mut access = CountingAccess::new(&g);
                    boruvka_local_component(&mut access, &cfg, v, level)?;
                    instrumented += 1;
                    within += usize::from(u128::from(access.queries()) <= cfg.query_bound(level));
                }
            }
        }
    }
    let c_ok = (0.35..=0.65).contains(&centers.slope);
    let k_ok = (-0.1..=0.1).contains(&kruskal.slope);
    let avg = |r: &lssg_core::harness::ScalingReport| {
        r.rows.iter().map(|x| format!("{}:{:.1}", x.n, x.avg_queries)).collect::<Vec<_>>().join(" ")
    };
    Ok(outcome(
        c_ok && k_ok && within == instrumented,
        format!(
            "centers slope {:.3} [{}]; kruskal slope {:.3} [{}]; boruvka within Q bound {within}/{instrumented}",
            centers.slope,
            avg(&centers),
            kruskal.slope,
            avg(&kruskal)
        ),
    ))
}

fn criterion7() -> Result<Outcome> {
    let mut runs = 0;
    let mut overhead_ok = 0;
    let mut validated = 0;
    let mut sparse_ok = 0;
    let mut worst = 0.0f64;
    let cases: Vec<(Family, Option<usize>)> = vec![
        (Family::Grid { rows: 20, cols: 20 }, None),
        (Family::Grid { rows: 20, cols: 20 }, Some(25)),
        (Family::Grid { rows: 30, cols: 30 }, None),
        (Family::Path { n: 200 }, None),
        (Family::Path { n: 200 }, Some(10)),
        (Family::Cycle { n: 150 }, None),
        (Family::Regular { n: 300, d: 3 }, None),
        (Family::Regular { n: 300, d: 3 }, Some(40)),
    ];
    for (family, k_bound) in cases {
        for seed in 0..3u64 {
            let g = gen_graph(family, seed)?;
            let k = k_bound.unwrap_or_else(|| hyperfinite_witness(&g, EPS).max_component_size.max(1));
            let po: ReferencePartitionOracle = reference_partition_oracle(&g, EPS, k)?;
            let d = g.degree_bound() as f64;
            let mut access = CountingAccess::new(&g);
            let mut kept = Vec::new();
            let mut max_extra = 0u64;
            for e in g.edge_list() {
                access.reset();
                let a = reduction_edge_query(&mut access, &po, e.lo(), e.hi())?;
                max_extra = max_extra.max(a.extra_queries);
                if a.keep {
                    kept.push(e);
                }
            }
            runs += 1;
            let bound = 2.0 * k as f64 * d;
            worst = worst.max(max_extra as f64 / bound);
            overhead_ok += usize::from(max_extra as f64 <= bound);
            if partition_validate(&g, &po.partition, EPS, k)?.passes() {
                validated += 1;
                let n = g.vertex_count() as f64;
                sparse_ok += usize::from(kept.len() as f64 <= (1.0 + EPS) * n && is_connected(g.vertex_count(), &kept));
            }
        }
    }
    Ok(outcome(
        overhead_ok == runs && sparse_ok == validated,
        format!(
            "extra queries <= 2kd in {overhead_ok}/{runs} runs (max ratio {worst:.3}); sparse when valid {sparse_ok}/{validated}"
        ),
    ))
}

fn criterion8() -> Result<Outcome> {
    let (n, d) = (1000, 3);
    let mut yes = [0usize; 2];
    for seed in 0..200u64 {
        let v0 = (seed as usize * 7919) % n;
        let v1 = (v0 + 1 + seed as usize % (n - 1)) % n;
        let mut lazy = LazyRegularOracle::minus(n, d, v0, v1, seed)?;
        let cfg = CentersConfig::new(n, EPS, DELTA, 2, seed)?;
        yes[0] += usize::from(centers_edge_query(&mut CountingAccess::new(&mut lazy), &cfg, v0, v1)?);
        let mut lazy = LazyRegularOracle::minus(n, d, v0, v1, seed)?;
        let kcfg = KruskalConfig::new(2)?;
        yes[1] += usize::from(kruskal_edge_query(&mut CountingAccess::new(&mut lazy), &kcfg, v0, v1)?);
    }
    let n = 4900;
    let r = ((n as f64).sqrt() / 7.0).floor() as usize;
    let rep = distinguishing_experiment(n, 3, r, 10_000, 2024, &BfsStrategy)?;
    let coll_ok = rep.collision_rate_plus <= rep.collision_bound + 3.0 * rep.collision_se_plus
        && rep.collision_rate_minus <= rep.collision_bound + 3.0 * rep.collision_se_minus;
    let adv_ok = rep.advantage <= 1.0 / 3.0 + rep.ci_half_width;
    Ok(outcome(
        yes == [200, 200] && coll_ok && adv_ok,
        format!(
            "bridge kept by centers {}/200, kruskal {}/200; collisions +{:.4} -{:.4} vs bound {:.4}; advantage {:.4} (ci {:.4})",
            yes[0], yes[1], rep.collision_rate_plus, rep.collision_rate_minus, rep.collision_bound, rep.advantage, rep.ci_half_width
        ),
    ))
}

fn main() -> ExitCode {
    let mut shared = Shared {
        regular_centers: Vec::new(),
        weighted_boruvka: Vec::new(),
    };
    let mut results: Vec<(usize, &str, Result<Outcome>, f64)> = Vec::new();
    let mut timed = |id: usize, name: &'static str, f: &mut dyn FnMut() -> Result<Outcome>| {
        let t = Instant::now();
        let r = f();
        results.push((id, name, r, t.elapsed().as_secs_f64()));
    };
    timed(1, "connectivity", &mut || criterion1(&mut shared));
    timed(2, "sparsity", &mut || criterion2(&shared));
    timed(3, "consistency", &mut criterion3);
    timed(4, "oracle equals global", &mut criterion4);
    timed(5, "mst purity", &mut || criterion5(&shared));
    timed(6, "query complexity", &mut criterion6);
    timed(7, "reduction overhead", &mut criterion7);
    timed(8, "lower-bound harness", &mut criterion8);
    let mut all = true;
    for (id, name, r, secs) in results {
        let (pass, detail) = match r {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        all &= pass;
        println!(
            "criterion {id} ({name}): {} [{secs:.1}s] {detail}",
            if pass { "PASS" } else { "FAIL" }
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
