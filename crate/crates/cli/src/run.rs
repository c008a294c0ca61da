//! Algorithm dispatch shared by `solve`, `compare` and `bench`.

use std::fmt;

use clap::ValueEnum;
use nk_core::approx::{solve_uniform_directed_additive1, solve_uniform_undirected};
use nk_core::colorcode::{
    CcResult, DetMode, EXHAUSTIVE_LIMIT, effective_budget, preprocess_cc, solve_by_demand, solve_deterministic,
    solve_randomized,
};
use nk_core::dp_tw::{TwOptions, solve_treewidth_with};
use nk_core::instance::normalize_self_loops;
use nk_core::oracle::{BruteOptions, brute_force_with};
use nk_core::toolkit::gen_random;
use nk_core::treedecomp::{TreeDecomposition, heuristic_td};
use nk_core::{Graph, Instance, NkError, ProfitMode, Result, SolveResult, Variant, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{Value, json};

/// Instances up to this size go to brute force under `auto`.
const AUTO_BRUTE_MAX: usize = 18;
/// Largest heuristic width `auto` hands to the treewidth DP.
const AUTO_WIDTH_MAX: usize = 12;
const MAX_TRIALS: u64 = 1_000_000;
/// Largest color-coding budget, counted in augmented vertices.
/// Raw color-coding budget used by `compare`.
const COMPARE_CC_BUDGET: usize = 3;
/// Default raw color-coding budget: solutions with up to this many vertices.
const DEFAULT_CC_BUDGET: usize = 4;
/// Brute force guard used by `compare`.
const COMPARE_BRUTE_MAX: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Auto,
    Brute,
    Twdp,
    CcRand,
    CcDet,
    Approx,
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    pub decision: bool,
    pub seed: u64,
    pub trials: Option<u64>,
    /// Color-coding budget in original vertices.
    pub budget: Option<usize>,
    pub td: Option<TreeDecomposition>,
}

/// Outcome of one solver run.
#[derive(Clone, Debug)]
pub struct Run {
    pub algo: Algo,
    /// Whether `profit` is the optimum (clamped at the demand in decision
    /// mode) rather than a lower bound.
    pub exact: bool,
    pub profit: u64,
    pub weight: u64,
    pub witness: Option<Vec<VertexId>>,
    pub frontier: Vec<(u64, u64)>,
    /// Decomposition width or color budget.
    pub param: Option<usize>,
    /// How far below the optimum a bound may lie.
    pub gap_allowed: u64,
    pub details: Value,
}

impl Run {
    fn new(algo: Algo, exact: bool, r: &SolveResult, n: usize) -> Run {
        Run {
            algo,
            exact,
            profit: r.best_profit,
            weight: r.best_weight,
            witness: r.witness.as_ref().map(|w| w.iter().copied().filter(|&v| v < n).collect()),
            frontier: r.frontier.pairs().to_vec(),
            param: None,
            gap_allowed: if exact { 0 } else { u64::MAX },
            details: json!({}),
        }
    }

    pub fn to_json(&self, variant: Variant) -> Value {
        json!({
            "algo": self.algo.to_string(),
            "variant": variant.tag(),
            "exact": self.exact,
            "profit": self.profit,
            "weight": self.weight,
            "witness": self.witness,
            "frontier": self.frontier,
            "param": self.param,
            "details": self.details,
        })
    }
}

fn mode(inst: &Instance, opts: &SolveOptions) -> ProfitMode {
    if opts.decision { ProfitMode::Decision { demand: inst.demand() } } else { ProfitMode::Optimization }
}

/// Picks an algorithm for `auto`.
pub fn choose(inst: &Instance, variant: Variant) -> Algo {
    let g = inst.graph();
    let loops = g.has_self_loops();
    if variant == Variant::Relaxed1N && inst.is_uniform() && !g.is_directed() && !loops {
        return Algo::Approx;
    }
    if inst.num_vertices() <= AUTO_BRUTE_MAX {
        return Algo::Brute;
    }
    let norm = normalize_self_loops(inst, variant);
    if heuristic_td(norm.graph()).width() <= AUTO_WIDTH_MAX {
        return Algo::Twdp;
    }
    if variant == Variant::Relaxed1N && inst.is_uniform() && !loops {
        return Algo::Approx;
    }
    if variant.is_one_neighbor() {
        let b = cc_budget(&norm, None).ok();
        let m = as_digraph(&norm).ok().and_then(|d| preprocess_cc(&d).ok()).map(|cc| cc.instance.graph().num_edges());
        if let (Some(b), Some(m)) = (b, m) {
            let exhaustive = (b as u64).checked_pow(m as u32).is_some_and(|t| t <= EXHAUSTIVE_LIMIT);
            return if exhaustive { Algo::CcDet } else { Algo::CcRand };
        }
    }
    Algo::Twdp
}

/// The symmetric digraph of an undirected instance, which has the same
/// neighborhoods.
fn as_digraph(inst: &Instance) -> Result<Instance> {
    if inst.is_directed() {
        return Ok(inst.clone());
    }
    let arcs = inst.graph().edges().iter().flat_map(|&(u, v)| [(u, v), (v, u)]);
    let g = Graph::new(true, inst.num_vertices(), arcs)?;
    Ok(Instance::new(g, inst.weights().to_vec(), inst.profits().to_vec(), inst.knapsack(), inst.demand())?
        .with_meta(inst.meta()))
}

/// Augmented budget for a raw budget, or the largest one that fits.
fn cc_budget(inst: &Instance, raw: Option<usize>) -> Result<usize> {
    let dummies = preprocess_cc(&as_digraph(inst)?)?.dummies;
    match raw {
        Some(raw) => Ok(effective_budget(raw, dummies)),
        None => Ok(effective_budget(DEFAULT_CC_BUDGET.min(inst.num_vertices()), dummies).max(2)),
    }
}

fn cc_run(algo: Algo, inst: &Instance, norm: &Instance, cc: CcResult, exact: bool, n: usize) -> Run {
    let mut run = Run::new(algo, exact, &cc.result, n);
    run.param = Some(cc.budget);
    run.details = json!({
        "budget": cc.budget,
        "dummies": cc.dummies,
        "colorings_iterated": cc.colorings_iterated,
        "colorings_evaluated": cc.colorings_evaluated,
        "normalized_vertices": norm.num_vertices(),
        "demand": inst.demand(),
    });
    run
}

fn clamp(inst: &Instance, mut run: Run, opts: &SolveOptions) -> Run {
    if opts.decision {
        run.profit = run.profit.min(inst.demand());
    }
    run
}

pub fn solve(inst: &Instance, variant: Variant, algo: Algo, opts: &SolveOptions) -> Result<Run> {
    let n = inst.num_vertices();
    let algo = if algo == Algo::Auto { choose(inst, variant) } else { algo };
    let run = match algo {
        Algo::Auto => unreachable!("resolved above"),
        Algo::Brute => {
            let bo = BruteOptions { mode: mode(inst, opts), ..Default::default() };
            Run::new(algo, true, &brute_force_with(inst, variant, &bo)?, n)
        }
        Algo::Twdp => {
            let norm = normalize_self_loops(inst, variant);
            let tw = TwOptions { mode: mode(inst, opts), ..Default::default() };
            let (r, stats) = solve_treewidth_with(&norm, variant, opts.td.as_ref(), &tw)?;
            let mut run = Run::new(algo, true, &r, n);
            run.param = Some(stats.width);
            run.details = json!({ "width": stats.width, "passes": stats.passes, "max_list_len": stats.max_list_len });
            run
        }
        Algo::CcRand | Algo::CcDet => {
            let norm = as_digraph(&normalize_self_loops(inst, variant))?;
            let aug = preprocess_cc(&norm)?;
            let aug_n = aug.instance.num_vertices();
            if algo == Algo::CcDet && opts.decision && opts.budget.is_none() && variant == Variant::Relaxed1N {
                let cc = solve_by_demand(&norm, variant)?;
                return Ok(clamp(inst, cc_run(algo, inst, &norm, cc, true, n), opts));
            }
            let b = cc_budget(&norm, opts.budget)?;
            let m = aug.instance.graph().num_edges();
            if algo == Algo::CcDet {
                let exhaustive = (b as u64).checked_pow(m as u32).is_some_and(|t| t <= EXHAUSTIVE_LIMIT);
                let mode = if exhaustive { DetMode::Exhaustive { limit: EXHAUSTIVE_LIMIT } } else { DetMode::Family };
                let cc = solve_deterministic(&norm, variant, b, mode)?;
                let exact = exhaustive && b >= aug_n;
                cc_run(algo, inst, &norm, cc, exact, n)
            } else {
                let e_b = (b as f64).exp().ceil() as u64;
                let trials = opts.trials.unwrap_or(e_b.min(MAX_TRIALS));
                let cc = solve_randomized(&norm, variant, b, trials, opts.seed)?;
                let mut run = cc_run(algo, inst, &norm, cc, false, n);
                run.details["trials"] = json!(trials);
                run
            }
        }
        Algo::Approx => {
            if variant != Variant::Relaxed1N {
                return Err(NkError::UnsupportedVariant("approx"));
            }
            if inst.graph().has_self_loops() {
                return Err(NkError::SelfLoops);
            }
            if inst.is_directed() {
                let a = solve_uniform_directed_additive1(inst)?;
                let mut run = Run::new(algo, a.gap == Some(0), &a.result, n);
                run.gap_allowed = 1;
                run.details = json!({ "guarantee": "additive-1", "gap": a.gap });
                run
            } else {
                let mut run = Run::new(algo, true, &solve_uniform_undirected(inst)?, n);
                run.details = json!({ "guarantee": "exact" });
                run
            }
        }
    };
    Ok(clamp(inst, run, opts))
}

/// Every algorithm that applies to the instance, with its outcome.
pub fn compare(inst: &Instance, variant: Variant, seed: u64) -> Vec<(Algo, Result<Run>)> {
    let opts = SolveOptions { seed, budget: Some(COMPARE_CC_BUDGET), ..Default::default() };
    let mut algos = Vec::new();
    if inst.num_vertices() <= COMPARE_BRUTE_MAX {
        algos.push(Algo::Brute);
    }
    algos.push(Algo::Twdp);
    if variant.is_one_neighbor() {
        algos.extend([Algo::CcDet, Algo::CcRand]);
    }
    if variant == Variant::Relaxed1N && inst.is_uniform() && !inst.graph().has_self_loops() {
        algos.push(Algo::Approx);
    }
    algos
        .into_iter()
        .map(|a| {
            let mut r = solve(inst, variant, a, &opts);
            // A directed additive-one run that happens to be optimal is
            // still only guaranteed to be within one.
            if let Ok(run) = &mut r {
                if a == Algo::Approx && inst.is_directed() {
                    run.exact = false;
                }
            }
            (a, r)
        })
        .collect()
}

/// Describes the first conflict: two exact values that differ, or a bound
/// above the optimum or further below it than allowed. Failed runs are
/// ignored.
pub fn disagreement(runs: &[(Algo, Result<Run>)]) -> Option<String> {
    let ok: Vec<&Run> = runs.iter().filter_map(|(_, r)| r.as_ref().ok()).collect();
    let first = ok.iter().find(|r| r.exact)?;
    let opt = first.profit;
    ok.iter().find_map(|r| {
        let bad = if r.exact { r.profit != opt } else { r.profit > opt || r.profit.saturating_add(r.gap_allowed) < opt };
        bad.then(|| format!("{} found {}, {} found {opt}", r.algo, r.profit, first.algo))
    })
}

pub struct BenchCase {
    pub name: String,
    pub instance: Instance,
    pub variant: Variant,
    pub algos: Vec<Algo>,
}

fn random_tree(n: usize, seed: u64) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    let g = Graph::new(false, n, edges)?;
    let w = (0..n).map(|_| rng.gen_range(1..=6)).collect();
    let p = (0..n).map(|_| rng.gen_range(0..=6)).collect();
    Instance::new(g, w, p, 200, 200)
}

pub fn bench_suite(name: &str, seed: u64) -> Result<Vec<BenchCase>> {
    let mut cases = Vec::new();
    match name {
        "tiny" => {
            for i in 0..8u64 {
                let directed = i % 2 == 1;
                let inst = gen_random(10, 0.3, 6, 6, 15, 0, directed, seed + i)?;
                let mut algos = vec![Algo::Brute, Algo::Twdp];
                if directed {
                    algos.extend([Algo::CcDet, Algo::CcRand]);
                }
                cases.push(BenchCase { name: format!("tiny-{i}"), instance: inst, variant: Variant::Relaxed1N, algos });
            }
        }
        "trees" => {
            for (i, variant) in Variant::ALL.into_iter().enumerate() {
                let inst = random_tree(200, seed + i as u64)?;
                cases.push(BenchCase { name: format!("tree-{}", variant.tag()), instance: inst, variant, algos: vec![Algo::Twdp] });
            }
        }
        "uniform" => {
            for (i, n) in [1_000usize, 10_000, 100_000].into_iter().enumerate() {
                let inst = random_tree(n, seed + i as u64)?;
                let uniform = Instance::new(inst.graph().clone(), vec![1; n], vec![1; n], n as u64 / 2, 0)?;
                cases.push(BenchCase {
                    name: format!("uniform-forest-{n}"),
                    instance: uniform,
                    variant: Variant::Relaxed1N,
                    algos: vec![Algo::Approx],
                });
            }
        }
        other => return Err(NkError::Generator(format!("unknown bench suite `{other}` (expected tiny, trees or uniform)"))),
    }
    Ok(cases)
}
