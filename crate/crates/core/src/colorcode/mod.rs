//! Color coding for Relaxed1N and Hard1N on digraphs, parameterized by the
//! number `b` of selected vertices.
//!
//! After every sink receives a zero-cost dummy out-neighbor, an optimal
//! selection can be described by choosing one selected out-neighbor for each
//! profitable vertex. The chosen edges split the selection into components,
//! each either a tree (its root pays nothing) or a single cycle with trees
//! hanging off it (everyone pays). A selection of at most `b` vertices uses
//! at most `b` edges, so under a coloring of the edges with `b` colors that
//! happens to make those edges distinctly colored, the selection is found by
//! guessing a color block per component and building colorful components
//! with a subset DP over color masks.

pub mod dp;
pub mod family;
pub mod partitions;
pub mod shapes;

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{NkError, Result};
use crate::instance::{Graph, Instance, Variant, VertexId, add_sink_dummies};
use crate::oracle::SolveResult;
use crate::pareto::{ParetoList, ProfitMode};

pub use dp::{ColorContext, ComponentTables, Embedding, MAX_VERTICES, VSet, colorful_dp, embed_shape};
pub use partitions::{ColorPartition, enumerate_partitions};
pub use shapes::{ShapeKind, TreeShape, enumerate_cyclic_shapes, enumerate_shapes};

/// A color in `1..=b` for every edge, indexed like [`Graph::edges`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    b: usize,
    colors: Vec<u8>,
}

impl EdgeColoring {
    pub fn new(b: usize, colors: Vec<u8>) -> Result<EdgeColoring> {
        if b == 0 || b > MAX_VERTICES || colors.iter().any(|&c| c == 0 || c as usize > b) {
            return Err(NkError::BadBudget(b));
        }
        Ok(EdgeColoring { b, colors })
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn color(&self, edge: usize) -> u8 {
        self.colors[edge]
    }
}

/// Independent uniform colors, reproducible from `seed`.
pub fn random_coloring(graph: &Graph, b: usize, seed: u64) -> EdgeColoring {
    random_coloring_stream(graph, b, seed, 0)
}

/// Trial `stream` of the generator seeded with `seed`.
pub fn random_coloring_stream(graph: &Graph, b: usize, seed: u64, stream: u64) -> EdgeColoring {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let colors = (0..graph.num_edges()).map(|_| rng.gen_range(1..=b as u8)).collect();
    EdgeColoring { b, colors }
}

/// A sink-augmented instance and the bookkeeping to map solutions back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CcInstance {
    pub instance: Instance,
    pub original_n: usize,
    pub dummies: usize,
}

pub fn preprocess_cc(inst: &Instance) -> Result<CcInstance> {
    if !inst.is_directed() {
        return Err(NkError::RequiresDirected("color coding"));
    }
    let (instance, _) = add_sink_dummies(inst)?;
    let original_n = inst.num_vertices();
    let dummies = instance.num_vertices() - original_n;
    Ok(CcInstance { instance, original_n, dummies })
}

/// Budget after preprocessing for a selection of `b_raw` original vertices:
/// each may need its own dummy, but there are only `dummies` of them.
pub fn effective_budget(b_raw: usize, dummies: usize) -> usize {
    b_raw + b_raw.min(dummies)
}

/// Left fold of [`ParetoList::combine`] with zero offsets.
pub fn merge_components(lists: &[ParetoList], s: u64) -> Result<ParetoList> {
    let mode = lists.first().map_or(ProfitMode::Optimization, ParetoList::mode);
    let mut acc = ParetoList::unit(s, mode);
    for l in lists {
        acc = acc.combine(l, 0, 0)?;
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetMode {
    /// Every coloring with `b` colors; refuses when `b^m` exceeds `limit`.
    Exhaustive { limit: u64 },
    Family,
}

/// Default cap on `b^m` for exhaustive mode.
pub const EXHAUSTIVE_LIMIT: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CcResult {
    /// Witnesses use original vertex ids.
    pub result: SolveResult,
    /// Vertex budget after preprocessing.
    pub budget: usize,
    pub dummies: usize,
    pub colorings_iterated: u64,
    /// Colorings actually evaluated. Exhaustive mode skips colorings that
    /// are a renaming of an earlier one.
    pub colorings_evaluated: u64,
    /// A selection (original ids) for every frontier pair, in order.
    pub frontier_witnesses: Vec<Vec<VertexId>>,
}

fn check_variant(variant: Variant) -> Result<bool> {
    match variant {
        Variant::Relaxed1N => Ok(false),
        Variant::Hard1N => Ok(true),
        _ => Err(NkError::UnsupportedVariant("color coding")),
    }
}

fn check_budget(b: usize) -> Result<()> {
    if !(2..=MAX_VERTICES).contains(&b) {
        return Err(NkError::BadBudget(b));
    }
    Ok(())
}

/// Single-component embeddings using exactly the colors of `mask`.
fn component(ctx: &ColorContext<'_>, tables: &mut ComponentTables<'_, '_>, mask: u32) -> Vec<Embedding> {
    let mut bits = mask;
    while bits != 0 {
        let c = bits.trailing_zeros() as u8 + 1;
        if !ctx.has_color(c) {
            return Vec::new();
        }
        bits &= bits - 1;
    }
    tables.components(mask)
}

/// Admissible partitions and the best embeddings found so far, for one budget.
struct Engine {
    cc: CcInstance,
    b: usize,
    hard: bool,
    partitions: Vec<Vec<u32>>,
    found: HashMap<VSet, (u64, u64)>,
}

impl Engine {
    fn new(inst: &Instance, variant: Variant, b: usize) -> Result<Engine> {
        let hard = check_variant(variant)?;
        check_budget(b)?;
        let cc = preprocess_cc(inst)?;
        let partitions = partitions::solver_partitions(b);
        Ok(Engine { cc, b, hard, partitions, found: HashMap::new() })
    }

    fn evaluate(&mut self, coloring: &EdgeColoring) {
        let inst = &self.cc.instance;
        let ctx = ColorContext::new(inst, coloring, self.b, self.hard);
        let mut tables = ComponentTables::new(&ctx);
        let mut comp: HashMap<u32, Vec<Embedding>> = HashMap::new();
        for blocks in &self.partitions {
            let mut acc: Option<Vec<Embedding>> = None;
            for &mask in blocks {
                comp.entry(mask).or_insert_with(|| {
                    
                    component(&ctx, &mut tables, mask)
                });
                let list = &comp[&mask];
                acc = Some(match acc {
                    None => list.clone(),
                    Some(prev) => product(&prev, list, ctx.cap, self.b),
                });
                if acc.as_ref().is_some_and(Vec::is_empty) {
                    break;
                }
            }
            for e in acc.unwrap_or_default() {
                let slot = self.found.entry(e.vertices).or_insert((e.weight, e.profit));
                slot.1 = slot.1.max(e.profit);
            }
        }
    }

    fn finish(self, iterated: u64, evaluated: u64) -> Result<CcResult> {
        let cap = self.cc.instance.knapsack();
        let original_n = self.cc.original_n;
        let to_original = |s: &VSet| -> Vec<VertexId> {
            s.as_slice().iter().map(|&v| v as VertexId).filter(|&v| v < original_n).collect()
        };
        let mut entries: Vec<(Vec<VertexId>, u64, u64)> =
            self.found.iter().map(|(s, &(w, p))| (to_original(s), w, p)).collect();
        entries.push((Vec::new(), 0, 0));
        // Best profit, then lightest, then lexicographically smallest.
        entries.sort_by(|a, b| b.2.cmp(&a.2).then(a.1.cmp(&b.1)).then(a.0.cmp(&b.0)));
        let frontier = ParetoList::from_pairs(cap, ProfitMode::Optimization, entries.iter().map(|e| (e.1, e.2)));
        let frontier_witnesses = frontier
            .pairs()
            .iter()
            .map(|&(w, p)| {
                entries
                    .iter()
                    .find(|e| e.1 == w && e.2 == p)
                    .map(|e| e.0.clone())
                    .expect("frontier pairs come from entries")
            })
            .collect();
        let witness = entries.first().map(|e| e.0.clone());
        Ok(CcResult {
            result: SolveResult::from_frontier(frontier, witness),
            budget: self.b,
            dummies: self.cc.dummies,
            colorings_iterated: iterated,
            colorings_evaluated: evaluated,
            frontier_witnesses,
        })
    }
}

/// Vertex-disjoint pairs of embeddings within the weight cap and vertex budget.
fn product(a: &[Embedding], b: &[Embedding], cap: u64, max_vertices: usize) -> Vec<Embedding> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            let weight = x.weight + y.weight;
            if weight > cap {
                continue;
            }
            if let Some(vertices) = x.vertices.disjoint_union(&y.vertices, max_vertices) {
                out.push(Embedding { vertices, weight, profit: x.profit + y.profit });
            }
        }
    }
    out
}

/// `trials` independent random colorings. Never over-reports; finds a fixed
/// optimal selection of at most `b` vertices with probability at least
/// `1 - (1 - e^-b)^trials`.
pub fn solve_randomized(inst: &Instance, variant: Variant, b: usize, trials: u64, seed: u64) -> Result<CcResult> {
    let mut engine = Engine::new(inst, variant, b)?;
    let g = engine.cc.instance.graph().clone();
    for t in 0..trials {
        engine.evaluate(&random_coloring_stream(&g, b, seed, t));
    }
    engine.finish(trials, trials)
}

/// Is `colors` the first of its class under renaming of colors? (Colors
/// appear in order of first use.)
fn is_canonical(colors: &[u8]) -> bool {
    let mut max = 0;
    for &c in colors {
        if c > max + 1 {
            return false;
        }
        max = max.max(c);
    }
    true
}

pub fn solve_deterministic(inst: &Instance, variant: Variant, b: usize, mode: DetMode) -> Result<CcResult> {
    let mut engine = Engine::new(inst, variant, b)?;
    let g = engine.cc.instance.graph().clone();
    let m = g.num_edges();
    match mode {
        DetMode::Exhaustive { limit } => {
            let total = (b as u64).checked_pow(m as u32).filter(|&t| t <= limit);
            let Some(total) = total else {
                return Err(NkError::ExhaustiveBudget { needed: format!("{b}^{m}"), limit });
            };
            let mut colors = vec![1u8; m];
            let mut evaluated = 0;
            for _ in 0..total {
                if is_canonical(&colors) {
                    engine.evaluate(&EdgeColoring { b, colors: colors.clone() });
                    evaluated += 1;
                }
                for c in colors.iter_mut().rev() {
                    if (*c as usize) < b {
                        *c += 1;
                        break;
                    }
                    *c = 1;
                }
            }
            engine.finish(total, evaluated)
        }
        DetMode::Family => {
            let family = family::coloring_family(m, b);
            let count = family.len() as u64;
            for colors in family {
                engine.evaluate(&EdgeColoring { b, colors });
            }
            engine.finish(count, count)
        }
    }
}

/// Uses `b = 2d`: reaching demand `d` under Relaxed1N never needs more than
/// `d` paying vertices plus one witness each. Exhaustive when affordable,
/// otherwise the coloring family.
pub fn solve_by_demand(inst: &Instance, variant: Variant) -> Result<CcResult> {
    let d = inst.demand();
    if d == 0 {
        check_variant(variant)?;
        let cc = preprocess_cc(inst)?;
        let unit = ParetoList::unit(inst.knapsack(), ProfitMode::Optimization);
        return Ok(CcResult {
            result: SolveResult::from_frontier(unit, Some(Vec::new())),
            budget: 0,
            dummies: cc.dummies,
            colorings_iterated: 0,
            colorings_evaluated: 0,
            frontier_witnesses: vec![Vec::new()],
        });
    }
    let b = usize::try_from(d.saturating_mul(2)).unwrap_or(usize::MAX);
    check_budget(b)?;
    let m = preprocess_cc(inst)?.instance.graph().num_edges();
    let affordable = (b as u64).checked_pow(m as u32).is_some_and(|t| t <= EXHAUSTIVE_LIMIT);
    let mode = if affordable { DetMode::Exhaustive { limit: EXHAUSTIVE_LIMIT } } else { DetMode::Family };
    solve_deterministic(inst, variant, b, mode)
}
