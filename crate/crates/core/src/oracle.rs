//! Reference semantics on explicit vertex subsets and an exhaustive solver.
//!
//! Everything here is deliberately simple; the other solvers are tested
//! against it.

use crate::error::{NkError, Result};
use crate::instance::{Instance, Variant, VertexId};
use crate::pareto::{ParetoList, ProfitMode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub selected: Vec<VertexId>,
    pub profitable: Vec<VertexId>,
    pub weight: u64,
    /// Profit over the profitable vertices. For a hard-feasible selection
    /// this is also the profit over the whole selection.
    pub profit: u64,
    pub hard_feasible: bool,
}

/// Result of a solver run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    /// Best profit among feasible selections (at least zero: the empty
    /// selection is always feasible). Clamped at the demand in decision mode.
    pub best_profit: u64,
    /// Lightest weight achieving `best_profit`.
    pub best_weight: u64,
    /// A selection achieving the optimum, when the solver tracks one.
    pub witness: Option<Vec<VertexId>>,
    pub frontier: ParetoList,
}

impl SolveResult {
    pub fn from_frontier(frontier: ParetoList, witness: Option<Vec<VertexId>>) -> SolveResult {
        let (best_weight, best_profit) = frontier.best().unwrap_or((0, 0));
        SolveResult { best_profit, best_weight, witness, frontier }
    }

    /// Does the optimum meet `demand`?
    pub fn meets(&self, demand: u64) -> bool {
        self.best_profit >= demand
    }
}

fn sorted_selection(inst: &Instance, s: &[VertexId]) -> Result<Vec<VertexId>> {
    for &v in s {
        inst.check_vertex(v)?;
    }
    let mut sel = s.to_vec();
    sel.sort_unstable();
    sel.dedup();
    Ok(sel)
}

fn membership(n: usize, sel: &[VertexId]) -> Vec<bool> {
    let mut member = vec![false; n];
    for &v in sel {
        member[v] = true;
    }
    member
}

/// Selected vertices that satisfy the variant's neighborhood rule.
pub fn profitable_set(inst: &Instance, variant: Variant, s: &[VertexId]) -> Result<Vec<VertexId>> {
    let sel = sorted_selection(inst, s)?;
    let member = membership(inst.num_vertices(), &sel);
    Ok(profitable_sorted(inst, variant, &sel, &member))
}

fn profitable_sorted(
    inst: &Instance,
    variant: Variant,
    sel: &[VertexId],
    member: &[bool],
) -> Vec<VertexId> {
    let g = inst.graph();
    sel.iter()
        .copied()
        .filter(|&v| {
            let nbrs = g.neighbors(v);
            if variant.is_one_neighbor() {
                nbrs.is_empty() || nbrs.iter().any(|&u| member[u])
            } else {
                nbrs.iter().all(|&u| member[u])
            }
        })
        .collect()
}

fn checked_sum(values: &[u64], mut of: impl Iterator<Item = VertexId>, what: &'static str) -> Result<u64> {
    of.try_fold(0u64, |acc, v| acc.checked_add(values[v]).ok_or(NkError::Overflow(what)))
}

pub fn evaluate(inst: &Instance, variant: Variant, s: &[VertexId]) -> Result<Evaluation> {
    let selected = sorted_selection(inst, s)?;
    let member = membership(inst.num_vertices(), &selected);
    let profitable = profitable_sorted(inst, variant, &selected, &member);
    let weight = checked_sum(inst.weights(), selected.iter().copied(), "weight")?;
    let profit = checked_sum(inst.profits(), profitable.iter().copied(), "profit")?;
    let hard_feasible = profitable.len() == selected.len();
    Ok(Evaluation { selected, profitable, weight, profit, hard_feasible })
}

/// Is `s` a yes-certificate: within budget, meeting demand, and hard-feasible
/// for hard variants?
pub fn decide(inst: &Instance, variant: Variant, s: &[VertexId]) -> Result<bool> {
    let e = evaluate(inst, variant, s)?;
    Ok((!variant.is_hard() || e.hard_feasible)
        && e.weight <= inst.knapsack()
        && e.profit >= inst.demand())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteOptions {
    /// Largest vertex count the enumeration accepts.
    pub guard: usize,
    pub mode: ProfitMode,
    /// Only consider selections with at most this many vertices.
    pub max_vertices: Option<usize>,
}

impl Default for BruteOptions {
    fn default() -> Self {
        BruteOptions { guard: 25, mode: ProfitMode::Optimization, max_vertices: None }
    }
}

/// Exhaustive optimum with default options.
pub fn brute_force(inst: &Instance, variant: Variant) -> Result<SolveResult> {
    brute_force_with(inst, variant, &BruteOptions::default())
}

/// Enumerates all `2^n` selections.
///
/// Among optimal selections the witness has the smallest weight, then the
/// lexicographically smallest sorted vertex list.
pub fn brute_force_with(inst: &Instance, variant: Variant, opts: &BruteOptions) -> Result<SolveResult> {
    let n = inst.num_vertices();
    let guard = opts.guard.min(63);
    if n > guard {
        return Err(NkError::TooLarge { n, guard });
    }
    checked_sum(inst.weights(), 0..n, "weight")?;
    checked_sum(inst.profits(), 0..n, "profit")?;
    let g = inst.graph();
    let nbr: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect();
    let one = variant.is_one_neighbor();
    let cap = inst.knapsack();
    let mut frontier = ParetoList::new(cap, opts.mode);
    let mut best: Option<(u64, u64, u64)> = None; // (profit, weight, mask)

    for mask in 0u64..(1u64 << n) {
        if opts.max_vertices.is_some_and(|k| mask.count_ones() as usize > k) {
            continue;
        }
        let mut weight = 0u64;
        let mut profit = 0u64;
        let mut feasible = true;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            weight += inst.weight(v);
            let ok = if one {
                nbr[v] == 0 || nbr[v] & mask != 0
            } else {
                nbr[v] & !mask == 0
            };
            if ok {
                profit += inst.profit(v);
            } else if variant.is_hard() {
                feasible = false;
                break;
            }
        }
        if !feasible || weight > cap {
            continue;
        }
        frontier.insert(weight, profit);
        let profit = opts.mode.clamp(profit);
        let better = match best {
            None => true,
            Some((bp, bw, bm)) => {
                profit > bp
                    || (profit == bp && weight < bw)
                    || (profit == bp && weight == bw && lex_less(mask, bm))
            }
        };
        if better {
            best = Some((profit, weight, mask));
        }
    }
    let witness = best.map(|(_, _, mask)| mask_to_vec(mask));
    Ok(SolveResult::from_frontier(frontier, witness))
}

fn mask_to_vec(mask: u64) -> Vec<VertexId> {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Lexicographic order of the sorted vertex lists encoded by two masks.
fn lex_less(a: u64, b: u64) -> bool {
    mask_to_vec(a) < mask_to_vec(b)
}
