//! Dynamic programming over a nice tree decomposition.
//!
//! A state at node `t` is a pair of bitmasks `(S, P)` over the node's sorted
//! bag: `S` is the selected part of the bag and `P ⊆ S` the selected bag
//! vertices whose neighborhood condition is currently realized. Under the
//! 1-Neighborhood rule that means "has a selected out-neighbor among the
//! vertices seen so far (or no out-neighbors at all)". Under the
//! All-Neighborhood rule it means "no out-neighbor seen so far is
//! unselected". Each state carries a [`ParetoList`] of `(weight, profit)`
//! pairs for the partial solutions below `t`.
//!
//! Weight is charged when a vertex is introduced. Profit is charged only when
//! a vertex is forgotten, because only then is its neighborhood complete.
//! Hard variants drop a state as soon as an unsatisfied selected vertex is
//! forgotten.

use std::collections::BTreeMap;

use crate::error::{NkError, Result};
use crate::instance::{Instance, Variant, VertexId};
use crate::oracle::SolveResult;
use crate::pareto::{ParetoList, ProfitMode};
use crate::treedecomp::{
    NiceKind, NiceTreeDecomposition, TreeDecomposition, build_nice, heuristic_td, make_nice, validate_td,
};

/// Largest bag the bitmask states can index.
pub const MAX_BAG: usize = 63;

type Mask = u64;

/// How root states are turned into solutions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GuessMode {
    /// One pass; every remaining bag vertex is forgotten at the root.
    #[default]
    Single,
    /// One pass per vertex `v`, with `v` pinned into every bag and required
    /// in the solution. Vertices below `v` are kept out of the pass for `v`,
    /// so each nonempty solution is found exactly once, at its smallest
    /// vertex. The empty solution is added separately.
    EveryVertex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwOptions {
    pub mode: ProfitMode,
    pub guess: GuessMode,
}

impl Default for TwOptions {
    fn default() -> Self {
        TwOptions { mode: ProfitMode::Optimization, guess: GuessMode::Single }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TwStats {
    pub width: usize,
    pub passes: usize,
    /// Longest Pareto list stored in any cell.
    pub max_list_len: usize,
}

/// Read-only inputs shared by the node operations of one pass.
pub struct DpContext<'a> {
    pub inst: &'a Instance,
    pub variant: Variant,
    pub mode: ProfitMode,
    /// Vertices that may not be selected in this pass.
    pub excluded: Vec<bool>,
}

impl<'a> DpContext<'a> {
    pub fn new(inst: &'a Instance, variant: Variant, mode: ProfitMode) -> DpContext<'a> {
        DpContext { inst, variant, mode, excluded: vec![false; inst.num_vertices()] }
    }

    fn cap(&self) -> u64 {
        self.inst.knapsack()
    }

    fn empty_list(&self) -> ParetoList {
        ParetoList::new(self.cap(), self.mode)
    }
}

/// States of one node: cells keyed by `(S, P)`. Absent keys are infeasible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpTable {
    pub bag: Vec<VertexId>,
    pub cells: BTreeMap<(Mask, Mask), ParetoList>,
}

impl DpTable {
    fn new(bag: Vec<VertexId>) -> DpTable {
        DpTable { bag, cells: BTreeMap::new() }
    }

    fn add(&mut self, key: (Mask, Mask), list: ParetoList) -> Result<()> {
        if list.is_empty() {
            return Ok(());
        }
        match self.cells.get_mut(&key) {
            Some(existing) => existing.absorb(&list),
            None => {
                self.cells.insert(key, list);
                Ok(())
            }
        }
    }

    /// Cell for the given selected and realized vertex lists.
    pub fn cell(&self, selected: &[VertexId], realized: &[VertexId]) -> Option<&ParetoList> {
        let mask = |vs: &[VertexId]| -> Option<Mask> {
            vs.iter().try_fold(0, |m, v| self.bag.binary_search(v).ok().map(|i| m | 1 << i))
        };
        self.cells.get(&(mask(selected)?, mask(realized)?))
    }

    fn max_list_len(&self) -> usize {
        self.cells.values().map(ParetoList::len).max().unwrap_or(0)
    }
}

fn insert_bit(m: Mask, i: usize) -> Mask {
    let low = (1 << i) - 1;
    (m & low) | ((m & !low) << 1)
}

fn remove_bit(m: Mask, i: usize) -> Mask {
    let low = (1 << i) - 1;
    (m & low) | ((m >> 1) & !low)
}

/// Leaf with a bag of at most one vertex.
pub fn dp_leaf(ctx: &DpContext<'_>, bag: &[VertexId]) -> DpTable {
    let mut table = DpTable::new(bag.to_vec());
    table.cells.insert((0, 0), ParetoList::unit(ctx.cap(), ctx.mode));
    if let [v] = *bag {
        if !ctx.excluded[v] && ctx.inst.weight(v) <= ctx.cap() {
            let realized = if ctx.variant.is_one_neighbor() {
                ctx.inst.graph().neighbors(v).is_empty()
            } else {
                true
            };
            let list = ParetoList::new(ctx.cap(), ctx.mode).with(ctx.inst.weight(v), 0);
            table.cells.insert((1, if realized { 1 } else { 0 }), list);
        }
    }
    table
}

pub fn dp_introduce(ctx: &DpContext<'_>, child: DpTable, u: VertexId) -> Result<DpTable> {
    let g = ctx.inst.graph();
    let i = child.bag.partition_point(|&x| x < u);
    let mut bag = child.bag.clone();
    bag.insert(i, u);
    let bit = 1 << i;
    let (mut out_mask, mut in_mask) = (0, 0);
    for (j, &z) in bag.iter().enumerate() {
        if z != u {
            if g.has_edge(u, z) {
                out_mask |= 1 << j;
            }
            if g.has_edge(z, u) {
                in_mask |= 1 << j;
            }
        }
    }
    let sink = g.neighbors(u).is_empty();
    let one = ctx.variant.is_one_neighbor();
    let wu = ctx.inst.weight(u);
    let selectable = !ctx.excluded[u] && wu <= ctx.cap();

    let mut table = DpTable::new(bag);
    for ((s, p), list) in child.cells {
        let (s, p) = (insert_bit(s, i), insert_bit(p, i));
        if selectable {
            let (s2, p2) = if one {
                let realized = sink || out_mask & s != 0;
                let activated = in_mask & s & !p;
                (s | bit, p | activated | if realized { bit } else { 0 })
            } else {
                let realized = out_mask & !s == 0;
                (s | bit, p | if realized { bit } else { 0 })
            };
            table.add((s2, p2), list.shifted(wu as i64, 0)?)?;
        }
        if one {
            table.add((s, p), list)?;
        } else {
            let violated = p & in_mask;
            if violated != 0 && ctx.variant.is_hard() {
                continue;
            }
            table.add((s, p & !violated), list)?;
        }
    }
    Ok(table)
}

pub fn dp_forget(ctx: &DpContext<'_>, child: DpTable, u: VertexId) -> Result<DpTable> {
    let i = child
        .bag
        .binary_search(&u)
        .map_err(|_| NkError::VertexOutOfRange { vertex: u, n: child.bag.len() })?;
    let mut bag = child.bag.clone();
    bag.remove(i);
    let bit = 1 << i;
    let pu = i64::try_from(ctx.inst.profit(u)).map_err(|_| NkError::Overflow("profit"))?;
    let mut table = DpTable::new(bag);
    for ((s, p), list) in child.cells {
        let key = (remove_bit(s, i), remove_bit(p, i));
        if s & bit == 0 {
            table.add(key, list)?;
        } else if p & bit != 0 {
            table.add(key, list.shifted(0, pu)?)?;
        } else if !ctx.variant.is_hard() {
            table.add(key, list)?;
        }
    }
    Ok(table)
}

pub fn dp_join(ctx: &DpContext<'_>, left: &DpTable, right: &DpTable) -> Result<DpTable> {
    if left.bag != right.bag {
        return Err(NkError::BagMismatch);
    }
    let mut by_s: BTreeMap<Mask, Vec<(Mask, &ParetoList)>> = BTreeMap::new();
    for (&(s, p), list) in &right.cells {
        by_s.entry(s).or_default().push((p, list));
    }
    let one = ctx.variant.is_one_neighbor();
    let mut table = DpTable::new(left.bag.clone());
    for (&(s, p1), a) in &left.cells {
        let Some(partners) = by_s.get(&s) else { continue };
        let ws = left
            .bag
            .iter()
            .enumerate()
            .filter(|(j, _)| s >> j & 1 == 1)
            .try_fold(0u64, |acc, (_, &v)| acc.checked_add(ctx.inst.weight(v)))
            .ok_or(NkError::Overflow("weight"))?;
        let ws = i64::try_from(ws).map_err(|_| NkError::Overflow("weight"))?;
        for &(p2, b) in partners {
            let p = if one { p1 | p2 } else { p1 & p2 };
            table.add((s, p), a.combine(b, -ws, 0)?)?;
        }
    }
    Ok(table)
}

fn run_pass(ctx: &DpContext<'_>, ntd: &NiceTreeDecomposition, stats: &mut TwStats) -> Result<ParetoList> {
    let mut tables: Vec<Option<DpTable>> = vec![None; ntd.nodes.len()];
    for (t, node) in ntd.nodes.iter().enumerate() {
        let mut take = |c: usize| tables[c].take().expect("child table computed before parent");
        let table = match node.kind {
            NiceKind::Leaf => dp_leaf(ctx, &node.bag),
            NiceKind::Introduce(u) => dp_introduce(ctx, take(node.children[0]), u)?,
            NiceKind::Forget(u) => dp_forget(ctx, take(node.children[0]), u)?,
            NiceKind::Join => {
                let (l, r) = (take(node.children[0]), take(node.children[1]));
                dp_join(ctx, &l, &r)?
            }
        };
        stats.max_list_len = stats.max_list_len.max(table.max_list_len());
        tables[t] = Some(table);
    }
    let mut root = tables.pop().flatten().expect("nonempty decomposition");
    if let Some(v) = ntd.pinned {
        let i = root.bag.binary_search(&v).expect("pinned vertex in root bag");
        root.cells.retain(|&(s, _), _| s >> i & 1 == 1);
    }
    for v in root.bag.clone() {
        root = dp_forget(ctx, root, v)?;
    }
    Ok(root.cells.remove(&(0, 0)).unwrap_or_else(|| ctx.empty_list()))
}

/// Exact optimum and frontier, using a min-fill decomposition when none is
/// supplied.
pub fn solve_treewidth(inst: &Instance, variant: Variant, td: Option<&TreeDecomposition>) -> Result<SolveResult> {
    solve_treewidth_with(inst, variant, td, &TwOptions::default()).map(|(r, _)| r)
}

pub fn solve_treewidth_with(
    inst: &Instance,
    variant: Variant,
    td: Option<&TreeDecomposition>,
    opts: &TwOptions,
) -> Result<(SolveResult, TwStats)> {
    let g = inst.graph();
    if g.has_self_loops() {
        return Err(NkError::SelfLoops);
    }
    let cap = inst.knapsack();
    let unit = ParetoList::unit(cap, opts.mode);
    if opts.mode == (ProfitMode::Decision { demand: 0 }) || inst.num_vertices() == 0 {
        return Ok((SolveResult::from_frontier(unit, None), TwStats::default()));
    }
    let owned;
    let td = match td {
        Some(td) => {
            let report = validate_td(g, td);
            if !report.is_ok() {
                return Err(NkError::InvalidDecomposition(report));
            }
            td
        }
        None => {
            owned = heuristic_td(g);
            &owned
        }
    };
    let extra = usize::from(opts.guess == GuessMode::EveryVertex);
    let width = td.width();
    if width + 1 + extra > MAX_BAG {
        return Err(NkError::WidthTooLarge(width));
    }
    let mut stats = TwStats { width, ..TwStats::default() };
    let mut frontier = unit;
    match opts.guess {
        GuessMode::Single => {
            let ntd = make_nice(td)?;
            let ctx = DpContext::new(inst, variant, opts.mode);
            frontier.absorb(&run_pass(&ctx, &ntd, &mut stats)?)?;
            stats.passes = 1;
        }
        GuessMode::EveryVertex => {
            for v in 0..inst.num_vertices() {
                let ntd = build_nice(td, Some(v))?;
                let mut ctx = DpContext::new(inst, variant, opts.mode);
                for u in 0..v {
                    ctx.excluded[u] = true;
                }
                frontier.absorb(&run_pass(&ctx, &ntd, &mut stats)?)?;
                stats.passes += 1;
            }
        }
    }
    Ok((SolveResult::from_frontier(frontier, None), stats))
}
