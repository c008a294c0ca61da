//! Polynomial-time algorithms for uniform instances of Relaxed1N: an exact
//! linear-time algorithm on undirected graphs and an additive-one
//! approximation on digraphs.

use std::collections::VecDeque;

use crate::error::{NkError, Result};
use crate::instance::{Graph, Instance, Variant, VertexId};
use crate::oracle::{self, SolveResult};
use crate::pareto::{ParetoList, ProfitMode};

/// Strongly connected components, largest first (ties by smallest member).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccDecomposition {
    /// Index into `members` for every vertex.
    pub component: Vec<usize>,
    /// Sorted member lists.
    pub members: Vec<Vec<VertexId>>,
}

/// Iterative Tarjan.
pub fn strongly_connected_components(g: &Graph) -> SccDecomposition {
    let n = g.num_vertices();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next = 0;
    let mut found: Vec<Vec<VertexId>> = Vec::new();
    let mut call: Vec<(VertexId, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut edge)) = call.last_mut() {
            let nbrs = g.neighbors(v);
            if *edge < nbrs.len() {
                let u = nbrs[*edge];
                *edge += 1;
                if index[u] == UNSEEN {
                    index[u] = next;
                    low[u] = next;
                    next += 1;
                    stack.push(u);
                    on_stack[u] = true;
                    call.push((u, 0));
                } else if on_stack[u] {
                    low[v] = low[v].min(index[u]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let u = stack.pop().expect("tarjan stack underflow");
                    on_stack[u] = false;
                    comp.push(u);
                    if u == v {
                        break;
                    }
                }
                comp.sort_unstable();
                found.push(comp);
            }
        }
    }
    found.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    let mut component = vec![0; n];
    for (c, members) in found.iter().enumerate() {
        for &v in members {
            component[v] = c;
        }
    }
    SccDecomposition { component, members: found }
}

fn check_uniform(inst: &Instance, what: &'static str) -> Result<()> {
    if !inst.is_uniform() {
        return Err(NkError::NonUniform(what));
    }
    if inst.graph().has_self_loops() {
        return Err(NkError::SelfLoops);
    }
    Ok(())
}

/// Connected components of size at least two, each in BFS order from its
/// smallest vertex, plus the isolated vertices.
fn bfs_components(g: &Graph) -> (Vec<Vec<VertexId>>, Vec<VertexId>) {
    let n = g.num_vertices();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    let mut isolated = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        if g.neighbors(s).is_empty() {
            isolated.push(s);
            continue;
        }
        let mut order = vec![s];
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    order.push(u);
                    queue.push_back(u);
                }
            }
        }
        comps.push(order);
    }
    (comps, isolated)
}

/// Exact optimum of a uniform undirected instance in `O(n + m)`.
///
/// With `I` isolated vertices and components of sizes `c_i >= 2`, exactly
/// `t` selected vertices can all be profitable iff `t` splits into isolated
/// picks plus, per component, either nothing or a connected piece of size
/// `2..=c_i`. When that fails only one vertex is wasted.
pub fn solve_uniform_undirected(inst: &Instance) -> Result<SolveResult> {
    if inst.is_directed() {
        return Err(NkError::RequiresUndirected("the exact uniform algorithm"));
    }
    check_uniform(inst, "the exact uniform algorithm")?;
    let g = inst.graph();
    let n = g.num_vertices();
    let (mut comps, isolated) = bfs_components(g);
    comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    let in_comps: usize = comps.iter().map(Vec::len).sum();
    let has_large = comps.first().is_some_and(|c| c.len() >= 3);
    let all_profitable_in_comps = |x: usize| x == 0 || (x <= in_comps && x >= 2 && (has_large || x.is_multiple_of(2)));
    // Component total `x` for an all-profitable selection of exactly `t`.
    let split = |t: usize| -> Option<usize> {
        let lo = t.saturating_sub(isolated.len());
        let hi = t.min(in_comps);
        let x = match lo {
            0 => 0,
            1 => 2,
            _ if has_large => lo,
            _ => lo + lo % 2,
        };
        (x <= hi && all_profitable_in_comps(x)).then_some(x)
    };
    let best_exact = |t: usize| -> u64 {
        if split(t).is_some() { t as u64 } else { t as u64 - 1 }
    };

    let top = inst.knapsack().min(n as u64) as usize;
    let frontier = ParetoList::from_pairs(
        inst.knapsack(),
        ProfitMode::Optimization,
        (0..=top).map(|t| (t as u64, best_exact(t))),
    );
    let (best_weight, best_profit) = frontier.best().unwrap_or((0, 0));
    let t = best_weight as usize;
    let witness = match split(t) {
        Some(x) => {
            let mut sel = fill_components(&comps, x);
            sel.extend(isolated.iter().take(t - x).copied());
            sel
        }
        None => {
            // One wasted vertex.
            let mut sel = fill_components(&comps, t - 1);
            if let Some(v) = (0..n).find(|v| !sel.contains(v)) {
                sel.push(v);
            }
            sel
        }
    };
    let mut witness = witness;
    witness.sort_unstable();
    Ok(SolveResult { best_profit, best_weight, witness: Some(witness), frontier })
}

/// Picks exactly `x` vertices from components (sorted largest first, each in
/// BFS order) such that every pick has a picked neighbor. `x` must be
/// achievable.
fn fill_components(comps: &[Vec<VertexId>], x: usize) -> Vec<VertexId> {
    let mut sel = Vec::with_capacity(x);
    if x == 0 {
        return sel;
    }
    let Some((first, rest)) = comps.split_first() else { return sel };
    let take = |sel: &mut Vec<VertexId>, comp: &[VertexId], k: usize| sel.extend_from_slice(&comp[..k]);
    if x <= first.len() {
        take(&mut sel, first, x);
        return sel;
    }
    // Whole smaller components first, leaving at least two for the largest.
    let mut r = x;
    let mut i = 0;
    while i < rest.len() && rest[i].len() + 2 <= r {
        take(&mut sel, &rest[i], rest[i].len());
        r -= rest[i].len();
        i += 1;
    }
    if r <= first.len() {
        take(&mut sel, first, r);
    } else if i < rest.len() && rest[i].len() == r {
        take(&mut sel, &rest[i], r);
    } else {
        // r = c + 1 where the next component has the largest size c.
        let c = rest[i].len();
        take(&mut sel, &rest[i], c - 1);
        take(&mut sel, first, r - (c - 1));
    }
    sel
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Additive1 {
    pub result: SolveResult,
    /// `OPT - profit`, computed by brute force when the instance is small
    /// enough.
    pub gap: Option<u64>,
}

/// Vertex count up to which [`Additive1::gap`] is filled in.
pub const GAP_GUARD: usize = 20;

/// Packs whole strongly connected components, largest first, then fills the
/// remaining budget with a DFS preorder prefix of the first component that
/// does not fit.
pub fn solve_uniform_directed_additive1(inst: &Instance) -> Result<Additive1> {
    if !inst.is_directed() {
        return Err(NkError::RequiresDirected("the additive-one algorithm"));
    }
    check_uniform(inst, "the additive-one algorithm")?;
    let g = inst.graph();
    let scc = strongly_connected_components(g);
    let budget = inst.knapsack().min(g.num_vertices() as u64) as usize;
    let mut sel = Vec::with_capacity(budget);
    for (c, members) in scc.members.iter().enumerate() {
        let left = budget - sel.len();
        if left == 0 {
            break;
        }
        if members.len() <= left {
            sel.extend_from_slice(members);
        } else {
            sel.extend(dfs_prefix(g, &scc.component, c, members[0], left));
            break;
        }
    }
    sel.sort_unstable();
    let e = oracle::evaluate(inst, Variant::Relaxed1N, &sel)?;
    let frontier = ParetoList::from_pairs(inst.knapsack(), ProfitMode::Optimization, [(0, 0), (e.weight, e.profit)]);
    let result = SolveResult { best_profit: e.profit, best_weight: e.weight, witness: Some(sel), frontier };
    let gap = if g.num_vertices() <= GAP_GUARD {
        let opt = oracle::brute_force(inst, Variant::Relaxed1N)?.best_profit;
        Some(opt - result.best_profit)
    } else {
        None
    };
    Ok(Additive1 { result, gap })
}

/// First `t` vertices of a DFS preorder inside component `c`, visiting
/// out-neighbors smallest id first.
fn dfs_prefix(g: &Graph, component: &[usize], c: usize, start: VertexId, t: usize) -> Vec<VertexId> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(t);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        if out.len() == t {
            break;
        }
        if !seen.insert(v) {
            continue;
        }
        out.push(v);
        for &u in g.neighbors(v).iter().rev() {
            if component[u] == c && !seen.contains(&u) {
                stack.push(u);
            }
        }
    }
    out
}
