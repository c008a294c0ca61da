//! Instance generators: seeded random instances and reduction gadgets, with
//! brute-force solvers for the source problems.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{NkError, Result};
use crate::instance::{Graph, Instance, Variant, VertexId};

/// A generated instance with the variant it is meant for and, when cheap to
/// compute, the answer of the source problem.
#[derive(Clone, Debug)]
pub struct Gadget {
    pub instance: Instance,
    pub variant: Variant,
    pub expected: Option<bool>,
}

const EXPECTED_GUARD: usize = 20;

/// Erdős–Rényi instance with weights in `0..=wmax` and profits in `0..=pmax`.
#[allow(clippy::too_many_arguments)]
pub fn gen_random(
    n: usize,
    edge_prob: f64,
    wmax: u64,
    pmax: u64,
    s: u64,
    d: u64,
    directed: bool,
    seed: u64,
) -> Result<Instance> {
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(NkError::Generator(format!("edge probability {edge_prob} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        let start = if directed { 0 } else { u + 1 };
        for v in start..n {
            if u != v && rng.gen_bool(edge_prob) {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::new(directed, n, edges)?;
    let weights = (0..n).map(|_| rng.gen_range(0..=wmax)).collect();
    let profits = (0..n).map(|_| rng.gen_range(0..=pmax)).collect();
    Ok(Instance::new(graph, weights, profits, s, d)?.with_meta(format!("random n={n} seed={seed}")))
}

/// Element vertices `0..n` (weight 0, profit 1) and one vertex per set after
/// them (weight 1, profit 0), with `s = k` and `d = n`. Every element must lie
/// in some set: an isolated element would be profitable on its own.
pub fn gen_from_set_cover(n: usize, sets: &[Vec<usize>], k: usize) -> Result<Gadget> {
    if n == 0 {
        return Err(NkError::Generator("empty universe".into()));
    }
    let mut covered = vec![false; n];
    let mut edges = Vec::new();
    for (i, set) in sets.iter().enumerate() {
        let mut set = set.clone();
        set.sort_unstable();
        set.dedup();
        for e in set {
            if e >= n {
                return Err(NkError::Generator(format!("set {i} mentions element {e} outside the universe")));
            }
            edges.push((e, n + i));
            covered[e] = true;
        }
    }
    if let Some(e) = covered.iter().position(|&c| !c) {
        return Err(NkError::Generator(format!("element {e} is in no set")));
    }
    let total = n + sets.len();
    let graph = Graph::new(false, total, edges)?;
    let weights = (0..total).map(|v| u64::from(v >= n)).collect();
    let profits = (0..total).map(|v| u64::from(v < n)).collect();
    let instance = Instance::new(graph, weights, profits, k as u64, n as u64)?
        .with_meta(format!("set-cover n={n} sets={} k={k}", sets.len()));
    let expected = (sets.len() <= EXPECTED_GUARD).then(|| set_cover_decision(n, sets, k));
    Ok(Gadget { instance, variant: Variant::Relaxed1N, expected })
}

/// Vertex vertices `0..n` (weight 1, profit 0) and one edge vertex per edge
/// (weight 0, profit 1) pointing at both endpoints, with `s = k` and
/// `d = k(k-1)/2`.
pub fn gen_from_clique(graph: &Graph, k: usize) -> Result<Gadget> {
    if graph.is_directed() {
        return Err(NkError::RequiresUndirected("clique gadget"));
    }
    if graph.has_self_loops() {
        return Err(NkError::SelfLoops);
    }
    let n = graph.num_vertices();
    let m = graph.num_edges();
    let arcs = graph.edges().iter().enumerate().flat_map(|(i, &(u, v))| [(n + i, u), (n + i, v)]);
    let g = Graph::new(true, n + m, arcs)?;
    let weights = (0..n + m).map(|v| u64::from(v < n)).collect();
    let profits = (0..n + m).map(|v| u64::from(v >= n)).collect();
    let d = (k * k.saturating_sub(1) / 2) as u64;
    let instance = Instance::new(g, weights, profits, k as u64, d)?.with_meta(format!("clique n={n} k={k}"));
    let expected = (n <= EXPECTED_GUARD).then(|| has_clique(graph, k));
    Ok(Gadget { instance, variant: Variant::HardAll, expected })
}

/// The same graph with unit weights and profits, `s = l + k` and `d = l`.
pub fn gen_from_cutting(graph: &Graph, k: usize, l: usize) -> Result<Gadget> {
    if graph.is_directed() {
        return Err(NkError::RequiresUndirected("cutting gadget"));
    }
    if graph.has_self_loops() {
        return Err(NkError::SelfLoops);
    }
    let n = graph.num_vertices();
    let instance = Instance::new(graph.clone(), vec![1; n], vec![1; n], (l + k) as u64, l as u64)?
        .with_meta(format!("cutting n={n} k={k} l={l}"));
    let expected = (n <= EXPECTED_GUARD).then(|| cutting_decision(graph, k, l));
    Ok(Gadget { instance, variant: Variant::RelaxedAll, expected })
}

/// One leaf per item around a center of weight and profit 0, with `s = c` and
/// `d = alpha`.
pub fn gen_star_knapsack(items: &[(u64, u64)], c: u64, alpha: u64) -> Result<Gadget> {
    if items.is_empty() {
        return Err(NkError::Generator("star gadget needs at least one item".into()));
    }
    let center = items.len();
    let graph = Graph::new(false, center + 1, (0..center).map(|i| (i, center)))?;
    let mut weights: Vec<u64> = items.iter().map(|&(w, _)| w).collect();
    let mut profits: Vec<u64> = items.iter().map(|&(_, p)| p).collect();
    weights.push(0);
    profits.push(0);
    let instance = Instance::new(graph, weights, profits, c, alpha)?
        .with_meta(format!("star items={} c={c}", items.len()));
    let expected = knapsack_01(items, c).map(|best| best >= alpha);
    Ok(Gadget { instance, variant: Variant::Relaxed1N, expected })
}

/// Whether at most `k` of the sets cover `0..n`.
pub fn set_cover_decision(n: usize, sets: &[Vec<usize>], k: usize) -> bool {
    assert!(sets.len() < 64 && n <= 64, "set cover brute force supports fewer than 64 sets");
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let masks: Vec<u64> =
        sets.iter().map(|s| s.iter().filter(|&&e| e < n).fold(0, |m, &e| m | 1 << e)).collect();
    (0u64..1 << sets.len()).any(|pick| {
        pick.count_ones() as usize <= k
            && masks.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).fold(0, |acc, (_, m)| acc | m) == full
    })
}

/// Whether the undirected graph has a clique on `k` vertices.
pub fn has_clique(graph: &Graph, k: usize) -> bool {
    fn extend(graph: &Graph, cand: &[VertexId], need: usize) -> bool {
        if need == 0 {
            return true;
        }
        cand.iter().enumerate().any(|(i, &v)| {
            let next: Vec<VertexId> = cand[i + 1..].iter().copied().filter(|&u| graph.has_edge(v, u)).collect();
            next.len() + 1 >= need && extend(graph, &next, need - 1)
        })
    }
    let all: Vec<VertexId> = (0..graph.num_vertices()).collect();
    extend(graph, &all, k)
}

/// Whether `V` splits into `X`, `S`, `Y` with `|X| = l`, `|S| <= k`, and no
/// edge between `X` and `Y`.
pub fn cutting_decision(graph: &Graph, k: usize, l: usize) -> bool {
    let n = graph.num_vertices();
    assert!(n < 64, "cutting brute force supports fewer than 64 vertices");
    if l > n {
        return false;
    }
    let nbr: Vec<u64> = (0..n)
        .map(|v| graph.underlying_neighbors(v).iter().fold(0, |m, &u| m | 1 << u))
        .collect();
    (0u64..1 << n).filter(|x| x.count_ones() as usize == l).any(|x| {
        let boundary = (0..n).filter(|&v| x >> v & 1 == 1).fold(0, |m, v| m | nbr[v]) & !x;
        boundary.count_ones() as usize <= k
    })
}

/// Classical 0/1 knapsack optimum, or `None` when the table would be too
/// large.
pub fn knapsack_01(items: &[(u64, u64)], c: u64) -> Option<u64> {
    const TABLE_GUARD: u64 = 1 << 24;
    let total: u64 = items.iter().map(|&(w, _)| w).fold(0, u64::saturating_add);
    let cap = c.min(total);
    if cap > TABLE_GUARD {
        return None;
    }
    let mut best = vec![0u64; cap as usize + 1];
    for &(w, p) in items {
        if w > cap {
            continue;
        }
        for x in (w as usize..=cap as usize).rev() {
            best[x] = best[x].max(best[x - w as usize].checked_add(p)?);
        }
    }
    Some(best[cap as usize])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_force;

    fn decide(g: &Gadget) -> bool {
        brute_force(&g.instance, g.variant).unwrap().meets(g.instance.demand())
    }

    #[test]
    fn random_edges() {
        let empty = gen_random(6, 0.0, 3, 3, 5, 5, false, 1).unwrap();
        assert_eq!(empty.graph().num_edges(), 0);
        let full = gen_random(5, 1.0, 3, 3, 5, 5, true, 1).unwrap();
        assert_eq!(full.graph().num_edges(), 20);
        assert!(!full.graph().has_self_loops());
        assert_eq!(gen_random(8, 0.4, 6, 6, 9, 9, false, 42).unwrap(), gen_random(8, 0.4, 6, 6, 9, 9, false, 42).unwrap());
        assert!(gen_random(3, 1.5, 1, 1, 1, 1, false, 0).is_err());
    }

    #[test]
    fn set_cover_examples() {
        let g = gen_from_set_cover(3, &[vec![0, 1], vec![1, 2]], 2).unwrap();
        assert_eq!(g.instance.num_vertices(), 5);
        assert_eq!((g.instance.knapsack(), g.instance.demand()), (2, 3));
        assert_eq!(g.expected, Some(true));
        assert!(decide(&g));
        let none = gen_from_set_cover(3, &[vec![0, 1], vec![1, 2]], 0).unwrap();
        assert_eq!(none.expected, Some(false));
        assert!(!decide(&none));
        let whole = gen_from_set_cover(3, &[vec![0, 1, 2]], 1).unwrap();
        assert!(decide(&whole));
        assert!(gen_from_set_cover(0, &[], 1).is_err());
        assert!(gen_from_set_cover(2, &[vec![0]], 1).is_err());
    }

    #[test]
    fn clique_examples() {
        let k3 = Graph::new(false, 3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let p3 = Graph::new(false, 3, [(0, 1), (1, 2)]).unwrap();
        let g = gen_from_clique(&k3, 3).unwrap();
        assert_eq!(g.instance.num_vertices(), 6);
        assert!(decide(&g));
        assert!(!decide(&gen_from_clique(&p3, 3).unwrap()));
        let trivial = gen_from_clique(&p3, 1).unwrap();
        assert_eq!(trivial.instance.demand(), 0);
        assert!(decide(&trivial));
    }

    #[test]
    fn cutting_examples() {
        let p3 = Graph::new(false, 3, [(0, 1), (1, 2)]).unwrap();
        let k3 = Graph::new(false, 3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let edgeless = Graph::new(false, 4, []).unwrap();
        assert!(cutting_decision(&p3, 1, 1));
        assert!(decide(&gen_from_cutting(&p3, 1, 1).unwrap()));
        assert!(!cutting_decision(&k3, 0, 1));
        assert!(!decide(&gen_from_cutting(&k3, 0, 1).unwrap()));
        assert!(decide(&gen_from_cutting(&edgeless, 0, 4).unwrap()));
    }

    #[test]
    fn star_examples() {
        let best = |items: &[(u64, u64)], c| {
            let g = gen_star_knapsack(items, c, 0).unwrap();
            brute_force(&g.instance, g.variant).unwrap().best_profit
        };
        assert_eq!(best(&[(2, 3), (2, 3)], 2), 3);
        assert_eq!(knapsack_01(&[(2, 3), (2, 3)], 2), Some(3));
        assert_eq!(best(&[(1, 4), (2, 5)], 0), 0);
        assert_eq!(best(&[(1, 4), (2, 5)], 3), 9);
        assert!(gen_star_knapsack(&[], 1, 1).is_err());
    }
}
