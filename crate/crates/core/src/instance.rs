//! Problem instances: a (di)graph with per-vertex weights and profits, a
//! knapsack size and a demand, plus the preprocessing rules that remove
//! self-loops and sinks.

use std::fmt;
use std::str::FromStr;

use crate::error::{NkError, Result};

pub type VertexId = usize;

/// Which neighborhood rule decides that a selected vertex is profitable, and
/// whether unprofitable selections are forbidden (hard) or merely unpaid
/// (relaxed).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Hard1N,
    HardAll,
    Relaxed1N,
    RelaxedAll,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::Hard1N,
        Variant::HardAll,
        Variant::Relaxed1N,
        Variant::RelaxedAll,
    ];

    /// Every selected vertex must satisfy the neighborhood rule.
    pub fn is_hard(self) -> bool {
        matches!(self, Variant::Hard1N | Variant::HardAll)
    }

    /// 1-Neighborhood rule: one selected out-neighbor (or none at all) suffices.
    pub fn is_one_neighbor(self) -> bool {
        matches!(self, Variant::Hard1N | Variant::Relaxed1N)
    }

    pub fn tag(self) -> &'static str {
        match self {
            Variant::Hard1N => "h1n",
            Variant::HardAll => "hall",
            Variant::Relaxed1N => "r1n",
            Variant::RelaxedAll => "rall",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "h1n" => Ok(Variant::Hard1N),
            "hall" => Ok(Variant::HardAll),
            "r1n" => Ok(Variant::Relaxed1N),
            "rall" => Ok(Variant::RelaxedAll),
            other => Err(format!("unknown variant `{other}` (expected h1n, hall, r1n or rall)")),
        }
    }
}

/// A simple (di)graph on the dense vertex range `0..n`.
///
/// Edges are kept sorted; undirected edges are stored once as `(u, v)` with
/// `u <= v`. Self-loops are allowed so that raw inputs can be represented,
/// but [`normalize_self_loops`] removes them before solving.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    directed: bool,
    edges: Vec<(VertexId, VertexId)>,
    out: Vec<Vec<VertexId>>,
    inc: Vec<Vec<VertexId>>,
}

impl Graph {
    pub fn new(
        directed: bool,
        n: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Graph> {
        let raw = RawInstance {
            directed,
            n,
            edges: edges.into_iter().collect(),
            weights: vec![0; n],
            profits: vec![0; n],
            knapsack: 0,
            demand: 0,
            meta: String::new(),
        };
        let report = validate_instance(&raw);
        if !report.is_ok() {
            return Err(NkError::InvalidInstance(report));
        }
        Ok(Graph::from_checked(directed, n, raw.edges))
    }

    /// Caller guarantees in-range endpoints and no parallel edges.
    fn from_checked(directed: bool, n: usize, edges: Vec<(VertexId, VertexId)>) -> Graph {
        let mut edges: Vec<_> = edges
            .into_iter()
            .map(|(u, v)| if directed || u <= v { (u, v) } else { (v, u) })
            .collect();
        edges.sort_unstable();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for &(u, v) in &edges {
            out[u].push(v);
            inc[v].push(u);
            if !directed && u != v {
                out[v].push(u);
                inc[u].push(v);
            }
        }
        for list in out.iter_mut().chain(inc.iter_mut()) {
            list.sort_unstable();
        }
        Graph { directed, edges, out, inc }
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn num_vertices(&self) -> usize {
        self.out.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Canonically ordered edge list.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Out-neighbors for digraphs, neighbors otherwise. Sorted.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out[v]
    }

    /// In-neighbors for digraphs, neighbors otherwise. Sorted.
    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.inc[v]
    }

    /// Does the (directed) edge `u -> v` exist? Symmetric for undirected graphs.
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    /// Position of an edge in [`Graph::edges`].
    pub fn edge_index(&self, u: VertexId, v: VertexId) -> Option<usize> {
        let key = if self.directed || u <= v { (u, v) } else { (v, u) };
        self.edges.binary_search(&key).ok()
    }

    pub fn has_self_loops(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    pub fn has_self_loop(&self, v: VertexId) -> bool {
        self.has_edge(v, v)
    }

    /// Neighbors in the underlying undirected graph, self excluded.
    pub fn underlying_neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut all: Vec<VertexId> = self.out[v]
            .iter()
            .chain(self.inc[v].iter())
            .copied()
            .filter(|&u| u != v)
            .collect();
        all.sort_unstable();
        all.dedup();
        all
    }
}

/// Unchecked instance data, as read from a file or assembled by hand.
/// Values are signed so that negative inputs can be reported rather than
/// rejected by the type system.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawInstance {
    pub directed: bool,
    pub n: usize,
    pub edges: Vec<(VertexId, VertexId)>,
    pub weights: Vec<i64>,
    pub profits: Vec<i64>,
    pub knapsack: i64,
    pub demand: i64,
    pub meta: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ParallelEdge(VertexId, VertexId),
    DanglingEndpoint(VertexId, VertexId),
    WeightLengthMismatch { expected: usize, found: usize },
    ProfitLengthMismatch { expected: usize, found: usize },
    NegativeWeight(VertexId),
    NegativeProfit(VertexId),
    NegativeKnapsack,
    NegativeDemand,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ParallelEdge(u, v) => write!(f, "parallel edge ({u},{v})"),
            Violation::DanglingEndpoint(u, v) => write!(f, "dangling edge endpoint ({u},{v})"),
            Violation::WeightLengthMismatch { expected, found } => write!(
                f,
                "weight vector length mismatch (expected {expected}, found {found})"
            ),
            Violation::ProfitLengthMismatch { expected, found } => write!(
                f,
                "profit vector length mismatch (expected {expected}, found {found})"
            ),
            Violation::NegativeWeight(v) => write!(f, "negative weight at vertex {v}"),
            Violation::NegativeProfit(v) => write!(f, "negative profit at vertex {v}"),
            Violation::NegativeKnapsack => f.write_str("negative knapsack size"),
            Violation::NegativeDemand => f.write_str("negative demand"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn messages(&self) -> Vec<String> {
        self.violations.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        f.write_str(&self.messages().join("; "))
    }
}

/// Reports every invariant violation of a raw instance.
pub fn validate_instance(raw: &RawInstance) -> ValidationReport {
    let mut violations = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for &(u, v) in &raw.edges {
        if u >= raw.n || v >= raw.n {
            violations.push(Violation::DanglingEndpoint(u, v));
            continue;
        }
        let key = if raw.directed || u <= v { (u, v) } else { (v, u) };
        if !seen.insert(key) {
            violations.push(Violation::ParallelEdge(key.0, key.1));
        }
    }
    if raw.weights.len() != raw.n {
        violations.push(Violation::WeightLengthMismatch {
            expected: raw.n,
            found: raw.weights.len(),
        });
    }
    if raw.profits.len() != raw.n {
        violations.push(Violation::ProfitLengthMismatch {
            expected: raw.n,
            found: raw.profits.len(),
        });
    }
    for (v, &w) in raw.weights.iter().enumerate() {
        if w < 0 {
            violations.push(Violation::NegativeWeight(v));
        }
    }
    for (v, &p) in raw.profits.iter().enumerate() {
        if p < 0 {
            violations.push(Violation::NegativeProfit(v));
        }
    }
    if raw.knapsack < 0 {
        violations.push(Violation::NegativeKnapsack);
    }
    if raw.demand < 0 {
        violations.push(Violation::NegativeDemand);
    }
    ValidationReport { violations }
}

/// A validated, immutable problem instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    weights: Vec<u64>,
    profits: Vec<u64>,
    knapsack: u64,
    demand: u64,
    meta: String,
}

impl Instance {
    pub fn new(
        graph: Graph,
        weights: Vec<u64>,
        profits: Vec<u64>,
        knapsack: u64,
        demand: u64,
    ) -> Result<Instance> {
        let n = graph.num_vertices();
        let mut violations = Vec::new();
        if weights.len() != n {
            violations.push(Violation::WeightLengthMismatch { expected: n, found: weights.len() });
        }
        if profits.len() != n {
            violations.push(Violation::ProfitLengthMismatch { expected: n, found: profits.len() });
        }
        if !violations.is_empty() {
            return Err(NkError::InvalidInstance(ValidationReport { violations }));
        }
        Ok(Instance { graph, weights, profits, knapsack, demand, meta: String::new() })
    }

    pub fn from_raw(raw: &RawInstance) -> Result<Instance> {
        let report = validate_instance(raw);
        if !report.is_ok() {
            return Err(NkError::InvalidInstance(report));
        }
        let graph = Graph::from_checked(raw.directed, raw.n, raw.edges.clone());
        Ok(Instance {
            graph,
            weights: raw.weights.iter().map(|&w| w as u64).collect(),
            profits: raw.profits.iter().map(|&p| p as u64).collect(),
            knapsack: raw.knapsack as u64,
            demand: raw.demand as u64,
            meta: raw.meta.clone(),
        })
    }

    pub fn to_raw(&self) -> RawInstance {
        RawInstance {
            directed: self.graph.directed,
            n: self.num_vertices(),
            edges: self.graph.edges.clone(),
            weights: self.weights.iter().map(|&w| w as i64).collect(),
            profits: self.profits.iter().map(|&p| p as i64).collect(),
            knapsack: self.knapsack as i64,
            demand: self.demand as i64,
            meta: self.meta.clone(),
        }
    }

    pub fn with_meta(mut self, meta: impl Into<String>) -> Instance {
        self.meta = meta.into();
        self
    }

    /// Same graph and vertex data under a different knapsack size and demand.
    pub fn with_limits(&self, knapsack: u64, demand: u64) -> Instance {
        Instance { knapsack, demand, ..self.clone() }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    pub fn is_directed(&self) -> bool {
        self.graph.directed
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn profits(&self) -> &[u64] {
        &self.profits
    }

    pub fn weight(&self, v: VertexId) -> u64 {
        self.weights[v]
    }

    pub fn profit(&self, v: VertexId) -> u64 {
        self.profits[v]
    }

    pub fn knapsack(&self) -> u64 {
        self.knapsack
    }

    pub fn demand(&self) -> u64 {
        self.demand
    }

    pub fn meta(&self) -> &str {
        &self.meta
    }

    /// All weights and profits equal one.
    pub fn is_uniform(&self) -> bool {
        self.weights.iter().all(|&w| w == 1) && self.profits.iter().all(|&p| p == 1)
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.num_vertices() {
            Ok(())
        } else {
            Err(NkError::VertexOutOfRange { vertex: v, n: self.num_vertices() })
        }
    }

    /// Out-neighbors when directed, neighbors otherwise.
    pub fn neighbors(&self, v: VertexId) -> Result<&[VertexId]> {
        self.check_vertex(v)?;
        Ok(self.graph.neighbors(v))
    }

    fn rebuild(&self, n: usize, edges: Vec<(VertexId, VertexId)>, weights: Vec<u64>, profits: Vec<u64>) -> Instance {
        Instance {
            graph: Graph::from_checked(self.graph.directed, n, edges),
            weights,
            profits,
            knapsack: self.knapsack,
            demand: self.demand,
            meta: self.meta.clone(),
        }
    }
}

/// Removes every self-loop while preserving the optimum of `variant`.
///
/// * 1-Neighborhood, undirected: `{v, v}` becomes `{v, v'}` for a fresh
///   zero-weight, zero-profit vertex `v'`.
/// * 1-Neighborhood, directed: all out-edges of `v` are dropped, so `v`
///   becomes a sink and is always profitable, exactly as the loop made it.
/// * All-Neighborhood: the loop itself is dropped.
pub fn normalize_self_loops(inst: &Instance, variant: Variant) -> Instance {
    let g = inst.graph();
    if !g.has_self_loops() {
        return inst.clone();
    }
    let n = inst.num_vertices();
    let mut weights = inst.weights.clone();
    let mut profits = inst.profits.clone();
    let mut edges = Vec::with_capacity(g.num_edges());
    let mut fresh = n;
    match (variant.is_one_neighbor(), g.is_directed()) {
        (true, false) => {
            for &(u, v) in g.edges() {
                if u == v {
                    edges.push((u, fresh));
                    weights.push(0);
                    profits.push(0);
                    fresh += 1;
                } else {
                    edges.push((u, v));
                }
            }
        }
        (true, true) => {
            edges.extend(g.edges().iter().copied().filter(|&(u, _)| !g.has_self_loop(u)));
        }
        (false, _) => {
            edges.extend(g.edges().iter().copied().filter(|&(u, v)| u != v));
        }
    }
    inst.rebuild(fresh, edges, weights, profits)
}

/// Gives every sink of a directed instance a fresh zero-weight, zero-profit
/// out-neighbor, so that "profitable because it has no out-neighbors" can be
/// expressed as "profitable because its dummy is selected".
///
/// Sinks that already have weight and profit zero are left alone: they are
/// indistinguishable from a dummy, which also makes the operation idempotent.
/// Returns the augmented instance together with the position of every
/// original vertex in it (original ids are kept; dummies are appended).
pub fn add_sink_dummies(inst: &Instance) -> Result<(Instance, Vec<VertexId>)> {
    let g = inst.graph();
    if !g.is_directed() {
        return Err(NkError::RequiresDirected("sink augmentation"));
    }
    if g.has_self_loops() {
        return Err(NkError::SelfLoops);
    }
    let n = inst.num_vertices();
    let mut weights = inst.weights.clone();
    let mut profits = inst.profits.clone();
    let mut edges = g.edges().to_vec();
    let mut fresh = n;
    for v in 0..n {
        let is_blank = inst.weights[v] == 0 && inst.profits[v] == 0;
        if g.neighbors(v).is_empty() && !is_blank {
            edges.push((v, fresh));
            weights.push(0);
            profits.push(0);
            fresh += 1;
        }
    }
    let mapping = (0..n).collect();
    Ok((inst.rebuild(fresh, edges, weights, profits), mapping))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(n: usize, edges: &[(usize, usize)], directed: bool) -> RawInstance {
        RawInstance {
            directed,
            n,
            edges: edges.to_vec(),
            weights: vec![1; n],
            profits: vec![1; n],
            knapsack: 0,
            demand: 0,
            meta: String::new(),
        }
    }

    fn uniform(n: usize, edges: &[(usize, usize)], directed: bool) -> Instance {
        Instance::from_raw(&raw(n, edges, directed)).unwrap()
    }

    #[test]
    fn minimal_instance_is_valid() {
        assert!(validate_instance(&raw(1, &[], false)).is_ok());
    }

    #[test]
    fn parallel_edge_is_reported() {
        let report = validate_instance(&raw(2, &[(0, 1), (0, 1)], true));
        assert_eq!(report.messages(), vec!["parallel edge (0,1)"]);
        let report = validate_instance(&raw(2, &[(0, 1), (1, 0)], false));
        assert_eq!(report.messages(), vec!["parallel edge (0,1)"]);
        assert!(validate_instance(&raw(2, &[(0, 1), (1, 0)], true)).is_ok());
    }

    #[test]
    fn length_mismatch_and_negatives_are_reported() {
        let mut r = raw(3, &[(0, 5)], false);
        r.weights = vec![1, 1];
        r.profits[2] = -1;
        r.demand = -3;
        let msgs = validate_instance(&r).messages();
        assert!(msgs.contains(&"dangling edge endpoint (0,5)".to_string()));
        assert!(msgs.iter().any(|m| m.starts_with("weight vector length mismatch")));
        assert!(msgs.contains(&"negative profit at vertex 2".to_string()));
        assert!(msgs.contains(&"negative demand".to_string()));
        assert_eq!(msgs.len(), 4);
    }

    #[test]
    fn neighbors_follow_orientation() {
        let d = uniform(2, &[(0, 1)], true);
        assert_eq!(d.neighbors(0).unwrap(), &[1]);
        assert!(d.neighbors(1).unwrap().is_empty());
        let u = uniform(2, &[(0, 1)], false);
        assert_eq!(u.neighbors(1).unwrap(), &[0]);
        assert!(matches!(d.neighbors(2), Err(NkError::VertexOutOfRange { vertex: 2, n: 2 })));
    }

    #[test]
    fn undirected_loop_becomes_pendant_dummy() {
        let inst = uniform(1, &[(0, 0)], false);
        let out = normalize_self_loops(&inst, Variant::Relaxed1N);
        assert_eq!(out.num_vertices(), 2);
        assert_eq!(out.graph().edges(), &[(0, 1)]);
        assert_eq!((out.weight(1), out.profit(1)), (0, 0));
    }

    #[test]
    fn directed_loop_drops_all_out_edges() {
        let inst = uniform(2, &[(0, 0), (0, 1), (1, 0)], true);
        let out = normalize_self_loops(&inst, Variant::Relaxed1N);
        assert_eq!(out.graph().edges(), &[(1, 0)]);
        let all = normalize_self_loops(&inst, Variant::RelaxedAll);
        assert_eq!(all.graph().edges(), &[(0, 1), (1, 0)]);
    }

    #[test]
    fn loop_free_instance_is_untouched() {
        let inst = uniform(3, &[(0, 1), (1, 2)], false);
        for v in Variant::ALL {
            assert_eq!(normalize_self_loops(&inst, v), inst);
        }
    }

    #[test]
    fn sink_dummies() {
        let single = uniform(1, &[], true);
        let (aug, map) = add_sink_dummies(&single).unwrap();
        assert_eq!(aug.num_vertices(), 2);
        assert_eq!(aug.graph().edges(), &[(0, 1)]);
        assert_eq!((aug.weight(1), aug.profit(1)), (0, 0));
        assert_eq!(map, vec![0]);

        let cycle = uniform(2, &[(0, 1), (1, 0)], true);
        assert_eq!(add_sink_dummies(&cycle).unwrap().0, cycle);

        let path = uniform(3, &[(0, 1), (1, 2)], true);
        let (aug, _) = add_sink_dummies(&path).unwrap();
        assert_eq!(aug.graph().edges(), &[(0, 1), (1, 2), (2, 3)]);

        assert!(matches!(
            add_sink_dummies(&uniform(2, &[(0, 1)], false)),
            Err(NkError::RequiresDirected(_))
        ));
    }

    #[test]
    fn preprocessing_is_idempotent() {
        let inst = uniform(4, &[(0, 0), (1, 2), (3, 3)], true);
        for v in Variant::ALL {
            let once = normalize_self_loops(&inst, v);
            assert_eq!(normalize_self_loops(&once, v), once);
        }
        let clean = normalize_self_loops(&inst, Variant::Relaxed1N);
        let (once, _) = add_sink_dummies(&clean).unwrap();
        let (twice, _) = add_sink_dummies(&once).unwrap();
        assert_eq!(once, twice);
    }
}
