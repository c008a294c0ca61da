//! Tree decompositions of the underlying undirected graph, their nice form,
//! and pinning one vertex into every bag.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{NkError, Result};
use crate::instance::{Graph, VertexId};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Sorted bags, one per decomposition node.
    pub bags: Vec<Vec<VertexId>>,
    /// Undirected edges between decomposition nodes.
    pub tree: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(bags: Vec<Vec<VertexId>>, tree: Vec<(usize, usize)>) -> TreeDecomposition {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { bags, tree }
    }

    /// Largest bag size minus one (zero for an empty decomposition).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    pub fn num_nodes(&self) -> usize {
        self.bags.len()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.tree {
            if a < adj.len() && b < adj.len() {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        adj
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TdViolation {
    NotATree,
    UnknownVertex(VertexId),
    UncoveredVertex(VertexId),
    UncoveredEdge(VertexId, VertexId),
    Disconnected(VertexId),
    BadKind { node: usize, reason: String },
}

impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdViolation::NotATree => f.write_str("decomposition nodes do not form a tree"),
            TdViolation::UnknownVertex(v) => write!(f, "bag mentions unknown vertex {v}"),
            TdViolation::UncoveredVertex(v) => write!(f, "vertex {v} uncovered"),
            TdViolation::UncoveredEdge(u, v) => write!(f, "edge {{{u},{v}}} uncovered"),
            TdViolation::Disconnected(v) => write!(f, "occurrences of {v} disconnected"),
            TdViolation::BadKind { node, reason } => write!(f, "node {node}: {reason}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TdReport {
    pub violations: Vec<TdViolation>,
    pub width: usize,
}

impl TdReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn messages(&self) -> Vec<String> {
        self.violations.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for TdReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "ok, width {}", self.width)
        } else {
            f.write_str(&self.messages().join("; "))
        }
    }
}

fn is_tree(num_nodes: usize, tree: &[(usize, usize)], adj: &[Vec<usize>]) -> bool {
    if num_nodes == 0 {
        return tree.is_empty();
    }
    if tree.len() != num_nodes - 1 || tree.iter().any(|&(a, b)| a >= num_nodes || b >= num_nodes) {
        return false;
    }
    let mut seen = vec![false; num_nodes];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(t) = stack.pop() {
        for &u in &adj[t] {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count == num_nodes
}

/// Checks the three decomposition axioms (directions ignored) and that the
/// node graph is a tree.
pub fn validate_td(graph: &Graph, td: &TreeDecomposition) -> TdReport {
    let n = graph.num_vertices();
    let mut violations = Vec::new();
    let adj = td.adjacency();
    if !is_tree(td.num_nodes(), &td.tree, &adj) {
        violations.push(TdViolation::NotATree);
    }
    let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (t, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                violations.push(TdViolation::UnknownVertex(v));
            } else {
                occurrences[v].push(t);
            }
        }
    }
    for (v, occ) in occurrences.iter().enumerate() {
        if occ.is_empty() {
            violations.push(TdViolation::UncoveredVertex(v));
        }
    }
    for &(u, v) in graph.edges() {
        if u == v || occurrences[u].is_empty() || occurrences[v].is_empty() {
            continue;
        }
        let covered = occurrences[u]
            .iter()
            .any(|&t| td.bags[t].binary_search(&v).is_ok());
        if !covered {
            let (a, b) = (u.min(v), u.max(v));
            violations.push(TdViolation::UncoveredEdge(a, b));
        }
    }
    let mut mark = vec![false; td.num_nodes()];
    for (v, occ) in occurrences.iter().enumerate() {
        if occ.len() < 2 {
            continue;
        }
        for &t in occ {
            mark[t] = true;
        }
        let mut reached = 1;
        let mut stack = vec![occ[0]];
        mark[occ[0]] = false;
        while let Some(t) = stack.pop() {
            for &u in &adj[t] {
                if mark[u] {
                    mark[u] = false;
                    reached += 1;
                    stack.push(u);
                }
            }
        }
        for &t in occ {
            mark[t] = false;
        }
        if reached != occ.len() {
            violations.push(TdViolation::Disconnected(v));
        }
    }
    TdReport { violations, width: td.width() }
}

/// Min-fill elimination on the underlying undirected graph. Ties are broken
/// by the smallest vertex id, so the result is deterministic.
pub fn heuristic_td(graph: &Graph) -> TreeDecomposition {
    let n = graph.num_vertices();
    if n == 0 {
        return TreeDecomposition::default();
    }
    let mut adj: Vec<BTreeSet<VertexId>> = (0..n)
        .map(|v| graph.underlying_neighbors(v).into_iter().collect())
        .collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    let mut bag_of = vec![Vec::new(); n];

    let fill_in = |adj: &[BTreeSet<VertexId>], v: VertexId| -> usize {
        let nb: Vec<_> = adj[v].iter().copied().collect();
        let mut missing = 0;
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if !adj[a].contains(&b) {
                    missing += 1;
                }
            }
        }
        missing
    };

    let mut fill: Vec<usize> = (0..n).map(|v| fill_in(&adj, v)).collect();
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (fill[v], v))
            .expect("a live vertex remains");
        let nb: Vec<VertexId> = adj[v].iter().copied().collect();
        let mut bag = nb.clone();
        bag.push(v);
        bag.sort_unstable();
        bag_of[v] = bag;
        order.push(v);
        alive[v] = false;
        for (i, &a) in nb.iter().enumerate() {
            adj[a].remove(&v);
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        // Fill values change only within distance two of the eliminated vertex.
        let mut touched: BTreeSet<VertexId> = nb.iter().copied().collect();
        for &a in &nb {
            touched.extend(adj[a].iter().copied());
        }
        for u in touched {
            fill[u] = fill_in(&adj, u);
        }
    }

    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    // Node i holds the bag of the i-th eliminated vertex; its parent is the
    // bag of the earliest-eliminated later neighbor.
    let bags: Vec<Vec<VertexId>> = order.iter().map(|&v| bag_of[v].clone()).collect();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    for (i, &v) in order.iter().enumerate() {
        parent[i] = bags[i]
            .iter()
            .filter(|&&u| u != v)
            .map(|&u| position[u])
            .min();
    }
    let roots: Vec<usize> = (0..n).filter(|&i| parent[i].is_none()).collect();
    for pair in roots.windows(2) {
        parent[pair[0]] = Some(pair[1]);
    }
    contract_subset_bags(bags, parent)
}

/// Merges every node whose bag is contained in its parent's bag (or whose
/// parent's bag is contained in its own) into that neighbor.
fn contract_subset_bags(bags: Vec<Vec<VertexId>>, parent: Vec<Option<usize>>) -> TreeDecomposition {
    let k = bags.len();
    // Union-find over nodes; the representative carries the larger bag.
    let mut rep: Vec<usize> = (0..k).collect();
    let mut bag: Vec<Vec<VertexId>> = bags;
    fn find(rep: &mut [usize], mut x: usize) -> usize {
        while rep[x] != x {
            rep[x] = rep[rep[x]];
            x = rep[x];
        }
        x
    }
    let subset = |a: &[VertexId], b: &[VertexId]| a.iter().all(|v| b.binary_search(v).is_ok());
    // Parents always come later in elimination order, so a single sweep in
    // order sees each child before its parent.
    for (i, &p) in parent.iter().enumerate() {
        if let Some(p) = p {
            let (ri, rp) = (find(&mut rep, i), find(&mut rep, p));
            if ri == rp {
                continue;
            }
            if subset(&bag[ri], &bag[rp]) {
                rep[ri] = rp;
            } else if subset(&bag[rp], &bag[ri]) {
                let moved = std::mem::take(&mut bag[ri]);
                bag[rp] = moved;
                rep[ri] = rp;
            }
        }
    }
    let mut index = HashMap::new();
    let mut out_bags = Vec::new();
    for (i, b) in bag.iter().enumerate() {
        if find(&mut rep, i) == i {
            index.insert(i, out_bags.len());
            out_bags.push(b.clone());
        }
    }
    let mut tree = Vec::new();
    for (i, &p) in parent.iter().enumerate() {
        if let Some(p) = p {
            let (a, b) = (find(&mut rep, i), find(&mut rep, p));
            if a != b {
                tree.push((index[&a], index[&b]));
            }
        }
    }
    TreeDecomposition::new(out_bags, tree)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce(VertexId),
    Forget(VertexId),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    /// Sorted.
    pub bag: Vec<VertexId>,
    pub children: Vec<usize>,
}

/// A rooted nice decomposition. Nodes are stored in post-order, so children
/// precede parents and the root is the last node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
    /// Vertex present in every bag, if the decomposition has been augmented.
    pub pinned: Option<VertexId>,
}

impl NiceTreeDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes.iter().map(|t| t.bag.len()).max().unwrap_or(1).saturating_sub(1)
    }

    /// Forgets the node kinds.
    pub fn to_td(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|t| t.bag.clone()).collect();
        let tree = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(t, node)| node.children.iter().map(move |&c| (c, t)))
            .collect();
        TreeDecomposition { bags, tree }
    }

    /// Kind rules only: leaf bags of size at most one, introduce/forget
    /// differing by exactly their vertex, binary joins over equal bags,
    /// children before parents, and (when pinned) the pin in every bag with
    /// leaf and root bags equal to the pin alone.
    pub fn kind_violations(&self) -> Vec<TdViolation> {
        let mut out = Vec::new();
        let mut bad = |node: usize, reason: String| out.push(TdViolation::BadKind { node, reason });
        for (t, node) in self.nodes.iter().enumerate() {
            if node.children.iter().any(|&c| c >= t) {
                bad(t, "child stored after parent".into());
                continue;
            }
            let child_bag = |i: usize| &self.nodes[node.children[i]].bag;
            match node.kind {
                NiceKind::Leaf => {
                    if !node.children.is_empty() || node.bag.len() > 1 {
                        bad(t, "leaf must be childless with at most one vertex".into());
                    }
                }
                NiceKind::Introduce(v) | NiceKind::Forget(v) => {
                    if node.children.len() != 1 {
                        bad(t, "introduce and forget nodes need one child".into());
                        continue;
                    }
                    let (small, large) = if matches!(node.kind, NiceKind::Introduce(_)) {
                        (child_bag(0), &node.bag)
                    } else {
                        (&node.bag, child_bag(0))
                    };
                    let mut expect = small.clone();
                    expect.push(v);
                    expect.sort_unstable();
                    if small.contains(&v) || &expect != large {
                        bad(t, format!("bag does not differ from its child by exactly {v}"));
                    }
                }
                NiceKind::Join => {
                    if node.children.len() != 2 {
                        bad(t, "join needs two children".into());
                    } else if child_bag(0) != &node.bag || child_bag(1) != &node.bag {
                        bad(t, "join children disagree on the bag".into());
                    }
                }
            }
            if let Some(pin) = self.pinned {
                if node.bag.binary_search(&pin).is_err() {
                    bad(t, format!("pinned vertex {pin} missing"));
                }
                if node.kind == NiceKind::Leaf && node.bag != [pin] {
                    bad(t, "leaf bag must be the pinned vertex".into());
                }
            }
        }
        if let (Some(pin), Some(root)) = (self.pinned, self.nodes.last()) {
            if root.bag != [pin] {
                bad(self.nodes.len() - 1, "root bag must be the pinned vertex".into());
            }
        }
        out
    }
}

/// Axioms of the underlying decomposition plus the kind rules.
pub fn validate_nice(graph: &Graph, ntd: &NiceTreeDecomposition) -> TdReport {
    let mut report = validate_td(graph, &ntd.to_td());
    report.violations.extend(ntd.kind_violations());
    report
}

/// Converts a decomposition to nice form without changing its width.
pub fn make_nice(td: &TreeDecomposition) -> Result<NiceTreeDecomposition> {
    build_nice(td, None)
}

/// Adds `v` to every bag. Leaves and the root end up with bag `{v}`; width
/// grows by at most one.
pub fn augment_all_bags(ntd: &NiceTreeDecomposition, v: VertexId) -> Result<NiceTreeDecomposition> {
    build_nice(&ntd.to_td(), Some(v))
}

/// Roots `td` at node 0 and emits nice nodes bottom-up. With a pin, every
/// emitted bag contains it, leaves are `{pin}` and the root is forgotten
/// down to `{pin}`.
pub fn build_nice(td: &TreeDecomposition, pin: Option<VertexId>) -> Result<NiceTreeDecomposition> {
    let adj = td.adjacency();
    if !is_tree(td.num_nodes(), &td.tree, &adj) {
        return Err(NkError::InvalidDecomposition(TdReport {
            violations: vec![TdViolation::NotATree],
            width: td.width(),
        }));
    }
    let mut b = Builder { nodes: Vec::new(), pin };
    if td.num_nodes() == 0 {
        b.leaf(None);
        return Ok(NiceTreeDecomposition { nodes: b.nodes, pinned: pin });
    }
    let with_pin = |bag: &Vec<VertexId>| -> Vec<VertexId> {
        let mut bag = bag.clone();
        if let Some(p) = pin {
            if let Err(i) = bag.binary_search(&p) {
                bag.insert(i, p);
            }
        }
        bag
    };
    let bags: Vec<Vec<VertexId>> = td.bags.iter().map(with_pin).collect();

    // Iterative post-order from node 0.
    let k = td.num_nodes();
    let mut parent = vec![usize::MAX; k];
    let mut order = Vec::with_capacity(k);
    let mut stack = vec![0];
    parent[0] = 0;
    while let Some(t) = stack.pop() {
        order.push(t);
        for &c in &adj[t] {
            if parent[c] == usize::MAX {
                parent[c] = t;
                stack.push(c);
            }
        }
    }
    let mut built: Vec<Option<usize>> = vec![None; k];
    let mut pending: Vec<Vec<usize>> = vec![Vec::new(); k];
    for &t in order.iter().rev() {
        let target = &bags[t];
        let mut tops: Vec<usize> = Vec::new();
        for &c in &pending[t] {
            tops.push(b.morph(c, target));
        }
        let top = if tops.is_empty() {
            let first = pin.or_else(|| target.first().copied());
            let leaf = b.leaf(first);
            b.morph(leaf, target)
        } else {
            let mut acc = tops[0];
            for &other in &tops[1..] {
                acc = b.push(NiceKind::Join, target.clone(), vec![acc, other]);
            }
            acc
        };
        built[t] = Some(top);
        if t != 0 {
            pending[parent[t]].push(top);
        }
    }
    let root = built[0].expect("root built");
    if let Some(p) = pin {
        b.morph(root, &vec![p]);
    }
    Ok(NiceTreeDecomposition { nodes: b.nodes, pinned: pin })
}

struct Builder {
    nodes: Vec<NiceNode>,
    pin: Option<VertexId>,
}

impl Builder {
    fn push(&mut self, kind: NiceKind, bag: Vec<VertexId>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    fn leaf(&mut self, v: Option<VertexId>) -> usize {
        self.push(NiceKind::Leaf, v.into_iter().collect(), Vec::new())
    }

    /// Forgets and then introduces vertices until node `from` has bag `to`.
    fn morph(&mut self, from: usize, to: &Vec<VertexId>) -> usize {
        let mut cur = from;
        let mut bag = self.nodes[from].bag.clone();
        let drop: Vec<VertexId> = bag.iter().copied().filter(|v| to.binary_search(v).is_err()).collect();
        for v in drop {
            debug_assert_ne!(Some(v), self.pin);
            bag.retain(|&u| u != v);
            cur = self.push(NiceKind::Forget(v), bag.clone(), vec![cur]);
        }
        for &v in to {
            if let Err(i) = bag.binary_search(&v) {
                bag.insert(i, v);
                cur = self.push(NiceKind::Introduce(v), bag.clone(), vec![cur]);
            }
        }
        cur
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(false, n, edges.iter().copied()).unwrap()
    }

    fn td(bags: &[&[usize]], tree: &[(usize, usize)]) -> TreeDecomposition {
        TreeDecomposition::new(bags.iter().map(|b| b.to_vec()).collect(), tree.to_vec())
    }

    #[test]
    fn validate_examples() {
        let path = graph(3, &[(0, 1), (1, 2)]);
        let ok = validate_td(&path, &td(&[&[0, 1], &[1, 2]], &[(0, 1)]));
        assert!(ok.is_ok());
        assert_eq!(ok.width, 1);
        let r = validate_td(&path, &td(&[&[0, 1], &[2]], &[(0, 1)]));
        assert_eq!(r.messages(), vec!["edge {1,2} uncovered"]);
        let r = validate_td(&path, &td(&[&[0, 1], &[0], &[1, 2]], &[(0, 1), (1, 2)]));
        assert_eq!(r.messages(), vec!["occurrences of 1 disconnected"]);
        let r = validate_td(&path, &td(&[&[0, 1]], &[]));
        assert_eq!(r.messages(), vec!["vertex 2 uncovered"]);
        let r = validate_td(&path, &td(&[&[0, 1], &[1, 2]], &[]));
        assert_eq!(r.messages(), vec!["decomposition nodes do not form a tree", "occurrences of 1 disconnected"]);
    }

    #[test]
    fn heuristic_widths() {
        let forest = graph(6, &[(0, 1), (1, 2), (1, 3), (4, 5)]);
        let t = heuristic_td(&forest);
        assert!(validate_td(&forest, &t).is_ok());
        assert_eq!(t.width(), 1);

        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(heuristic_td(&k4).width(), 3);

        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        let t = heuristic_td(&c5);
        assert!(validate_td(&c5, &t).is_ok());
        assert_eq!(t.width(), 2);
        // Width 1 is impossible: a cycle is not a forest.
        assert!(!is_forest(&c5));

        let empty = graph(0, &[]);
        assert_eq!(heuristic_td(&empty).num_nodes(), 0);
    }

    fn is_forest(g: &Graph) -> bool {
        g.num_edges() + components(g) == g.num_vertices()
    }

    fn components(g: &Graph) -> usize {
        let mut seen = vec![false; g.num_vertices()];
        let mut count = 0;
        for s in 0..g.num_vertices() {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                for u in g.underlying_neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
        count
    }

    #[test]
    fn nice_examples() {
        let single = make_nice(&td(&[&[0]], &[])).unwrap();
        assert_eq!(single.nodes.len(), 1);
        assert_eq!(single.nodes[0].kind, NiceKind::Leaf);

        let path = graph(3, &[(0, 1), (1, 2)]);
        let nice = make_nice(&td(&[&[0, 1], &[1, 2]], &[(0, 1)])).unwrap();
        let report = validate_nice(&path, &nice);
        assert!(report.is_ok(), "{report}");
        assert_eq!(nice.width(), 1);

        let aug = augment_all_bags(&single, 0).unwrap();
        assert_eq!(aug.nodes.len(), 1);
        assert_eq!(aug.nodes[0].bag, vec![0]);

        let aug = augment_all_bags(&nice, 2).unwrap();
        assert!(validate_nice(&path, &aug).is_ok());
        assert_eq!(aug.nodes[aug.root()].bag, vec![2]);
    }

    #[test]
    fn high_degree_nodes_become_join_chains() {
        let star = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let t = td(&[&[0], &[0, 1], &[0, 2], &[0, 3], &[0, 4]], &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let nice = make_nice(&t).unwrap();
        assert!(validate_nice(&star, &nice).is_ok());
        let joins = nice.nodes.iter().filter(|t| t.kind == NiceKind::Join).count();
        assert_eq!(joins, 3);
    }

    #[test]
    fn make_nice_rejects_non_trees() {
        assert!(matches!(
            make_nice(&td(&[&[0], &[1]], &[])),
            Err(NkError::InvalidDecomposition(_))
        ));
    }

    fn random_graph() -> impl Strategy<Value = Graph> {
        (1usize..=30).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n), 0..=(2 * n)).prop_map(move |pairs| {
                let mut edges: Vec<(usize, usize)> = pairs
                    .into_iter()
                    .filter(|(u, v)| u != v)
                    .map(|(u, v)| (u.min(v), u.max(v)))
                    .collect();
                edges.sort_unstable();
                edges.dedup();
                Graph::new(false, n, edges).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn heuristic_and_nice_are_valid(g in random_graph(), pin_seed in any::<usize>()) {
            let t = heuristic_td(&g);
            prop_assert!(validate_td(&g, &t).is_ok());
            prop_assert!(t.width() < g.num_vertices().max(1));
            let nice = make_nice(&t).unwrap();
            prop_assert!(validate_nice(&g, &nice).is_ok());
            prop_assert_eq!(nice.width(), t.width());
            let pin = pin_seed % g.num_vertices();
            let aug = augment_all_bags(&nice, pin).unwrap();
            let report = validate_nice(&g, &aug);
            prop_assert!(report.is_ok(), "{}", report);
            prop_assert!(aug.width() <= t.width() + 1);
        }

        #[test]
        fn forests_get_width_one(n in 1usize..=30, seed in prop::collection::vec(any::<usize>(), 30)) {
            let edges: Vec<(usize, usize)> = (1..n)
                .filter(|&v| seed[v] % 4 != 0)
                .map(|v| (seed[v] % v, v))
                .collect();
            let g = Graph::new(false, n, edges).unwrap();
            prop_assert!(heuristic_td(&g).width() <= 1);
        }
    }
}
