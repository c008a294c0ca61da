//! Colorful components of an edge-colored digraph, built either by a subset
//! DP over color masks or by embedding explicit shapes.
//!
//! Partial embeddings carry their vertex set, so an embedding never maps two
//! shape nodes to the same vertex and two components never share a vertex.

use std::collections::HashMap;

use super::EdgeColoring;
use super::shapes::{ShapeKind, TreeShape};
use crate::instance::{Instance, VertexId};
use crate::pareto::{ParetoList, ProfitMode};

/// Largest vertex budget the inline sets support.
pub const MAX_VERTICES: usize = 16;

/// A sorted set of at most [`MAX_VERTICES`] vertices, stored inline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VSet {
    len: u8,
    items: [u32; MAX_VERTICES],
}

impl VSet {
    pub const EMPTY: VSet = VSet { len: 0, items: [0; MAX_VERTICES] };

    pub fn single(v: VertexId) -> VSet {
        let mut s = VSet::EMPTY;
        s.items[0] = v as u32;
        s.len = 1;
        s
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.items[..self.len()]
    }

    pub fn to_vec(&self) -> Vec<VertexId> {
        self.as_slice().iter().map(|&v| v as VertexId).collect()
    }

    /// Union of two disjoint sets, or `None` if they intersect or the union
    /// would exceed `limit` vertices.
    pub fn disjoint_union(&self, other: &VSet, limit: usize) -> Option<VSet> {
        if self.len() + other.len() > limit.min(MAX_VERTICES) {
            return None;
        }
        let (a, b) = (self.as_slice(), other.as_slice());
        let mut out = VSet::EMPTY;
        let (mut i, mut j, mut k) = (0, 0, 0);
        while i < a.len() || j < b.len() {
            let take_a = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) if x == y => return None,
                (Some(x), Some(y)) => x < y,
                (Some(_), None) => true,
                _ => false,
            };
            out.items[k] = if take_a { a[i] } else { b[j] };
            if take_a {
                i += 1;
            } else {
                j += 1;
            }
            k += 1;
        }
        out.len = k as u8;
        Some(out)
    }
}

/// One embedded component (or a disjoint union of several).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub vertices: VSet,
    pub weight: u64,
    pub profit: u64,
}

/// The colored graph and limits shared by all shapes of one coloring.
pub struct ColorContext<'a> {
    pub inst: &'a Instance,
    pub cap: u64,
    pub max_vertices: usize,
    /// Tree roots must be sinks (all vertices must be profitable).
    pub hard: bool,
    /// Edges `(tail, head)` per color; index 0 is unused.
    by_color: Vec<Vec<(VertexId, VertexId)>>,
}

impl<'a> ColorContext<'a> {
    pub fn new(inst: &'a Instance, coloring: &EdgeColoring, max_vertices: usize, hard: bool) -> ColorContext<'a> {
        let mut by_color = vec![Vec::new(); coloring.b() + 1];
        for (e, &(u, v)) in inst.graph().edges().iter().enumerate() {
            by_color[coloring.color(e) as usize].push((u, v));
        }
        ColorContext { inst, cap: inst.knapsack(), max_vertices, hard, by_color }
    }

    pub fn has_color(&self, c: u8) -> bool {
        self.by_color.get(c as usize).is_some_and(|e| !e.is_empty())
    }

    fn edges(&self, c: u8) -> &[(VertexId, VertexId)] {
        self.by_color.get(c as usize).map_or(&[], Vec::as_slice)
    }

    fn profit_of(&self, set: &VSet) -> u64 {
        set.as_slice().iter().map(|&v| self.inst.profit(v as usize)).sum()
    }
}

type Partial = (VSet, u64);
type Table = HashMap<VertexId, Vec<Partial>>;

/// Deduplicates partial embeddings of one image by vertex set.
fn normalize(list: &mut Vec<Partial>) {
    list.sort_unstable_by_key(|a| a.0);
    list.dedup_by(|a, b| a.0 == b.0);
}

/// Builds the table of `node`: for each admissible image, the vertex sets of
/// embeddings of the subtree below `node`.
fn node_table(
    ctx: &ColorContext<'_>,
    shape: &TreeShape,
    node: usize,
    children: &[usize],
    tables: &[Option<Table>],
    images: Option<&[VertexId]>,
) -> Table {
    // Candidate images: given explicitly, else tails of the node's own edge
    // color, else (tree root) heads reachable from the first child.
    let mut contribs: Vec<HashMap<VertexId, Vec<&Partial>>> = Vec::with_capacity(children.len());
    for &c in children {
        let color = shape.color[c].expect("non-root node has a color");
        let table = tables[c].as_ref().expect("child computed first");
        let mut contrib: HashMap<VertexId, Vec<&Partial>> = HashMap::new();
        for &(z, y) in ctx.edges(color) {
            if let Some(list) = table.get(&z) {
                contrib.entry(y).or_default().extend(list.iter());
            }
        }
        if contrib.is_empty() {
            return Table::new();
        }
        contribs.push(contrib);
    }
    let candidates: Vec<VertexId> = match (images, shape.color[node]) {
        (Some(list), _) => list.to_vec(),
        (None, Some(color)) => {
            let mut tails: Vec<VertexId> = ctx.edges(color).iter().map(|&(u, _)| u).collect();
            tails.sort_unstable();
            tails.dedup();
            tails
        }
        (None, None) => {
            let mut heads: Vec<VertexId> = contribs[0].keys().copied().collect();
            heads.sort_unstable();
            heads
        }
    };
    let mut table = Table::new();
    for x in candidates {
        let wx = ctx.inst.weight(x);
        if wx > ctx.cap {
            continue;
        }
        let mut cur: Vec<Partial> = vec![(VSet::single(x), wx)];
        for contrib in &contribs {
            let Some(options) = contrib.get(&x) else {
                cur.clear();
                break;
            };
            let mut next = Vec::new();
            for &(set_a, w_a) in &cur {
                for &&(set_b, w_b) in options {
                    let w = w_a + w_b;
                    if w > ctx.cap {
                        continue;
                    }
                    if let Some(u) = set_a.disjoint_union(&set_b, ctx.max_vertices) {
                        next.push((u, w));
                    }
                }
            }
            normalize(&mut next);
            cur = next;
            if cur.is_empty() {
                break;
            }
        }
        if !cur.is_empty() {
            table.insert(x, cur);
        }
    }
    table
}

/// All embeddings of `shape`, one per vertex set with its best profit.
///
/// Tree shapes pay for every node except the root: each non-root image has
/// a selected out-neighbor. Cyclic shapes pay for every node.
pub fn embed_shape(ctx: &ColorContext<'_>, shape: &TreeShape) -> Vec<Embedding> {
    if shape.color.iter().flatten().any(|&c| !ctx.has_color(c)) || shape.num_vertices() > ctx.max_vertices {
        return Vec::new();
    }
    let k = shape.num_vertices();
    let root = shape.root();
    let children = shape.children();
    let order = shape.post_order();
    let mut found: HashMap<VSet, Embedding> = HashMap::new();
    let mut keep = |set: VSet, weight: u64, profit: u64| {
        let e = found.entry(set).or_insert(Embedding { vertices: set, weight, profit });
        e.profit = e.profit.max(profit);
    };

    match shape.kind {
        ShapeKind::Tree => {
            let mut tables: Vec<Option<Table>> = vec![None; k];
            for &v in &order {
                let t = node_table(ctx, shape, v, &children[v], &tables, None);
                if t.is_empty() {
                    return Vec::new();
                }
                tables[v] = Some(t);
            }
            let root_table = tables[root].take().unwrap_or_default();
            for (x, list) in root_table {
                if ctx.hard && !ctx.inst.graph().neighbors(x).is_empty() {
                    continue;
                }
                let px = ctx.inst.profit(x);
                for (set, w) in list {
                    keep(set, w, ctx.profit_of(&set) - px);
                }
            }
        }
        ShapeKind::Cyclic => {
            let root_color = shape.color[root].expect("cyclic root has a color");
            let head = shape.target[root].expect("cyclic root has an edge");
            // Nodes from the head of the root's edge up to (not including)
            // the root depend on the root's image.
            let mut on_path = vec![false; k];
            let mut x = head;
            while x != root {
                on_path[x] = true;
                x = shape.target[x].expect("cyclic shapes are total");
            }
            let mut tables: Vec<Option<Table>> = vec![None; k];
            for &v in &order {
                if v != root && !on_path[v] {
                    let t = node_table(ctx, shape, v, &children[v], &tables, None);
                    if t.is_empty() {
                        return Vec::new();
                    }
                    tables[v] = Some(t);
                }
            }
            let mut heads_of: HashMap<VertexId, Vec<VertexId>> = HashMap::new();
            for &(g0, y) in ctx.edges(root_color) {
                heads_of.entry(g0).or_default().push(y);
            }
            let mut roots: Vec<_> = heads_of.into_iter().collect();
            roots.sort_unstable();
            for (g0, heads) in roots {
                let mut local = tables.clone();
                let mut ok = true;
                for &v in &order {
                    if v == root || !on_path[v] {
                        continue;
                    }
                    let images = if v == head { Some(&heads[..]) } else { None };
                    let t = node_table(ctx, shape, v, &children[v], &local, images);
                    if t.is_empty() {
                        ok = false;
                        break;
                    }
                    local[v] = Some(t);
                }
                if !ok {
                    continue;
                }
                let t = node_table(ctx, shape, root, &children[root], &local, Some(&[g0]));
                for (_, list) in t {
                    for (set, w) in list {
                        keep(set, w, ctx.profit_of(&set));
                    }
                }
            }
        }
    }
    let mut out: Vec<Embedding> = found.into_values().collect();
    out.sort_unstable_by_key(|a| a.vertices);
    out
}

/// Colorful components under one coloring, computed by a subset DP over
/// color masks (bit `c - 1` for color `c`) instead of by shape.
pub struct ComponentTables<'c, 'a> {
    ctx: &'c ColorContext<'a>,
    /// In-trees per color mask: for every root image, the vertex sets of
    /// trees whose edges use exactly the colors of the mask.
    trees: HashMap<u32, Table>,
}

impl<'c, 'a> ComponentTables<'c, 'a> {
    pub fn new(ctx: &'c ColorContext<'a>) -> ComponentTables<'c, 'a> {
        ComponentTables { ctx, trees: HashMap::new() }
    }

    /// A tree on `mask` splits uniquely at the root: the child subtree
    /// holding the lowest color, and the rest.
    fn ensure(&mut self, mask: u32) {
        if self.trees.contains_key(&mask) {
            return;
        }
        let ctx = self.ctx;
        let mut table = Table::new();
        if mask == 0 {
            for v in 0..ctx.inst.num_vertices() {
                let w = ctx.inst.weight(v);
                if w <= ctx.cap && ctx.max_vertices >= 1 {
                    table.insert(v, vec![(VSet::single(v), w)]);
                }
            }
            self.trees.insert(mask, table);
            return;
        }
        if mask.count_ones() as usize + 1 > ctx.max_vertices {
            self.trees.insert(mask, table);
            return;
        }
        let low = mask & mask.wrapping_neg();
        let mut splits = Vec::new();
        let mut sub = mask;
        while sub != 0 {
            if sub & low != 0 {
                let mut bits = sub;
                while bits != 0 {
                    let bit = bits & bits.wrapping_neg();
                    bits ^= bit;
                    splits.push((bit, sub ^ bit, mask ^ sub));
                }
            }
            sub = (sub - 1) & mask;
        }
        for &(_, child, rest) in &splits {
            self.ensure(child);
            self.ensure(rest);
        }
        for (bit, child, rest) in splits {
            let color = bit.trailing_zeros() as u8 + 1;
            let (below, above) = (&self.trees[&child], &self.trees[&rest]);
            for &(u, v) in ctx.edges(color) {
                let (Some(a), Some(b)) = (below.get(&u), above.get(&v)) else { continue };
                let slot = table.entry(v).or_default();
                for &(sa, wa) in a {
                    for &(sb, wb) in b {
                        let w = wa + wb;
                        if w > ctx.cap {
                            continue;
                        }
                        if let Some(set) = sb.disjoint_union(&sa, ctx.max_vertices) {
                            slot.push((set, w));
                        }
                    }
                }
            }
        }
        table.retain(|_, list| {
            normalize(list);
            !list.is_empty()
        });
        self.trees.insert(mask, table);
    }

    /// Single-component embeddings whose edges use exactly the colors of
    /// `mask`, one per vertex set with its best profit. Trees pay for every
    /// vertex but the root; cycles with trees hanging off pay for all.
    pub fn components(&mut self, mask: u32) -> Vec<Embedding> {
        let ctx = self.ctx;
        let k = mask.count_ones() as usize;
        let mut found: HashMap<VSet, Embedding> = HashMap::new();
        let mut keep = |set: VSet, weight: u64, profit: u64| {
            let e = found.entry(set).or_insert(Embedding { vertices: set, weight, profit });
            e.profit = e.profit.max(profit);
        };
        if mask != 0 && k < ctx.max_vertices {
            self.ensure(mask);
            for (&x, list) in &self.trees[&mask] {
                if ctx.hard && !ctx.inst.graph().neighbors(x).is_empty() {
                    continue;
                }
                let px = ctx.inst.profit(x);
                for &(set, w) in list {
                    keep(set, w, ctx.profit_of(&set) - px);
                }
            }
        }
        if k >= 2 && k <= ctx.max_vertices {
            let mut bits = mask;
            while bits != 0 {
                let bit = bits & bits.wrapping_neg();
                bits ^= bit;
                let child = mask ^ bit;
                self.ensure(child);
                let trees = &self.trees[&child];
                for &(r, x) in ctx.edges(bit.trailing_zeros() as u8 + 1) {
                    let Some(list) = trees.get(&r) else { continue };
                    for &(set, w) in list {
                        if set.as_slice().binary_search(&(x as u32)).is_ok() {
                            keep(set, w, ctx.profit_of(&set));
                        }
                    }
                }
            }
        }
        let mut out: Vec<Embedding> = found.into_values().collect();
        out.sort_unstable_by_key(|a| a.vertices);
        out
    }
}

/// Frontier of all embeddings of one shape under one coloring, with relaxed
/// semantics and no vertex limit beyond the shape itself.
pub fn colorful_dp(inst: &Instance, coloring: &EdgeColoring, shape: &TreeShape) -> ParetoList {
    let ctx = ColorContext::new(inst, coloring, MAX_VERTICES, false);
    ParetoList::from_pairs(
        inst.knapsack(),
        ProfitMode::Optimization,
        embed_shape(&ctx, shape).into_iter().map(|e| (e.weight, e.profit)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorcode::shapes::{enumerate_cyclic_shapes, enumerate_shapes};
    use crate::instance::Graph;

    fn inst(n: usize, edges: &[(usize, usize)], w: &[u64], p: &[u64], s: u64) -> Instance {
        let g = Graph::new(true, n, edges.iter().copied()).unwrap();
        Instance::new(g, w.to_vec(), p.to_vec(), s, 0).unwrap()
    }

    fn coloring_of(inst: &Instance, b: usize, colors: &[u8]) -> EdgeColoring {
        assert_eq!(colors.len(), inst.graph().num_edges());
        EdgeColoring::new(b, colors.to_vec()).unwrap()
    }

    #[test]
    fn vset_union() {
        let a = VSet::single(3).disjoint_union(&VSet::single(1), 16).unwrap();
        assert_eq!(a.to_vec(), vec![1, 3]);
        assert!(a.disjoint_union(&VSet::single(3), 16).is_none());
        assert!(a.disjoint_union(&VSet::single(5), 2).is_none());
    }

    #[test]
    fn single_edge_base_case() {
        let i = inst(2, &[(0, 1)], &[2, 3], &[5, 7], 10);
        let c = coloring_of(&i, 1, &[1]);
        let shape = &enumerate_shapes(&[1])[0];
        assert_eq!(colorful_dp(&i, &c, shape).pairs(), &[(5, 5)]);
        let c2 = coloring_of(&i, 2, &[2]);
        assert!(colorful_dp(&i, &c2, shape).is_empty());
    }

    #[test]
    fn two_edge_path() {
        let i = inst(3, &[(0, 1), (1, 2)], &[1, 2, 4], &[3, 5, 9], 10);
        let c = coloring_of(&i, 2, &[1, 2]);
        let results: Vec<_> = enumerate_shapes(&[1, 2])
            .iter()
            .map(|s| colorful_dp(&i, &c, s))
            .filter(|l| !l.is_empty())
            .collect();
        assert_eq!(results.len(), 1);
        assert_eq!(results[0].pairs(), &[(7, 8)]);
    }

    #[test]
    fn cycles_pay_every_node() {
        let i = inst(2, &[(0, 1), (1, 0)], &[1, 1], &[2, 3], 10);
        let c = coloring_of(&i, 2, &[1, 2]);
        let shape = &enumerate_cyclic_shapes(&[1, 2])[0];
        assert_eq!(colorful_dp(&i, &c, shape).pairs(), &[(2, 5)]);
        // A single color cannot realize a two-colored cycle.
        let mono = coloring_of(&i, 2, &[1, 1]);
        assert!(colorful_dp(&i, &mono, shape).is_empty());
    }

    #[test]
    fn embeddings_are_injective() {
        // 0 -> 1 -> 0 colored 1 then 2: a path shape 1,2 would need to reuse
        // vertex 0 as both ends.
        let i = inst(2, &[(0, 1), (1, 0)], &[1, 1], &[1, 1], 10);
        let c = coloring_of(&i, 2, &[1, 2]);
        for shape in enumerate_shapes(&[1, 2]) {
            assert!(colorful_dp(&i, &c, &shape).is_empty());
        }
    }

    fn by_shapes(ctx: &ColorContext<'_>, mask: u32, b: usize) -> Vec<Embedding> {
        let palette: Vec<u8> = (0..b as u8).filter(|c| mask >> c & 1 == 1).map(|c| c + 1).collect();
        let mut found: HashMap<VSet, Embedding> = HashMap::new();
        let shapes = enumerate_shapes(&palette).into_iter().chain(enumerate_cyclic_shapes(&palette));
        for shape in shapes.filter(|s| s.num_vertices() <= ctx.max_vertices) {
            for e in embed_shape(ctx, &shape) {
                found.entry(e.vertices).and_modify(|x| x.profit = x.profit.max(e.profit)).or_insert(e);
            }
        }
        let mut out: Vec<Embedding> = found.into_values().collect();
        out.sort_unstable_by_key(|a| a.vertices);
        out
    }

    #[test]
    fn subset_dp_matches_shape_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..150 {
            let n = rng.gen_range(2..=6);
            let edges: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| u != v).collect();
            let edges: Vec<_> = edges.into_iter().filter(|_| rng.gen_bool(0.4)).collect();
            let w: Vec<u64> = (0..n).map(|_| rng.gen_range(0..4)).collect();
            let p: Vec<u64> = (0..n).map(|_| rng.gen_range(0..4)).collect();
            let i = inst(n, &edges, &w, &p, rng.gen_range(0..12));
            let b = rng.gen_range(1..=4);
            let colors: Vec<u8> = edges.iter().map(|_| rng.gen_range(1..=b as u8)).collect();
            let c = coloring_of(&i, b, &colors);
            for hard in [false, true] {
                let max_vertices = rng.gen_range(2..=b + 1);
                let ctx = ColorContext::new(&i, &c, max_vertices, hard);
                let mut tables = ComponentTables::new(&ctx);
                for mask in 1..1u32 << b {
                    assert_eq!(tables.components(mask), by_shapes(&ctx, mask, b), "mask {mask:b} hard {hard}");
                }
            }
        }
    }
}
