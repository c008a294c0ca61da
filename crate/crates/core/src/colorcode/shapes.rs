//! Edge-labeled component shapes.
//!
//! Every node of a shape owns at most one outgoing edge, labeled with a
//! distinct color of its block. A tree shape has one extra node, the root,
//! without an outgoing edge. A cyclic shape has no root: every node has an
//! outgoing edge, so the component contains exactly one directed cycle.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShapeKind {
    Tree,
    Cyclic,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeShape {
    pub kind: ShapeKind,
    /// Color of each node's outgoing edge; `None` only for a tree root.
    pub color: Vec<Option<u8>>,
    /// Head of each node's outgoing edge.
    pub target: Vec<Option<usize>>,
}

impl TreeShape {
    pub fn num_vertices(&self) -> usize {
        self.color.len()
    }

    /// The node the DP is anchored at: the tree root, or the cycle node with
    /// the smallest color.
    pub fn root(&self) -> usize {
        match self.kind {
            ShapeKind::Tree => self.target.iter().position(Option::is_none).expect("tree root"),
            ShapeKind::Cyclic => {
                let on_cycle = self.cycle_nodes();
                *on_cycle
                    .iter()
                    .min_by_key(|&&i| self.color[i])
                    .expect("cyclic shape has a cycle")
            }
        }
    }

    fn cycle_nodes(&self) -> Vec<usize> {
        let k = self.num_vertices();
        // Walking k steps from any node lands on the cycle.
        let mut x = 0;
        for _ in 0..k {
            x = self.target[x].expect("cyclic shapes are total");
        }
        let mut cycle = vec![x];
        let mut y = self.target[x].unwrap();
        while y != x {
            cycle.push(y);
            y = self.target[y].unwrap();
        }
        cycle
    }

    /// In-neighbors of every node, leaving out the outgoing edge of the root.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let root = self.root();
        let mut ch = vec![Vec::new(); self.num_vertices()];
        for (i, t) in self.target.iter().enumerate() {
            if let Some(t) = *t {
                if i != root {
                    ch[t].push(i);
                }
            }
        }
        ch
    }

    /// Nodes ordered so that every node follows all of its children.
    pub fn post_order(&self) -> Vec<usize> {
        let ch = self.children();
        let mut order = Vec::with_capacity(self.num_vertices());
        let mut stack = vec![(self.root(), false)];
        while let Some((v, done)) = stack.pop() {
            if done {
                order.push(v);
            } else {
                stack.push((v, true));
                for &c in &ch[v] {
                    stack.push((c, false));
                }
            }
        }
        order
    }

    /// Same structure with color `i` replaced by `palette[i]`.
    pub fn relabel(&self, palette: &[u8]) -> TreeShape {
        TreeShape {
            kind: self.kind,
            color: self.color.iter().map(|c| c.map(|c| palette[c as usize])).collect(),
            target: self.target.clone(),
        }
    }
}

/// Iterates all functions `[k] -> [range]` as digit vectors.
fn for_each_function(k: usize, range: usize, mut f: impl FnMut(&[usize])) {
    let mut digits = vec![0; k];
    loop {
        f(&digits);
        let mut i = 0;
        loop {
            if i == k {
                return;
            }
            digits[i] += 1;
            if digits[i] < range {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Every tree shape whose edges are labeled bijectively by `block`. Node 0
/// is the root; node `i + 1` owns the edge colored `block[i]`.
pub fn enumerate_shapes(block: &[u8]) -> Vec<TreeShape> {
    let k = block.len();
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    // parent[i] in 0..=k for node i + 1; 0 is the root.
    for_each_function(k, k + 1, |parent| {
        if parent.iter().enumerate().any(|(i, &p)| p == i + 1) {
            return;
        }
        let reaches_root = (0..k).all(|i| {
            let mut x = i + 1;
            for _ in 0..=k {
                if x == 0 {
                    return true;
                }
                x = parent[x - 1];
            }
            x == 0
        });
        if !reaches_root {
            return;
        }
        let mut color = vec![None];
        let mut target = vec![None];
        for i in 0..k {
            color.push(Some(block[i]));
            target.push(Some(parent[i]));
        }
        out.push(TreeShape { kind: ShapeKind::Tree, color, target });
    });
    out
}

/// Every connected shape in which all nodes own an edge. Node `i` owns the
/// edge colored `block[i]`. Needs at least two colors.
pub fn enumerate_cyclic_shapes(block: &[u8]) -> Vec<TreeShape> {
    let k = block.len();
    let mut out = Vec::new();
    if k < 2 {
        return out;
    }
    for_each_function(k, k, |f| {
        if f.iter().enumerate().any(|(i, &t)| t == i) {
            return;
        }
        // Weakly connected: union-find over the edges i -> f(i).
        let mut rep: Vec<usize> = (0..k).collect();
        fn find(rep: &mut [usize], mut x: usize) -> usize {
            while rep[x] != x {
                x = rep[x];
            }
            x
        }
        for (i, &t) in f.iter().enumerate() {
            let (a, b) = (find(&mut rep, i), find(&mut rep, t));
            rep[a] = b;
        }
        let r0 = find(&mut rep, 0);
        if (0..k).any(|i| find(&mut rep, i) != r0) {
            return;
        }
        out.push(TreeShape {
            kind: ShapeKind::Cyclic,
            color: block.iter().map(|&c| Some(c)).collect(),
            target: f.iter().map(|&t| Some(t)).collect(),
        });
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    /// Rooted forests on `k` labeled nodes, by the size of the tree holding
    /// the first node. A tree shape on a block of `k` colors is such a forest
    /// whose roots hang off the anonymous root.
    fn forests(k: u64) -> u64 {
        if k == 0 {
            return 1;
        }
        (1..=k).map(|j| binom(k - 1, j - 1) * j.pow(j as u32 - 1) * forests(k - j)).sum()
    }

    /// Connected functional graphs without fixed points: choose the cycle,
    /// then a rooted forest on the rest hanging off the cycle.
    fn cyclic(k: u64) -> u64 {
        let fact = |x: u64| (1..=x).product::<u64>();
        (2..=k)
            .map(|c| {
                let cycles = binom(k, c) * fact(c - 1);
                let hang = if c == k { 1 } else { c * k.pow((k - c - 1) as u32) };
                cycles * hang
            })
            .sum()
    }

    #[test]
    fn single_color() {
        let shapes = enumerate_shapes(&[1]);
        assert_eq!(shapes.len(), 1);
        assert_eq!(shapes[0].target, vec![None, Some(0)]);
        assert!(enumerate_cyclic_shapes(&[1]).is_empty());
    }

    #[test]
    fn two_colors() {
        // Two paths (either color nearer the root) and one cherry.
        assert_eq!(enumerate_shapes(&[1, 2]).len(), 3);
        assert_eq!(enumerate_cyclic_shapes(&[1, 2]).len(), 1);
        assert_eq!(enumerate_cyclic_shapes(&[1, 2, 3]).len(), 8);
    }

    #[test]
    fn counts_match_independent_oracles() {
        for k in 1..=5u8 {
            let block: Vec<u8> = (1..=k).collect();
            let trees = enumerate_shapes(&block);
            assert_eq!(trees.len() as u64, forests(k as u64));
            assert_eq!(trees.len() as u64, (k as u64 + 1).pow(k as u32 - 1));
            assert_eq!(trees.iter().collect::<HashSet<_>>().len(), trees.len());
            let cyc = enumerate_cyclic_shapes(&block);
            assert_eq!(cyc.len() as u64, cyclic(k as u64));
            assert_eq!(cyc.iter().collect::<HashSet<_>>().len(), cyc.len());
        }
    }

    #[test]
    fn post_order_covers_every_node() {
        for shape in enumerate_shapes(&[1, 2, 3]).into_iter().chain(enumerate_cyclic_shapes(&[1, 2, 3])) {
            let order = shape.post_order();
            assert_eq!(order.len(), shape.num_vertices());
            assert_eq!(*order.last().unwrap(), shape.root());
            let ch = shape.children();
            let pos: Vec<usize> = {
                let mut p = vec![0; order.len()];
                for (i, &v) in order.iter().enumerate() {
                    p[v] = i;
                }
                p
            };
            for (v, kids) in ch.iter().enumerate() {
                for &c in kids {
                    assert!(pos[c] < pos[v]);
                }
            }
        }
    }
}
