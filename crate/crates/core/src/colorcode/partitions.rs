//! Partitions of color subsets into component blocks.

/// Disjoint nonempty color blocks. Colors are `1..=b`; blocks are sorted and
/// ordered by their smallest color.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorPartition {
    pub blocks: Vec<Vec<u8>>,
}

impl ColorPartition {
    /// Vertices needed if every block is realized as a tree component.
    pub fn tree_vertices(&self) -> usize {
        self.blocks.iter().map(|b| b.len() + 1).sum()
    }

    /// Bitmask per block, bit `c - 1` for color `c`.
    pub fn masks(&self) -> Vec<u32> {
        self.blocks
            .iter()
            .map(|b| b.iter().fold(0, |m, &c| m | 1 << (c - 1)))
            .collect()
    }
}

/// All set partitions of `elems`, in restricted-growth order.
pub fn set_partitions(elems: &[u8]) -> Vec<Vec<Vec<u8>>> {
    let mut out = Vec::new();
    let mut assign = vec![0usize; elems.len()];
    fn rec(i: usize, used: usize, elems: &[u8], assign: &mut [usize], out: &mut Vec<Vec<Vec<u8>>>) {
        if i == elems.len() {
            let mut blocks = vec![Vec::new(); used];
            for (j, &b) in assign.iter().enumerate() {
                blocks[b].push(elems[j]);
            }
            out.push(blocks);
            return;
        }
        for b in 0..=used {
            assign[i] = b;
            rec(i + 1, used.max(b + 1), elems, assign, out);
        }
    }
    if elems.is_empty() {
        return vec![Vec::new()];
    }
    rec(0, 0, elems, &mut assign, &mut out);
    out
}

/// Every partition of every nonempty subset of `1..=b` whose tree vertex
/// count is at most `max_vertices`.
pub fn enumerate_partitions(b: usize, max_vertices: usize) -> Vec<ColorPartition> {
    enumerate_filtered(b, |blocks| blocks.iter().map(|x| x.len() + 1).sum::<usize>() <= max_vertices)
}

fn enumerate_filtered(b: usize, keep: impl Fn(&[Vec<u8>]) -> bool) -> Vec<ColorPartition> {
    let mut out = Vec::new();
    for subset in 1u32..(1 << b) {
        let colors: Vec<u8> = (0..b as u8).filter(|c| subset >> c & 1 == 1).map(|c| c + 1).collect();
        for blocks in set_partitions(&colors) {
            if keep(&blocks) {
                out.push(ColorPartition { blocks });
            }
        }
    }
    out
}

/// Partitions usable by a solver with vertex budget `b`. A block of `k`
/// colors needs at least `max(k, 2)` vertices: `k + 1` as a tree, `k` as a
/// component containing a cycle.
pub(crate) fn solver_partitions(b: usize) -> Vec<Vec<u32>> {
    enumerate_filtered(b, |blocks| blocks.iter().map(|x| x.len().max(2)).sum::<usize>() <= b)
        .into_iter()
        .map(|p| p.masks())
        .collect()
}
