//! Lists of undominated `(weight, profit)` pairs.

use crate::error::{NkError, Result};

/// Whether profits are reported as-is or clamped at a demand `d`.
///
/// Clamping bounds list length by `min(cap, d) + 1`, which is all a decision
/// procedure needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProfitMode {
    Optimization,
    Decision { demand: u64 },
}

impl ProfitMode {
    #[inline]
    pub fn clamp(self, profit: u64) -> u64 {
        match self {
            ProfitMode::Optimization => profit,
            ProfitMode::Decision { demand } => profit.min(demand),
        }
    }
}

/// A frontier of `(weight, profit)` pairs, strictly increasing in both
/// coordinates, with every weight at most `cap`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParetoList {
    pairs: Vec<(u64, u64)>,
    cap: u64,
    mode: ProfitMode,
}

/// Bucketed convolution is used while the weight range is this small.
const BUCKET_LIMIT: u64 = 1 << 16;

impl ParetoList {
    pub fn new(cap: u64, mode: ProfitMode) -> ParetoList {
        ParetoList { pairs: Vec::new(), cap, mode }
    }

    /// The list holding only `(0, 0)`: the neutral element of [`combine`](Self::combine).
    pub fn unit(cap: u64, mode: ProfitMode) -> ParetoList {
        ParetoList { pairs: vec![(0, 0)], cap, mode }
    }

    pub fn from_pairs(
        cap: u64,
        mode: ProfitMode,
        pairs: impl IntoIterator<Item = (u64, u64)>,
    ) -> ParetoList {
        let mut raw: Vec<(u64, u64)> = pairs
            .into_iter()
            .filter(|&(w, _)| w <= cap)
            .map(|(w, p)| (w, mode.clamp(p)))
            .collect();
        raw.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        ParetoList { pairs: sweep(raw), cap, mode }
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn mode(&self) -> ProfitMode {
        self.mode
    }

    /// Highest profit on the frontier, with the lightest weight achieving it.
    pub fn best(&self) -> Option<(u64, u64)> {
        self.pairs.last().copied()
    }

    pub fn best_profit(&self) -> Option<u64> {
        self.pairs.last().map(|&(_, p)| p)
    }

    /// Inserts a pair, keeping the list undominated. Pairs over the cap are
    /// ignored. Returns whether the list changed.
    pub fn insert(&mut self, weight: u64, profit: u64) -> bool {
        if weight > self.cap {
            return false;
        }
        let profit = self.mode.clamp(profit);
        let at = self.pairs.partition_point(|&(w, _)| w <= weight);
        if at > 0 && self.pairs[at - 1].1 >= profit {
            return false;
        }
        // Everything from the first pair with weight >= `weight` whose profit
        // does not exceed `profit` is now dominated; those pairs are contiguous.
        let start = if at > 0 && self.pairs[at - 1].0 == weight { at - 1 } else { at };
        let end = start + self.pairs[start..].partition_point(|&(_, p)| p <= profit);
        self.pairs.splice(start..end, std::iter::once((weight, profit)));
        true
    }

    /// Builder-style [`insert`](Self::insert).
    pub fn with(mut self, weight: u64, profit: u64) -> ParetoList {
        self.insert(weight, profit);
        self
    }

    fn check_compatible(&self, other: &ParetoList) -> Result<()> {
        if self.cap != other.cap || self.mode != other.mode {
            return Err(NkError::ModeMismatch);
        }
        Ok(())
    }

    pub fn union(&self, other: &ParetoList) -> Result<ParetoList> {
        self.check_compatible(other)?;
        let mut merged = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.len() || j < other.len() {
            let take_left = match (self.pairs.get(i), other.pairs.get(j)) {
                (Some(a), Some(b)) => a.0 < b.0 || (a.0 == b.0 && a.1 >= b.1),
                (Some(_), None) => true,
                _ => false,
            };
            if take_left {
                merged.push(self.pairs[i]);
                i += 1;
            } else {
                merged.push(other.pairs[j]);
                j += 1;
            }
        }
        Ok(ParetoList { pairs: sweep(merged), cap: self.cap, mode: self.mode })
    }

    /// In-place union.
    pub fn absorb(&mut self, other: &ParetoList) -> Result<()> {
        if other.is_empty() {
            return self.check_compatible(other);
        }
        if self.is_empty() {
            self.check_compatible(other)?;
            self.pairs = other.pairs.clone();
            return Ok(());
        }
        *self = self.union(other)?;
        Ok(())
    }

    /// Adds constant offsets to every pair, dropping pairs that leave `[0, cap]`
    /// in weight or become negative in profit.
    pub fn shifted(&self, weight_offset: i64, profit_offset: i64) -> Result<ParetoList> {
        let mut out = Vec::with_capacity(self.len());
        for &(w, p) in &self.pairs {
            if let Some(pair) = self.offset_pair(w, p, weight_offset, profit_offset)? {
                out.push(pair);
            }
        }
        Ok(ParetoList { pairs: sweep(out), cap: self.cap, mode: self.mode })
    }

    fn offset_pair(&self, w: u64, p: u64, dw: i64, dp: i64) -> Result<Option<(u64, u64)>> {
        let w = (w as i128) + dw as i128;
        let p = (p as i128) + dp as i128;
        if w < 0 || w > self.cap as i128 || p < 0 {
            return Ok(None);
        }
        let p = u64::try_from(p).map_err(|_| NkError::Overflow("profit"))?;
        Ok(Some((w as u64, self.mode.clamp(p))))
    }

    /// All pairwise sums plus the given offsets, reduced to the frontier.
    pub fn combine(
        &self,
        other: &ParetoList,
        weight_offset: i64,
        profit_offset: i64,
    ) -> Result<ParetoList> {
        self.check_compatible(other)?;
        let (cap, mode) = (self.cap, self.mode);
        if self.is_empty() || other.is_empty() {
            return Ok(ParetoList::new(cap, mode));
        }
        let sum = |a: (u64, u64), b: (u64, u64)| -> Result<Option<(u64, u64)>> {
            let w = a.0.checked_add(b.0).ok_or(NkError::Overflow("weight"))?;
            let p = a.1.checked_add(b.1).ok_or(NkError::Overflow("profit"))?;
            self.offset_pair_raw(w, p, weight_offset, profit_offset)
        };
        let products = self.len() as u64 * other.len() as u64;
        let pairs = if cap < BUCKET_LIMIT && cap < products.saturating_mul(4) {
            let mut best: Vec<Option<u64>> = vec![None; cap as usize + 1];
            for &a in &self.pairs {
                for &b in &other.pairs {
                    if let Some((w, p)) = sum(a, b)? {
                        let slot = &mut best[w as usize];
                        if slot.is_none_or(|q| q < p) {
                            *slot = Some(p);
                        }
                    }
                }
            }
            let mut out = Vec::new();
            for (w, slot) in best.into_iter().enumerate() {
                if let Some(p) = slot {
                    if out.last().is_none_or(|&(_, q)| p > q) {
                        out.push((w as u64, p));
                    }
                }
            }
            out
        } else {
            let mut raw = Vec::with_capacity(products as usize);
            for &a in &self.pairs {
                for &b in &other.pairs {
                    if let Some(pair) = sum(a, b)? {
                        raw.push(pair);
                    }
                }
            }
            raw.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
            sweep(raw)
        };
        Ok(ParetoList { pairs, cap, mode })
    }

    fn offset_pair_raw(&self, w: u64, p: u64, dw: i64, dp: i64) -> Result<Option<(u64, u64)>> {
        if dw == 0 && dp == 0 {
            return Ok((w <= self.cap).then(|| (w, self.mode.clamp(p))));
        }
        self.offset_pair(w, p, dw, dp)
    }
}

/// Keeps the pairs of a weight-sorted sequence whose profit beats everything
/// before them. Among equal weights the first (highest profit, given the
/// callers' ordering) survives.
fn sweep(sorted: Vec<(u64, u64)>) -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = Vec::with_capacity(sorted.len());
    for (w, p) in sorted {
        match out.last_mut() {
            Some(last) if last.1 >= p => {}
            Some(last) if last.0 == w => last.1 = p,
            _ => out.push((w, p)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const OPT: ProfitMode = ProfitMode::Optimization;

    fn list(cap: u64, pairs: &[(u64, u64)]) -> ParetoList {
        ParetoList::from_pairs(cap, OPT, pairs.iter().copied())
    }

    /// Quadratic reference filter.
    fn undominated(cap: u64, mode: ProfitMode, pairs: &[(u64, u64)]) -> Vec<(u64, u64)> {
        let clamped: Vec<_> = pairs
            .iter()
            .filter(|p| p.0 <= cap)
            .map(|&(w, p)| (w, mode.clamp(p)))
            .collect();
        let mut keep: Vec<(u64, u64)> = clamped
            .iter()
            .copied()
            .filter(|&(w, p)| {
                !clamped.iter().any(|&(w2, p2)| w2 <= w && p2 >= p && (w2, p2) != (w, p))
            })
            .collect();
        keep.sort_unstable();
        keep.dedup();
        keep
    }

    #[test]
    fn insert_examples() {
        assert_eq!(list(10, &[(1, 5)]).with(3, 9).pairs(), &[(1, 5), (3, 9)]);
        assert_eq!(list(10, &[(1, 5)]).with(2, 4).pairs(), &[(1, 5)]);
        assert_eq!(list(4, &[(1, 5)]).with(5, 13).pairs(), &[(1, 5)]);
        assert_eq!(list(10, &[(1, 5), (2, 6), (4, 7)]).with(1, 7).pairs(), &[(1, 7)]);
        assert_eq!(list(10, &[(1, 5), (4, 9)]).with(0, 6).pairs(), &[(0, 6), (4, 9)]);
    }

    #[test]
    fn union_examples() {
        let u = list(10, &[(0, 0)]).union(&list(10, &[(1, 5)])).unwrap();
        assert_eq!(u.pairs(), &[(0, 0), (1, 5)]);
        let u = list(10, &[(1, 5)]).union(&list(10, &[(1, 3)])).unwrap();
        assert_eq!(u.pairs(), &[(1, 5)]);
        let x = list(10, &[(2, 3), (5, 8)]);
        assert_eq!(ParetoList::new(10, OPT).union(&x).unwrap(), x);
        assert!(matches!(x.union(&list(9, &[])), Err(NkError::ModeMismatch)));
    }

    #[test]
    fn combine_examples() {
        let a = list(4, &[(1, 5), (3, 9)]);
        let b = list(4, &[(0, 0), (2, 4)]);
        assert_eq!(a.combine(&b, 0, 0).unwrap().pairs(), &[(1, 5), (3, 9)]);
        assert_eq!(a.combine(&ParetoList::unit(4, OPT), 0, 0).unwrap(), a);
        let s = list(4, &[(2, 2)]);
        assert_eq!(s.combine(&s, -2, -2).unwrap().pairs(), &[(2, 2)]);
        assert_eq!(s.combine(&s, -5, 0).unwrap().pairs(), &[] as &[(u64, u64)]);
    }

    #[test]
    fn combine_overflow_is_an_error() {
        let big = ParetoList::from_pairs(u64::MAX, OPT, [(u64::MAX - 1, 1)]);
        assert!(matches!(big.combine(&big, 0, 0), Err(NkError::Overflow(_))));
    }

    #[test]
    fn decision_mode_clamps() {
        let d = ProfitMode::Decision { demand: 5 };
        let l = ParetoList::from_pairs(10, d, [(1, 3), (2, 7), (4, 9)]);
        assert_eq!(l.pairs(), &[(1, 3), (2, 5)]);
        let shifted = l.shifted(0, 4).unwrap();
        assert_eq!(shifted.pairs(), &[(1, 5)]);
    }

    fn pairs_strategy() -> impl Strategy<Value = Vec<(u64, u64)>> {
        prop::collection::vec((0u64..=30, 0u64..=30), 0..=50)
    }

    proptest! {
        #[test]
        fn insert_matches_quadratic_filter(pairs in pairs_strategy(), cap in 0u64..=35, demand in prop::option::of(0u64..=35)) {
            let mode = demand.map_or(OPT, |demand| ProfitMode::Decision { demand });
            let mut l = ParetoList::new(cap, mode);
            for &(w, p) in &pairs {
                l.insert(w, p);
            }
            prop_assert_eq!(l.pairs(), &undominated(cap, mode, &pairs)[..]);
            prop_assert_eq!(&ParetoList::from_pairs(cap, mode, pairs.iter().copied()), &l);
            if let Some(d) = demand {
                prop_assert!(l.len() as u64 <= cap.min(d) + 1);
            }
        }

        #[test]
        fn combine_matches_reference(a in pairs_strategy(), b in pairs_strategy(), cap in 0u64..=70, dw in -5i64..=5) {
            let la = list(cap, &a);
            let lb = list(cap, &b);
            let got = la.combine(&lb, dw, 0).unwrap();
            let mut sums = Vec::new();
            for &(w1, p1) in la.pairs() {
                for &(w2, p2) in lb.pairs() {
                    let w = w1 as i64 + w2 as i64 + dw;
                    if w >= 0 {
                        sums.push((w as u64, p1 + p2));
                    }
                }
            }
            prop_assert_eq!(got.pairs(), &undominated(cap, OPT, &sums)[..]);
        }

        #[test]
        fn combine_is_commutative_and_associative(a in pairs_strategy(), b in pairs_strategy(), c in pairs_strategy(), cap in 0u64..=90) {
            let (la, lb, lc) = (list(cap, &a), list(cap, &b), list(cap, &c));
            prop_assert_eq!(la.combine(&lb, 0, 0).unwrap(), lb.combine(&la, 0, 0).unwrap());
            let left = la.combine(&lb, 0, 0).unwrap().combine(&lc, 0, 0).unwrap();
            let right = la.combine(&lb.combine(&lc, 0, 0).unwrap(), 0, 0).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn union_matches_reference(a in pairs_strategy(), b in pairs_strategy()) {
            let u = list(40, &a).union(&list(40, &b)).unwrap();
            let all: Vec<_> = a.iter().chain(b.iter()).copied().collect();
            prop_assert_eq!(u.pairs(), &undominated(40, OPT, &all)[..]);
        }
    }
}
