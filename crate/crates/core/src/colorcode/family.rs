//! A deterministic family of edge colorings.
//!
//! Edges are first hashed into `b²` buckets by `h_a(e) = ((a·(e+1)) mod p)
//! mod b²` for every multiplier `a` in `1..p`, where `p` is the smallest
//! prime above `max(m, b²)`. Buckets are then mapped to colors by every map
//! of a covering family: a set of maps `[b²] -> [b]` such that each `b`-subset
//! of buckets is mapped injectively by at least one of them. For `b <= 3` the
//! covering family is computed greedily and is exact; above that it is a
//! fixed pseudo-random sample.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Smallest prime strictly greater than `x`.
pub fn next_prime(x: usize) -> usize {
    let is_prime = |n: usize| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
    (x + 1..).find(|&n| is_prime(n)).expect("primes are unbounded")
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn injective_on(map: &[u8], subset: &[usize]) -> bool {
    let mut seen = 0u32;
    for &x in subset {
        let bit = 1 << map[x];
        if seen & bit != 0 {
            return false;
        }
        seen |= bit;
    }
    true
}

/// Maps `[b²] -> [b]` (colors `0..b`) covering every `b`-subset of buckets.
pub fn covering_maps(b: usize) -> Vec<Vec<u8>> {
    let r = b * b;
    if b <= 1 {
        return vec![vec![0; r]];
    }
    let targets = subsets(r, b);
    if b <= 3 {
        let all: Vec<Vec<u8>> = (0..(b as u64).pow(r as u32))
            .map(|mut code| {
                (0..r)
                    .map(|_| {
                        let d = (code % b as u64) as u8;
                        code /= b as u64;
                        d
                    })
                    .collect()
            })
            .collect();
        let mut uncovered: Vec<bool> = vec![true; targets.len()];
        let mut left = targets.len();
        let mut chosen = Vec::new();
        while left > 0 {
            let (best, gain) = all
                .iter()
                .enumerate()
                .map(|(i, map)| {
                    let gain = targets
                        .iter()
                        .zip(&uncovered)
                        .filter(|(t, u)| **u && injective_on(map, t))
                        .count();
                    (i, gain)
                })
                .max_by_key(|&(i, gain)| (gain, std::cmp::Reverse(i)))
                .expect("maps exist");
            debug_assert!(gain > 0);
            for (t, u) in targets.iter().zip(uncovered.iter_mut()) {
                if *u && injective_on(&all[best], t) {
                    *u = false;
                    left -= 1;
                }
            }
            chosen.push(all[best].clone());
        }
        return chosen;
    }
    let ln_targets = (targets.len() as f64).ln();
    let count = ((b as f64).exp() * ln_targets).ceil().min(2000.0) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e6b_636f_6c6f_7273);
    (0..count).map(|_| (0..r).map(|_| rng.gen_range(0..b as u8)).collect()).collect()
}

/// The family for `m` edges and `b` colors, as color vectors with colors
/// `1..=b`, without duplicate colorings.
pub fn coloring_family(m: usize, b: usize) -> Vec<Vec<u8>> {
    let r = b * b;
    let p = next_prime(m.max(r));
    let maps = covering_maps(b);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in 1..p {
        let buckets: Vec<usize> = (0..m).map(|e| (a * (e + 1)) % p % r).collect();
        for map in &maps {
            let colors: Vec<u8> = buckets.iter().map(|&x| map[x] + 1).collect();
            if seen.insert(colors.clone()) {
                out.push(colors);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert_eq!(next_prime(1), 2);
        assert_eq!(next_prime(9), 11);
        assert_eq!(next_prime(13), 17);
    }

    #[test]
    fn covering_maps_cover() {
        for b in 1..=3 {
            let maps = covering_maps(b);
            for t in subsets(b * b, b) {
                assert!(maps.iter().any(|m| injective_on(m, &t)), "b={b} subset {t:?}");
            }
        }
    }

    #[test]
    fn family_is_perfect_at_desk_scale() {
        for b in 1..=3 {
            for m in 0..=12 {
                let family = coloring_family(m, b);
                for k in 1..=b.min(m) {
                    for t in subsets(m, k) {
                        let hit = family.iter().any(|c| {
                            let mut seen = HashSet::new();
                            t.iter().all(|&e| seen.insert(c[e]))
                        });
                        assert!(hit, "m={m} b={b} edges {t:?}");
                    }
                }
            }
        }
    }
}
