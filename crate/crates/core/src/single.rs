//! Bottleneck tree 2-coloring for one cardinality by threshold search.
//!
//! `M*(c) <= λ` exactly when the forest of tree edges heavier than `λ` has a
//! proper 2-coloring with `c` zeros. Each component of that forest is a tree
//! with a unique bipartition `(a, b)`, and contributes either `a` or `b`
//! zeros, so the test is a subset-sum question over the component sizes.
//! Feasibility only grows with `λ`, so a binary search over the sorted
//! distinct tree-edge weights finds `M*(c)`.

use std::collections::BTreeMap;

use crate::ext::ExtReal;
use crate::spanning::{bipartition, WeightedTree};

/// Bipartition class sizes `(a, b)`, `a >= b`, of each component of the
/// forest of tree edges strictly heavier than a threshold. Isolated vertices
/// appear as `(1, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSummary {
    pub items: Vec<(usize, usize)>,
}

/// Components of a threshold forest with each vertex's side of its
/// component's bipartition.
struct Forest {
    comp: Vec<usize>,
    side: Vec<u8>,
    /// Vertex count per side, per component.
    sizes: Vec<[usize; 2]>,
}

fn threshold_forest(tree: &WeightedTree, lambda: f64) -> Forest {
    let n = tree.len();
    let mut adj = vec![Vec::new(); n];
    for e in tree.edges().iter().filter(|e| e.w > lambda) {
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    let mut comp = vec![usize::MAX; n];
    let mut side = vec![0u8; n];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut count = [0usize; 2];
        comp[s] = id;
        stack.push(s);
        while let Some(u) = stack.pop() {
            count[side[u] as usize] += 1;
            for &v in &adj[u] {
                if comp[v] == usize::MAX {
                    comp[v] = id;
                    side[v] = 1 - side[u];
                    stack.push(v);
                }
            }
        }
        sizes.push(count);
    }
    Forest { comp, side, sizes }
}

/// Summarizes the forest `T_{>λ}` as subset-sum items.
pub fn summarize(tree: &WeightedTree, lambda: f64) -> ComponentSummary {
    let forest = threshold_forest(tree, lambda);
    ComponentSummary {
        items: forest
            .sizes
            .iter()
            .map(|&[x, y]| (x.max(y), x.min(y)))
            .collect(),
    }
}

/// Fixed-width bitset over sums `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    fn with_zero(len: usize) -> Self {
        let mut words = vec![0u64; len.div_ceil(64)];
        words[0] = 1;
        Bits { len, words }
    }

    fn get(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// `self |= self << shift`, truncated to `len`.
    fn or_shifted(&mut self, shift: usize) {
        let (ws, bs) = (shift / 64, shift % 64);
        let m = self.words.len();
        for i in (ws..m).rev() {
            let src = i - ws;
            let mut v = self.words[src] << bs;
            if bs > 0 && src > 0 {
                v |= self.words[src - 1] >> (64 - bs);
            }
            self.words[i] |= v;
        }
        let tail = self.len % 64;
        if tail > 0 {
            self.words[m - 1] &= (1u64 << tail) - 1;
        }
    }
}

/// Items whose choice matters, reduced to deltas `a - b > 0` and grouped by
/// binary splitting of equal deltas. Returns the fixed base sum, the chunk
/// list `(delta, copies)`, and the total delta.
fn chunks(items: &[(usize, usize)]) -> (usize, Vec<(usize, usize)>, usize) {
    let mut base = 0;
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &(a, b) in items {
        let (hi, lo) = (a.max(b), a.min(b));
        base += lo;
        if hi > lo {
            *counts.entry(hi - lo).or_default() += 1;
        }
    }
    let mut out = Vec::new();
    let mut total = 0;
    for (&d, &k) in &counts {
        total += d * k;
        let mut left = k;
        let mut p = 1;
        while left > 0 {
            let take = p.min(left);
            out.push((d, take));
            left -= take;
            p *= 2;
        }
    }
    (base, out, total)
}

/// Every reachable sum of `Σ x_i` with `x_i ∈ {a_i, b_i}`, as a membership
/// table over `0..=Σ max(a_i, b_i)`.
pub fn reachable_sums(items: &[(usize, usize)]) -> Vec<bool> {
    let (base, chunks, total) = chunks(items);
    let mut bits = Bits::with_zero(total + 1);
    for &(d, k) in &chunks {
        bits.or_shifted(d * k);
    }
    let mut out = vec![false; base + total + 1];
    for s in 0..=total {
        out[base + s] = bits.get(s);
    }
    out
}

/// Whether some choice `x_i ∈ {a_i, b_i}` per item sums to `target`.
pub fn subset_sum_reachable(items: &[(usize, usize)], target: usize) -> bool {
    let (base, chunks, total) = chunks(items);
    if target < base || target - base > total {
        return false;
    }
    let mut bits = Bits::with_zero(total + 1);
    for &(d, k) in &chunks {
        bits.or_shifted(d * k);
    }
    bits.get(target - base)
}

/// A choice per item (`true` = take the larger value) hitting `target`,
/// if one exists.
pub fn orientation_witness(items: &[(usize, usize)], target: usize) -> Option<Vec<bool>> {
    let (base, chunks, total) = chunks(items);
    if target < base || target - base > total {
        return None;
    }
    let mut layers = Vec::with_capacity(chunks.len() + 1);
    layers.push(Bits::with_zero(total + 1));
    for &(d, k) in &chunks {
        let mut next = layers.last().unwrap().clone();
        next.or_shifted(d * k);
        layers.push(next);
    }
    let mut rest = target - base;
    if !layers.last().unwrap().get(rest) {
        return None;
    }
    let mut taken: BTreeMap<usize, usize> = BTreeMap::new();
    for (j, &(d, k)) in chunks.iter().enumerate().rev() {
        if !layers[j].get(rest) {
            rest -= d * k;
            *taken.entry(d).or_default() += k;
        }
    }
    debug_assert_eq!(rest, 0);
    Some(
        items
            .iter()
            .map(|&(a, b)| {
                let d = a.abs_diff(b);
                if d == 0 {
                    return true;
                }
                match taken.get_mut(&d) {
                    Some(m) if *m > 0 => {
                        *m -= 1;
                        true
                    }
                    _ => false,
                }
            })
            .collect(),
    )
}

/// Whether `T_{>λ}` admits a proper 2-coloring with exactly `c` zeros.
pub fn feasible(tree: &WeightedTree, lambda: f64, c: usize) -> bool {
    c <= tree.len() && subset_sum_reachable(&summarize(tree, lambda).items, c)
}

/// Sorted distinct tree-edge weights.
fn candidates(tree: &WeightedTree) -> Vec<f64> {
    let mut ws: Vec<f64> = tree.edges().iter().map(|e| e.w).collect();
    ws.sort_by(f64::total_cmp);
    ws.dedup_by(|a, b| a == b);
    ws
}

/// Least candidate `λ` with `feasible(tree, λ, c)`. The largest candidate
/// always qualifies because its forest has no edges.
fn search(tree: &WeightedTree, c: usize) -> f64 {
    let cands = candidates(tree);
    let (mut lo, mut hi) = (0, cands.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(tree, cands[mid], c) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    cands[lo]
}

/// `M*(c)`: `-inf` when the tree's own proper coloring (or its swap) has `c`
/// zeros, otherwise the least tree-edge weight `λ` whose heavier edges can
/// be properly colored with `c` zeros.
pub fn solve_single(tree: &WeightedTree, c: usize) -> ExtReal {
    solve_single_with_witness(tree, c).0
}

/// [`solve_single`] plus a coloring with `c` zeros attaining `M*(c)`.
/// Panics if `c > n`.
pub fn solve_single_with_witness(tree: &WeightedTree, c: usize) -> (ExtReal, Vec<u8>) {
    let n = tree.len();
    assert!(c <= n, "cardinality {c} exceeds n = {n}");
    let chi = bipartition(tree);
    if chi.size0 == c {
        return (ExtReal::NEG_INF, chi.color);
    }
    if n - chi.size0 == c {
        return (ExtReal::NEG_INF, chi.swapped().color);
    }

    let target = c.min(n - c);
    let lambda = search(tree, target);
    let forest = threshold_forest(tree, lambda);
    let items: Vec<_> = forest
        .sizes
        .iter()
        .map(|&[x, y]| (x.max(y), x.min(y)))
        .collect();
    let take_larger =
        orientation_witness(&items, target).expect("search returned a feasible threshold");
    let flip = target != c;
    let color = (0..n)
        .map(|v| {
            let [x, y] = forest.sizes[forest.comp[v]];
            let larger_side = if x >= y { 0 } else { 1 };
            // Zeros go to the larger side iff the witness takes `a`.
            let zero_side = if take_larger[forest.comp[v]] {
                larger_side
            } else {
                1 - larger_side
            };
            let bit = u8::from(forest.side[v] != zero_side);
            if flip {
                1 - bit
            } else {
                bit
            }
        })
        .collect();
    (ExtReal::finite(lambda), color)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spanning::TreeEdge;

    fn path53() -> WeightedTree {
        WeightedTree::new(
            3,
            vec![TreeEdge { u: 0, v: 1, w: 5.0 }, TreeEdge { u: 1, v: 2, w: 3.0 }],
        )
        .unwrap()
    }

    #[test]
    fn reachable_examples() {
        // Enumerating the four orientations of (2,1),(3,2) gives {3,4,5}.
        let items = [(2, 1), (3, 2)];
        let got: Vec<usize> = (0..=6).filter(|&t| subset_sum_reachable(&items, t)).collect();
        assert_eq!(got, vec![3, 4, 5]);
        assert!(subset_sum_reachable(&items, 4));
        assert!(!subset_sum_reachable(&items, 2));

        for k in 0..70 {
            let ones = vec![(1, 0); k];
            let sums = reachable_sums(&ones);
            assert_eq!(sums.len(), k + 1);
            assert!(sums.iter().all(|&b| b));
            assert!(!subset_sum_reachable(&ones, k + 1));
        }
    }

    #[test]
    fn witness_hits_target() {
        let items = [(5, 1), (3, 3), (2, 0), (2, 0), (4, 1), (1, 0)];
        for t in 0..=20 {
            match orientation_witness(&items, t) {
                Some(pick) => {
                    let s: usize = items
                        .iter()
                        .zip(&pick)
                        .map(|(&(a, b), &p)| if p { a } else { b })
                        .sum();
                    assert_eq!(s, t);
                }
                None => assert!(!subset_sum_reachable(&items, t)),
            }
        }
    }

    #[test]
    fn shifts_cross_word_boundaries() {
        let items = vec![(70, 0), (65, 1), (1, 0)];
        let sums = reachable_sums(&items);
        let expect: Vec<usize> = vec![1, 2, 65, 66, 71, 72, 135, 136];
        let got: Vec<usize> = (0..sums.len()).filter(|&s| sums[s]).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn feasibility_examples() {
        let t = path53();
        for c in 0..=3 {
            assert!(feasible(&t, 5.0, c));
        }
        // Only edge ab survives at λ = 4: components (1,1) and (1,0).
        assert_eq!(summarize(&t, 4.0).items, vec![(1, 1), (1, 0)]);
        assert!(feasible(&t, 4.0, 1));
        assert!(feasible(&t, 4.0, 2));
        assert!(!feasible(&t, 4.0, 0));
        assert!(!feasible(&t, 4.0, 3));
    }

    #[test]
    fn path_single_values() {
        let t = path53();
        assert_eq!(solve_single(&t, 1), ExtReal::NEG_INF);
        assert_eq!(solve_single(&t, 2), ExtReal::NEG_INF);
        assert_eq!(solve_single(&t, 0), ExtReal::finite(5.0));
        assert_eq!(solve_single(&t, 3), ExtReal::finite(5.0));
        let (_, phi) = solve_single_with_witness(&t, 0);
        assert_eq!(phi, vec![1, 1, 1]);
    }

    #[test]
    fn tiny_trees() {
        let t0 = WeightedTree::new(0, vec![]).unwrap();
        assert_eq!(solve_single(&t0, 0), ExtReal::NEG_INF);
        let t1 = WeightedTree::new(1, vec![]).unwrap();
        assert_eq!(solve_single(&t1, 0), ExtReal::NEG_INF);
        assert_eq!(solve_single(&t1, 1), ExtReal::NEG_INF);
    }
}
