//! Extremal spanning trees of the complete graph (dense Prim), the tree's
//! proper 2-coloring, and same-class extremes.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::oracle::{assert_pair, WeightOracle};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TreeEdge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// A spanning tree on `0..n` with `n - 1` weighted edges, kept in insertion
/// order.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedTree {
    n: usize,
    edges: Vec<TreeEdge>,
}

impl WeightedTree {
    /// Validates that `edges` form a spanning tree on `0..n`.
    pub fn new(n: usize, edges: Vec<TreeEdge>) -> Result<Self> {
        if edges.len() + 1 != n.max(1) {
            return Err(Error::contract(format!(
                "a tree on {n} vertices needs {} edges, got {}",
                n.saturating_sub(1),
                edges.len()
            )));
        }
        let mut uf = UnionFind::new(n);
        for e in &edges {
            if e.u >= n || e.v >= n || e.u == e.v {
                return Err(Error::contract(format!("bad edge ({}, {})", e.u, e.v)));
            }
            if e.w.is_nan() || e.w.is_infinite() {
                return Err(Error::contract(format!("edge weight {} is not finite", e.w)));
            }
            if !uf.union(e.u, e.v) {
                return Err(Error::contract(format!("edge ({}, {}) closes a cycle", e.u, e.v)));
            }
        }
        Ok(WeightedTree { n, edges })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    pub fn max_edge_weight(&self) -> ExtReal {
        self.edges
            .iter()
            .map(|e| ExtReal::finite(e.w))
            .max()
            .unwrap_or(ExtReal::NEG_INF)
    }

    /// Same tree with every edge weight negated.
    pub fn negated(&self) -> WeightedTree {
        WeightedTree {
            n: self.n,
            edges: self.edges.iter().map(|e| TreeEdge { w: -e.w, ..*e }).collect(),
        }
    }

    /// Same tree with every edge weight mapped through `f`.
    pub fn map_weights(&self, f: impl Fn(f64) -> f64) -> WeightedTree {
        WeightedTree {
            n: self.n,
            edges: self.edges.iter().map(|e| TreeEdge { w: f(e.w), ..*e }).collect(),
        }
    }

    /// Neighbor lists `(neighbor, weight)`, each in edge insertion order.
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push((e.v, e.w));
            adj[e.v].push((e.u, e.w));
        }
        adj
    }

    /// Rooted view. Children appear in edge insertion order.
    pub fn rooted(&self, root: usize) -> RootedTree {
        let n = self.n;
        let adj = self.adjacency();
        let mut parent = vec![usize::MAX; n];
        let mut parent_weight = vec![f64::NEG_INFINITY; n];
        let mut children = vec![Vec::new(); n];
        let mut preorder = Vec::with_capacity(n);
        if n == 0 {
            return RootedTree {
                root,
                parent,
                parent_weight,
                children,
                preorder,
            };
        }
        assert!(root < n);
        let mut seen = vec![false; n];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(u) = stack.pop() {
            preorder.push(u);
            for &(v, w) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = u;
                    parent_weight[v] = w;
                    children[u].push(v);
                }
            }
            // Push in reverse so the preorder visits children in order.
            for &v in children[u].iter().rev() {
                stack.push(v);
            }
        }
        RootedTree {
            root,
            parent,
            parent_weight,
            children,
            preorder,
        }
    }

    /// Debug dump: one `u v w` line per edge, in insertion order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            writeln!(out, "{} {} {}", e.u, e.v, e.w).unwrap();
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct RootedTree {
    pub root: usize,
    /// `usize::MAX` for the root.
    pub parent: Vec<usize>,
    /// Weight of the edge to the parent; `-inf` for the root.
    pub parent_weight: Vec<f64>,
    pub children: Vec<Vec<usize>>,
    /// Every vertex appears after its parent.
    pub preorder: Vec<usize>,
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        match self.rank[a].cmp(&self.rank[b]) {
            std::cmp::Ordering::Less => self.parent[a] = b,
            std::cmp::Ordering::Greater => self.parent[b] = a,
            std::cmp::Ordering::Equal => {
                self.parent[b] = a;
                self.rank[a] += 1;
            }
        }
        true
    }
}

/// Every unordered pair weight read during a Prim build, in condensed
/// upper-triangular layout.
#[derive(Clone, Debug)]
pub struct PairCache {
    n: usize,
    data: Vec<f64>,
}

impl PairCache {
    fn new(n: usize) -> Self {
        PairCache {
            n,
            data: vec![f64::NAN; n * n.saturating_sub(1) / 2],
        }
    }

    #[inline]
    fn index(&self, u: usize, v: usize) -> usize {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        a * self.n - a * (a + 1) / 2 + (b - a - 1)
    }
}

impl WeightOracle for PairCache {
    fn len(&self) -> usize {
        self.n
    }

    #[inline]
    fn weight(&self, u: usize, v: usize) -> f64 {
        assert_pair(self.n, u, v);
        let w = self.data[self.index(u, v)];
        debug_assert!(!w.is_nan(), "pair ({u}, {v}) was never cached");
        w
    }
}

/// Extremal spanning tree by dense Prim from vertex 0.
///
/// Each unordered pair is read exactly once, so the build costs
/// `n(n-1)/2` oracle queries. Ties go to the smallest candidate vertex,
/// then to the smallest attaching endpoint.
pub fn build_spanning_tree<O: WeightOracle + ?Sized>(oracle: &O, sense: Sense) -> WeightedTree {
    prim(oracle, sense, None)
}

/// [`build_spanning_tree`] that also hands back every weight it read, so a
/// later same-class scan needs no further queries.
pub fn build_spanning_tree_cached<O: WeightOracle + ?Sized>(
    oracle: &O,
    sense: Sense,
) -> (WeightedTree, PairCache) {
    let mut cache = PairCache::new(oracle.len());
    let tree = prim(oracle, sense, Some(&mut cache));
    (tree, cache)
}

fn prim<O: WeightOracle + ?Sized>(
    oracle: &O,
    sense: Sense,
    mut cache: Option<&mut PairCache>,
) -> WeightedTree {
    let n = oracle.len();
    if n <= 1 {
        return WeightedTree { n, edges: Vec::new() };
    }
    // Minimize `key`; for a max tree the key is the negated weight.
    let key = |w: f64| match sense {
        Sense::Min => w,
        Sense::Max => -w,
    };
    let mut in_tree = vec![false; n];
    let mut best_key = vec![f64::INFINITY; n];
    let mut best_w = vec![0.0; n];
    let mut attach = vec![usize::MAX; n];
    let mut edges = Vec::with_capacity(n - 1);

    let mut current = 0;
    in_tree[0] = true;
    for _ in 1..n {
        let mut next = usize::MAX;
        let mut next_key = f64::INFINITY;
        for v in 0..n {
            if in_tree[v] {
                continue;
            }
            let w = oracle.weight(current, v);
            if let Some(c) = cache.as_deref_mut() {
                let i = c.index(current, v);
                c.data[i] = w;
            }
            let k = key(w);
            if k < best_key[v] || (k == best_key[v] && current < attach[v]) {
                best_key[v] = k;
                best_w[v] = w;
                attach[v] = current;
            }
            if best_key[v] < next_key || next == usize::MAX {
                next_key = best_key[v];
                next = v;
            }
        }
        in_tree[next] = true;
        edges.push(TreeEdge {
            u: attach[next],
            v: next,
            w: best_w[next],
        });
        current = next;
    }
    WeightedTree { n, edges }
}

/// A vertex 2-coloring, colors in `{0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub color: Vec<u8>,
    pub size0: usize,
}

impl Bipartition {
    pub fn from_colors(color: Vec<u8>) -> Self {
        let size0 = color.iter().filter(|&&c| c == 0).count();
        Bipartition { color, size0 }
    }

    pub fn len(&self) -> usize {
        self.color.len()
    }

    pub fn is_empty(&self) -> bool {
        self.color.is_empty()
    }

    pub fn swapped(&self) -> Bipartition {
        Bipartition {
            color: self.color.iter().map(|c| 1 - c).collect(),
            size0: self.color.len() - self.size0,
        }
    }
}

/// The proper 2-coloring of a tree: breadth-first from vertex 0, which gets
/// color 0.
pub fn bipartition(tree: &WeightedTree) -> Bipartition {
    let n = tree.len();
    let adj = tree.adjacency();
    let mut color = vec![u8::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    if n > 0 {
        color[0] = 0;
        queue.push_back(0);
    }
    while let Some(u) = queue.pop_front() {
        for &(v, _) in &adj[u] {
            if color[v] == u8::MAX {
                color[v] = 1 - color[u];
                queue.push_back(v);
            }
        }
    }
    Bipartition::from_colors(color)
}

/// Extreme weight over same-class pairs: the largest for [`Sense::Max`]
/// (the partition diameter), the smallest for [`Sense::Min`]. Empty sets
/// give `-inf` and `+inf` respectively.
pub fn class_extreme<O: WeightOracle + ?Sized>(
    oracle: &O,
    part: &Bipartition,
    sense: Sense,
) -> ExtReal {
    let n = part.len();
    assert_eq!(oracle.len(), n, "coloring does not cover the instance");
    let mut best = match sense {
        Sense::Max => f64::NEG_INFINITY,
        Sense::Min => f64::INFINITY,
    };
    for u in 0..n {
        for v in u + 1..n {
            if part.color[u] == part.color[v] {
                let w = oracle.weight(u, v);
                best = match sense {
                    Sense::Max => best.max(w),
                    Sense::Min => best.min(w),
                };
            }
        }
    }
    ExtReal::from_f64(best)
}
