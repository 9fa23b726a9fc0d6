//! Bottleneck tree 2-coloring for every cardinality at once.
//!
//! For a coloring `φ` of the tree, `M(φ)` is the heaviest tree edge whose
//! endpoints share a color. For each `c`, [`solve_all_cardinalities`]
//! computes `M*(c)`, the least `M(φ)` over colorings with exactly `c`
//! vertices of color 0.
//!
//! The tree is rooted at vertex 0. Each vertex starts a running table that
//! represents itself alone and absorbs its children's finished tables one at
//! a time. Table entry `[b][q]` is the least heaviest-monochromatic-edge over
//! colorings of the represented vertices that give the owner color `b` and
//! have `q` zeros. Absorbing a child subtree of `t` vertices into a table of
//! `s` vertices looks at `s * t` index pairs per color combination, and every
//! vertex pair is charged at its lowest common ancestor exactly once, so the
//! whole solve costs `n(n-1)/2` pair visits.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::spanning::WeightedTree;

/// `values[c] = M*(c)` for `c` in `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CardinalityProfile {
    pub values: Vec<ExtReal>,
}

impl CardinalityProfile {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, c: usize) -> Option<ExtReal> {
        self.values.get(c).copied()
    }

    /// `c<TAB>value` lines, with `-inf`/`+inf` tokens.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (c, v) in self.values.iter().enumerate() {
            writeln!(out, "{c}\t{v}").unwrap();
        }
        out
    }
}

impl std::ops::Index<usize> for CardinalityProfile {
    type Output = ExtReal;

    fn index(&self, c: usize) -> &ExtReal {
        &self.values[c]
    }
}

/// Minimizing choice for one `(b, Q)` cell of an absorbed table: the zero
/// count `q1` kept by the running table and the child's color `g`.
#[derive(Clone, Copy, Debug, Default)]
struct Choice {
    q1: [u32; 2],
    g: [u8; 2],
}

#[derive(Clone, Copy, Debug)]
struct Absorption {
    child: usize,
    /// Start of this event's `s + t + 1` choices in `ChoiceLog::choices`.
    offset: usize,
}

/// Argmin choices recorded at every absorption, enough to rebuild an optimal
/// coloring for any cardinality in linear time.
#[derive(Clone, Debug)]
pub struct ChoiceLog {
    n: usize,
    root: usize,
    root_rows: [Vec<f64>; 2],
    events: Vec<Absorption>,
    /// Events of vertex `u` are `events[event_start[u]..event_start[u + 1]]`,
    /// in absorption order.
    event_start: Vec<usize>,
    choices: Vec<Choice>,
    pair_visits: u64,
}

impl ChoiceLog {
    /// Index pairs `(q1, q2)` examined per color combination, summed over all
    /// absorptions. Always `n(n-1)/2`.
    pub fn pair_visits(&self) -> u64 {
        self.pair_visits
    }

    /// Number of stored `(b, Q)` choice records (both colors share one).
    pub fn stored_entries(&self) -> usize {
        self.choices.len()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

/// A running or finished table; `rows[b][q]` for `q` in `0..=size`.
struct Table {
    size: usize,
    rows: [Vec<f64>; 2],
}

impl Table {
    fn single() -> Self {
        Table {
            size: 1,
            rows: [
                vec![f64::INFINITY, f64::NEG_INFINITY],
                vec![f64::NEG_INFINITY, f64::INFINITY],
            ],
        }
    }
}

/// Zero counts `q` for which `rows[b][q]` is feasible: the owner itself is
/// one of the zeros when `b == 0`.
#[inline]
fn feasible_range(b: usize, size: usize) -> std::ops::RangeInclusive<usize> {
    if b == 0 {
        1..=size
    } else {
        0..=size - 1
    }
}

#[inline]
fn fmax(a: f64, b: f64) -> f64 {
    if a > b {
        a
    } else {
        b
    }
}

fn absorb(
    running: Table,
    child: Table,
    w: f64,
    choices: &mut Vec<Choice>,
    pair_visits: &mut u64,
) -> Table {
    let (s, t) = (running.size, child.size);
    let size = s + t;
    let offset = choices.len();
    choices.resize(offset + size + 1, Choice::default());
    let log = &mut choices[offset..];
    let mut rows = [vec![f64::INFINITY; size + 1], vec![f64::INFINITY; size + 1]];

    for b in 0..2 {
        let out = &mut rows[b];
        // g outer, q1 ascending, strict improvement: ties keep the smallest
        // (g, q1).
        for g in 0..2 {
            let edge = if b == g { w } else { f64::NEG_INFINITY };
            let child_row = &child.rows[g];
            let q2_range = feasible_range(g, t);
            for q1 in feasible_range(b, s) {
                let base = fmax(running.rows[b][q1], edge);
                for q2 in q2_range.clone() {
                    let val = fmax(base, child_row[q2]);
                    let q = q1 + q2;
                    if val < out[q] {
                        out[q] = val;
                        log[q].q1[b] = q1 as u32;
                        log[q].g[b] = g as u8;
                    }
                }
            }
        }
    }
    *pair_visits += (s * t) as u64;
    Table { size, rows }
}

/// Computes `M*(c)` for every `c` in `0..=n` in `O(n^2)` time, plus the
/// choice log for [`reconstruct`].
///
/// Children are absorbed in edge insertion order.
pub fn solve_all_cardinalities(tree: &WeightedTree) -> (CardinalityProfile, ChoiceLog) {
    let n = tree.len();
    if n == 0 {
        let log = ChoiceLog {
            n,
            root: 0,
            root_rows: [vec![f64::INFINITY], vec![f64::INFINITY]],
            events: Vec::new(),
            event_start: vec![0],
            choices: Vec::new(),
            pair_visits: 0,
        };
        return (
            CardinalityProfile {
                values: vec![ExtReal::NEG_INF],
            },
            log,
        );
    }

    let rooted = tree.rooted(0);
    let mut tables: Vec<Option<Table>> = (0..n).map(|_| None).collect();
    let mut events = Vec::with_capacity(n - 1);
    let mut event_range = vec![(0, 0); n];
    let mut choices = Vec::new();
    let mut pair_visits = 0;

    for &u in rooted.preorder.iter().rev() {
        let mut running = Table::single();
        let first = events.len();
        for &v in &rooted.children[u] {
            let child = tables[v].take().expect("child finished before parent");
            events.push(Absorption {
                child: v,
                offset: choices.len(),
            });
            running = absorb(
                running,
                child,
                rooted.parent_weight[v],
                &mut choices,
                &mut pair_visits,
            );
        }
        event_range[u] = (first, events.len());
        tables[u] = Some(running);
    }

    // Reorder events so each vertex's block is addressable by vertex id.
    let mut ordered = Vec::with_capacity(events.len());
    let mut event_start = Vec::with_capacity(n + 1);
    for &(a, b) in &event_range {
        event_start.push(ordered.len());
        ordered.extend_from_slice(&events[a..b]);
    }
    event_start.push(ordered.len());

    let root = tables[rooted.root].take().expect("root table");
    let values = (0..=n)
        .map(|c| ExtReal::from_f64(root.rows[0][c].min(root.rows[1][c])))
        .collect();
    let log = ChoiceLog {
        n,
        root: rooted.root,
        root_rows: root.rows,
        events: ordered,
        event_start,
        choices,
        pair_visits,
    };
    (CardinalityProfile { values }, log)
}

/// Rebuilds an optimal coloring with exactly `c` zeros from the choice log.
/// Runs in `O(n)`.
pub fn reconstruct(tree: &WeightedTree, log: &ChoiceLog, c: usize) -> Result<Vec<u8>> {
    let n = log.n;
    if tree.len() != n {
        return Err(Error::contract("choice log belongs to a different tree"));
    }
    if c > n {
        return Err(Error::contract(format!("cardinality {c} exceeds n = {n}")));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let root_b = if log.root_rows[0][c] <= log.root_rows[1][c] { 0 } else { 1 };
    let mut color = vec![u8::MAX; n];
    let mut stack = vec![(log.root, root_b, c)];
    while let Some((u, b, mut q)) = stack.pop() {
        let events = &log.events[log.event_start[u]..log.event_start[u + 1]];
        for ev in events.iter().rev() {
            let choice = log.choices[ev.offset + q];
            let q1 = choice.q1[b] as usize;
            let g = choice.g[b] as usize;
            stack.push((ev.child, g, q - q1));
            q = q1;
        }
        debug_assert_eq!(q, usize::from(b == 0));
        color[u] = b as u8;
    }
    Ok(color)
}

/// Heaviest tree edge whose endpoints share a color; `-inf` if none.
pub fn mono_max(tree: &WeightedTree, coloring: &[u8]) -> Result<ExtReal> {
    if coloring.len() != tree.len() {
        return Err(Error::contract(format!(
            "coloring has {} entries for a tree on {} vertices",
            coloring.len(),
            tree.len()
        )));
    }
    Ok(tree
        .edges()
        .iter()
        .filter(|e| coloring[e.u] == coloring[e.v])
        .map(|e| ExtReal::finite(e.w))
        .max()
        .unwrap_or(ExtReal::NEG_INF))
}
