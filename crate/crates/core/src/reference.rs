//! Exhaustive reference solvers.
//!
//! These enumerate colorings or spanning trees directly and deliberately
//! share no logic with the production solvers, so agreement between the two
//! is evidence rather than tautology. They only accept small inputs.

use crate::bottleneck::CardinalityProfile;
use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::oracle::WeightOracle;
use crate::pipeline::Problem;
use crate::spanning::{Sense, WeightedTree};

#[derive(Clone, Copy, Debug)]
pub struct OracleBudget {
    /// Largest `n` for `2^n` sweeps.
    pub max_n_exhaustive: usize,
    pub max_trials: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_n_exhaustive: 14,
            max_trials: 1000,
        }
    }
}

impl OracleBudget {
    fn admit(&self, n: usize) -> Result<()> {
        if n > self.max_n_exhaustive {
            return Err(Error::BudgetExceeded {
                n,
                max: self.max_n_exhaustive,
            });
        }
        Ok(())
    }
}

/// Coloring of `mask`: bit `v` set means vertex `v` has color 0.
fn mask_coloring(n: usize, mask: u32) -> Vec<u8> {
    (0..n).map(|v| if mask >> v & 1 == 1 { 0 } else { 1 }).collect()
}

/// Objective of the coloring `mask` by scanning all same-class pairs.
fn mask_objective<O: WeightOracle + ?Sized>(oracle: &O, mask: u32, problem: Problem) -> ExtReal {
    let n = oracle.len();
    let mut best = match problem {
        Problem::Diameter => f64::NEG_INFINITY,
        Problem::Dispersion => f64::INFINITY,
    };
    for u in 0..n {
        for v in u + 1..n {
            if (mask >> u & 1) == (mask >> v & 1) {
                let w = oracle.weight(u, v);
                match problem {
                    Problem::Diameter if w > best => best = w,
                    Problem::Dispersion if w < best => best = w,
                    _ => {}
                }
            }
        }
    }
    ExtReal::from_f64(best)
}

fn better(problem: Problem, a: ExtReal, b: ExtReal) -> bool {
    match problem {
        Problem::Diameter => a < b,
        Problem::Dispersion => a > b,
    }
}

/// Exact optimum at cardinality `c` and a witness coloring, by enumerating
/// every subset of size `c` as the color-0 class.
pub fn brute_optimum<O: WeightOracle + ?Sized>(
    oracle: &O,
    c: usize,
    problem: Problem,
    budget: &OracleBudget,
) -> Result<(ExtReal, Vec<u8>)> {
    let n = oracle.len();
    budget.admit(n)?;
    if c > n {
        return Err(Error::contract(format!("cardinality {c} exceeds n = {n}")));
    }
    let mut best: Option<(ExtReal, u32)> = None;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != c {
            continue;
        }
        let val = mask_objective(oracle, mask, problem);
        if best.is_none_or(|(b, _)| better(problem, val, b)) {
            best = Some((val, mask));
        }
    }
    let (val, mask) = best.expect("some subset of size c exists");
    Ok((val, mask_coloring(n, mask)))
}

pub fn brute_diameter_optimum<O: WeightOracle + ?Sized>(
    oracle: &O,
    c: usize,
    budget: &OracleBudget,
) -> Result<(ExtReal, Vec<u8>)> {
    brute_optimum(oracle, c, Problem::Diameter, budget)
}

pub fn brute_dispersion_optimum<O: WeightOracle + ?Sized>(
    oracle: &O,
    c: usize,
    budget: &OracleBudget,
) -> Result<(ExtReal, Vec<u8>)> {
    brute_optimum(oracle, c, Problem::Dispersion, budget)
}

/// Optimum for every cardinality from one sweep over all `2^n` colorings.
pub fn brute_profile<O: WeightOracle + ?Sized>(
    oracle: &O,
    problem: Problem,
    budget: &OracleBudget,
) -> Result<Vec<ExtReal>> {
    let n = oracle.len();
    budget.admit(n)?;
    let mut best: Vec<Option<ExtReal>> = vec![None; n + 1];
    for mask in 0u32..(1 << n) {
        let c = mask.count_ones() as usize;
        let val = mask_objective(oracle, mask, problem);
        if best[c].is_none_or(|b| better(problem, val, b)) {
            best[c] = Some(val);
        }
    }
    Ok(best.into_iter().map(|b| b.expect("every c reachable")).collect())
}

/// `M*(c)` for every `c` by enumerating all `2^n` colorings of the tree.
pub fn brute_bottleneck_profile(tree: &WeightedTree, budget: &OracleBudget) -> Result<CardinalityProfile> {
    let n = tree.len();
    budget.admit(n)?;
    let mut best = vec![f64::INFINITY; n + 1];
    for mask in 0u32..(1 << n) {
        let mut heaviest = f64::NEG_INFINITY;
        for e in tree.edges() {
            if (mask >> e.u & 1) == (mask >> e.v & 1) && e.w > heaviest {
                heaviest = e.w;
            }
        }
        let c = mask.count_ones() as usize;
        if heaviest < best[c] {
            best[c] = heaviest;
        }
    }
    Ok(CardinalityProfile {
        values: best.into_iter().map(ExtReal::from_f64).collect(),
    })
}

/// Decodes a Prüfer sequence into the edge list of a labeled tree.
fn pruefer_edges(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Sum of weights taken in ascending order, so equal multisets give
/// bit-identical totals.
pub fn sorted_total(mut weights: Vec<f64>) -> f64 {
    weights.sort_by(f64::total_cmp);
    weights.into_iter().sum()
}

/// Extremal spanning-tree total over all `n^(n-2)` labeled trees.
pub fn brute_spanning_extremum<O: WeightOracle + ?Sized>(oracle: &O, sense: Sense) -> Result<f64> {
    const MAX_N: usize = 8;
    let n = oracle.len();
    if n > MAX_N {
        return Err(Error::BudgetExceeded { n, max: MAX_N });
    }
    if n <= 1 {
        return Ok(0.0);
    }
    if n == 2 {
        return Ok(oracle.weight(0, 1));
    }
    let mut seq = vec![0usize; n - 2];
    let mut best: Option<f64> = None;
    loop {
        let total = sorted_total(
            pruefer_edges(n, &seq)
                .into_iter()
                .map(|(u, v)| oracle.weight(u, v))
                .collect(),
        );
        best = Some(match (best, sense) {
            (None, _) => total,
            (Some(b), Sense::Max) => b.max(total),
            (Some(b), Sense::Min) => b.min(total),
        });
        // Odometer increment over base-n digits.
        let mut i = 0;
        while i < seq.len() {
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
        if i == seq.len() {
            break;
        }
    }
    Ok(best.unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{PointCloud, WeightMatrix};
    use crate::spanning::TreeEdge;

    #[test]
    fn two_vertices_split() {
        let m = WeightMatrix::from_fn(2, |_, _| 1.0);
        let (v, w) = brute_diameter_optimum(&m, 1, &OracleBudget::default()).unwrap();
        assert_eq!(v, ExtReal::NEG_INF);
        assert_eq!(w.iter().filter(|&&b| b == 0).count(), 1);
    }

    // Three balanced splits of the unit square: two of diameter 1, one of
    // diameter sqrt(2).
    #[test]
    fn unit_square() {
        let pts = PointCloud::from_xy(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).unwrap();
        let (v, _) = brute_diameter_optimum(&pts.distances(), 2, &OracleBudget::default()).unwrap();
        assert_eq!(v, ExtReal::finite(1.0));
    }

    #[test]
    fn path_profile() {
        let t = WeightedTree::new(
            3,
            vec![TreeEdge { u: 0, v: 1, w: 5.0 }, TreeEdge { u: 1, v: 2, w: 3.0 }],
        )
        .unwrap();
        let p = brute_bottleneck_profile(&t, &OracleBudget::default()).unwrap();
        let ni = ExtReal::NEG_INF;
        assert_eq!(p.values, vec![ExtReal::finite(5.0), ni, ni, ExtReal::finite(5.0)]);
        let single = WeightedTree::new(1, vec![]).unwrap();
        assert_eq!(
            brute_bottleneck_profile(&single, &OracleBudget::default()).unwrap().values,
            vec![ni, ni]
        );
    }

    #[test]
    fn spanning_extremes_small() {
        let mut m = WeightMatrix::from_fn(3, |_, _| 0.0);
        m.set(0, 1, 1.0);
        m.set(0, 2, 2.0);
        m.set(1, 2, 3.0);
        assert_eq!(brute_spanning_extremum(&m, Sense::Max).unwrap(), 5.0);
        assert_eq!(brute_spanning_extremum(&m, Sense::Min).unwrap(), 3.0);
        let two = WeightMatrix::from_fn(2, |_, _| 4.5);
        assert_eq!(brute_spanning_extremum(&two, Sense::Max).unwrap(), 4.5);
    }

    #[test]
    fn pruefer_covers_cayley_count() {
        // n = 4 has 4^2 = 16 labeled trees; each decodes to 3 distinct edges.
        let mut seen = std::collections::BTreeSet::new();
        for a in 0..4 {
            for b in 0..4 {
                let mut e: Vec<_> = pruefer_edges(4, &[a, b])
                    .into_iter()
                    .map(|(u, v)| (u.min(v), u.max(v)))
                    .collect();
                e.sort();
                seen.insert(e);
            }
        }
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn budget_is_enforced() {
        let m = WeightMatrix::from_fn(15, |_, _| 1.0);
        assert!(matches!(
            brute_diameter_optimum(&m, 3, &OracleBudget::default()),
            Err(Error::BudgetExceeded { n: 15, max: 14 })
        ));
        let nine = WeightMatrix::from_fn(9, |_, _| 1.0);
        assert!(brute_spanning_extremum(&nine, Sense::Max).is_err());
    }
}
