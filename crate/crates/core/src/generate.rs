//! Seeded random instances for cross-checks and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle::{PointCloud, WeightMatrix};
use crate::spanning::{TreeEdge, WeightedTree};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// I.i.d. uniform weights on `[0, 1)`.
pub fn random_matrix(n: usize, rng: &mut impl Rng) -> WeightMatrix {
    WeightMatrix::from_fn(n, |_, _| rng.random::<f64>())
}

/// Weights drawn from `{0, 1/4, ..., 1}`, so ties are common.
pub fn random_matrix_with_ties(n: usize, rng: &mut impl Rng) -> WeightMatrix {
    WeightMatrix::from_fn(n, |_, _| rng.random_range(0..=4) as f64 / 4.0)
}

/// Points uniform in the unit cube `[0, 1)^d`.
pub fn random_points(n: usize, d: usize, rng: &mut impl Rng) -> PointCloud {
    PointCloud::new(d, (0..n * d).map(|_| rng.random::<f64>()).collect())
        .expect("d >= 1 and finite coordinates")
}

/// Random labeled tree: each vertex attaches to a uniformly random earlier
/// one, then labels are shuffled. With `ties`, weights come from a
/// five-value set.
pub fn random_tree(n: usize, ties: bool, rng: &mut impl Rng) -> WeightedTree {
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let edges = (1..n)
        .map(|v| {
            let u = rng.random_range(0..v);
            let w = if ties {
                rng.random_range(0..5) as f64
            } else {
                rng.random::<f64>()
            };
            TreeEdge {
                u: label[u],
                v: label[v],
                w,
            }
        })
        .collect();
    WeightedTree::new(n, edges).expect("attachment process yields a tree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::WeightOracle;

    #[test]
    fn seeds_are_deterministic() {
        let a = random_matrix(6, &mut rng(7));
        let b = random_matrix(6, &mut rng(7));
        assert_eq!(a, b);
        assert_ne!(a, random_matrix(6, &mut rng(8)));
    }

    #[test]
    fn trees_are_valid() {
        let mut r = rng(1);
        for n in 0..30 {
            let t = random_tree(n, n % 2 == 0, &mut r);
            assert_eq!(t.edges().len(), n.saturating_sub(1));
        }
        let m = random_matrix_with_ties(5, &mut r);
        assert!((0..5).all(|u| (0..5).filter(|&v| v != u).all(|v| m.weight(u, v) <= 1.0)));
    }
}
