//! The `{1, 2}`-metric family on which deciding the optimum means reading
//! the weights inside a hidden half.
//!
//! Vertices `0..n/2` form `A`, the rest `B`. For the diameter problem every
//! `A`-`B` pair weighs 2, every `B`-`B` pair weighs 1, and each `A`-`A`
//! pair weighs 2 or 1 according to a hidden bit. At `c = n/2` the optimum
//! is 2 if any bit is set and 1 otherwise. The dispersion variant mirrors
//! the weights (`A`-`B` = 1, `B`-`B` = 2) and its optimum is 2 only when
//! every bit is set.

use rand::Rng;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::oracle::WeightMatrix;
use crate::pipeline::Problem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdversaryInstance {
    pub n: usize,
    /// One bit per pair inside `A`, in lexicographic pair order; `true`
    /// means weight 2.
    pub intra_a_bits: Vec<bool>,
    pub problem: Problem,
}

fn check_n(n: usize) -> Result<()> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::contract(format!("adversary instances need even n >= 4, got {n}")));
    }
    Ok(())
}

/// Number of pairs inside `A`.
pub fn bit_count(n: usize) -> usize {
    let a = n / 2;
    a * a.saturating_sub(1) / 2
}

impl AdversaryInstance {
    pub fn new(n: usize, intra_a_bits: Vec<bool>, problem: Problem) -> Result<Self> {
        check_n(n)?;
        if intra_a_bits.len() != bit_count(n) {
            return Err(Error::contract(format!(
                "expected {} bits for n = {n}, got {}",
                bit_count(n),
                intra_a_bits.len()
            )));
        }
        Ok(AdversaryInstance {
            n,
            intra_a_bits,
            problem,
        })
    }

    pub fn constant(n: usize, bit: bool, problem: Problem) -> Result<Self> {
        Self::new(n, vec![bit; bit_count(n)], problem)
    }

    /// Random bits with a mix of densities: all clear, all set, a single
    /// deviation from either, or i.i.d. at a random rate.
    pub fn random(n: usize, problem: Problem, rng: &mut impl Rng) -> Result<Self> {
        check_n(n)?;
        let k = bit_count(n);
        let bits = match rng.random_range(0..5) {
            0 => vec![false; k],
            1 => vec![true; k],
            2 | 3 => {
                let base = rng.random::<bool>();
                let mut bits = vec![base; k];
                bits[rng.random_range(0..k)] = !base;
                bits
            }
            _ => {
                let p = rng.random::<f64>();
                (0..k).map(|_| rng.random::<f64>() < p).collect()
            }
        };
        Self::new(n, bits, problem)
    }

    pub fn to_matrix(&self) -> WeightMatrix {
        let half = self.n / 2;
        let (across, within_b) = match self.problem {
            Problem::Diameter => (2.0, 1.0),
            Problem::Dispersion => (1.0, 2.0),
        };
        let mut bit = 0;
        let mut m = WeightMatrix::from_fn(self.n, |u, v| {
            if u < half && v < half {
                0.0
            } else if u >= half && v >= half {
                within_b
            } else {
                across
            }
        });
        for u in 0..half {
            for v in u + 1..half {
                m.set(u, v, if self.intra_a_bits[bit] { 2.0 } else { 1.0 });
                bit += 1;
            }
        }
        m
    }

    pub fn to_instance(&self) -> Instance {
        Instance::matrix(self.to_matrix())
    }

    /// The optimum at `c = n/2` implied by the bits.
    pub fn expected_optimum(&self) -> f64 {
        let hit = match self.problem {
            Problem::Diameter => self.intra_a_bits.iter().any(|&b| b),
            Problem::Dispersion => self.intra_a_bits.iter().all(|&b| b),
        };
        if hit {
            2.0
        } else {
            1.0
        }
    }
}
