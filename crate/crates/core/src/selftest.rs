//! Randomized cross-checks of the solvers against the exhaustive references,
//! runnable from the command line.

use rand::Rng;

use crate::adversary::AdversaryInstance;
use crate::bottleneck::{mono_max, reconstruct, solve_all_cardinalities};
use crate::generate::{random_matrix, random_matrix_with_ties, random_tree, rng};
use crate::oracle::WeightMatrix;
use crate::pipeline::{partition_objective, solve_all, solve_single, Problem};
use crate::reference::{brute_bottleneck_profile, brute_profile, OracleBudget};
use crate::single::solve_single as solve_bottleneck_single;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub cases: usize,
    /// First failing case, if any.
    pub failure: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn run(name: &'static str, trials: usize, mut case: impl FnMut(usize) -> Result<(), String>) -> Check {
    for t in 0..trials {
        if let Err(msg) = case(t) {
            return Check {
                name,
                cases: t + 1,
                failure: Some(msg),
            };
        }
    }
    Check {
        name,
        cases: trials,
        failure: None,
    }
}

/// Runs every cross-check with `trials` random cases per check and sizes up
/// to `max_n` (capped by the exhaustive budget).
pub fn selftest(max_n: usize, trials: usize, seed: u64) -> Vec<Check> {
    let budget = OracleBudget::default();
    let max_n = max_n.clamp(2, budget.max_n_exhaustive);
    let mut r = rng(seed);
    let mut checks = Vec::new();

    checks.push(run("bottleneck dp vs exhaustive", trials, |_| {
        let n = r.random_range(1..=max_n);
        let tree = random_tree(n, r.random_bool(0.1), &mut r);
        let (dp, log) = solve_all_cardinalities(&tree);
        let brute = brute_bottleneck_profile(&tree, &budget).map_err(|e| e.to_string())?;
        if dp != brute {
            return Err(format!("n={n}: dp {:?} != brute {:?}", dp.values, brute.values));
        }
        for c in 0..=n {
            let phi = reconstruct(&tree, &log, c).map_err(|e| e.to_string())?;
            let zeros = phi.iter().filter(|&&b| b == 0).count();
            let m = mono_max(&tree, &phi).map_err(|e| e.to_string())?;
            if zeros != c || m != dp[c] {
                return Err(format!("n={n} c={c}: witness has {zeros} zeros and M={m}"));
            }
            if solve_bottleneck_single(&tree, c) != dp[c] {
                return Err(format!("n={n} c={c}: threshold search disagrees with dp"));
            }
        }
        Ok(())
    }));

    for problem in [Problem::Diameter, Problem::Dispersion] {
        let name = match problem {
            Problem::Diameter => "diameter pipeline vs exhaustive",
            Problem::Dispersion => "dispersion pipeline vs exhaustive",
        };
        checks.push(run(name, trials, |_| {
            let n = r.random_range(1..=max_n);
            let m: WeightMatrix = if r.random_bool(0.1) {
                random_matrix_with_ties(n, &mut r)
            } else {
                random_matrix(n, &mut r)
            };
            let brute = brute_profile(&m, problem, &budget).map_err(|e| e.to_string())?;
            let all = solve_all(&m, problem);
            for c in 0..=n {
                let single = solve_single(&m, c, problem).map_err(|e| e.to_string())?;
                let witness = all.witness(c).map_err(|e| e.to_string())?;
                let recomputed = partition_objective(&m, &witness.coloring, problem);
                if all.objective(c) != brute[c]
                    || single.objective != brute[c]
                    || recomputed != brute[c]
                    || partition_objective(&m, &single.coloring, problem) != brute[c]
                {
                    return Err(format!(
                        "n={n} c={c}: all={} single={} witness={} brute={}",
                        all.objective(c),
                        single.objective,
                        recomputed,
                        brute[c]
                    ));
                }
            }
            Ok(())
        }));
    }

    checks.push(run("adversary dichotomy", trials, |_| {
        let n = [4, 8, 16][r.random_range(0..3)];
        let problem = if r.random_bool(0.5) {
            Problem::Diameter
        } else {
            Problem::Dispersion
        };
        let adv = AdversaryInstance::random(n, problem, &mut r).map_err(|e| e.to_string())?;
        let got = solve_single(&adv.to_matrix(), n / 2, problem).map_err(|e| e.to_string())?;
        if got.objective.value() != Some(adv.expected_optimum()) {
            return Err(format!("n={n} {problem:?}: got {}", got.objective));
        }
        Ok(())
    }));

    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_selftest_passes() {
        for check in selftest(8, 20, 3) {
            assert!(check.passed(), "{}: {:?}", check.name, check.failure);
        }
    }
}
