//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.
//!
//! Exact criteria compare `ExtReal`s with `==`; the only tolerance is the
//! timing window below.

use std::process::ExitCode;
use std::time::Instant;

use rand::Rng;

use diampart::adversary::AdversaryInstance;
use diampart::bottleneck::{mono_max, reconstruct, solve_all_cardinalities, CardinalityProfile};
use diampart::generate::{random_matrix, random_matrix_with_ties, random_points, random_tree, rng, Rng64};
use diampart::geometry::{closest_pair, delaunay_emst, hull_diameter, PointSet2D};
use diampart::instance::check_metric;
use diampart::oracle::{Counting, PointCloud, WeightMatrix, WeightOracle};
use diampart::pipeline::{
    euclidean_fast_path, partition_objective, solve_all, solve_diameter_all, solve_single, Problem,
};
use diampart::reference::{brute_bottleneck_profile, brute_profile, sorted_total, OracleBudget};
use diampart::single::{solve_single as threshold_single, solve_single_with_witness};
use diampart::spanning::{bipartition, build_spanning_tree, class_extreme, Sense, TreeEdge, WeightedTree};
use diampart::ExtReal;

/// Allowed window for t(2000) / t(1000).
const RATIO_LO: f64 = 3.0;
const RATIO_HI: f64 = 6.0;
const TIMING_RUNS: usize = 5;

#[derive(Default)]
struct Criterion {
    cases: usize,
    failures: usize,
    first: Option<String>,
    note: Option<String>,
}

impl Criterion {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(msg());
            }
        }
    }
}

struct Report {
    rows: Vec<(usize, &'static str, Criterion)>,
}

impl Report {
    fn new() -> Self {
        const NAMES: [&str; 11] = [
            "oracle equivalence",
            "dp vs brute force",
            "decomposition identity",
            "single-c vs all-c",
            "reconstruction soundness",
            "symmetry",
            "adversary dichotomy",
            "euclidean agreement",
            "geometry oracles",
            "quadratic scaling",
            "work accounting",
        ];
        Report {
            rows: NAMES
                .iter()
                .enumerate()
                .map(|(i, &name)| (i + 1, name, Criterion::default()))
                .collect(),
        }
    }

    fn get(&mut self, k: usize) -> &mut Criterion {
        &mut self.rows[k - 1].2
    }

    fn print(&self) -> bool {
        let mut all = true;
        for (k, name, c) in &self.rows {
            let pass = c.failures == 0 && c.cases > 0;
            all &= pass;
            let status = if pass { "PASS" } else { "FAIL" };
            let mut line = format!("criterion {k:>2} {name:<26} {status} ({} checks", c.cases);
            if c.failures > 0 {
                line.push_str(&format!(", {} failed", c.failures));
            }
            line.push(')');
            if let Some(note) = &c.note {
                line.push_str(&format!(" {note}"));
            }
            if let Some(first) = &c.first {
                line.push_str(&format!(" first failure: {first}"));
            }
            println!("{line}");
        }
        all
    }
}

fn pairs(n: usize) -> u64 {
    (n * n.saturating_sub(1) / 2) as u64
}

fn symmetric(values: &[ExtReal]) -> bool {
    let n = values.len() - 1;
    (0..=n).all(|c| values[c] == values[n - c])
}

fn zeros(coloring: &[u8]) -> usize {
    coloring.iter().filter(|&&b| b == 0).count()
}

fn shaped_tree(n: usize, shape: usize, ties: bool, r: &mut Rng64) -> WeightedTree {
    let w = |r: &mut Rng64| {
        if ties {
            r.random_range(0..4) as f64
        } else {
            r.random::<f64>()
        }
    };
    let edges: Vec<TreeEdge> = match shape {
        0 => (1..n).map(|v| TreeEdge { u: v - 1, v, w: w(r) }).collect(),
        1 => (1..n).map(|v| TreeEdge { u: 0, v, w: w(r) }).collect(),
        _ => return random_tree(n, ties, r),
    };
    WeightedTree::new(n, edges).unwrap()
}

/// Criteria 1, 5, 6, 11 on small matrices.
fn oracle_equivalence(rep: &mut Report) {
    let budget = OracleBudget::default();
    let mut r = rng(101);
    for n in 2..=12 {
        for t in 0..200 {
            let m = if t % 10 == 0 {
                random_matrix_with_ties(n, &mut r)
            } else {
                random_matrix(n, &mut r)
            };
            for problem in [Problem::Diameter, Problem::Dispersion] {
                let brute = brute_profile(&m, problem, &budget).unwrap();
                let counted = Counting::new(&m);
                let all = solve_all(&counted, problem);
                let q = counted.queries();
                let got = all.objectives().values;
                // Dispersion rides along under the same criterion.
                rep.get(1).check(got == brute, || format!("{problem:?} n={n} t={t}: {got:?} != {brute:?}"));
                rep.get(6).check(symmetric(&got), || format!("n={n} t={t} {problem:?}: {got:?}"));
                rep.get(11).check(q <= pairs(n), || format!("n={n}: {q} queries"));
                for c in 0..=n {
                    let w = all.witness(c).unwrap();
                    let recomputed = partition_objective(&m, &w.coloring, problem);
                    rep.get(5).check(zeros(&w.coloring) == c && recomputed == w.objective, || {
                        format!("n={n} c={c} {problem:?}: witness gives {recomputed}, reported {}", w.objective)
                    });
                }
                let c = r.random_range(0..=n);
                let counted = Counting::new(&m);
                let single = solve_single(&counted, c, problem).unwrap();
                let q = counted.queries();
                rep.get(1).check(single.objective == brute[c], || {
                    format!("single n={n} c={c} {problem:?}: {} != {}", single.objective, brute[c])
                });
                rep.get(11).check(q <= pairs(n), || format!("single n={n}: {q} queries"));
                let recomputed = partition_objective(&m, &single.coloring, problem);
                rep.get(5).check(zeros(&single.coloring) == c && recomputed == single.objective, || {
                    format!("single n={n} c={c}: witness gives {recomputed}")
                });
            }
        }
    }
}

/// Criteria 2, 5, 6 on small trees.
fn dp_vs_brute(rep: &mut Report) {
    let budget = OracleBudget::default();
    let mut r = rng(202);
    for n in 2..=12 {
        for t in 0..200 {
            let ties = t % 3 == 0;
            let tree = shaped_tree(n, t % 7, ties, &mut r);
            let (dp, log) = solve_all_cardinalities(&tree);
            let brute = brute_bottleneck_profile(&tree, &budget).unwrap();
            rep.get(2)
                .check(dp == brute, || format!("n={n} t={t}: {:?} != {:?}", dp.values, brute.values));
            rep.get(6).check(symmetric(&dp.values), || format!("tree n={n} t={t}: {:?}", dp.values));
            check_reconstruction(rep, &tree, &dp, &log);
        }
    }
}

fn check_reconstruction(
    rep: &mut Report,
    tree: &WeightedTree,
    dp: &CardinalityProfile,
    log: &diampart::bottleneck::ChoiceLog,
) {
    let n = tree.len();
    for c in 0..=n {
        let phi = reconstruct(tree, log, c).unwrap();
        let m = mono_max(tree, &phi).unwrap();
        rep.get(5).check(zeros(&phi) == c && m == dp[c], || {
            format!("tree n={n} c={c}: {} zeros, M={m}, M*={}", zeros(&phi), dp[c])
        });
    }
}

/// Criterion 3: diam(φ) = max(diam(χ), M(φ)) for arbitrary colorings.
fn decomposition_identity(rep: &mut Report) {
    let mut r = rng(303);
    for t in 0..50 {
        let n = r.random_range(5..=40);
        let m: WeightMatrix = if t % 5 == 0 {
            random_matrix_with_ties(n, &mut r)
        } else {
            random_matrix(n, &mut r)
        };
        let tree = build_spanning_tree(&m, Sense::Max);
        let chi = bipartition(&tree);
        let diam_chi = class_extreme(&m, &chi, Sense::Max);
        for k in 0..1000 {
            let p = [0.5, 0.1, 0.9, r.random::<f64>()][k % 4];
            let phi: Vec<u8> = (0..n).map(|_| u8::from(r.random_bool(p))).collect();
            let lhs = partition_objective(&m, &phi, Problem::Diameter);
            let rhs = diam_chi.max(mono_max(&tree, &phi).unwrap());
            rep.get(3).check(lhs == rhs, || format!("n={n} t={t}: {lhs} != {rhs}"));
        }
    }
}

/// Criteria 4, 5, 6 on trees up to n = 500.
fn single_vs_all(rep: &mut Report) {
    let mut r = rng(404);
    let mut sizes: Vec<usize> = (0..40).map(|_| r.random_range(2..=500)).collect();
    sizes.extend([500, 500, 500, 499]);
    for (t, &n) in sizes.iter().enumerate() {
        let tree = shaped_tree(n, t % 4, t % 2 == 0, &mut r);
        let (dp, log) = solve_all_cardinalities(&tree);
        rep.get(6).check(symmetric(&dp.values), || format!("tree n={n}: asymmetric profile"));
        check_reconstruction(rep, &tree, &dp, &log);
        for c in 0..=n {
            let v = threshold_single(&tree, c);
            rep.get(4).check(v == dp[c], || format!("n={n} c={c}: single {v} != dp {}", dp[c]));
            if c % 7 == 0 {
                let (v, phi) = solve_single_with_witness(&tree, c);
                let m = mono_max(&tree, &phi).unwrap();
                rep.get(5).check(zeros(&phi) == c && m == v, || {
                    format!("single witness n={n} c={c}: {} zeros, M={m}, value {v}", zeros(&phi))
                });
            }
        }
    }
}

/// Criteria 7 and 11 on the hidden-bit family.
fn adversary(rep: &mut Report) {
    let mut r = rng(505);
    let mut counts = Vec::new();
    for n in [4, 8, 16] {
        for problem in [Problem::Diameter, Problem::Dispersion] {
            for _ in 0..50 {
                let adv = AdversaryInstance::random(n, problem, &mut r).unwrap();
                check_adversary(rep, &adv);
            }
        }
        let zero = AdversaryInstance::constant(n, false, Problem::Diameter).unwrap();
        check_adversary(rep, &zero);
        let m = zero.to_matrix();
        let counted = Counting::new(&m);
        solve_single(&counted, n / 2, Problem::Diameter).unwrap();
        let q = counted.queries();
        let need = pairs(n / 2);
        rep.get(7).check(q >= need, || format!("n={n}: {q} queries < {need}"));
        rep.get(11).check(q <= pairs(n), || format!("adversary n={n}: {q} queries"));
        counts.push(format!("n={n}:{q}"));
    }
    rep.get(7).note = Some(format!("queries on all-clear family {}", counts.join(" ")));
}

fn check_adversary(rep: &mut Report, adv: &AdversaryInstance) {
    let n = adv.n;
    let m = adv.to_matrix();
    let values_ok = (0..n).all(|u| (0..n).filter(|&v| v != u).all(|v| matches!(m.weight(u, v), 1.0 | 2.0)));
    let metric = check_metric(&adv.to_instance()).unwrap();
    rep.get(7).check(values_ok && metric.is_none(), || format!("n={n}: not a {{1,2}}-metric: {metric:?}"));
    let expected = ExtReal::finite(adv.expected_optimum());
    let counted = Counting::new(&m);
    let single = solve_single(&counted, n / 2, adv.problem).unwrap().objective;
    rep.get(11).check(counted.queries() <= pairs(n), || format!("adversary n={n}: too many queries"));
    let all = solve_all(&m, adv.problem).objective(n / 2);
    rep.get(7).check(single == expected && all == expected, || {
        format!("n={n} {:?}: single {single}, all {all}, expected {expected}", adv.problem)
    });
}

fn with_duplicates(cloud: PointCloud, r: &mut Rng64) -> PointCloud {
    let n = cloud.len();
    let mut coords = cloud.coords().to_vec();
    for _ in 0..(n / 8).max(1) {
        let (a, b) = (r.random_range(0..n), r.random_range(0..n));
        coords[2 * a] = coords[2 * b];
        coords[2 * a + 1] = coords[2 * b + 1];
    }
    PointCloud::new(2, coords).unwrap()
}

/// Criteria 8, 5, 11 on random planar point sets.
fn euclidean_agreement(rep: &mut Report) {
    let mut r = rng(606);
    for n in [16, 64, 256] {
        for t in 0..100 {
            let mut cloud = random_points(n, 2, &mut r);
            if t % 10 == 0 {
                cloud = with_duplicates(cloud, &mut r);
            }
            let sq = cloud.squared_distances();
            let cs = [n / 2, r.random_range(0..=n), r.random_range(0..=n)];
            for problem in [Problem::Diameter, Problem::Dispersion] {
                for c in cs {
                    let fast = euclidean_fast_path(&cloud, c, problem).unwrap();
                    let counted = Counting::new(&sq);
                    let generic = solve_single(&counted, c, problem).unwrap();
                    rep.get(8).check(fast.objective == generic.objective, || {
                        format!("n={n} t={t} c={c} {problem:?}: fast {} != generic {}", fast.objective, generic.objective)
                    });
                    rep.get(11).check(counted.queries() <= pairs(n), || format!("points n={n}: too many queries"));
                    let recomputed = partition_objective(&sq, &fast.coloring, problem);
                    rep.get(5).check(zeros(&fast.coloring) == c && recomputed == fast.objective, || {
                        format!("fast witness n={n} c={c} {problem:?}: gives {recomputed}, reported {}", fast.objective)
                    });
                }
            }
        }
    }
}

fn scan_closest(ps: &PointSet2D) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            best = best.min(ps.sq_dist(i, j));
        }
    }
    best
}

fn scan_farthest(ps: &PointSet2D) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            best = best.max(ps.sq_dist(i, j));
        }
    }
    best
}

fn random_set(n: usize, kind: usize, r: &mut Rng64) -> PointSet2D {
    let points = (0..n)
        .map(|_| match kind {
            // Small integer grid: many duplicates and collinear triples.
            0 => [r.random_range(0..20) as f64, r.random_range(0..20) as f64],
            // Points on a circle.
            1 => {
                let a = r.random::<f64>() * std::f64::consts::TAU;
                [a.cos(), a.sin()]
            }
            _ => [r.random::<f64>(), r.random::<f64>()],
        })
        .collect();
    PointSet2D::new(points).unwrap()
}

/// Criterion 9.
fn geometry(rep: &mut Report) {
    let mut r = rng(707);
    for t in 0..500 {
        let n = if t < 5 { 2000 } else { (2.0f64.powf(r.random_range(1.0..11.0)) as usize).clamp(2, 2000) };
        let ps = random_set(n, t % 3, &mut r);
        let all: Vec<usize> = (0..n).collect();
        let (i, j, d) = closest_pair(&ps).unwrap();
        let want = scan_closest(&ps);
        rep.get(9).check(d == want && ps.sq_dist(i, j) == d, || format!("closest n={n} t={t}: {d} != {want}"));
        let far = hull_diameter(&ps, &all);
        let want = scan_farthest(&ps);
        rep.get(9).check(far == ExtReal::finite(want), || format!("diameter n={n} t={t}: {far} != {want}"));
    }
    for t in 0..100 {
        let n = if t < 3 { 1000 } else { r.random_range(2..=1000) };
        let ps = random_set(n, t % 3, &mut r);
        let cloud = PointCloud::new(2, ps.points.iter().flatten().copied().collect()).unwrap();
        let emst = delaunay_emst(&ps);
        let prim = build_spanning_tree(&cloud.distances(), Sense::Min);
        let a = sorted_total(emst.edges().iter().map(|e| e.w).collect());
        let b = sorted_total(prim.edges().iter().map(|e| e.w).collect());
        rep.get(9).check(a == b && emst.edges().len() == n - 1, || format!("emst n={n} t={t}: {a} != prim {b}"));
    }
}

/// Criteria 10 and 11 on large random matrices.
fn scaling(rep: &mut Report) {
    let mut medians = Vec::new();
    for n in [1000usize, 2000] {
        let m = random_matrix(n, &mut rng(808 + n as u64));
        let counted = Counting::new(&m);
        let all = solve_diameter_all(&counted);
        rep.get(10).check(all.pair_visits() == pairs(n), || {
            format!("n={n}: {} pair visits, expected {}", all.pair_visits(), pairs(n))
        });
        rep.get(11).check(counted.queries() <= pairs(n), || format!("n={n}: {} queries", counted.queries()));
        let mut times = Vec::new();
        for _ in 0..TIMING_RUNS {
            let start = Instant::now();
            let all = solve_diameter_all(&m);
            let profile = all.objectives();
            times.push(start.elapsed().as_secs_f64());
            assert_eq!(profile.len(), n + 1);
        }
        times.sort_by(f64::total_cmp);
        medians.push(times[TIMING_RUNS / 2]);
    }
    let ratio = medians[1] / medians[0];
    rep.get(10).check((RATIO_LO..=RATIO_HI).contains(&ratio), || {
        format!("t(2000)/t(1000) = {ratio:.2} outside [{RATIO_LO}, {RATIO_HI}]")
    });
    rep.get(10).note = Some(format!(
        "t(1000)={:.3}s t(2000)={:.3}s ratio={ratio:.2}",
        medians[0], medians[1]
    ));
}

fn main() -> ExitCode {
    let mut rep = Report::new();
    let start = Instant::now();
    oracle_equivalence(&mut rep);
    dp_vs_brute(&mut rep);
    decomposition_identity(&mut rep);
    single_vs_all(&mut rep);
    adversary(&mut rep);
    euclidean_agreement(&mut rep);
    geometry(&mut rep);
    scaling(&mut rep);
    let ok = rep.print();
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
