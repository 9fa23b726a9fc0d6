//! Full solvers for diameter partitioning and its max-min dual.
//!
//! For a maximum spanning tree `T` with proper coloring `χ`, every coloring
//! `φ` satisfies `diam(φ) = max(diam(χ), M(φ))`, where `M(φ)` is the
//! heaviest `φ`-monochromatic tree edge. The optimum at cardinality `c` is
//! therefore `max(diam(χ), M*(c))`, and only `M*` depends on `c`.
//!
//! The dispersion problem (maximize the least same-class weight) is the
//! diameter problem on negated weights. Generic oracles are negated and
//! delegated; planar point sets run the dual pipeline directly on a minimum
//! spanning tree.

use serde::Serialize;

use crate::bottleneck::{reconstruct, solve_all_cardinalities, CardinalityProfile, ChoiceLog};
use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::geometry::{closest_pair_among, delaunay_emst_squared, hull_diameter, PointSet2D};
use crate::oracle::{negate_oracle, PointCloud, WeightOracle};
use crate::single::solve_single_with_witness;
use crate::spanning::{
    bipartition, build_spanning_tree, build_spanning_tree_cached, class_extreme, Bipartition,
    Sense, WeightedTree,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Problem {
    /// Minimize the larger class diameter.
    #[serde(rename = "diameter")]
    Diameter,
    /// Maximize the smallest same-class weight (2-MDCC).
    #[serde(rename = "mdcc")]
    Dispersion,
}

impl Problem {
    pub fn name(self) -> &'static str {
        match self {
            Problem::Diameter => "diameter",
            Problem::Dispersion => "mdcc",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartitionResult {
    pub coloring: Vec<u8>,
    /// Number of color-0 vertices; always the requested `c`.
    pub cardinality: usize,
    pub objective: ExtReal,
    pub kind: Problem,
}

impl PartitionResult {
    pub fn len(&self) -> usize {
        self.coloring.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coloring.is_empty()
    }

    /// `{"problem", "n", "c", "objective", "coloring"}` in that order, with
    /// infinite objectives as the strings `"-inf"`/`"+inf"`.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            problem: &'static str,
            n: usize,
            c: usize,
            objective: ExtReal,
            coloring: &'a [u8],
        }
        serde_json::to_string(&Out {
            problem: self.kind.name(),
            n: self.coloring.len(),
            c: self.cardinality,
            objective: self.objective,
            coloring: &self.coloring,
        })
        .expect("plain data serializes")
    }

    /// Objective mapped through `f` (e.g. squared distance to distance).
    pub fn map_objective(mut self, f: impl Fn(ExtReal) -> ExtReal) -> Self {
        self.objective = f(self.objective);
        self
    }
}

/// The problem objective of a coloring, by direct scan over all same-class
/// pairs: the larger class diameter for [`Problem::Diameter`], the smallest
/// same-class weight for [`Problem::Dispersion`].
pub fn partition_objective<O: WeightOracle + ?Sized>(
    oracle: &O,
    coloring: &[u8],
    problem: Problem,
) -> ExtReal {
    let part = Bipartition::from_colors(coloring.to_vec());
    match problem {
        Problem::Diameter => class_extreme(oracle, &part, Sense::Max),
        Problem::Dispersion => class_extreme(oracle, &part, Sense::Min),
    }
}

/// Optimal objectives for every cardinality, with lazily reconstructed
/// witnesses.
///
/// Internally everything is in "diameter form": for the dispersion problem
/// the tree weights and the class extreme are negated and the sign is
/// flipped back on output.
#[derive(Clone, Debug)]
pub struct AllCardinalities {
    kind: Problem,
    tree: WeightedTree,
    chi: Bipartition,
    chi_extreme: ExtReal,
    bottleneck: CardinalityProfile,
    log: ChoiceLog,
}

impl AllCardinalities {
    fn assemble(kind: Problem, tree: WeightedTree, chi_extreme: ExtReal) -> Self {
        let chi = bipartition(&tree);
        let (bottleneck, log) = solve_all_cardinalities(&tree);
        AllCardinalities {
            kind,
            tree,
            chi,
            chi_extreme,
            bottleneck,
            log,
        }
    }

    pub fn kind(&self) -> Problem {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    fn output(&self, x: ExtReal) -> ExtReal {
        match self.kind {
            Problem::Diameter => x,
            Problem::Dispersion => -x,
        }
    }

    /// Optimum at cardinality `c`.
    pub fn objective(&self, c: usize) -> ExtReal {
        self.output(self.chi_extreme.max(self.bottleneck[c]))
    }

    /// Optima for `c = 0..=n`.
    pub fn objectives(&self) -> CardinalityProfile {
        CardinalityProfile {
            values: (0..=self.len()).map(|c| self.objective(c)).collect(),
        }
    }

    /// `M*(c)` for the tree in diameter form.
    pub fn bottleneck_profile(&self) -> &CardinalityProfile {
        &self.bottleneck
    }

    /// The spanning tree in diameter form (negated weights for dispersion).
    pub fn tree(&self) -> &WeightedTree {
        &self.tree
    }

    pub fn chi(&self) -> &Bipartition {
        &self.chi
    }

    /// Class extreme of `χ` in the problem's own sign.
    pub fn chi_extreme(&self) -> ExtReal {
        self.output(self.chi_extreme)
    }

    pub fn pair_visits(&self) -> u64 {
        self.log.pair_visits()
    }

    /// An optimal partition with exactly `c` zeros, rebuilt in `O(n)`.
    pub fn witness(&self, c: usize) -> Result<PartitionResult> {
        let coloring = reconstruct(&self.tree, &self.log, c)?;
        Ok(PartitionResult {
            coloring,
            cardinality: c,
            objective: self.objective(c),
            kind: self.kind,
        })
    }
}

fn check_cardinality(n: usize, c: usize) -> Result<()> {
    if c > n {
        return Err(Error::contract(format!("cardinality {c} exceeds n = {n}")));
    }
    Ok(())
}

/// Diameter optimum for every cardinality in `O(n^2)` time and exactly
/// `n(n-1)/2` oracle queries.
pub fn solve_diameter_all<O: WeightOracle + ?Sized>(oracle: &O) -> AllCardinalities {
    let (tree, cache) = build_spanning_tree_cached(oracle, Sense::Max);
    let chi = bipartition(&tree);
    let diam_chi = class_extreme(&cache, &chi, Sense::Max);
    AllCardinalities::assemble(Problem::Diameter, tree, diam_chi)
}

/// Diameter optimum and a witness for one cardinality, using the
/// threshold-search route for `M*(c)`.
pub fn solve_diameter_single<O: WeightOracle + ?Sized>(
    oracle: &O,
    c: usize,
) -> Result<PartitionResult> {
    check_cardinality(oracle.len(), c)?;
    let (tree, cache) = build_spanning_tree_cached(oracle, Sense::Max);
    let chi = bipartition(&tree);
    let diam_chi = class_extreme(&cache, &chi, Sense::Max);
    let (m, coloring) = solve_single_with_witness(&tree, c);
    Ok(PartitionResult {
        coloring,
        cardinality: c,
        objective: diam_chi.max(m),
        kind: Problem::Diameter,
    })
}

/// Dispersion optimum for every cardinality, by negation.
pub fn solve_mdcc_all<O: WeightOracle + ?Sized>(oracle: &O) -> AllCardinalities {
    let mut all = solve_diameter_all(&negate_oracle(oracle));
    all.kind = Problem::Dispersion;
    all
}

/// Dispersion optimum and witness for one cardinality, by negation.
pub fn solve_mdcc_single<O: WeightOracle + ?Sized>(oracle: &O, c: usize) -> Result<PartitionResult> {
    let r = solve_diameter_single(&negate_oracle(oracle), c)?;
    Ok(PartitionResult {
        objective: -r.objective,
        kind: Problem::Dispersion,
        ..r
    })
}

pub fn solve_single<O: WeightOracle + ?Sized>(
    oracle: &O,
    c: usize,
    problem: Problem,
) -> Result<PartitionResult> {
    match problem {
        Problem::Diameter => solve_diameter_single(oracle, c),
        Problem::Dispersion => solve_mdcc_single(oracle, c),
    }
}

pub fn solve_all<O: WeightOracle + ?Sized>(oracle: &O, problem: Problem) -> AllCardinalities {
    match problem {
        Problem::Diameter => solve_diameter_all(oracle),
        Problem::Dispersion => solve_mdcc_all(oracle),
    }
}

/// Spanning tree in diameter form plus the class extreme of its proper
/// coloring, using planar structures. Objectives are squared distances.
fn planar_parts(ps: &PointSet2D, problem: Problem) -> (WeightedTree, ExtReal) {
    let n = ps.len();
    match problem {
        Problem::Diameter => {
            let cloud = PointCloud::new(2, ps.points.iter().flatten().copied().collect())
                .expect("finite coordinates");
            // No subquadratic maximum spanning tree here; dense Prim.
            let tree = build_spanning_tree(&cloud.squared_distances(), Sense::Max);
            let chi = bipartition(&tree);
            let classes = split_classes(&chi);
            let diam = classes
                .iter()
                .map(|cls| hull_diameter(ps, cls))
                .max()
                .unwrap_or(ExtReal::NEG_INF);
            debug_assert_eq!(tree.len(), n);
            (tree, diam)
        }
        Problem::Dispersion => {
            let tree = delaunay_emst_squared(ps);
            let chi = bipartition(&tree);
            let closest = split_classes(&chi)
                .iter()
                .filter(|cls| cls.len() >= 2)
                .map(|cls| ExtReal::finite(closest_pair_among(ps, cls).expect("two points").2))
                .min()
                .unwrap_or(ExtReal::POS_INF);
            (tree.negated(), -closest)
        }
    }
}

fn split_classes(chi: &Bipartition) -> [Vec<usize>; 2] {
    let mut classes = [Vec::new(), Vec::new()];
    for (v, &b) in chi.color.iter().enumerate() {
        classes[b as usize].push(v);
    }
    classes
}

/// Single-cardinality solve for Euclidean points. Objectives are squared
/// distances.
///
/// In the plane the dispersion problem uses a Delaunay-based minimum
/// spanning tree and per-class closest pairs, and the diameter problem uses
/// per-class hull diameters over a dense maximum spanning tree. Other
/// dimensions run the generic pipeline on squared distances.
pub fn euclidean_fast_path(points: &PointCloud, c: usize, problem: Problem) -> Result<PartitionResult> {
    check_cardinality(points.len(), c)?;
    if points.dim() != 2 {
        return solve_single(&points.squared_distances(), c, problem);
    }
    let ps = PointSet2D::from_cloud(points)?;
    let (tree, chi_extreme) = planar_parts(&ps, problem);
    let (m, coloring) = solve_single_with_witness(&tree, c);
    let objective = chi_extreme.max(m);
    Ok(PartitionResult {
        coloring,
        cardinality: c,
        objective: match problem {
            Problem::Diameter => objective,
            Problem::Dispersion => -objective,
        },
        kind: problem,
    })
}

/// All-cardinalities solve for Euclidean points, sharing the planar
/// structures of [`euclidean_fast_path`]. Objectives are squared distances.
pub fn euclidean_fast_path_all(points: &PointCloud, problem: Problem) -> Result<AllCardinalities> {
    if points.dim() != 2 {
        return Ok(solve_all(&points.squared_distances(), problem));
    }
    let ps = PointSet2D::from_cloud(points)?;
    let (tree, chi_extreme) = planar_parts(&ps, problem);
    Ok(AllCardinalities::assemble(problem, tree, chi_extreme))
}
