//! Exact two-class partitioning under bottleneck objectives.
//!
//! Given symmetric pair weights on `n` items and a target size `c`, split the
//! items into classes of sizes `c` and `n - c` so that the larger class
//! diameter (largest same-class weight) is as small as possible. The dual
//! problem, maximizing the smallest same-class weight (2-class maximum
//! dispersion, "2-MDCC"), is the same problem on negated weights.
//!
//! The solvers reduce to a maximum spanning tree: the optimum at every `c`
//! is `max(diam(χ), M*(c))`, where `χ` is the tree's proper 2-coloring and
//! `M*(c)` is the best achievable heaviest monochromatic tree edge.
//! [`bottleneck`] computes `M*` for all `c` in `O(n^2)`; [`single`] computes
//! one value by threshold search.
//!
//! ```
//! use diampart::oracle::WeightMatrix;
//! use diampart::pipeline::solve_diameter_all;
//!
//! let m = WeightMatrix::from_fn(4, |u, v| (u + v) as f64);
//! let all = solve_diameter_all(&m);
//! let best = all.witness(2).unwrap();
//! assert_eq!(best.objective, all.objective(2));
//! ```

pub mod adversary;
pub mod bottleneck;
pub mod error;
pub mod ext;
pub mod generate;
pub mod geometry;
pub mod instance;
pub mod oracle;
pub mod pipeline;
pub mod reference;
pub mod selftest;
pub mod single;
pub mod spanning;

pub use error::{Error, Result};
pub use ext::ExtReal;
pub use instance::{Format, Instance, Source};
pub use oracle::{Counting, PointCloud, WeightMatrix, WeightOracle};
pub use pipeline::{PartitionResult, Problem};
