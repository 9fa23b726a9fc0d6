//! Browser bindings for the planar solver.
//!
//! Points cross the boundary as a flat `[x0, y0, x1, y1, ...]` array and
//! results come back as JSON strings. The `*_json` functions hold the logic
//! and are plain Rust so they can be tested natively.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use diampart::geometry::{delaunay_emst, PointSet2D};
use diampart::pipeline::{euclidean_fast_path_all, Problem};
use diampart::{ExtReal, PointCloud};

#[derive(Serialize)]
struct Partition {
    objective: ExtReal,
    coloring: Vec<u8>,
    /// Edges of the spanning tree the solver reduced to.
    tree: Vec<[usize; 2]>,
    /// Optimum for every `c = 0..=n`.
    profile: Vec<ExtReal>,
}

fn parse_problem(name: &str) -> Result<Problem, String> {
    match name {
        "diameter" => Ok(Problem::Diameter),
        "mdcc" | "dispersion" => Ok(Problem::Dispersion),
        _ => Err(format!("unknown problem {name:?}")),
    }
}

fn cloud(xy: &[f64]) -> Result<PointCloud, String> {
    if !xy.len().is_multiple_of(2) {
        return Err("coordinate array has odd length".into());
    }
    PointCloud::new(2, xy.to_vec()).map_err(|e| e.to_string())
}

/// Optimal split with `c` points in class 0, plus the tree and the whole
/// profile, with distances (not squared) as objectives.
pub fn partition_json(xy: &[f64], c: usize, problem: &str) -> Result<String, String> {
    let problem = parse_problem(problem)?;
    let points = cloud(xy)?;
    let all = euclidean_fast_path_all(&points, problem).map_err(|e| e.to_string())?;
    let best = all.witness(c).map_err(|e| e.to_string())?;
    let out = Partition {
        objective: best.objective.sqrt(),
        coloring: best.coloring,
        tree: all.tree().edges().iter().map(|e| [e.u, e.v]).collect(),
        profile: (0..=all.len()).map(|k| all.objective(k).sqrt()).collect(),
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

/// Euclidean minimum spanning tree as `[[u, v, length], ...]`.
pub fn emst_json(xy: &[f64]) -> Result<String, String> {
    let points = cloud(xy)?;
    let ps = PointSet2D::from_cloud(&points).map_err(|e| e.to_string())?;
    let edges: Vec<(usize, usize, f64)> = delaunay_emst(&ps)
        .edges()
        .iter()
        .map(|e| (e.u, e.v, e.w))
        .collect();
    serde_json::to_string(&edges).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn partition(xy: &[f64], c: usize, problem: &str) -> Result<String, JsValue> {
    partition_json(xy, c, problem).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn emst(xy: &[f64]) -> Result<String, JsValue> {
    emst_json(xy).map_err(|e| JsValue::from_str(&e))
}
