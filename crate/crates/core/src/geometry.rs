//! Planar subroutines for Euclidean instances. Everything compares squared
//! distances, computed as `dx*dx + dy*dy` so values agree bit for bit with
//! [`PointCloud::squared_distance`](crate::oracle::PointCloud::squared_distance).

use robust::Coord;
use spade::{DelaunayTriangulation, Point2, Triangulation};

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::oracle::PointCloud;
use crate::spanning::{build_spanning_tree, Sense, TreeEdge, UnionFind, WeightedTree};

pub type Point = [f64; 2];

#[derive(Clone, Debug, PartialEq)]
pub struct PointSet2D {
    pub points: Vec<Point>,
}

impl PointSet2D {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::contract("non-finite coordinate"));
        }
        Ok(PointSet2D { points })
    }

    pub fn from_cloud(cloud: &PointCloud) -> Result<Self> {
        if cloud.dim() != 2 {
            return Err(Error::contract(format!("expected d = 2, got d = {}", cloud.dim())));
        }
        Ok(PointSet2D {
            points: (0..cloud.len()).map(|i| [cloud.point(i)[0], cloud.point(i)[1]]).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn sq_dist(&self, i: usize, j: usize) -> f64 {
        sq_dist(self.points[i], self.points[j])
    }
}

#[inline]
pub fn sq_dist(p: Point, q: Point) -> f64 {
    let dx = p[0] - q[0];
    let dy = p[1] - q[1];
    dx * dx + dy * dy
}

fn lex(a: &Point, b: &Point) -> std::cmp::Ordering {
    a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1]))
}

/// Globally closest pair `(i, j, d²)` with `i < j`, by divide and conquer.
pub fn closest_pair(ps: &PointSet2D) -> Result<(usize, usize, f64)> {
    closest_pair_among(ps, &(0..ps.len()).collect::<Vec<_>>())
}

/// Closest pair within the points indexed by `subset`.
pub fn closest_pair_among(ps: &PointSet2D, subset: &[usize]) -> Result<(usize, usize, f64)> {
    if subset.len() < 2 {
        return Err(Error::contract("closest pair needs at least two points"));
    }
    let mut by_x = subset.to_vec();
    by_x.sort_by(|&a, &b| lex(&ps.points[a], &ps.points[b]));
    let mut scratch = vec![0; by_x.len()];
    let mut best = (usize::MAX, usize::MAX, f64::INFINITY);
    closest_rec(ps, &mut by_x, &mut scratch, &mut best);
    let (i, j, d) = best;
    Ok((i.min(j), i.max(j), d))
}

/// On return `idx` is sorted by y. `best` holds the closest pair seen so far.
fn closest_rec(ps: &PointSet2D, idx: &mut [usize], scratch: &mut [usize], best: &mut (usize, usize, f64)) {
    let n = idx.len();
    if n <= 3 {
        for a in 0..n {
            for b in a + 1..n {
                let d = ps.sq_dist(idx[a], idx[b]);
                if d < best.2 {
                    *best = (idx[a], idx[b], d);
                }
            }
        }
        idx.sort_by(|&a, &b| ps.points[a][1].total_cmp(&ps.points[b][1]));
        return;
    }
    let mid = n / 2;
    let mid_x = ps.points[idx[mid]][0];
    {
        let (left, right) = idx.split_at_mut(mid);
        let (sl, sr) = scratch.split_at_mut(mid);
        closest_rec(ps, left, sl, best);
        closest_rec(ps, right, sr, best);
    }
    // Merge the two y-sorted halves.
    let (mut a, mut b, mut k) = (0, mid, 0);
    while a < mid || b < n {
        let take_left = b == n || (a < mid && ps.points[idx[a]][1] <= ps.points[idx[b]][1]);
        if take_left {
            scratch[k] = idx[a];
            a += 1;
        } else {
            scratch[k] = idx[b];
            b += 1;
        }
        k += 1;
    }
    idx.copy_from_slice(&scratch[..n]);

    let mut strip = Vec::new();
    for &i in idx.iter() {
        let dx = ps.points[i][0] - mid_x;
        if dx * dx < best.2 {
            strip.push(i);
        }
    }
    for a in 0..strip.len() {
        for b in a + 1..strip.len() {
            let dy = ps.points[strip[b]][1] - ps.points[strip[a]][1];
            if dy * dy >= best.2 {
                break;
            }
            let d = ps.sq_dist(strip[a], strip[b]);
            if d < best.2 {
                *best = (strip[a], strip[b], d);
            }
        }
    }
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    robust::orient2d(
        Coord { x: a[0], y: a[1] },
        Coord { x: b[0], y: b[1] },
        Coord { x: c[0], y: c[1] },
    )
}

/// Convex hull in counterclockwise order without collinear or repeated
/// points (Andrew's monotone chain with exact orientation tests).
pub fn convex_hull(ps: &PointSet2D, subset: &[usize]) -> Vec<usize> {
    let mut idx = subset.to_vec();
    idx.sort_by(|&a, &b| lex(&ps.points[a], &ps.points[b]));
    idx.dedup_by(|a, b| ps.points[*a] == ps.points[*b]);
    if idx.len() <= 2 {
        return idx;
    }
    let mut hull: Vec<usize> = Vec::with_capacity(2 * idx.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(idx.iter())
        } else {
            Box::new(idx.iter().rev())
        };
        for &i in iter {
            while hull.len() >= start + 2 {
                let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                if orient(ps.points[a], ps.points[b], ps.points[i]) <= 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(i);
        }
        hull.pop();
    }
    hull
}

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Largest squared distance within `subset` via convex hull and rotating
/// calipers; `-inf` when the subset has at most one point.
pub fn hull_diameter(ps: &PointSet2D, subset: &[usize]) -> ExtReal {
    if subset.len() <= 1 {
        return ExtReal::NEG_INF;
    }
    let hull = convex_hull(ps, subset);
    let p = |k: usize| ps.points[hull[k]];
    let m = hull.len();
    match m {
        1 => return ExtReal::finite(0.0),
        2 => return ExtReal::finite(sq_dist(p(0), p(1))),
        _ => {}
    }
    let mut best = 0.0f64;
    let mut j = 1;
    for i in 0..m {
        let ni = (i + 1) % m;
        while cross(p(i), p(ni), p((j + 1) % m)) > cross(p(i), p(ni), p(j)) {
            j = (j + 1) % m;
        }
        // Check the neighbors of the antipodal vertex too; near-parallel
        // edges make the area comparison unreliable in floating point.
        for k in [j, (j + 1) % m] {
            best = best.max(sq_dist(p(i), p(k))).max(sq_dist(p(ni), p(k)));
        }
    }
    ExtReal::finite(best)
}

/// Delaunay triangulation edges over the original indices. Repeated points
/// are joined to their first occurrence; a collinear set yields the path
/// along the line.
pub fn delaunay_edges(ps: &PointSet2D) -> Vec<(usize, usize)> {
    match triangulate(ps) {
        Some(t) => t.edges.into_iter().chain(t.duplicates).collect(),
        None => Vec::new(),
    }
}

struct Triangulated {
    edges: Vec<(usize, usize)>,
    /// `(first occurrence, repeat)` pairs at distance zero.
    duplicates: Vec<(usize, usize)>,
}

/// `None` when coordinates fall outside the range the exact predicates
/// support.
fn triangulate(ps: &PointSet2D) -> Option<Triangulated> {
    let mut order: Vec<usize> = (0..ps.len()).collect();
    order.sort_by(|&a, &b| lex(&ps.points[a], &ps.points[b]).then(a.cmp(&b)));
    let mut unique: Vec<usize> = Vec::new();
    let mut duplicates = Vec::new();
    for &i in &order {
        match unique.last() {
            Some(&r) if ps.points[r] == ps.points[i] => duplicates.push((r, i)),
            _ => unique.push(i),
        }
    }
    if unique.len() <= 1 {
        return Some(Triangulated {
            edges: Vec::new(),
            duplicates,
        });
    }

    let mut dt: DelaunayTriangulation<Point2<f64>> = DelaunayTriangulation::new();
    let mut by_handle = vec![usize::MAX; unique.len()];
    for &i in &unique {
        let [x, y] = ps.points[i];
        let h = dt.insert(Point2::new(x, y)).ok()?;
        by_handle[h.index()] = i;
    }
    let edges = if dt.all_vertices_on_line() {
        // `unique` is lexicographically sorted, which is line order.
        unique.windows(2).map(|w| (w[0], w[1])).collect()
    } else {
        dt.undirected_edges()
            .map(|e| {
                let [a, b] = e.vertices();
                let (a, b) = (by_handle[a.fix().index()], by_handle[b.fix().index()]);
                (a.min(b), a.max(b))
            })
            .collect()
    };
    Some(Triangulated { edges, duplicates })
}

/// Euclidean minimum spanning tree with squared-distance edge weights:
/// Kruskal over the Delaunay edges, ties broken by `(i, j)`.
pub fn delaunay_emst_squared(ps: &PointSet2D) -> WeightedTree {
    let n = ps.len();
    let Some(t) = triangulate(ps) else {
        // Out-of-range coordinates: fall back to dense Prim.
        let cloud = PointCloud::new(2, ps.points.iter().flatten().copied().collect())
            .expect("finite coordinates");
        return build_spanning_tree(&cloud.squared_distances(), Sense::Min);
    };
    let mut cand: Vec<(f64, usize, usize)> =
        t.edges.iter().map(|&(i, j)| (ps.sq_dist(i, j), i, j)).collect();
    cand.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut uf = UnionFind::new(n);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for &(r, i) in &t.duplicates {
        uf.union(r, i);
        edges.push(TreeEdge { u: r, v: i, w: 0.0 });
    }
    for (w, i, j) in cand {
        if uf.union(i, j) {
            edges.push(TreeEdge { u: i, v: j, w });
        }
    }
    WeightedTree::new(n, edges).expect("Delaunay graph is connected")
}

/// Euclidean minimum spanning tree with true distances as edge weights.
pub fn delaunay_emst(ps: &PointSet2D) -> WeightedTree {
    delaunay_emst_squared(ps).map_weights(f64::sqrt)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(pts: &[(f64, f64)]) -> PointSet2D {
        PointSet2D::new(pts.iter().map(|&(x, y)| [x, y]).collect()).unwrap()
    }

    #[test]
    fn closest_pair_examples() {
        let ps = set(&[(0.0, 0.0), (3.0, 4.0), (1.0, 0.0)]);
        assert_eq!(closest_pair(&ps).unwrap(), (0, 2, 1.0));
        let dup = set(&[(5.0, 5.0), (0.0, 0.0), (2.0, 2.0), (0.0, 0.0)]);
        assert_eq!(closest_pair(&dup).unwrap().2, 0.0);
        assert!(closest_pair(&set(&[(1.0, 1.0)])).is_err());
    }

    #[test]
    fn hull_diameter_examples() {
        let sq = set(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        assert_eq!(hull_diameter(&sq, &[0, 1, 2, 3]), ExtReal::finite(2.0));
        assert_eq!(hull_diameter(&sq, &[2]), ExtReal::NEG_INF);
        assert_eq!(hull_diameter(&sq, &[]), ExtReal::NEG_INF);
        let same = set(&[(1.0, 1.0), (1.0, 1.0)]);
        assert_eq!(hull_diameter(&same, &[0, 1]), ExtReal::finite(0.0));
        let line = set(&[(0.0, 0.0), (2.0, 0.0), (1.0, 0.0), (5.0, 0.0)]);
        assert_eq!(hull_diameter(&line, &[0, 1, 2, 3]), ExtReal::finite(25.0));
    }

    #[test]
    fn hull_is_ccw_without_collinear_points() {
        let ps = set(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0), (1.0, 1.0)]);
        let hull = convex_hull(&ps, &[0, 1, 2, 3, 4, 5]);
        assert_eq!(hull, vec![0, 2, 3, 4]);
    }

    #[test]
    fn emst_examples() {
        let tri = set(&[(0.0, 0.0), (3.0, 0.0), (0.0, 4.0)]);
        let t = delaunay_emst(&tri);
        let mut ws: Vec<f64> = t.edges().iter().map(|e| e.w).collect();
        ws.sort_by(f64::total_cmp);
        assert_eq!(ws, vec![3.0, 4.0]);
        assert_eq!(t.total_weight(), 7.0);

        let line = set(&(0..7).map(|k| (k as f64, 0.0)).rev().collect::<Vec<_>>());
        let t = delaunay_emst(&line);
        assert_eq!(t.edges().len(), 6);
        assert!(t.edges().iter().all(|e| e.w == 1.0));

        let diag = set(&(0..5).map(|k| (k as f64, 2.0 * k as f64)).collect::<Vec<_>>());
        assert_eq!(delaunay_emst_squared(&diag).total_weight(), 20.0);
    }

    #[test]
    fn emst_with_repeats_and_tiny_sets() {
        let ps = set(&[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, 1.0), (1.0, 0.0)]);
        let t = delaunay_emst_squared(&ps);
        assert_eq!(t.edges().len(), 4);
        assert_eq!(t.total_weight(), 2.0);
        assert!(delaunay_emst(&set(&[(1.0, 2.0)])).edges().is_empty());
        assert!(delaunay_emst(&set(&[])).edges().is_empty());
    }

    #[test]
    fn emst_falls_back_outside_predicate_range() {
        let ps = set(&[(0.0, 0.0), (1e-300, 0.0), (1.0, 1.0)]);
        let t = delaunay_emst_squared(&ps);
        assert_eq!(t.edges().len(), 2);
    }
}
