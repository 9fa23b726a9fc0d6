//! Pair-weight access. Every solver reads weights only through
//! [`WeightOracle`], so wrapping an oracle in [`Counting`] measures exactly
//! how many weights an algorithm looked at.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use crate::error::{Error, Result};

/// Symmetric weights `w(u, v)` on the unordered pairs of `0..len()`.
pub trait WeightOracle {
    /// Number of vertices.
    fn len(&self) -> usize;

    /// `w(u, v)`. Panics when `u == v` or either index is out of range.
    fn weight(&self, u: usize, v: usize) -> f64;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Like [`weight`](Self::weight) but reports contract violations as errors.
    fn checked_weight(&self, u: usize, v: usize) -> Result<f64> {
        let n = self.len();
        if u >= n || v >= n {
            return Err(Error::contract(format!(
                "pair ({u}, {v}) out of range for n = {n}"
            )));
        }
        if u == v {
            return Err(Error::contract(format!("weight({u}, {u}) is undefined")));
        }
        Ok(self.weight(u, v))
    }
}

#[inline]
#[track_caller]
pub(crate) fn assert_pair(n: usize, u: usize, v: usize) {
    assert!(u < n && v < n, "pair ({u}, {v}) out of range for n = {n}");
    assert!(u != v, "weight({u}, {u}) is undefined");
}

impl<O: WeightOracle + ?Sized> WeightOracle for &O {
    fn len(&self) -> usize {
        (**self).len()
    }

    fn weight(&self, u: usize, v: usize) -> f64 {
        (**self).weight(u, v)
    }
}

impl<O: WeightOracle + ?Sized> WeightOracle for Box<O> {
    fn len(&self) -> usize {
        (**self).len()
    }

    fn weight(&self, u: usize, v: usize) -> f64 {
        (**self).weight(u, v)
    }
}

/// Dense symmetric weight matrix. The diagonal is stored but never read.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightMatrix {
    n: usize,
    data: Vec<f64>,
}

impl WeightMatrix {
    /// Builds a matrix from row-major data, checking symmetry and finiteness
    /// off the diagonal.
    pub fn from_rows(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::contract(format!(
                "expected {} entries for n = {n}, got {}",
                n * n,
                data.len()
            )));
        }
        for u in 0..n {
            for v in u + 1..n {
                let (a, b) = (data[u * n + v], data[v * n + u]);
                if !a.is_finite() {
                    return Err(Error::contract(format!("w({u}, {v}) = {a} is not finite")));
                }
                if a.to_bits() != b.to_bits() && a != b {
                    return Err(Error::contract(format!(
                        "asymmetric weights: w({u}, {v}) = {a} but w({v}, {u}) = {b}"
                    )));
                }
            }
        }
        Ok(WeightMatrix { n, data })
    }

    /// Builds a matrix by evaluating `f(u, v)` once per unordered pair `u < v`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; n * n];
        for u in 0..n {
            for v in u + 1..n {
                let w = f(u, v);
                assert!(w.is_finite(), "w({u}, {v}) = {w} is not finite");
                data[u * n + v] = w;
                data[v * n + u] = w;
            }
        }
        WeightMatrix { n, data }
    }

    /// Materializes any oracle. Reads each unordered pair once.
    pub fn from_oracle<O: WeightOracle + ?Sized>(oracle: &O) -> Self {
        Self::from_fn(oracle.len(), |u, v| oracle.weight(u, v))
    }

    pub fn set(&mut self, u: usize, v: usize, w: f64) {
        assert_pair(self.n, u, v);
        assert!(w.is_finite());
        self.data[u * self.n + v] = w;
        self.data[v * self.n + u] = w;
    }

    pub fn row(&self, u: usize) -> &[f64] {
        &self.data[u * self.n..(u + 1) * self.n]
    }
}

impl WeightOracle for WeightMatrix {
    fn len(&self) -> usize {
        self.n
    }

    #[inline]
    fn weight(&self, u: usize, v: usize) -> f64 {
        assert_pair(self.n, u, v);
        self.data[u * self.n + v]
    }
}

/// `n` points in `R^d`, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
}

impl PointCloud {
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::contract("points need dimension d >= 1"));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::contract(format!(
                "{} coordinates do not split into points of dimension {dim}",
                coords.len()
            )));
        }
        if let Some(x) = coords.iter().find(|x| !x.is_finite()) {
            return Err(Error::contract(format!("non-finite coordinate {x}")));
        }
        Ok(PointCloud { dim, coords })
    }

    pub fn from_xy(points: &[(f64, f64)]) -> Result<Self> {
        Self::new(2, points.iter().flat_map(|&(x, y)| [x, y]).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    #[inline]
    pub fn squared_distance(&self, u: usize, v: usize) -> f64 {
        let (p, q) = (self.point(u), self.point(v));
        p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum()
    }

    /// Oracle reporting true Euclidean distances.
    pub fn distances(&self) -> Distances<'_> {
        Distances(self)
    }

    /// Oracle reporting squared distances; solvers run on this so no square
    /// root ever enters a comparison.
    pub fn squared_distances(&self) -> SquaredDistances<'_> {
        SquaredDistances(self)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Distances<'a>(&'a PointCloud);

impl WeightOracle for Distances<'_> {
    fn len(&self) -> usize {
        self.0.len()
    }

    fn weight(&self, u: usize, v: usize) -> f64 {
        assert_pair(self.len(), u, v);
        self.0.squared_distance(u, v).sqrt()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SquaredDistances<'a>(&'a PointCloud);

impl WeightOracle for SquaredDistances<'_> {
    fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    fn weight(&self, u: usize, v: usize) -> f64 {
        assert_pair(self.len(), u, v);
        self.0.squared_distance(u, v)
    }
}

/// Reports `-w(u, v)`. Turns the max-min dispersion problem into the
/// min-max diameter problem and back.
#[derive(Clone, Debug)]
pub struct Negated<O>(pub O);

pub fn negate_oracle<O: WeightOracle>(oracle: O) -> Negated<O> {
    Negated(oracle)
}

impl<O: WeightOracle> WeightOracle for Negated<O> {
    fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    fn weight(&self, u: usize, v: usize) -> f64 {
        -self.0.weight(u, v)
    }
}

/// Counts every weight read. Repeated reads of the same pair are charged
/// again; caching is the caller's business.
#[derive(Debug)]
pub struct Counting<O> {
    inner: O,
    queries: AtomicU64,
    log: Option<Mutex<Vec<(usize, usize)>>>,
}

impl<O: WeightOracle> Counting<O> {
    pub fn new(inner: O) -> Self {
        Counting {
            inner,
            queries: AtomicU64::new(0),
            log: None,
        }
    }

    /// Also records every queried pair in order.
    pub fn with_log(inner: O) -> Self {
        Counting {
            inner,
            queries: AtomicU64::new(0),
            log: Some(Mutex::new(Vec::new())),
        }
    }

    pub fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.queries.store(0, Ordering::Relaxed);
        if let Some(log) = &self.log {
            log.lock().unwrap().clear();
        }
    }

    /// Queried pairs in order, if logging was enabled.
    pub fn log(&self) -> Option<Vec<(usize, usize)>> {
        self.log.as_ref().map(|l| l.lock().unwrap().clone())
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }

    pub fn into_inner(self) -> O {
        self.inner
    }
}

/// Runs `f` against a counting wrapper of `oracle` and returns its result
/// with the exact number of weight queries it made.
pub fn run_with_counting<O, T>(oracle: O, f: impl FnOnce(&Counting<O>) -> T) -> (T, u64)
where
    O: WeightOracle,
{
    let counted = Counting::new(oracle);
    let out = f(&counted);
    (out, counted.queries())
}

impl<O: WeightOracle> WeightOracle for Counting<O> {
    fn len(&self) -> usize {
        self.inner.len()
    }

    #[inline]
    fn weight(&self, u: usize, v: usize) -> f64 {
        let w = self.inner.weight(u, v);
        self.queries.fetch_add(1, Ordering::Relaxed);
        if let Some(log) = &self.log {
            log.lock().unwrap().push((u, v));
        }
        w
    }
}
