//! Instances and their text formats.
//!
//! Matrix format: first line `n`, then `n` lines of `n` weights (full
//! symmetric matrix). Points format: first line `n d`, then `n` lines of `d`
//! coordinates. Blank lines and lines starting with `#` are skipped.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::oracle::{PointCloud, WeightMatrix, WeightOracle};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Matrix,
    Points,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    Matrix(WeightMatrix),
    Points(PointCloud),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub source: Source,
}

impl Instance {
    pub fn matrix(m: WeightMatrix) -> Self {
        Instance {
            source: Source::Matrix(m),
        }
    }

    pub fn points(p: PointCloud) -> Self {
        Instance {
            source: Source::Points(p),
        }
    }

    pub fn len(&self) -> usize {
        match &self.source {
            Source::Matrix(m) => m.len(),
            Source::Points(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn format(&self) -> Format {
        match self.source {
            Source::Matrix(_) => Format::Matrix,
            Source::Points(_) => Format::Points,
        }
    }

    /// Weight oracle in reporting units: matrix entries, or true distances.
    pub fn oracle(&self) -> Box<dyn WeightOracle + '_> {
        match &self.source {
            Source::Matrix(m) => Box::new(m),
            Source::Points(p) => Box::new(p.distances()),
        }
    }

    /// Euclidean distances materialized as a matrix.
    pub fn to_matrix(&self) -> WeightMatrix {
        match &self.source {
            Source::Matrix(m) => m.clone(),
            Source::Points(p) => WeightMatrix::from_oracle(&p.distances()),
        }
    }

    pub fn load(path: impl AsRef<Path>, format: Option<Format>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        parse(&text, format)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    /// Serializes in the instance's own format. Floats use the shortest
    /// representation that parses back to the same bits.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.source {
            Source::Matrix(m) => {
                let n = m.len();
                writeln!(out, "{n}").unwrap();
                for u in 0..n {
                    let row: Vec<String> = (0..n)
                        .map(|v| if u == v { "0".into() } else { m.row(u)[v].to_string() })
                        .collect();
                    writeln!(out, "{}", row.join(" ")).unwrap();
                }
            }
            Source::Points(p) => {
                writeln!(out, "{} {}", p.len(), p.dim()).unwrap();
                for i in 0..p.len() {
                    let row: Vec<String> = p.point(i).iter().map(|x| x.to_string()).collect();
                    writeln!(out, "{}", row.join(" ")).unwrap();
                }
            }
        }
        out
    }
}

/// Parses instance text. With `format == None` the header decides: one
/// token means a matrix, two mean points.
pub fn parse(text: &str, format: Option<Format>) -> Result<Instance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "empty instance file"))?;
    let header: Vec<usize> = header
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::parse(hline, format!("bad header token {t:?}")))
        })
        .collect::<Result<_>>()?;
    let format = match (format, header.len()) {
        (Some(f), _) => f,
        (None, 1) => Format::Matrix,
        (None, 2) => Format::Points,
        (None, k) => return Err(Error::parse(hline, format!("header has {k} fields"))),
    };
    let (n, width) = match (format, header.as_slice()) {
        (Format::Matrix, &[n]) => (n, n),
        (Format::Points, &[n, d]) => {
            if d == 0 {
                return Err(Error::parse(hline, "dimension must be at least 1"));
            }
            (n, d)
        }
        (Format::Matrix, _) => return Err(Error::parse(hline, "matrix header must be `n`")),
        (Format::Points, _) => return Err(Error::parse(hline, "points header must be `n d`")),
    };

    let mut values = Vec::with_capacity(n * width);
    let mut row_lines = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, row) = lines
            .next()
            .ok_or_else(|| Error::parse(0, format!("expected {n} data rows")))?;
        let before = values.len();
        for t in row.split_whitespace() {
            let x: f64 = t
                .parse()
                .map_err(|_| Error::parse(line, format!("bad number {t:?}")))?;
            values.push(x);
        }
        let got = values.len() - before;
        if got != width {
            return Err(Error::parse(line, format!("expected {width} values, got {got}")));
        }
        row_lines.push(line);
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::parse(line, "trailing data after last row"));
    }

    match format {
        Format::Matrix => {
            for u in 0..n {
                for v in 0..n {
                    let x = values[u * n + v];
                    if u != v && !x.is_finite() {
                        return Err(Error::parse(row_lines[u], format!("non-finite weight {x}")));
                    }
                    if u < v && x.to_bits() != values[v * n + u].to_bits() && x != values[v * n + u] {
                        return Err(Error::parse(
                            row_lines[v],
                            format!("asymmetric matrix: w({u},{v}) = {x} but w({v},{u}) = {}", values[v * n + u]),
                        ));
                    }
                }
            }
            Ok(Instance::matrix(WeightMatrix::from_rows(n, values)?))
        }
        Format::Points => {
            if let Some(i) = values.iter().position(|x| !x.is_finite()) {
                return Err(Error::parse(row_lines[i / width], "non-finite coordinate"));
            }
            Ok(Instance::points(PointCloud::new(width, values)?))
        }
    }
}

/// Why a matrix fails to be a metric.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetricViolation {
    Negative { u: usize, v: usize },
    /// `w(x, z) > w(x, y) + w(y, z)`.
    Triangle { x: usize, y: usize, z: usize },
}

/// Checks non-negativity and the triangle inequality over all triples.
/// Returns the first violation found, or `None` for a metric.
pub fn check_metric(instance: &Instance) -> Result<Option<MetricViolation>> {
    let m = match &instance.source {
        Source::Matrix(m) => m,
        Source::Points(_) => return Err(Error::UnsupportedSource("check_metric needs a matrix")),
    };
    let n = m.len();
    for u in 0..n {
        for v in u + 1..n {
            if m.weight(u, v) < 0.0 {
                return Ok(Some(MetricViolation::Negative { u, v }));
            }
        }
    }
    for x in 0..n {
        for z in x + 1..n {
            let direct = m.weight(x, z);
            for y in (0..n).filter(|&y| y != x && y != z) {
                if direct > m.weight(x, y) + m.weight(y, z) {
                    return Ok(Some(MetricViolation::Triangle { x, y, z }));
                }
            }
        }
    }
    Ok(None)
}
