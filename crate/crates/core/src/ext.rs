//! Extended reals: `-inf < finite < +inf`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use crate::error::Error;

/// A totally ordered value in `{-inf} ∪ R ∪ {+inf}`.
///
/// Bottleneck objectives live here: the maximum over an empty set of edges
/// is `NEG_INF`, and `POS_INF` marks an infeasible table entry. NaN is never
/// representable.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct ExtReal(f64);

impl ExtReal {
    pub const NEG_INF: ExtReal = ExtReal(f64::NEG_INFINITY);
    pub const POS_INF: ExtReal = ExtReal(f64::INFINITY);

    /// Wraps a finite real. Panics on NaN or infinities.
    pub fn finite(x: f64) -> Self {
        assert!(x.is_finite(), "ExtReal::finite called with {x}");
        ExtReal(x)
    }

    /// Maps IEEE infinities to the sentinels. Panics on NaN.
    pub fn from_f64(x: f64) -> Self {
        assert!(!x.is_nan(), "ExtReal cannot hold NaN");
        ExtReal(x)
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_neg_inf(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    pub fn is_pos_inf(self) -> bool {
        self.0 == f64::INFINITY
    }

    /// The finite value, if any.
    pub fn value(self) -> Option<f64> {
        self.is_finite().then_some(self.0)
    }

    /// Raw `f64` view, with the sentinels as IEEE infinities.
    pub fn to_f64(self) -> f64 {
        self.0
    }

    /// Square root of a non-negative value; sentinels map to themselves.
    /// Used to turn squared Euclidean objectives into distances.
    pub fn sqrt(self) -> Self {
        if self.is_finite() {
            ExtReal(self.0.sqrt())
        } else {
            self
        }
    }
}

impl Eq for ExtReal {}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        // NaN is excluded at construction, so partial_cmp always succeeds.
        self.0.partial_cmp(&other.0).expect("ExtReal holds no NaN")
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;

    fn neg(self) -> ExtReal {
        ExtReal(-self.0)
    }
}

impl From<f64> for ExtReal {
    fn from(x: f64) -> Self {
        ExtReal::from_f64(x)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_neg_inf() {
            f.write_str("-inf")
        } else if self.is_pos_inf() {
            f.write_str("+inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Debug for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExtReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "-inf" => Ok(ExtReal::NEG_INF),
            "+inf" | "inf" => Ok(ExtReal::POS_INF),
            _ => {
                let x: f64 = s
                    .parse()
                    .map_err(|_| Error::parse(0, format!("not a number: {s:?}")))?;
                if x.is_finite() {
                    Ok(ExtReal(x))
                } else {
                    Err(Error::parse(0, format!("not a finite number: {s:?}")))
                }
            }
        }
    }
}

impl serde::Serialize for ExtReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.value() {
            Some(x) => s.serialize_f64(x),
            None => s.collect_str(self),
        }
    }
}
