//! Graded-dimension bookkeeping: sparse Hilbert/dimension series and the
//! bidegree conventions used on spectral sequence pages.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// An inclusive interval of internal degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyWindow { lo, hi });
        }
        Ok(Window { lo, hi })
    }

    pub fn contains(&self, d: i64) -> bool {
        self.lo <= d && d <= self.hi
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

/// Map from internal degree to dimension, sparse. Degrees may be negative;
/// zero dimensions are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DimensionSeries {
    dims: BTreeMap<i64, u64>,
}

impl DimensionSeries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, u64)>>(pairs: I) -> Self {
        let mut s = Self::new();
        for (d, n) in pairs {
            s.add(d, n);
        }
        s
    }

    pub fn add(&mut self, degree: i64, dim: u64) {
        if dim == 0 {
            return;
        }
        *self.dims.entry(degree).or_insert(0) += dim;
    }

    pub fn dim(&self, degree: i64) -> u64 {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.dims.iter().map(|(d, n)| (*d, *n))
    }

    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }

    pub fn restrict(&self, window: Window) -> DimensionSeries {
        DimensionSeries {
            dims: self
                .dims
                .iter()
                .filter(|(d, _)| window.contains(**d))
                .map(|(d, n)| (*d, *n))
                .collect(),
        }
    }

    /// Direct-sum counterpart: pointwise addition.
    pub fn sum(&self, other: &DimensionSeries) -> DimensionSeries {
        let mut out = self.clone();
        for (d, n) in other.iter() {
            out.add(d, n);
        }
        out
    }
}

impl fmt::Display for DimensionSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (d, n)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}:{n}")?;
        }
        write!(f, "}}")
    }
}

/// Cauchy product of two dimension series restricted to a window. This is
/// the Hilbert series of a tensor product of graded spaces. Stored series
/// always have finite support, so the product over a bounded window is a
/// finite sum; degenerate windows are rejected up front.
pub fn series_product(
    a: &DimensionSeries,
    b: &DimensionSeries,
    window: Window,
) -> DimensionSeries {
    let mut out = DimensionSeries::new();
    for (da, na) in a.iter() {
        for (db, nb) in b.iter() {
            let d = da + db;
            if window.contains(d) {
                out.add(d, na * nb);
            }
        }
    }
    out
}

/// Position on a right-half-plane spectral sequence page: filtration/column
/// degree `p ≥ 0` and internal degree `q` (any sign). The homological total
/// degree of a class at `(p, q)` is `-(p + q)`; the cohomological total
/// degree is `p + q`. One convention, used identically everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bidegree {
    pub p: u32,
    pub q: i64,
}

impl Bidegree {
    pub fn new(p: u32, q: i64) -> Self {
        Bidegree { p, q }
    }

    pub fn total_cohomological(&self) -> i64 {
        self.p as i64 + self.q
    }

    pub fn total_homological(&self) -> i64 {
        -(self.p as i64 + self.q)
    }

    pub fn plus(&self, other: &Bidegree) -> Bidegree {
        Bidegree {
            p: self.p + other.p,
            q: self.q + other.q,
        }
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}
