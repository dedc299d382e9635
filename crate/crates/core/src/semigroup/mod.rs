//! Generalized numerical semigroups: cofinite submonoids of N₀^d, given by
//! their finite gap sets.

mod axial;
mod multset;
mod region;

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::MultiPartition;
use crate::point::{for_each_in_box, Point};

pub use axial::axial_family;
pub use multset::{is_valid_multset, Multset};
pub use region::ARegion;

/// Why a gap set fails to describe a semigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GnsViolation {
    DimensionMismatch { expected: usize, point: Point },
    ContainsOrigin,
    /// `gap = a + b` with `a` and `b` nonzero elements of the complement.
    NotClosed { gap: Point, a: Point, b: Point },
}

impl fmt::Display for GnsViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GnsViolation::DimensionMismatch { expected, point } => {
                write!(f, "point {point} does not have dimension {expected}")
            }
            GnsViolation::ContainsOrigin => write!(f, "the origin is listed as a gap"),
            GnsViolation::NotClosed { gap, a, b } => {
                write!(f, "gap {gap} = {a} + {b} with both summands in the semigroup")
            }
        }
    }
}

impl From<GnsViolation> for Error {
    fn from(v: GnsViolation) -> Self {
        Error::NotGns(v.to_string())
    }
}

/// Checks that `N₀^d ∖ gaps` contains 0 and is closed under addition.
///
/// Gaps are scanned in graded-lex order and for each gap `x` the splits
/// `x = a + (x − a)` with `a ≤ x − a` in graded-lex order; the first failing
/// split is reported.
pub fn validate_gns(dim: usize, gaps: &[Point]) -> std::result::Result<(), GnsViolation> {
    for p in gaps {
        if p.dim() != dim {
            return Err(GnsViolation::DimensionMismatch { expected: dim, point: p.clone() });
        }
    }
    let set: HashSet<&Point> = gaps.iter().collect();
    if set.contains(&Point::origin(dim)) {
        return Err(GnsViolation::ContainsOrigin);
    }
    let mut sorted: Vec<&Point> = set.iter().copied().collect();
    sorted.sort();
    for x in sorted {
        let bounds: Vec<u32> = x.coords().iter().map(|&c| c + 1).collect();
        let mut found = None;
        for_each_in_box(&bounds, |a| {
            if found.is_some() {
                return;
            }
            let a = Point::new(a.to_vec());
            let b = x.checked_sub(&a).expect("a lies below x");
            if a.is_origin() || b.is_origin() || a > b {
                return;
            }
            if !set.contains(&a) && !set.contains(&b) {
                found = Some((a, b));
            }
        });
        if let Some((a, b)) = found {
            return Err(GnsViolation::NotClosed { gap: x.clone(), a, b });
        }
    }
    Ok(())
}

/// A generalized numerical semigroup of dimension `d`, stored as its sorted
/// gap set.
#[derive(Clone)]
pub struct Gns {
    dim: usize,
    gaps: Vec<Point>,
    lookup: HashSet<Point>,
}

impl Gns {
    /// Validates and builds a semigroup from its gaps (duplicates allowed).
    pub fn new(dim: usize, gaps: impl IntoIterator<Item = Point>) -> Result<Gns> {
        if dim == 0 {
            return Err(Error::Domain("semigroups need dimension at least 1".into()));
        }
        let gns = Gns::from_gaps_unchecked(dim, gaps);
        validate_gns(dim, &gns.gaps)?;
        Ok(gns)
    }

    /// N₀^d itself.
    pub fn full(dim: usize) -> Gns {
        Gns::from_gaps_unchecked(dim, std::iter::empty())
    }

    pub(crate) fn from_gaps_unchecked(dim: usize, gaps: impl IntoIterator<Item = Point>) -> Gns {
        let lookup: HashSet<Point> = gaps.into_iter().collect();
        let mut gaps: Vec<Point> = lookup.iter().cloned().collect();
        gaps.sort();
        Gns { dim, gaps, lookup }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    /// Gaps in graded-lex order.
    pub fn gaps(&self) -> &[Point] {
        &self.gaps
    }

    pub fn is_gap(&self, p: &Point) -> bool {
        self.lookup.contains(p)
    }

    pub fn contains(&self, p: &Point) -> bool {
        !self.is_gap(p)
    }

    /// `m_i`, the least positive `t` with `t · e_i` in the semigroup.
    pub fn axis_multiplicities(&self) -> Vec<u32> {
        (0..self.dim)
            .map(|i| (1..).find(|&t| self.contains(&Point::axis(self.dim, i, t))).expect("gap set is finite"))
            .collect()
    }

    /// The minimal nonzero elements.
    ///
    /// Every minimal element lies in the box `∏ [0, m_i]`: anything with
    /// `x_i > m_i` strictly dominates `m_i · e_i`.
    pub fn multset(&self) -> Multset {
        let bounds: Vec<u32> = self.axis_multiplicities().iter().map(|m| m + 1).collect();
        // below[x]: every nonzero point ≤ x is a gap.
        let strides = row_major_strides(&bounds);
        let mut below = vec![false; bounds.iter().map(|&b| b as usize).product()];
        let mut points = Vec::new();
        let mut i = 0;
        for_each_in_box(&bounds, |x| {
            let p = Point::new(x.to_vec());
            let preds_ok = (0..x.len()).filter(|&k| x[k] > 0).all(|k| below[i - strides[k]]);
            if p.is_origin() {
                below[i] = true;
            } else if self.is_gap(&p) {
                below[i] = preds_ok;
            } else if preds_ok {
                points.push(p);
            }
            i += 1;
        });
        Multset::from_points_unchecked(self.dim, points)
    }

    /// The (d−1)-dimensional shape partition of the multset.
    pub fn shape(&self) -> MultiPartition {
        self.multset().shape()
    }

    /// Depth: the largest region index of a gap, 0 for N₀^d.
    pub fn depth(&self) -> u32 {
        if self.gaps.is_empty() {
            return 0;
        }
        let m = self.multset();
        // The graded-lex maximum is not necessarily the deepest gap, so scan all.
        self.gaps.iter().map(|x| m.region_index(x)).max().unwrap_or(0)
    }

    /// Gaps that are maximal under the componentwise order.
    pub fn frobenius_allowable_gaps(&self) -> Result<Vec<Point>> {
        if self.gaps.is_empty() {
            return Err(Error::EmptyGapSet);
        }
        Ok(self
            .gaps
            .iter()
            .filter(|x| !self.gaps.iter().any(|y| Point::lt(x, y)))
            .cloned()
            .collect())
    }
}

pub(crate) fn row_major_strides(bounds: &[u32]) -> Vec<usize> {
    let mut strides = vec![1usize; bounds.len()];
    for k in (0..bounds.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * bounds[k + 1] as usize;
    }
    strides
}

impl PartialEq for Gns {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.gaps == other.gaps
    }
}

impl Eq for Gns {}

impl Hash for Gns {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.gaps.hash(state);
    }
}

impl fmt::Debug for Gns {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gns(d={}, gaps={:?})", self.dim, self.gaps)
    }
}

#[derive(Serialize, Deserialize)]
struct GnsJson {
    dim: usize,
    gaps: Vec<Point>,
}

impl Serialize for Gns {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GnsJson { dim: self.dim, gaps: self.gaps.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Gns {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GnsJson::deserialize(d)?;
        Gns::new(j.dim, j.gaps).map_err(D::Error::custom)
    }
}
