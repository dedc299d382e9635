//! Lattice points in N₀^d with the componentwise partial order.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A point of N₀^d.
///
/// `Ord` on `Point` is graded lexicographic order: total degree first, then
/// coordinates left to right. This is a monomial order on N₀^d and is the
/// canonical order for every point set this crate emits.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<u32>);

impl Point {
    pub fn new(coords: impl Into<Vec<u32>>) -> Self {
        Point(coords.into())
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![0; dim])
    }

    /// The point `t · e_axis` (axes are 0-based).
    pub fn axis(dim: usize, axis: usize, t: u32) -> Self {
        let mut p = Point::origin(dim);
        p.0[axis] = t;
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &Point) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise `self < other` (≤ and not equal).
    pub fn lt(&self, other: &Point) -> bool {
        self.le(other) && self != other
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self − other`, or `None` unless `other ≤ self`.
    pub fn checked_sub(&self, other: &Point) -> Option<Point> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Point)
    }

    /// ∏ (x_i + 1), the number of points in the box below `self`.
    pub fn box_volume(&self) -> u64 {
        self.0.iter().map(|&c| c as u64 + 1).product()
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<Vec<u32>> for Point {
    fn from(v: Vec<u32>) -> Self {
        Point(v)
    }
}

impl<const N: usize> From<[u32; N]> for Point {
    fn from(v: [u32; N]) -> Self {
        Point(v.to_vec())
    }
}

/// Visits every point of the box `∏ [0, bounds_i)` in row-major order
/// (last coordinate fastest).
pub(crate) fn for_each_in_box(bounds: &[u32], mut f: impl FnMut(&[u32])) {
    if bounds.contains(&0) {
        return;
    }
    let mut cur = vec![0u32; bounds.len()];
    loop {
        f(&cur);
        let mut i = bounds.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < bounds[i] {
                break;
            }
            cur[i] = 0;
        }
    }
}
