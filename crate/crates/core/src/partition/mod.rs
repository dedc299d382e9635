//! Multi-dimensional partitions and their arithmetic.
//!
//! An e-dimensional partition is an order-reversing labeling of N₀^e by
//! nonnegative integers with finite support. Dimension 0 partitions are
//! single numbers, dimension 1 partitions are ordinary integer partitions,
//! dimension 2 are plane partitions.

mod count;
mod enumerate;

use std::cmp::Ordering;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::point::{for_each_in_box, Point};

pub use count::{count_partitions, partition_counts_upto, series_coefficients};
pub use enumerate::{default_max_n, enumerate_partitions, PartitionStream};

/// A finite, order-reversing labeling of N₀^e.
///
/// Stored densely over the tight bounding box of the support, row-major with
/// the last coordinate fastest. The box is always tight (every axis has a
/// nonzero entry at its last index), so structural equality is value
/// equality. The empty partition has an all-zero extent and no values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPartition {
    dim: usize,
    extents: Vec<u32>,
    values: Vec<u32>,
}

impl MultiPartition {
    pub fn empty(dim: usize) -> Self {
        MultiPartition { dim, extents: vec![0; dim], values: Vec::new() }
    }

    /// A 0-dimensional partition, i.e. a single number.
    pub fn scalar(value: u32) -> Self {
        if value == 0 {
            MultiPartition::empty(0)
        } else {
            MultiPartition { dim: 0, extents: Vec::new(), values: vec![value] }
        }
    }

    /// An ordinary partition from its parts, largest first.
    pub fn from_parts(parts: &[u32]) -> Result<Self> {
        let len = parts.iter().position(|&p| p == 0).unwrap_or(parts.len());
        if parts[len..].iter().any(|&p| p != 0) || parts[..len].windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("parts {parts:?} are not non-increasing")));
        }
        Ok(MultiPartition { dim: 1, extents: vec![len as u32], values: parts[..len].to_vec() })
    }

    /// Builds a partition from explicit (index, value) entries. Zero values
    /// are ignored; missing indices are zero.
    pub fn from_entries<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Point, u32)>,
    {
        let entries: Vec<(Point, u32)> = entries.into_iter().filter(|(_, v)| *v > 0).collect();
        let mut bounds = vec![0u32; dim];
        for (p, _) in &entries {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: p.dim() });
            }
            for (b, &c) in bounds.iter_mut().zip(p.coords()) {
                *b = (*b).max(c + 1);
            }
        }
        if entries.is_empty() {
            return Ok(MultiPartition::empty(dim));
        }
        let mut raw = Raw::zeros(dim, bounds);
        for (p, v) in entries {
            let i = raw.offset(p.coords());
            if raw.values[i] != 0 {
                return Err(Error::InvalidPartition(format!("duplicate index {p}")));
            }
            raw.values[i] = v;
        }
        raw.check_order_reversing()?;
        Ok(raw.into_canonical())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Per-axis extent of the support's bounding box.
    pub fn extents(&self) -> &[u32] {
        &self.extents
    }

    /// The entry at `index`, zero outside the support.
    pub fn entry(&self, index: &[u32]) -> u32 {
        debug_assert_eq!(index.len(), self.dim);
        if self.values.is_empty() {
            return 0;
        }
        let mut off = 0usize;
        for (&c, &e) in index.iter().zip(&self.extents) {
            if c >= e {
                return 0;
            }
            off = off * e as usize + c as usize;
        }
        self.values[off]
    }

    /// Sum of all entries.
    pub fn total(&self) -> u64 {
        self.values.iter().map(|&v| v as u64).sum()
    }

    /// Largest entry (the entry at the origin).
    pub fn max_entry(&self) -> u32 {
        self.values.first().copied().unwrap_or(0)
    }

    /// Parts of a 1-dimensional partition, largest first.
    pub fn parts(&self) -> Option<&[u32]> {
        (self.dim == 1).then_some(&self.values[..])
    }

    /// Nonzero entries in colexicographic order of their index.
    pub fn entries(&self) -> Vec<(Point, u32)> {
        let mut out = Vec::new();
        if self.is_empty() {
            return out;
        }
        let mut i = 0;
        for_each_in_box(&self.extents, |idx| {
            let v = self.values[i];
            i += 1;
            if v > 0 {
                out.push((Point::new(idx.to_vec()), v));
            }
        });
        out.sort_by(|a, b| colex(a.0.coords(), b.0.coords()));
        out
    }

    /// `self ≥ other` entrywise.
    pub fn dominates(&self, other: &MultiPartition) -> Result<bool> {
        self.same_dim(other)?;
        Ok(self.dominates_unchecked(other))
    }

    pub(crate) fn dominates_unchecked(&self, other: &MultiPartition) -> bool {
        if other.is_empty() {
            return true;
        }
        if self.is_empty() {
            return false;
        }
        if self.dim == 1 {
            let (a, b) = (&self.values, &other.values);
            return b.len() <= a.len() && a.iter().zip(b).all(|(x, y)| x >= y);
        }
        let mut ok = true;
        let mut i = 0;
        for_each_in_box(&other.extents, |idx| {
            if ok && other.values[i] > self.entry(idx) {
                ok = false;
            }
            i += 1;
        });
        ok
    }

    /// The min-sum (min-plus convolution) of two partitions:
    /// `τ_x = min_{a+b=x} (π_a + π'_b)` with entries outside the support
    /// counted as zero.
    pub fn min_sum(&self, other: &MultiPartition) -> Result<MultiPartition> {
        self.same_dim(other)?;
        Ok(self.min_sum_unchecked(other))
    }

    pub(crate) fn min_sum_unchecked(&self, other: &MultiPartition) -> MultiPartition {
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        if self.dim == 1 {
            return MultiPartition::from_raw_parts_1d(min_sum_1d(&self.values, &other.values));
        }
        let out_ext: Vec<u32> = self.extents.iter().zip(&other.extents).map(|(a, b)| a + b).collect();
        let mut raw = Raw::zeros(self.dim, out_ext.clone());
        let mut lo = vec![0u32; self.dim];
        let mut span = vec![0u32; self.dim];
        let mut a = vec![0u32; self.dim];
        let mut b = vec![0u32; self.dim];
        let mut i = 0;
        for_each_in_box(&out_ext, |x| {
            for k in 0..x.len() {
                lo[k] = x[k].saturating_sub(other.extents[k]);
                span[k] = x[k].min(self.extents[k]) - lo[k] + 1;
            }
            let mut best = u32::MAX;
            for_each_in_box(&span, |off| {
                for k in 0..off.len() {
                    a[k] = lo[k] + off[k];
                    b[k] = x[k] - a[k];
                }
                best = best.min(self.entry(&a) + other.entry(&b));
            });
            raw.values[i] = best;
            i += 1;
        });
        raw.into_canonical()
    }

    /// The shave operator `sh_X`. Indices in `indices` are 1-based: `1..=e`
    /// shift the index by one along that axis, `e + 1` subtracts one from
    /// every entry (clamped at zero).
    pub fn shave(&self, indices: &[usize]) -> Result<MultiPartition> {
        let mut shift = vec![false; self.dim];
        let mut decrement = false;
        for &i in indices {
            if i == 0 || i > self.dim + 1 {
                return Err(Error::ShaveIndex { index: i, max: self.dim + 1 });
            }
            if i == self.dim + 1 {
                decrement = true;
            } else {
                shift[i - 1] = true;
            }
        }
        Ok(self.shave_mask(&shift, decrement))
    }

    pub(crate) fn shave_mask(&self, shift: &[bool], decrement: bool) -> MultiPartition {
        if self.is_empty() {
            return self.clone();
        }
        let dec = u32::from(decrement);
        if self.dim == 1 {
            let skip = usize::from(shift[0]);
            let parts: Vec<u32> = self.values.iter().skip(skip).map(|v| v - dec).filter(|&v| v > 0).collect();
            return MultiPartition::from_raw_parts_1d(parts);
        }
        let ext: Vec<u32> = self
            .extents
            .iter()
            .zip(shift)
            .map(|(&e, &s)| if s { e.saturating_sub(1) } else { e })
            .collect();
        if ext.contains(&0) && self.dim > 0 {
            return MultiPartition::empty(self.dim);
        }
        let mut raw = Raw::zeros(self.dim, ext.clone());
        let mut src = vec![0u32; self.dim];
        let mut i = 0;
        for_each_in_box(&ext, |v| {
            for k in 0..v.len() {
                src[k] = v[k] + u32::from(shift[k]);
            }
            raw.values[i] = self.entry(&src).saturating_sub(dec);
            i += 1;
        });
        raw.into_canonical()
    }

    fn same_dim(&self, other: &MultiPartition) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    /// Trusted constructor for already non-increasing, zero-free parts.
    pub(crate) fn from_raw_parts_1d(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        MultiPartition { dim: 1, extents: vec![parts.len() as u32], values: parts }
    }

    /// Trusted constructor from a dense box of values (row-major). The box
    /// is trimmed to the support.
    pub(crate) fn from_dense(dim: usize, extents: Vec<u32>, values: Vec<u32>) -> Self {
        Raw { dim, extents, values }.into_canonical()
    }
}

/// Compares two indices colexicographically (last coordinate most
/// significant).
pub fn colex(a: &[u32], b: &[u32]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

fn min_sum_1d(p: &[u32], q: &[u32]) -> Vec<u32> {
    let n = p.len() + q.len();
    let at = |s: &[u32], i: usize| s.get(i).copied().unwrap_or(0);
    (0..n)
        .map(|x| {
            let lo = x.saturating_sub(q.len());
            let hi = x.min(p.len());
            (lo..=hi).map(|a| at(p, a) + at(q, x - a)).min().unwrap_or(0)
        })
        .collect()
}

/// A dense box that is not yet trimmed or validated.
struct Raw {
    dim: usize,
    extents: Vec<u32>,
    values: Vec<u32>,
}

impl Raw {
    fn zeros(dim: usize, extents: Vec<u32>) -> Self {
        let len = extents.iter().map(|&e| e as usize).product();
        Raw { dim, extents, values: vec![0; len] }
    }

    fn offset(&self, idx: &[u32]) -> usize {
        idx.iter().zip(&self.extents).fold(0usize, |off, (&c, &e)| off * e as usize + c as usize)
    }

    fn check_order_reversing(&self) -> Result<()> {
        let mut bad = None;
        let mut i = 0;
        let mut pred = vec![0u32; self.dim];
        for_each_in_box(&self.extents, |idx| {
            let v = self.values[i];
            i += 1;
            if bad.is_some() || v == 0 {
                return;
            }
            for k in 0..self.dim {
                if idx[k] > 0 {
                    pred.copy_from_slice(idx);
                    pred[k] -= 1;
                    if self.values[self.offset(&pred)] < v {
                        bad = Some(Point::new(idx.to_vec()));
                        return;
                    }
                }
            }
        });
        match bad {
            Some(p) => Err(Error::InvalidPartition(format!("entry at {p} exceeds a predecessor"))),
            None => Ok(()),
        }
    }

    fn into_canonical(self) -> MultiPartition {
        if self.values.iter().all(|&v| v == 0) {
            return MultiPartition::empty(self.dim);
        }
        let mut tight = vec![0u32; self.dim];
        let mut i = 0;
        for_each_in_box(&self.extents, |idx| {
            if self.values[i] > 0 {
                for (t, &c) in tight.iter_mut().zip(idx) {
                    *t = (*t).max(c + 1);
                }
            }
            i += 1;
        });
        if tight == self.extents {
            return MultiPartition { dim: self.dim, extents: self.extents, values: self.values };
        }
        let mut values = Vec::with_capacity(tight.iter().map(|&e| e as usize).product());
        for_each_in_box(&tight, |idx| values.push(self.values[self.offset(idx)]));
        MultiPartition { dim: self.dim, extents: tight, values }
    }
}

impl fmt::Debug for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dim {
            0 => write!(f, "{}", self.max_entry()),
            1 => write!(f, "{:?}", self.values),
            _ => {
                write!(f, "{{")?;
                for (i, (p, v)) in self.entries().iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}:{v}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct PartitionJson {
    dim: usize,
    entries: Vec<(Vec<u32>, u32)>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PartitionJsonIn {
    Full(PartitionJson),
    Parts(Vec<u32>),
}

impl Serialize for MultiPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PartitionJson {
            dim: self.dim,
            entries: self.entries().into_iter().map(|(p, v)| (p.0, v)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match PartitionJsonIn::deserialize(d)? {
            PartitionJsonIn::Parts(parts) => MultiPartition::from_parts(&parts).map_err(D::Error::custom),
            PartitionJsonIn::Full(j) => {
                MultiPartition::from_entries(j.dim, j.entries.into_iter().map(|(p, v)| (Point(p), v)))
                    .map_err(D::Error::custom)
            }
        }
    }
}
