use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Mutex;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{point_list, Error, Result};
use crate::partition::MultiPartition;
use crate::point::{for_each_in_box, Point};

/// A finite antichain of N₀^d with a point on every coordinate axis: the
/// minimal nonzero elements of some semigroup.
pub struct Multset {
    dim: usize,
    points: Vec<Point>,
    /// π¹, π², … computed so far.
    pis: Mutex<Vec<MultiPartition>>,
}

/// Checks the antichain and axis conditions.
pub fn is_valid_multset(dim: usize, points: &[Point]) -> bool {
    check_multset(dim, points).is_ok()
}

fn check_multset(dim: usize, points: &[Point]) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidMultset("dimension must be at least 1".into()));
    }
    if let Some(p) = points.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch { left: dim, right: p.dim() });
    }
    if points.iter().any(Point::is_origin) {
        return Err(Error::InvalidMultset("contains the origin".into()));
    }
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            if a.le(b) || b.le(a) {
                return Err(Error::InvalidMultset(format!("comparable points {}", point_list(&[a.clone(), b.clone()]))));
            }
        }
    }
    for axis in 0..dim {
        let on_axis = points.iter().any(|p| p.coords().iter().enumerate().all(|(k, &c)| (k == axis) == (c > 0)));
        if !on_axis {
            return Err(Error::InvalidMultset(format!("no point on axis {}", axis + 1)));
        }
    }
    Ok(())
}

impl Multset {
    pub fn new(dim: usize, points: impl IntoIterator<Item = Point>) -> Result<Multset> {
        let m = Multset::from_points_unchecked(dim, points);
        check_multset(dim, &m.points)?;
        Ok(m)
    }

    pub(crate) fn from_points_unchecked(dim: usize, points: impl IntoIterator<Item = Point>) -> Multset {
        let mut points: Vec<Point> = points.into_iter().collect();
        points.sort();
        points.dedup();
        Multset { dim, points, pis: Mutex::new(Vec::new()) }
    }

    /// The multset with shape `p`, a partition of dimension d − 1.
    pub fn from_shape(p: &MultiPartition) -> Result<Multset> {
        if p.is_empty() {
            return Err(Error::InvalidPartition("a shape has positive total".into()));
        }
        let e = p.dim();
        let bounds: Vec<u32> = p.extents().iter().map(|x| x + 1).collect();
        let mut points = Vec::new();
        for_each_in_box(&bounds, |v| {
            let val = p.entry(v);
            let mut w = v.to_vec();
            let corner = (0..e).filter(|&i| v[i] > 0).all(|i| {
                w[i] -= 1;
                let above = p.entry(&w);
                w[i] += 1;
                above > val
            });
            if corner {
                let mut c = v.to_vec();
                c.push(val);
                points.push(Point::new(c));
            }
        });
        Ok(Multset::from_points_unchecked(e + 1, points))
    }

    /// `{x : x₁ + ⋯ + x_d = k}`.
    pub fn simplex(dim: usize, k: u32) -> Result<Multset> {
        if dim == 0 || k == 0 {
            return Err(Error::Domain("simplex needs d ≥ 1 and k ≥ 1".into()));
        }
        let mut points = Vec::new();
        for_each_in_box(&vec![k + 1; dim], |x| {
            if x.iter().sum::<u32>() == k {
                points.push(Point::new(x.to_vec()));
            }
        });
        Ok(Multset::from_points_unchecked(dim, points))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Points in graded-lex order.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `m_i` with `m_i · e_i ∈ M`.
    pub fn axis_multiplicities(&self) -> Vec<u32> {
        (0..self.dim)
            .map(|i| {
                self.points
                    .iter()
                    .find(|p| p.coords().iter().enumerate().all(|(k, &c)| k == i || c == 0))
                    .map(|p| p.coords()[i])
                    .expect("valid multset has every axis")
            })
            .collect()
    }

    /// π¹: the least height not in R_{≤1} above each point of N₀^{d−1}.
    pub fn shape(&self) -> MultiPartition {
        let d = self.dim;
        let extents: Vec<u32> = self.axis_multiplicities()[..d - 1].to_vec();
        let mut values = Vec::new();
        for_each_in_box(&extents, |v| {
            let best = self
                .points
                .iter()
                .filter(|m| m.coords()[..d - 1].iter().zip(v).all(|(a, b)| a <= b))
                .map(|m| m.coords()[d - 1])
                .min()
                .expect("the last axis point lies below everything");
            values.push(best);
        });
        MultiPartition::from_dense(d - 1, extents, values)
    }

    fn with_pis<R>(&self, k: usize, f: impl FnOnce(&[MultiPartition]) -> R) -> R {
        let mut pis = self.pis.lock().unwrap();
        if pis.is_empty() {
            pis.push(self.shape());
        }
        while pis.len() < k {
            let next = pis.last().unwrap().min_sum_unchecked(&pis[0]);
            pis.push(next);
        }
        f(&pis)
    }

    /// π^k, the k-fold min-sum of the shape; π⁰ is the empty partition.
    pub fn pi_k(&self, k: usize) -> MultiPartition {
        if k == 0 {
            return MultiPartition::empty(self.dim - 1);
        }
        self.with_pis(k, |pis| pis[k - 1].clone())
    }

    /// `s₁, …, s_{k_max}`, the sizes of the depth-k regions.
    pub fn region_sizes(&self, k_max: usize) -> Vec<u64> {
        self.with_pis(k_max, |pis| {
            let mut prev = 0;
            pis[..k_max]
                .iter()
                .map(|p| {
                    let t = p.total();
                    let s = t - prev;
                    prev = t;
                    s
                })
                .collect()
        })
    }

    /// The k with x ∈ R_k; 0 for the origin.
    pub fn region_index(&self, x: &Point) -> u32 {
        if x.is_origin() {
            return 0;
        }
        let (head, last) = x.coords().split_at(self.dim - 1);
        let height = last[0];
        let mut k = 1;
        loop {
            let found = self.with_pis(k, |pis| pis[k - 1].entry(head) > height);
            if found {
                return k as u32;
            }
            k += 1;
        }
    }
}

impl Clone for Multset {
    fn clone(&self) -> Self {
        Multset::from_points_unchecked(self.dim, self.points.clone())
    }
}

impl PartialEq for Multset {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.points == other.points
    }
}

impl Eq for Multset {}

impl Hash for Multset {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.points.hash(state);
    }
}

impl fmt::Debug for Multset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multset{:?}", self.points)
    }
}

#[derive(Serialize, Deserialize)]
struct MultsetJson {
    dim: usize,
    points: Vec<Point>,
}

impl Serialize for Multset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MultsetJson { dim: self.dim, points: self.points.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Multset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MultsetJson::deserialize(d)?;
        Multset::new(j.dim, j.points).map_err(D::Error::custom)
    }
}
