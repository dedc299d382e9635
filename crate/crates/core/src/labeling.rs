//! Partition labelings: a GNS encoded as one (d−1)-dimensional partition per
//! residue class modulo the axis multiplicities.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::MultiPartition;
use crate::point::{for_each_in_box, Point};
use crate::semigroup::{row_major_strides, Gns};

/// Labels `L^x` for every grid point `x < (m₁, …, m_d)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartitionLabeling {
    dims: Vec<u32>,
    /// Row-major over the grid.
    labels: Vec<MultiPartition>,
}

/// The first failure found by [`is_valid_labeling`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelingViolation {
    NonEmptyOrigin,
    /// `L^x ⊞ L^y` fails to dominate the shaved `L^z`.
    Pair { x: Point, y: Point, z: Point },
}

impl fmt::Display for LabelingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelingViolation::NonEmptyOrigin => write!(f, "label at the origin is not empty"),
            LabelingViolation::Pair { x, y, z } => write!(f, "L^{x} ⊞ L^{y} does not dominate the shaved L^{z}"),
        }
    }
}

impl PartitionLabeling {
    /// Labels are given row-major over the grid `∏ [0, m_i)`.
    pub fn new(dims: Vec<u32>, labels: Vec<MultiPartition>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidLabeling(format!("grid dimensions {dims:?} must be positive")));
        }
        let volume: usize = dims.iter().map(|&m| m as usize).product();
        if labels.len() != volume {
            return Err(Error::InvalidLabeling(format!("expected {volume} labels, got {}", labels.len())));
        }
        if let Some(l) = labels.iter().find(|l| l.dim() + 1 != dims.len()) {
            return Err(Error::DimensionMismatch { left: dims.len() - 1, right: l.dim() });
        }
        Ok(PartitionLabeling { dims, labels })
    }

    /// Builds a labeling from `(grid point, label)` pairs; absent points get
    /// empty labels.
    pub fn from_map(dims: Vec<u32>, entries: impl IntoIterator<Item = (Point, MultiPartition)>) -> Result<Self> {
        let e = dims.len().saturating_sub(1);
        let volume: usize = dims.iter().map(|&m| m as usize).product();
        let mut labels = vec![MultiPartition::empty(e); volume];
        let strides = row_major_strides(&dims);
        for (p, l) in entries {
            if p.dim() != dims.len() || p.coords().iter().zip(&dims).any(|(c, m)| c >= m) {
                return Err(Error::InvalidLabeling(format!("grid point {p} outside {dims:?}")));
            }
            let i: usize = p.coords().iter().zip(&strides).map(|(&c, s)| c as usize * s).sum();
            labels[i] = l;
        }
        PartitionLabeling::new(dims, labels)
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn volume(&self) -> usize {
        self.labels.len()
    }

    /// The label at grid point `x`.
    pub fn label(&self, x: &[u32]) -> &MultiPartition {
        &self.labels[self.offset(x)]
    }

    fn offset(&self, x: &[u32]) -> usize {
        x.iter().zip(&self.dims).fold(0, |acc, (&c, &m)| acc * m as usize + c as usize)
    }

    /// Grid points in graded-lex order with their labels.
    pub fn labels(&self) -> Vec<(Point, &MultiPartition)> {
        self.grid().into_iter().map(|p| {
            let l = self.label(p.coords());
            (p, l)
        }).collect()
    }

    fn grid(&self) -> Vec<Point> {
        let mut pts = Vec::with_capacity(self.volume());
        for_each_in_box(&self.dims, |x| pts.push(Point::new(x.to_vec())));
        pts.sort();
        pts
    }

    /// Sum of label totals; the genus of the encoded set.
    pub fn genus(&self) -> u64 {
        self.labels.iter().map(MultiPartition::total).sum()
    }

    /// Structural requirement: the label at the origin is empty.
    pub fn check_structure(&self) -> Result<()> {
        if !self.labels[0].is_empty() {
            return Err(Error::InvalidLabeling(LabelingViolation::NonEmptyOrigin.to_string()));
        }
        Ok(())
    }
}

impl fmt::Debug for PartitionLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (p, l) in self.labels() {
            m.entry(&p, l);
        }
        m.finish()
    }
}

/// `(L^x)_v = min{ℓ : x + (m₁v₁, …, m_{d−1}v_{d−1}, m_d ℓ) ∈ Λ}`.
pub fn labeling_from_gns(s: &Gns) -> PartitionLabeling {
    let dims = s.axis_multiplicities();
    let d = dims.len();
    // Along each column the gaps form an initial segment, so the label
    // entry is one more than the highest gap in it.
    let mut cells: BTreeMap<Vec<u32>, BTreeMap<Vec<u32>, u32>> = BTreeMap::new();
    for y in s.gaps() {
        let c = y.coords();
        let x: Vec<u32> = c.iter().zip(&dims).map(|(a, m)| a % m).collect();
        let v: Vec<u32> = c[..d - 1].iter().zip(&dims).map(|(a, m)| a / m).collect();
        let l = c[d - 1] / dims[d - 1] + 1;
        let slot = cells.entry(x).or_default().entry(v).or_insert(0);
        *slot = (*slot).max(l);
    }
    let entries = cells.into_iter().map(|(x, col)| {
        let label = MultiPartition::from_entries(d - 1, col.into_iter().map(|(v, l)| (Point::new(v), l)))
            .expect("labels of a semigroup are partitions");
        (Point::new(x), label)
    });
    PartitionLabeling::from_map(dims, entries).expect("grid points lie in the grid")
}

/// Expands a labeling into its gap set without checking closure.
pub fn gaps_from_labeling(l: &PartitionLabeling) -> Vec<Point> {
    let d = l.dim();
    let m = l.dims();
    let mut gaps = Vec::new();
    for (x, label) in l.labels() {
        for (v, val) in label.entries() {
            for t in 0..val {
                let mut c = x.coords().to_vec();
                for i in 0..d - 1 {
                    c[i] += m[i] * v.coords()[i];
                }
                c[d - 1] += m[d - 1] * t;
                gaps.push(Point::new(c));
            }
        }
    }
    gaps.sort();
    gaps
}

/// The semigroup encoded by `l`, validated.
pub fn gns_from_labeling(l: &PartitionLabeling) -> Result<Gns> {
    l.check_structure()?;
    Gns::new(l.dim(), gaps_from_labeling(l))
}

/// Checks `L^0 = ∅` and `L^x ⊞ L^y ≥ sh_X(L^z)` for all grid pairs, where
/// `z = (x + y) mod m` and X holds the axes that wrap. Reports the first
/// failing pair in graded-lex order.
pub fn is_valid_labeling(l: &PartitionLabeling) -> std::result::Result<(), LabelingViolation> {
    first_violation(l, l.volume() > 16).map_or(Ok(()), Err)
}

pub(crate) fn first_violation(l: &PartitionLabeling, parallel: bool) -> Option<LabelingViolation> {
    if !l.labels[0].is_empty() {
        return Some(LabelingViolation::NonEmptyOrigin);
    }
    let d = l.dim();
    let grid = l.grid();
    let check = |i: usize| {
        let x = grid[i].coords();
        let lx = l.label(x);
        let mut z = vec![0u32; d];
        let mut shift = vec![false; d - 1];
        for yp in &grid[i..] {
            let y = yp.coords();
            let mut decrement = false;
            for k in 0..d {
                let s = x[k] + y[k];
                let wraps = s >= l.dims[k];
                z[k] = if wraps { s - l.dims[k] } else { s };
                if k + 1 < d {
                    shift[k] = wraps;
                } else {
                    decrement = wraps;
                }
            }
            let lz = l.label(&z);
            if lz.is_empty() {
                continue;
            }
            let sum = lx.min_sum_unchecked(l.label(y));
            if !sum.dominates_unchecked(&lz.shave_mask(&shift, decrement)) {
                return Some(LabelingViolation::Pair { x: grid[i].clone(), y: yp.clone(), z: Point::new(z.clone()) });
            }
        }
        None
    };
    if parallel {
        (0..grid.len()).into_par_iter().find_map_first(check)
    } else {
        (0..grid.len()).find_map(check)
    }
}

/// `w_i = (least element ≡ i mod m − i) / m` for `i = 1, …, m − 1`.
pub fn kunz_word(s: &Gns) -> Result<Vec<u32>> {
    if s.dim() != 1 {
        return Err(Error::DimensionMismatch { left: 1, right: s.dim() });
    }
    let m = s.axis_multiplicities()[0];
    Ok((1..m)
        .map(|i| (0..).find(|&w| s.contains(&Point::from([i + m * w]))).expect("gap set is finite"))
        .collect())
}

/// The Kunz inequalities for a word `w₁ … w_{m−1}`.
pub fn kunz_valid(word: &[u32]) -> bool {
    let m = word.len() + 1;
    let w = |i: usize| word[i - 1] as u64;
    for i in 1..m {
        for j in i..m {
            let ok = match (i + j).cmp(&m) {
                std::cmp::Ordering::Less => w(i) + w(j) >= w(i + j),
                std::cmp::Ordering::Equal => true,
                std::cmp::Ordering::Greater => w(i) + w(j) + 1 >= w(i + j - m),
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Depth of a rectangular semigroup (multset `{m_i e_i}`) read off its
/// labeling: the largest `v₁ + ⋯ + v_{d−1} + (L^x)_v` over nonzero entries.
pub fn rectangular_depth(l: &PartitionLabeling) -> Result<u32> {
    let d = l.dim();
    let gns = Gns::from_gaps_unchecked(d, gaps_from_labeling(l));
    let multset = gns.multset();
    let axes: Vec<Point> = {
        let mut v: Vec<Point> = (0..d).map(|i| Point::axis(d, i, l.dims[i])).collect();
        v.sort();
        v
    };
    if multset.points() != &axes[..] {
        return Err(Error::NotRectangular { found: multset.len(), dim: d });
    }
    Ok(l.labels
        .iter()
        .flat_map(|label| label.entries())
        .map(|(v, val)| v.degree() as u32 + val)
        .max()
        .unwrap_or(0))
}

#[derive(Serialize, Deserialize)]
struct LabelJson {
    at: Point,
    partition: MultiPartition,
}

#[derive(Serialize, Deserialize)]
struct LabelingJson {
    dims: Vec<u32>,
    labels: Vec<LabelJson>,
}

impl Serialize for PartitionLabeling {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let labels = self.labels().into_iter().map(|(at, p)| LabelJson { at, partition: p.clone() }).collect();
        LabelingJson { dims: self.dims.clone(), labels }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PartitionLabeling {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = LabelingJson::deserialize(d)?;
        PartitionLabeling::from_map(j.dims, j.labels.into_iter().map(|l| (l.at, l.partition))).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::enumerate_partitions;
    use crate::semigroup::validate_gns;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn parts(v: &[u32]) -> MultiPartition {
        MultiPartition::from_parts(v).unwrap()
    }

    fn example() -> Gns {
        let g: Vec<Point> = [[0, 1], [0, 3], [1, 0], [1, 1], [1, 2], [2, 0], [3, 1], [3, 3], [4, 1]]
            .into_iter()
            .map(Point::from)
            .collect();
        Gns::new(2, g).unwrap()
    }

    fn numerical(gaps: &[u32]) -> Gns {
        Gns::new(1, gaps.iter().map(|&t| Point::from([t]))).unwrap()
    }

    fn scalar_labeling(word: &[u32]) -> PartitionLabeling {
        let mut labels = vec![MultiPartition::empty(0)];
        labels.extend(word.iter().map(|&w| MultiPartition::scalar(w)));
        PartitionLabeling::new(vec![word.len() as u32 + 1], labels).unwrap()
    }

    #[test]
    fn example_labels() {
        let l = labeling_from_gns(&example());
        assert_eq!(l.dims(), &[3, 2]);
        assert_eq!(l.label(&[0, 1]), &parts(&[2, 2]));
        assert_eq!(l.label(&[1, 1]), &parts(&[1, 1]));
        assert!(l.label(&[2, 1]).is_empty());
        assert!(l.label(&[0, 0]).is_empty());
        assert_eq!(l.label(&[1, 0]), &parts(&[2]));
        assert_eq!(l.label(&[2, 0]), &parts(&[1]));
        assert_eq!(l.genus(), 9);
        assert_eq!(gns_from_labeling(&l).unwrap(), example());
        assert_eq!(is_valid_labeling(&l), Ok(()));
    }

    #[test]
    fn trivial_labels() {
        let l = labeling_from_gns(&Gns::full(2));
        assert_eq!(l.dims(), &[1, 1]);
        assert!(l.label(&[0, 0]).is_empty());
        assert_eq!(gns_from_labeling(&l).unwrap(), Gns::full(2));
    }

    #[test]
    fn one_dimensional_labels() {
        let s = numerical(&[1, 2, 4]);
        let l = labeling_from_gns(&s);
        assert_eq!(l, scalar_labeling(&[2, 1]));
        assert_eq!(gns_from_labeling(&scalar_labeling(&[2, 1])).unwrap(), s);
        assert_eq!(kunz_word(&s).unwrap(), vec![2, 1]);
        assert_eq!(kunz_word(&Gns::full(1)).unwrap(), Vec::<u32>::new());
        assert_eq!(kunz_word(&numerical(&[1, 2, 3, 4])).unwrap(), vec![1; 4]);
        assert!(kunz_word(&example()).is_err());
    }

    #[test]
    fn kunz_conditions() {
        assert!(kunz_valid(&[2, 1]));
        assert!(!kunz_valid(&[1, 3]));
        assert!(kunz_valid(&[1; 6]));
        assert_eq!(is_valid_labeling(&scalar_labeling(&[1, 2])), Ok(()));
        assert_eq!(
            is_valid_labeling(&scalar_labeling(&[1, 3])),
            Err(LabelingViolation::Pair { x: Point::from([1]), y: Point::from([1]), z: Point::from([2]) })
        );
    }

    #[test]
    fn nonempty_origin_is_reported() {
        let l = PartitionLabeling::new(vec![2], vec![MultiPartition::scalar(1), MultiPartition::scalar(1)]).unwrap();
        assert_eq!(is_valid_labeling(&l), Err(LabelingViolation::NonEmptyOrigin));
        assert!(gns_from_labeling(&l).is_err());
    }

    fn words(len: usize, max: u32) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out.into_iter().flat_map(|w| (0..=max).map(move |x| [w.clone(), vec![x]].concat())).collect();
        }
        out
    }

    #[test]
    fn kunz_matches_theorem_and_closure() {
        for len in 0..=5 {
            for w in words(len, 4) {
                let l = scalar_labeling(&w);
                let by_theorem = is_valid_labeling(&l).is_ok();
                assert_eq!(kunz_valid(&w), by_theorem, "{w:?}");
                assert_eq!(validate_gns(1, &gaps_from_labeling(&l)).is_ok(), by_theorem, "{w:?}");
            }
        }
    }

    /// All labelings on the given grid whose labels have total ≤ `max_total`
    /// in sum, with the origin label empty.
    fn all_labelings(dims: &[u32], max_total: u32) -> Vec<PartitionLabeling> {
        let e = dims.len() - 1;
        let volume: usize = dims.iter().map(|&m| m as usize).product();
        let pool: Vec<Vec<MultiPartition>> =
            (0..=max_total).map(|n| enumerate_partitions(e, n).unwrap().collect()).collect();
        let mut out = Vec::new();
        fn rec(
            i: usize,
            left: u32,
            cur: &mut Vec<MultiPartition>,
            pool: &[Vec<MultiPartition>],
            dims: &[u32],
            volume: usize,
            out: &mut Vec<PartitionLabeling>,
        ) {
            if i == volume {
                out.push(PartitionLabeling::new(dims.to_vec(), cur.clone()).unwrap());
                return;
            }
            let cap = if i == 0 { 0 } else { left };
            for n in 0..=cap {
                for p in &pool[n as usize] {
                    cur.push(p.clone());
                    rec(i + 1, left - n, cur, pool, dims, volume, out);
                    cur.pop();
                }
            }
        }
        rec(0, max_total, &mut Vec::new(), &pool, dims, volume, &mut out);
        out
    }

    #[test]
    fn theorem_matches_closure_exhaustively() {
        for dims in [vec![1, 1], vec![2, 1], vec![1, 2], vec![2, 2], vec![3, 1], vec![1, 3], vec![4, 1], vec![1, 4], vec![1, 1, 1], vec![2, 1, 1], vec![1, 2, 2], vec![2, 2, 1]] {
            for l in all_labelings(&dims, 4) {
                let by_theorem = is_valid_labeling(&l).is_ok();
                let gaps = gaps_from_labeling(&l);
                assert_eq!(gaps.len() as u64, l.genus());
                assert_eq!(validate_gns(l.dim(), &gaps).is_ok(), by_theorem, "{l:?}");
            }
        }
    }

    fn random_labeling(rng: &mut ChaCha8Rng) -> PartitionLabeling {
        let d = rng.gen_range(1..=3usize);
        let dims: Vec<u32> = (0..d).map(|_| rng.gen_range(1..=3)).collect();
        let volume: usize = dims.iter().map(|&m| m as usize).product();
        let labels = (0..volume)
            .map(|i| {
                if i == 0 {
                    return MultiPartition::empty(d - 1);
                }
                let n = rng.gen_range(0..=5);
                let all: Vec<_> = enumerate_partitions(d - 1, n).unwrap().collect();
                all[rng.gen_range(0..all.len())].clone()
            })
            .collect();
        PartitionLabeling::new(dims, labels).unwrap()
    }

    #[test]
    fn theorem_matches_closure_randomly() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let l = random_labeling(&mut rng);
            assert_eq!(validate_gns(l.dim(), &gaps_from_labeling(&l)).is_ok(), is_valid_labeling(&l).is_ok(), "{l:?}");
        }
    }

    #[test]
    fn rectangular_depths() {
        let s = numerical(&[1, 2, 4]);
        assert_eq!(rectangular_depth(&labeling_from_gns(&s)).unwrap(), 2);
        assert_eq!(rectangular_depth(&labeling_from_gns(&Gns::full(2))).unwrap(), 0);
        let err = rectangular_depth(&labeling_from_gns(&example())).unwrap_err();
        assert_eq!(err, Error::NotRectangular { found: 3, dim: 2 });
        for l in all_labelings(&[2, 2], 5) {
            let Ok(s) = gns_from_labeling(&l) else { continue };
            if s.multset().len() == 2 && s.axis_multiplicities() == [2, 2] {
                assert_eq!(rectangular_depth(&l).unwrap(), s.depth(), "{l:?}");
            }
        }
    }

    #[test]
    fn json_lists_every_grid_point() {
        let l = labeling_from_gns(&example());
        let text = serde_json::to_string(&l).unwrap();
        assert!(text.starts_with(r#"{"dims":[3,2],"labels":[{"at":[0,0],"partition":{"dim":1,"entries":[]}},{"at":[0,1],"#), "{text}");
        assert_eq!(serde_json::from_str::<PartitionLabeling>(&text).unwrap(), l);
    }

    proptest! {
        #[test]
        fn roundtrip_through_gaps(word in proptest::collection::vec(0u32..5, 0..6)) {
            let l = scalar_labeling(&word);
            if let Ok(s) = gns_from_labeling(&l) {
                prop_assert_eq!(s.genus() as u64, l.genus());
                if word.iter().all(|&w| w > 0) {
                    prop_assert_eq!(labeling_from_gns(&s), l);
                }
            }
        }
    }
}
