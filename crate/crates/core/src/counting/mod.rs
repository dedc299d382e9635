//! Exact counts of semigroups by genus, depth and shape.

mod depth2;
mod shape3;
mod table;
mod tree;

use num_bigint::BigUint;
use num_traits::One;

use crate::semigroup::ARegion;

pub use depth2::{depth2_count, depth2_max_genus, depth2_table, depth2_table_with, Depth2Engine, Depth2Options};
pub use shape3::{shape3_counts, Shape3Row};
pub use table::{CountKey, CountTable, Provenance};
pub use tree::{
    count_by_depth, count_by_multset, enumerate_gns_tree, rectangular_counts, tree_max_genus, walk_gns_tree,
    TreeCounts, TreeOptions,
};

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigCount {
    if k < 0 || k as u64 > n {
        return BigUint::default();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// The values attached to the simplex multset `M_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexFamily {
    /// `C(k + d − 1, d)`, the size of the first region.
    pub s1: u64,
    /// `C(2k + d − 1, d) − C(k + d, d)`, the second region without `M_k`.
    pub s2: u64,
    /// `C(s2, g + 1 − s1)`, depth-2 semigroups of genus g with multset `M_k`.
    pub t: BigCount,
}

fn small_binomial(n: u64, k: u64) -> u64 {
    u64::try_from(binomial(n, k as i64)).expect("simplex sizes fit in u64")
}

pub fn simplex_family(d: u32, k: u32, g: u32) -> SimplexFamily {
    let (d, k) = (d as u64, k as u64);
    let s1 = small_binomial(k + d - 1, d);
    let s2 = small_binomial(2 * k + d - 1, d) - small_binomial(k + d, d);
    let t = binomial(s2, g as i64 + 1 - s1 as i64);
    SimplexFamily { s1, s2, t }
}

/// The largest simplex-family count `t` over k with `s1 ≤ g`; a lower bound
/// for the number of depth-2 semigroups.
pub fn lower_bound_value(d: u32, g: u32) -> BigCount {
    let mut best = BigUint::default();
    for k in 1.. {
        let f = simplex_family(d, k, g);
        if f.s1 > g as u64 {
            break;
        }
        best = best.max(f.t);
    }
    best
}

/// Quantities behind the upper bound on the number of genus-g semigroups.
#[derive(Debug, Clone, PartialEq)]
pub struct UpperBound {
    /// `#A_g`.
    pub region_size: u64,
    /// `2g · H_{2g}^{d−1}`.
    pub harmonic_bound: f64,
    /// `log₂ C(#A_g, g)`.
    pub log2_binomial: f64,
}

pub fn upper_bound_diagnostics(d: u32, g: u32) -> crate::Result<UpperBound> {
    let region = ARegion::new(d as usize, g as u64)?;
    let n = region.cardinality();
    let h: f64 = (1..=2 * g as u64).map(|i| 1.0 / i as f64).sum();
    let harmonic_bound = 2.0 * g as f64 * h.powi(d as i32 - 1);
    let log2_binomial = (0..g as u64).map(|i| ((n - i) as f64 / (i + 1) as f64).log2()).sum();
    Ok(UpperBound { region_size: n, harmonic_bound, log2_binomial })
}
