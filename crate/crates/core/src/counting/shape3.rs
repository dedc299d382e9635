//! Planar semigroups whose shape has size 3, counted through their
//! labelings.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::labeling::{first_violation, PartitionLabeling};
use crate::partition::{enumerate_partitions, MultiPartition};

/// Counts for shapes `[3]` and `[2,1]` at one genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape3Row {
    pub g: u32,
    pub n3: u64,
    pub n21: u64,
}

/// Largest genus [`shape3_counts`] accepts.
pub const SHAPE3_MAX_GENUS: u32 = 60;

/// For each `g = 1..=g_max`, the semigroups with shape `[3]` (labels
/// `∅, π, π′` on a 1 × 3 grid) and with shape `[2,1]` (labels `∅, π, π′, ∅`
/// on a 2 × 2 grid), where `π`, `π′` are nonempty with total g.
pub fn shape3_counts(g_max: u32) -> Result<Vec<Shape3Row>> {
    if g_max > SHAPE3_MAX_GENUS {
        return Err(Error::cap("shape-3 counts", SHAPE3_MAX_GENUS as u64));
    }
    let by_size: Vec<Vec<MultiPartition>> =
        (0..g_max).map(|n| enumerate_partitions(1, n).map(Iterator::collect)).collect::<Result<_>>()?;
    let empty = MultiPartition::empty(1);
    Ok((1..=g_max)
        .into_par_iter()
        .map(|g| {
            let (mut n3, mut n21) = (0, 0);
            for a in 1..g {
                for p in &by_size[a as usize] {
                    for q in &by_size[(g - a) as usize] {
                        let tall = PartitionLabeling::new(vec![1, 3], vec![empty.clone(), p.clone(), q.clone()])
                            .expect("grid and labels agree");
                        n3 += u64::from(first_violation(&tall, false).is_none());
                        let square = PartitionLabeling::new(
                            vec![2, 2],
                            vec![empty.clone(), p.clone(), q.clone(), empty.clone()],
                        )
                        .expect("grid and labels agree");
                        n21 += u64::from(first_violation(&square, false).is_none());
                    }
                }
            }
            Shape3Row { g, n3, n21 }
        })
        .collect())
}
