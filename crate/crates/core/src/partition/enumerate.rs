//! Deterministic enumeration of e-dimensional partitions of n.
//!
//! Cells of the region `{x : ∏(x_i + 1) ≤ n}` (which contains the support of
//! every partition of n) are visited in colexicographic order, a linear
//! extension of the partial order. Each cell receives a value no larger than
//! any of its immediate predecessors, trying larger values first. The stream
//! therefore lists partitions in decreasing lexicographic order of their
//! colex-ordered value vectors; for e = 1 this is the usual reverse
//! lexicographic order `[4], [3,1], [2,2], [2,1,1], [1,1,1,1]`.

use crate::error::{Error, Result};
use crate::partition::{colex, MultiPartition};
use crate::point::for_each_in_box;

/// Largest n accepted by [`enumerate_partitions`] in dimension `e`.
pub fn default_max_n(e: usize) -> u32 {
    match e {
        0 => u32::MAX,
        1 => 120,
        2 => 40,
        3 => 24,
        _ => 16,
    }
}

/// Streams every e-dimensional partition of `n` exactly once.
pub fn enumerate_partitions(e: usize, n: u32) -> Result<PartitionStream> {
    let limit = default_max_n(e);
    if n > limit {
        return Err(Error::cap(format!("partition enumeration in dimension {e}"), limit as u64));
    }
    Ok(PartitionStream::new(e, n))
}

struct Frame {
    cell: usize,
    rem: u32,
    next: i64,
    low: i64,
}

/// Iterator over the partitions of n in canonical order.
///
/// Restarting is cheap (build a new stream); [`PartitionStream::window`]
/// selects a deterministic index range for chunked consumption.
pub struct PartitionStream {
    dim: usize,
    n: u32,
    cells: Vec<Vec<u32>>,
    preds: Vec<Vec<usize>>,
    /// Cells of the form (0, …, 0, t): once one of these is zero every later
    /// cell is zero.
    head: Vec<bool>,
    vals: Vec<u32>,
    frames: Vec<Frame>,
    started: bool,
    finished: bool,
}

impl PartitionStream {
    fn new(dim: usize, n: u32) -> Self {
        let cells = region_cells(dim, n);
        let preds = cells
            .iter()
            .map(|c| {
                (0..dim)
                    .filter(|&k| c[k] > 0)
                    .map(|k| {
                        let mut p = c.clone();
                        p[k] -= 1;
                        cells.binary_search_by(|q| colex(q, &p)).expect("region is downward closed")
                    })
                    .collect()
            })
            .collect();
        let head = cells.iter().map(|c| c.iter().take(dim.saturating_sub(1)).all(|&x| x == 0)).collect();
        let vals = vec![0; cells.len()];
        PartitionStream { dim, n, cells, preds, head, vals, frames: Vec::new(), started: false, finished: false }
    }

    /// The sub-stream of items with index in `start..end`.
    pub fn window(self, start: usize, end: usize) -> impl Iterator<Item = MultiPartition> {
        self.skip(start).take(end.saturating_sub(start))
    }

    fn cap_for(&self, cell: usize, rem: u32) -> u32 {
        self.preds[cell].iter().map(|&p| self.vals[p]).fold(rem, u32::min)
    }

    fn push(&mut self, cell: usize, rem: u32) {
        let cap = self.cap_for(cell, rem) as i64;
        let low = if self.head[cell] { 1 } else { 0 };
        if cap >= low {
            self.frames.push(Frame { cell, rem, next: cap, low });
        }
    }

    fn emit(&self, upto: usize) -> MultiPartition {
        let mut ext = vec![0u32; self.dim];
        for (c, &v) in self.cells[..=upto].iter().zip(&self.vals) {
            if v > 0 {
                for (e, &x) in ext.iter_mut().zip(c) {
                    *e = (*e).max(x + 1);
                }
            }
        }
        let mut values = Vec::new();
        for_each_in_box(&ext, |idx| {
            let v = match self.cells[..=upto].binary_search_by(|q| colex(q, idx)) {
                Ok(i) => self.vals[i],
                Err(_) => 0,
            };
            values.push(v);
        });
        MultiPartition::from_dense(self.dim, ext, values)
    }
}

impl Iterator for PartitionStream {
    type Item = MultiPartition;

    fn next(&mut self) -> Option<MultiPartition> {
        if self.finished {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.n == 0 {
                self.finished = true;
                return Some(MultiPartition::empty(self.dim));
            }
            self.push(0, self.n);
        }
        loop {
            let Some(top) = self.frames.last_mut() else {
                self.finished = true;
                return None;
            };
            let cell = top.cell;
            if top.next < top.low {
                self.vals[cell] = 0;
                self.frames.pop();
                continue;
            }
            let v = top.next as u32;
            top.next -= 1;
            let rem = top.rem - v;
            self.vals[cell] = v;
            if rem == 0 {
                return Some(self.emit(cell));
            }
            if cell + 1 < self.cells.len() {
                self.push(cell + 1, rem);
            }
        }
    }
}

/// Cells x of N₀^e with ∏(x_i + 1) ≤ n, sorted colexicographically.
fn region_cells(dim: usize, n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut cur = Vec::with_capacity(dim);
    fn rec(dim: usize, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == dim {
            out.push(cur.clone());
            return;
        }
        for x in 0..budget {
            cur.push(x);
            rec(dim, budget / (x + 1), cur, out);
            cur.pop();
        }
    }
    rec(dim, n, &mut cur, &mut out);
    out.sort_by(|a, b| colex(a, b));
    out
}
