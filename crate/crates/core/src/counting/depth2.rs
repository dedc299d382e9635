//! Depth-2 counts: a sum over shapes of `C(s₂ − #M, g + 1 − s₁)`.
//!
//! Both engines first build a histogram `h[s₁][s₂ − #M]` over all shapes of
//! size at most the largest genus requested, then evaluate every genus from
//! it.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::counting::{binomial, BigCount};
use crate::error::{Error, Result};
use crate::partition::{default_max_n, enumerate_partitions};
use crate::semigroup::Multset;

/// Which shape enumerator to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Depth2Engine {
    /// Planar engine for d = 2, generic otherwise.
    #[default]
    Auto,
    /// Enumerate shapes as partitions and build their multsets.
    Generic,
    /// Incremental search over ordinary partitions; d = 2 only.
    Planar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Depth2Options {
    pub engine: Depth2Engine,
    /// Also sum the shapes with `s₁ = g + 1`, whose single term counts the
    /// depth-1 semigroup with that shape.
    pub include_depth_one: bool,
}

/// Largest genus accepted in dimension `d`.
pub fn depth2_max_genus(d: usize) -> u32 {
    match d {
        1 => 2000,
        2 => 100,
        3 => 24,
        _ => default_max_n(d - 1).min(14),
    }
}

/// `n_{g,d,2}`.
pub fn depth2_count(d: usize, g: u32) -> Result<BigCount> {
    Ok(depth2_table(d, g)?.pop().expect("table covers g"))
}

/// `n_{g,d,2}` for `g = 0, …, g_max`.
pub fn depth2_table(d: usize, g_max: u32) -> Result<Vec<BigCount>> {
    depth2_table_with(d, g_max, Depth2Options::default())
}

pub fn depth2_table_with(d: usize, g_max: u32, opts: Depth2Options) -> Result<Vec<BigCount>> {
    if d == 0 {
        return Err(Error::Domain("dimension must be at least 1".into()));
    }
    let limit = depth2_max_genus(d);
    if g_max > limit {
        return Err(Error::cap(format!("depth-2 count in dimension {d}"), limit as u64));
    }
    let s_max = g_max + u32::from(opts.include_depth_one);
    let hist = match (opts.engine, d) {
        (Depth2Engine::Planar, d) if d != 2 => {
            return Err(Error::Domain("the planar engine needs d = 2".into()));
        }
        (Depth2Engine::Planar, _) | (Depth2Engine::Auto, 2) => planar_histogram(s_max),
        _ => generic_histogram(d, s_max)?,
    };
    Ok((0..=g_max).map(|g| evaluate(&hist, g, opts.include_depth_one)).collect())
}

/// `h[s][c]`: the number of shapes with `s₁ = s` and `s₂ − #M = c`.
type Histogram = Vec<Vec<u64>>;

fn bump(hist: &mut Histogram, s: usize, c: usize) {
    let row = &mut hist[s];
    if row.len() <= c {
        row.resize(c + 1, 0);
    }
    row[c] += 1;
}

fn merge(mut a: Histogram, b: Histogram) -> Histogram {
    for (ra, rb) in a.iter_mut().zip(b) {
        if ra.len() < rb.len() {
            ra.resize(rb.len(), 0);
        }
        for (x, y) in ra.iter_mut().zip(rb) {
            *x += y;
        }
    }
    a
}

fn evaluate(hist: &Histogram, g: u32, include_depth_one: bool) -> BigCount {
    let top = if include_depth_one { g + 1 } else { g };
    let mut total = BigUint::default();
    for (s, row) in hist.iter().enumerate().take(top as usize + 1).skip(1) {
        let k = g as i64 + 1 - s as i64;
        for (c, &n) in row.iter().enumerate() {
            if n > 0 {
                total += binomial(c as u64, k) * n;
            }
        }
    }
    total
}

fn generic_histogram(d: usize, s_max: u32) -> Result<Histogram> {
    let e = d - 1;
    let per_size: Vec<Histogram> = (1..=s_max)
        .into_par_iter()
        .map(|s| -> Result<Histogram> {
            let mut hist = vec![Vec::new(); s_max as usize + 1];
            for p in enumerate_partitions(e, s)? {
                let m = Multset::from_shape(&p)?;
                let s2 = m.region_sizes(2)[1] as usize;
                bump(&mut hist, s as usize, s2 - m.len());
            }
            Ok(hist)
        })
        .collect::<Result<_>>()?;
    Ok(per_size.into_iter().fold(vec![Vec::new(); s_max as usize + 1], merge))
}

/// Search state over ordinary partitions `π` (the shapes for d = 2).
///
/// `pair[x]` is the least `π_a + π_b` over `a + b = x` with both indices
/// inside the current parts; together with the zero tail this gives
/// `π ⊞ π` without recomputation.
struct Planar {
    s_max: u32,
    parts: Vec<u32>,
    pair: Vec<u32>,
    undo: Vec<(usize, u32)>,
    hist: Histogram,
}

const FAR: u32 = u32::MAX / 4;

impl Planar {
    fn new(s_max: u32) -> Self {
        Planar {
            s_max,
            parts: Vec::new(),
            pair: vec![FAR; 2 * s_max as usize + 2],
            undo: Vec::new(),
            hist: vec![Vec::new(); s_max as usize + 1],
        }
    }

    fn push(&mut self, p: u32) {
        let l = self.parts.len();
        self.parts.push(p);
        for a in 0..=l {
            let v = self.parts[a] + p;
            let slot = &mut self.pair[a + l];
            if v < *slot {
                self.undo.push((a + l, *slot));
                *slot = v;
            }
        }
    }

    fn pop(&mut self, mark: usize) {
        while self.undo.len() > mark {
            let (i, v) = self.undo.pop().unwrap();
            self.pair[i] = v;
        }
        self.parts.pop();
    }

    fn record(&mut self, total: u32, distinct: u32) {
        let l = self.parts.len();
        let mut sq: u64 = self.pair[..l].iter().map(|&v| v as u64).sum();
        for x in l..2 * l {
            sq += self.pair[x].min(self.parts[x - l]) as u64;
        }
        let s2 = sq - total as u64;
        let c = s2 - (distinct as u64 + 1);
        bump(&mut self.hist, total as usize, c as usize);
    }

    fn descend(&mut self, total: u32, distinct: u32) {
        self.record(total, distinct);
        let last = *self.parts.last().unwrap();
        for p in (1..=last.min(self.s_max - total)).rev() {
            let mark = self.undo.len();
            self.push(p);
            self.descend(total + p, distinct + u32::from(p != last));
            self.pop(mark);
        }
    }
}

fn planar_histogram(s_max: u32) -> Histogram {
    (1..=s_max)
        .into_par_iter()
        .map(|first| {
            let mut st = Planar::new(s_max);
            st.push(first);
            st.descend(first, 1);
            st.hist
        })
        .reduce(|| vec![Vec::new(); s_max as usize + 1], merge)
}
