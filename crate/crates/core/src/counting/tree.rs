//! Exhaustive enumeration of semigroups through the semigroup tree.
//!
//! The root is N₀^d. A child removes an atom (minimal generator) that is
//! larger, in graded-lex order, than every gap of its parent. All points
//! involved lie in `A_{g_max + 1}`, which is indexed once in graded-lex order
//! so that a node is a bitset of gap indices plus its list of atoms.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::counting::table::{CountKey, CountTable};
use crate::counting::BigCount;
use crate::error::{Error, Result};
use crate::point::Point;
use crate::semigroup::{ARegion, Gns, Multset};

const NONE: u32 = u32::MAX;

/// Largest genus the walker accepts in dimension `d`.
pub fn tree_max_genus(d: usize) -> u32 {
    match d {
        1 => 30,
        2 => 14,
        3 => 8,
        4 => 6,
        _ => 5,
    }
}

/// Which per-node statistics to collect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TreeOptions {
    pub depth: bool,
    pub census: bool,
}

/// Tallies over all semigroups of genus at most `g_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeCounts {
    pub dim: usize,
    pub g_max: u32,
    /// `by_genus[g]`.
    pub by_genus: Vec<u64>,
    /// `by_depth[g][q]`; empty unless depths were requested.
    pub by_depth: Vec<Vec<u64>>,
    /// Semigroups whose multset has exactly `d` points, by genus.
    pub rectangular: Vec<u64>,
    /// Per-genus counts for each multset seen; empty unless requested.
    pub by_multset: BTreeMap<Vec<Point>, Vec<u64>>,
}

impl TreeCounts {
    fn new(dim: usize, g_max: u32) -> Self {
        let n = g_max as usize + 1;
        TreeCounts {
            dim,
            g_max,
            by_genus: vec![0; n],
            by_depth: vec![Vec::new(); n],
            rectangular: vec![0; n],
            by_multset: BTreeMap::new(),
        }
    }

    fn merge(mut self, other: TreeCounts) -> TreeCounts {
        for g in 0..self.by_genus.len() {
            self.by_genus[g] += other.by_genus[g];
            self.rectangular[g] += other.rectangular[g];
            let (a, b) = (&mut self.by_depth[g], &other.by_depth[g]);
            if a.len() < b.len() {
                a.resize(b.len(), 0);
            }
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        for (k, v) in other.by_multset {
            let slot = self.by_multset.entry(k).or_insert_with(|| vec![0; v.len()]);
            for (x, y) in slot.iter_mut().zip(v) {
                *x += y;
            }
        }
        self
    }

    /// `n_{g,d,q}`, zero when not tallied.
    pub fn depth_count(&self, g: u32, q: u32) -> u64 {
        self.by_depth.get(g as usize).and_then(|r| r.get(q as usize)).copied().unwrap_or(0)
    }
}

/// Precomputed index over `A_{g_max + 1}`.
struct Ctx {
    d: usize,
    g_max: u32,
    points: Vec<Point>,
    extents: Vec<u32>,
    strides: Vec<usize>,
    dense: Vec<u32>,
    /// `pred[i * d + k]`: index of `points[i] − e_k`.
    pred: Vec<u32>,
    /// `succ[i * d + k]`: index of `points[i] + e_k`.
    succ: Vec<u32>,
    /// Splits `a + b = points[i]` with `0 < a ≤ b` in graded-lex order.
    splits: Vec<Vec<(u32, u32)>>,
    words: usize,
}

impl Ctx {
    fn new(d: usize, g_max: u32) -> Result<Ctx> {
        let points = ARegion::new(d, g_max as u64 + 1)?.points()?;
        let extents = vec![2 * (g_max + 1); d];
        let strides = crate::semigroup::row_major_strides(&extents);
        let mut dense = vec![NONE; extents.iter().map(|&e| e as usize).product()];
        for (i, p) in points.iter().enumerate() {
            let off: usize = p.coords().iter().zip(&strides).map(|(&c, s)| c as usize * s).sum();
            dense[off] = i as u32;
        }
        let mut ctx = Ctx {
            d,
            g_max,
            words: points.len().div_ceil(64),
            points,
            extents,
            strides,
            dense,
            pred: Vec::new(),
            succ: Vec::new(),
            splits: Vec::new(),
        };
        let n = ctx.points.len();
        let mut pred = vec![NONE; n * d];
        let mut succ = vec![NONE; n * d];
        for i in 0..n {
            let c = ctx.points[i].coords().to_vec();
            for k in 0..d {
                let mut q = c.clone();
                if q[k] > 0 {
                    q[k] -= 1;
                    pred[i * d + k] = ctx.lookup(&q);
                }
                q = c.clone();
                q[k] += 1;
                succ[i * d + k] = ctx.lookup(&q);
            }
        }
        let mut splits = vec![Vec::new(); n];
        for (a, pa) in ctx.points.iter().enumerate().skip(1) {
            for (b, pb) in ctx.points.iter().enumerate().skip(a) {
                let s = pa.add(pb);
                let idx = ctx.lookup(s.coords());
                if idx != NONE {
                    splits[idx as usize].push((a as u32, b as u32));
                }
            }
        }
        ctx.pred = pred;
        ctx.succ = succ;
        ctx.splits = splits;
        Ok(ctx)
    }

    fn lookup(&self, c: &[u32]) -> u32 {
        let mut off = 0;
        for ((&x, &e), s) in c.iter().zip(&self.extents).zip(&self.strides) {
            if x >= e {
                return NONE;
            }
            off += x as usize * s;
        }
        self.dense[off]
    }

    fn sum(&self, a: u32, b: u32) -> u32 {
        let s: Vec<u32> =
            self.points[a as usize].coords().iter().zip(self.points[b as usize].coords()).map(|(x, y)| x + y).collect();
        self.lookup(&s)
    }
}

#[derive(Clone)]
struct Node {
    gaps: Vec<u64>,
    atoms: Vec<u32>,
    /// Largest gap index, `NONE` for the root.
    last: u32,
    genus: u32,
}

fn has(bits: &[u64], i: u32) -> bool {
    bits[(i / 64) as usize] >> (i % 64) & 1 == 1
}

impl Node {
    fn root(ctx: &Ctx) -> Node {
        let mut atoms: Vec<u32> = (0..ctx.d).map(|k| ctx.succ[k]).collect();
        atoms.sort_unstable();
        Node { gaps: vec![0; ctx.words], atoms, last: NONE, genus: 0 }
    }

    fn gap_indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.gaps.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| (w * 64 + b) as u32)
        })
    }

    fn children(&self, ctx: &Ctx) -> Vec<Node> {
        if self.genus >= ctx.g_max {
            return Vec::new();
        }
        let mut out = Vec::new();
        for &x in &self.atoms {
            if self.last != NONE && x <= self.last {
                continue;
            }
            let mut gaps = self.gaps.clone();
            gaps[(x / 64) as usize] |= 1 << (x % 64);
            let mut atoms: Vec<u32> = self.atoms.iter().copied().filter(|&a| a != x).collect();
            // A new atom is x plus an old atom, or 3x.
            let double = ctx.sum(x, x);
            let triple = if double == NONE { NONE } else { ctx.sum(x, double) };
            for y in self.atoms.iter().map(|&a| ctx.sum(x, a)).chain(std::iter::once(triple)) {
                if y == NONE {
                    continue;
                }
                let irreducible = ctx.splits[y as usize].iter().all(|&(p, q)| has(&gaps, p) || has(&gaps, q));
                if irreducible {
                    atoms.push(y);
                }
            }
            atoms.sort_unstable();
            out.push(Node { gaps, atoms, last: x, genus: self.genus + 1 });
        }
        out
    }

    /// Minimal nonzero elements, as indices.
    fn multset(&self, ctx: &Ctx) -> Vec<u32> {
        let d = ctx.d;
        // below: gaps y with every nonzero point ≤ y a gap.
        let mut below = vec![0u64; ctx.words];
        let ok = |below: &[u64], i: u32| i == 0 || has(below, i);
        for y in self.gap_indices() {
            if (0..d).all(|k| {
                let p = ctx.pred[y as usize * d + k];
                p == NONE || ok(&below, p)
            }) {
                below[(y / 64) as usize] |= 1 << (y % 64);
            }
        }
        let mut cands: Vec<u32> = std::iter::once(0).chain(self.gap_indices()).filter(|&y| ok(&below, y))
            .flat_map(|y| (0..d).map(move |k| ctx.succ[y as usize * d + k]))
            .filter(|&c| c != NONE && !has(&self.gaps, c))
            .collect();
        cands.sort_unstable();
        cands.dedup();
        cands.retain(|&c| {
            (0..d).all(|k| {
                let p = ctx.pred[c as usize * d + k];
                p == NONE || ok(&below, p)
            })
        });
        cands
    }

    /// Largest region index of a gap; `ℓ(x)` is the largest j with x above
    /// some point of jM, and the region index of `x ≠ 0` is `ℓ(x) + 1`.
    fn depth(&self, ctx: &Ctx, multset: &[u32]) -> u32 {
        if self.last == NONE {
            return 0;
        }
        let d = ctx.d;
        let n = self.last as usize + 1;
        let mut ell = vec![0u32; n];
        let mut diff = vec![0u32; d];
        let mut best = 0;
        for i in 1..n {
            let mut v = (0..d)
                .map(|k| ctx.pred[i * d + k])
                .filter(|&p| p != NONE)
                .map(|p| ell[p as usize])
                .max()
                .unwrap_or(0);
            let xi = ctx.points[i].coords();
            for &m in multset {
                let mc = ctx.points[m as usize].coords();
                if mc.iter().zip(xi).all(|(a, b)| a <= b) {
                    for k in 0..d {
                        diff[k] = xi[k] - mc[k];
                    }
                    v = v.max(1 + ell[ctx.lookup(&diff) as usize]);
                }
            }
            ell[i] = v;
            if has(&self.gaps, i as u32) {
                best = best.max(v + 1);
            }
        }
        best
    }

    fn gns(&self, ctx: &Ctx) -> Gns {
        Gns::from_gaps_unchecked(ctx.d, self.gap_indices().map(|i| ctx.points[i as usize].clone()))
    }
}

fn tally(ctx: &Ctx, node: &Node, opts: TreeOptions, acc: &mut TreeCounts) {
    let g = node.genus as usize;
    acc.by_genus[g] += 1;
    let m = node.multset(ctx);
    if m.len() == ctx.d {
        acc.rectangular[g] += 1;
    }
    if opts.depth {
        let q = node.depth(ctx, &m) as usize;
        let row = &mut acc.by_depth[g];
        if row.len() <= q {
            row.resize(q + 1, 0);
        }
        row[q] += 1;
    }
    if opts.census {
        let key: Vec<Point> = m.iter().map(|&i| ctx.points[i as usize].clone()).collect();
        let slot = acc.by_multset.entry(key).or_insert_with(|| vec![0; ctx.g_max as usize + 1]);
        slot[g] += 1;
    }
}

fn check_caps(d: usize, g_max: u32) -> Result<()> {
    if d == 0 {
        return Err(Error::Domain("dimension must be at least 1".into()));
    }
    let limit = tree_max_genus(d);
    if g_max > limit {
        return Err(Error::cap(format!("semigroup tree in dimension {d}"), limit as u64));
    }
    Ok(())
}

/// Nodes of genus below `split` are handled serially; their children at
/// that genus become independent parallel tasks.
fn frontier(ctx: &Ctx, split: u32, mut visit: impl FnMut(&Node)) -> Vec<Node> {
    let mut level = vec![Node::root(ctx)];
    for _ in 0..split {
        let mut next = Vec::new();
        for n in &level {
            visit(n);
            next.extend(n.children(ctx));
        }
        level = next;
    }
    level
}

fn subtree(ctx: &Ctx, node: Node, visit: &mut impl FnMut(&Node)) {
    let mut stack = vec![node];
    while let Some(n) = stack.pop() {
        visit(&n);
        let mut kids = n.children(ctx);
        kids.reverse();
        stack.extend(kids);
    }
}

/// Walks every semigroup of genus at most `g_max` and tallies it.
pub fn walk_gns_tree(d: usize, g_max: u32, opts: TreeOptions) -> Result<TreeCounts> {
    check_caps(d, g_max)?;
    let ctx = Ctx::new(d, g_max)?;
    let mut head = TreeCounts::new(d, g_max);
    let tasks = frontier(&ctx, g_max.min(2), |n| tally(&ctx, n, opts, &mut head));
    let rest = tasks
        .into_par_iter()
        .map(|n| {
            let mut acc = TreeCounts::new(d, g_max);
            subtree(&ctx, n, &mut |m| tally(&ctx, m, opts, &mut acc));
            acc
        })
        .reduce(|| TreeCounts::new(d, g_max), TreeCounts::merge);
    Ok(head.merge(rest))
}

/// Largest number of semigroups [`enumerate_gns_tree`] will materialize.
pub const MAX_LISTED: u64 = 2_000_000;

/// Every semigroup of genus at most `g_max`, grouped by genus and sorted
/// within each group by gap list.
pub fn enumerate_gns_tree(d: usize, g_max: u32) -> Result<Vec<Vec<Gns>>> {
    check_caps(d, g_max)?;
    let ctx = Ctx::new(d, g_max)?;
    let mut groups: Vec<Vec<Gns>> = vec![Vec::new(); g_max as usize + 1];
    let mut seen = 0u64;
    let mut overflow = false;
    let mut visit = |n: &Node| {
        seen += 1;
        if seen > MAX_LISTED {
            overflow = true;
            return;
        }
        groups[n.genus as usize].push(n.gns(&ctx));
    };
    for n in frontier(&ctx, 0, |_| {}) {
        subtree(&ctx, n, &mut visit);
    }
    if overflow {
        return Err(Error::cap("semigroups listed by the tree", MAX_LISTED));
    }
    for g in &mut groups {
        g.sort_by(|a, b| a.gaps().cmp(b.gaps()));
    }
    Ok(groups)
}

/// `n_{g,d,q}` for every `g ≤ g_max` and every depth that occurs, as
/// `"by_depth"` rows keyed by `q`.
pub fn count_by_depth(d: usize, g_max: u32) -> Result<CountTable> {
    let counts = walk_gns_tree(d, g_max, TreeOptions { depth: true, census: false })?;
    let mut table = CountTable::new();
    for (g, row) in counts.by_depth.iter().enumerate() {
        for (q, &n) in row.iter().enumerate() {
            table.record(CountKey::with_q("by_depth", d, g as u32, q as u32), BigUint::from(n));
        }
    }
    Ok(table)
}

/// Rectangular semigroups (multset of size d) per genus, as `"rectangular"`
/// rows.
pub fn rectangular_counts(d: usize, g_max: u32) -> Result<CountTable> {
    let counts = walk_gns_tree(d, g_max, TreeOptions::default())?;
    let mut table = CountTable::new();
    for (g, &n) in counts.rectangular.iter().enumerate() {
        table.record(CountKey::new("rectangular", d, g as u32), BigUint::from(n));
    }
    Ok(table)
}

/// Semigroups of genus `g` with multset `m`.
pub fn count_by_multset(m: &Multset, g: u32) -> Result<BigCount> {
    let counts = walk_gns_tree(m.dim(), g, TreeOptions { depth: false, census: true })?;
    let n = counts.by_multset.get(m.points()).map_or(0, |row| row[g as usize]);
    Ok(BigUint::from(n))
}
