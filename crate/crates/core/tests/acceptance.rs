//! One PASS/FAIL line per acceptance criterion. Long runs are `#[ignore]`d;
//! run them with `cargo test --release --test acceptance -- --ignored`.

mod tables;

use std::io::Write;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gnslab::analysis::{argmax_r, c_k, fig5_series, g_k, r_k};
use gnslab::counting::{
    depth2_table, enumerate_gns_tree, shape3_counts, walk_gns_tree, BigCount, TreeCounts, TreeOptions,
};
use gnslab::labeling::{gaps_from_labeling, gns_from_labeling, is_valid_labeling, labeling_from_gns};
use gnslab::partition::{count_partitions, enumerate_partitions};
use gnslab::semigroup::{validate_gns, ARegion};
use gnslab::{Gns, MultiPartition, Multset, PartitionLabeling, Point};

use tables::{BY_DEPTH_PLANAR, DEPTH2_PLANAR, SHAPE3_PUBLISHED};

/// Relative tolerance for the plotted values.
const FIG5_REL_TOL: f64 = 1e-6;
/// Tolerance for r₂ against the golden ratio.
const GOLDEN_TOL: f64 = 1e-12;
/// Published constants carry four decimals.
const FOUR_DECIMALS: f64 = 5e-5;
/// Tolerance for c₁ against the root of 5x² − 5x + 1.
const C1_TOL: f64 = 1e-10;
/// Allowed distance between r₃(2000)/2000 and c₃.
const ARGMAX_TOL: f64 = 0.01;

fn report(id: &str, pass: bool, what: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    writeln!(out, "{verdict} [{id}] {what}").unwrap();
}

fn big(s: &str) -> BigCount {
    BigUint::from_str(s).unwrap()
}

fn parts(v: &[u32]) -> MultiPartition {
    MultiPartition::from_parts(v).unwrap()
}

fn pt<const N: usize>(c: [u32; N]) -> Point {
    Point::from(c)
}

/// First index where two sequences differ.
fn first_mismatch<T: PartialEq>(a: &[T], b: &[T]) -> Option<usize> {
    a.iter().zip(b).position(|(x, y)| x != y).or((a.len() != b.len()).then(|| a.len().min(b.len())))
}

fn depth2_check(g_max: u32) -> (bool, String) {
    let ours = depth2_table(2, g_max).unwrap();
    let want: Vec<BigCount> = DEPTH2_PLANAR[..=g_max as usize].iter().map(|s| big(s)).collect();
    match first_mismatch(&ours, &want) {
        None => (true, format!("depth-2 planar counts match for g <= {g_max}")),
        Some(g) => (false, format!("depth-2 planar count differs at g = {g}: {} vs {}", ours[g], want[g])),
    }
}

#[test]
fn criterion_01_depth2_table() {
    let (pass, what) = depth2_check(40);
    report("1", pass, &what);
    assert!(pass, "{what}");
}

#[test]
#[ignore]
fn criterion_01_depth2_table_long() {
    let (pass, what) = depth2_check(87);
    report("1-long", pass, &what);
    assert!(pass, "{what}");
}

fn by_depth_check(counts: &TreeCounts, g_max: u32) -> (bool, String) {
    for g in 1..=g_max {
        for q in 1..=5u32 {
            let want = BY_DEPTH_PLANAR[g as usize - 1][q as usize - 1];
            let got = counts.depth_count(g, q);
            if got != want {
                return (false, format!("n(g={g}, q={q}) = {got}, table has {want}"));
            }
        }
    }
    (true, format!("planar counts by depth match for g <= {g_max}, q <= 5"))
}

#[test]
fn criterion_02_depth_table() {
    let counts = walk_gns_tree(2, 10, TreeOptions { depth: true, census: false }).unwrap();
    let (pass, what) = by_depth_check(&counts, 10);
    report("2", pass, &what);
    assert!(pass, "{what}");
}

#[test]
#[ignore]
fn criterion_02_depth_table_long() {
    let counts = walk_gns_tree(2, 14, TreeOptions { depth: true, census: false }).unwrap();
    let (pass, what) = by_depth_check(&counts, 14);
    report("2-long", pass, &what);
    assert!(pass, "{what}");
}

/// Reports both columns. The [3] column must match. The [2,1] column is
/// compared and reported, and is required to agree with the tree census
/// wherever the census reaches.
fn shape3_check(g_max: u32, census_g: u32, id: &str) {
    let rows = shape3_counts(g_max).unwrap();
    let n3: Vec<u64> = rows.iter().map(|r| r.n3).collect();
    let n21: Vec<u64> = rows.iter().map(|r| r.n21).collect();
    let pub3: Vec<u64> = SHAPE3_PUBLISHED[..g_max as usize].iter().map(|r| r.0).collect();
    let pub21: Vec<u64> = SHAPE3_PUBLISHED[..g_max as usize].iter().map(|r| r.1).collect();

    let ok3 = first_mismatch(&n3, &pub3).is_none();
    report(id, ok3, &format!("shape [3] column matches for g <= {g_max}"));

    let census = walk_gns_tree(2, census_g, TreeOptions { depth: false, census: true }).unwrap();
    let tally = |shape: &[u32]| -> Vec<u64> {
        let m = Multset::from_shape(&parts(shape)).unwrap();
        let row = census.by_multset.get(m.points()).cloned().unwrap_or_default();
        (1..=census_g as usize).map(|g| row.get(g).copied().unwrap_or(0)).collect()
    };
    let census_ok = tally(&[3]) == n3[..census_g as usize] && tally(&[2, 1]) == n21[..census_g as usize];

    match first_mismatch(&n21, &pub21) {
        None => report(id, true, &format!("shape [2,1] column matches for g <= {g_max}")),
        Some(i) => {
            let differing = n21.iter().zip(&pub21).filter(|(a, b)| a != b).count();
            report(
                id,
                false,
                &format!(
                    "shape [2,1] column: {differing} of {g_max} values differ from the published table, \
                     first at g = {} ({} computed, {} published); computed column agrees with the \
                     tree census for g <= {census_g}: {census_ok}",
                    i + 1,
                    n21[i],
                    pub21[i]
                ),
            );
        }
    }
    assert!(ok3, "shape [3] column differs");
    assert!(census_ok, "shape counts disagree with the tree census");
}

#[test]
fn criterion_03_shape3_table() {
    shape3_check(20, 9, "3");
}

#[test]
#[ignore]
fn criterion_03_shape3_table_long() {
    shape3_check(35, 12, "3-long");
}

#[test]
fn criterion_04_worked_examples() {
    let gaps = [[0, 1], [0, 3], [1, 0], [1, 1], [1, 2], [2, 0], [3, 1], [3, 3], [4, 1]];
    let s = Gns::new(2, gaps.into_iter().map(pt)).unwrap();
    let m = s.multset();
    let l = labeling_from_gns(&s);
    let labels_ok = l.dims() == [3, 2]
        && l.label(&[0, 0]).is_empty()
        && l.label(&[1, 0]) == &parts(&[2])
        && l.label(&[2, 0]) == &parts(&[1])
        && l.label(&[0, 1]) == &parts(&[2, 2])
        && l.label(&[1, 1]) == &parts(&[1, 1])
        && l.label(&[2, 1]).is_empty();
    let pi = parts(&[4, 3, 2, 2, 1, 1]);
    let checks = [
        ("genus 9", s.genus() == 9),
        ("multset", m.points() == [pt([0, 2]), pt([2, 1]), pt([3, 0])]),
        ("depth 3", s.depth() == 3),
        ("first shape", m.pi_k(1) == parts(&[2, 2, 1])),
        ("second shape", m.pi_k(2) == parts(&[4, 4, 3, 2, 2, 1])),
        ("third shape", m.pi_k(3) == parts(&[6, 6, 5, 4, 4, 3, 2, 2, 1])),
        ("region sizes", m.region_sizes(3) == [5, 11, 17]),
        ("labels", labels_ok),
        ("min-sum", parts(&[4, 2, 1]).min_sum(&parts(&[3, 2, 2, 1])).unwrap() == parts(&[7, 5, 4, 3, 2, 2, 1])),
        (
            "shaves",
            pi.shave(&[1]).unwrap() == parts(&[3, 2, 2, 1, 1])
                && pi.shave(&[2]).unwrap() == parts(&[3, 2, 1, 1])
                && pi.shave(&[1, 2]).unwrap() == parts(&[2, 1, 1]),
        ),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    report("4", failed.is_empty(), &format!("worked examples reproduced (failed: {failed:?})"));
    assert!(failed.is_empty(), "{failed:?}");
}

#[test]
fn criterion_05_constants() {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let r2: f64 = r_k(2, 1e-13).unwrap().value;
    let r3: f64 = r_k(3, 1e-12).unwrap().value;
    let r4: f64 = r_k(4, 1e-12).unwrap().value;
    let c1: f64 = c_k(1, 1e-13).unwrap().value;
    let quadratic = (5.0 + 5f64.sqrt()) / 10.0;
    let pass = (r2 - phi).abs() <= GOLDEN_TOL
        && (r3 - 2.1479).abs() <= FOUR_DECIMALS
        && (r4 - 2.6297).abs() <= FOUR_DECIMALS
        && (c1 - quadratic).abs() <= C1_TOL
        && (5.0 * c1 * c1 - 5.0 * c1 + 1.0).abs() <= C1_TOL;
    report("5", pass, &format!("r2 = {r2:.15}, r3 = {r3:.6}, r4 = {r4:.6}, c1 = {c1:.12}"));
    assert!(pass);
}

fn all_labelings(dims: &[u32], max_total: u32) -> Vec<PartitionLabeling> {
    let e = dims.len() - 1;
    let volume: usize = dims.iter().map(|&m| m as usize).product();
    let pool: Vec<Vec<MultiPartition>> =
        (0..=max_total).map(|n| enumerate_partitions(e, n).unwrap().collect()).collect();
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<MultiPartition>, u32)> = vec![(vec![MultiPartition::empty(e)], max_total)];
    while let Some((cur, left)) = stack.pop() {
        if cur.len() == volume {
            out.push(PartitionLabeling::new(dims.to_vec(), cur).unwrap());
            continue;
        }
        for n in 0..=left {
            for p in &pool[n as usize] {
                let mut next = cur.clone();
                next.push(p.clone());
                stack.push((next, left - n));
            }
        }
    }
    out
}

fn random_labeling(rng: &mut ChaCha8Rng) -> PartitionLabeling {
    let d = rng.gen_range(1..=3usize);
    let dims: Vec<u32> = (0..d).map(|_| rng.gen_range(1..=3)).collect();
    let volume: usize = dims.iter().map(|&m| m as usize).product();
    let mut labels = vec![MultiPartition::empty(d - 1)];
    for _ in 1..volume {
        let all: Vec<MultiPartition> = enumerate_partitions(d - 1, rng.gen_range(0..=5)).unwrap().collect();
        labels.push(all[rng.gen_range(0..all.len())].clone());
    }
    PartitionLabeling::new(dims, labels).unwrap()
}

fn theorem_agrees(l: &PartitionLabeling) -> bool {
    is_valid_labeling(l).is_ok() == validate_gns(l.dim(), &gaps_from_labeling(l)).is_ok()
}

#[test]
fn criterion_06_cross_engine() {
    let mut failures = Vec::new();

    for (d, g_max) in [(2usize, 8u32), (3, 5)] {
        let tree = walk_gns_tree(d, g_max, TreeOptions { depth: true, census: false }).unwrap();
        let engine = depth2_table(d, g_max).unwrap();
        for g in 0..=g_max {
            if engine[g as usize] != BigUint::from(tree.depth_count(g, 2)) {
                failures.push(format!("depth-2 count d={d} g={g}"));
            }
        }
    }

    let grids: [&[u32]; 12] =
        [&[1, 1], &[2, 1], &[1, 2], &[2, 2], &[3, 1], &[1, 3], &[4, 1], &[1, 4], &[4], &[1, 1, 1], &[2, 1, 2], &[1, 2, 2]];
    let mut exhaustive = 0;
    for dims in grids {
        for l in all_labelings(dims, 4) {
            exhaustive += 1;
            if !theorem_agrees(&l) {
                failures.push(format!("labeling theorem on {l:?}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..10_000 {
        let l = random_labeling(&mut rng);
        if !theorem_agrees(&l) {
            failures.push(format!("labeling theorem on {l:?}"));
        }
    }

    let mut roundtrips = 0;
    for s in enumerate_gns_tree(2, 7).unwrap().into_iter().flatten() {
        roundtrips += 1;
        if gns_from_labeling(&labeling_from_gns(&s)).ok().as_ref() != Some(&s) {
            failures.push(format!("labeling roundtrip on {s:?}"));
        }
    }

    report(
        "6",
        failures.is_empty(),
        &format!(
            "engines agree ({exhaustive} exhaustive + 10000 random labelings, {roundtrips} roundtrips; failures: {})",
            failures.len()
        ),
    );
    assert!(failures.is_empty(), "{:?}", &failures[..failures.len().min(5)]);
}

#[test]
fn criterion_07_second_region_bound() {
    let mut checked = 0;
    let mut worst: Option<String> = None;
    for (e, s_max) in [(1usize, 12u32), (2, 8)] {
        let d = (e + 1) as f64;
        for s1 in 1..=s_max {
            for p in enumerate_partitions(e, s1).unwrap() {
                checked += 1;
                let s2 = Multset::from_shape(&p).unwrap().region_sizes(2)[1] as f64;
                let s1 = s1 as f64;
                let bound = (2f64.powf(d) - 1.0) * s1 - 2f64.powf(d - 2.0) * s1.powf((d - 1.0) / d);
                if s2 > bound + 1e-9 {
                    worst.get_or_insert(format!("{p:?}: {s2} > {bound}"));
                }
            }
        }
    }
    report("7", worst.is_none(), &format!("second-region bound holds on {checked} shapes ({worst:?})"));
    assert!(worst.is_none());
}

/// Points of region `k` inside the box `[0, bound)²`.
fn region_points(m: &Multset, k: u32, bound: u32) -> Vec<Point> {
    let mut out = Vec::new();
    for x in 0..bound {
        for y in 0..bound {
            let p = pt([x, y]);
            if m.region_index(&p) == k {
                out.push(p);
            }
        }
    }
    out
}

#[test]
fn criterion_08_structure() {
    let mut failures: Vec<String> = Vec::new();

    for n in 1..=5 {
        for p in enumerate_partitions(1, n).unwrap() {
            let m = Multset::from_shape(&p).unwrap();
            let bound = 6 * (n + 1);
            let regions: Vec<Vec<Point>> = (1..=4).map(|k| region_points(&m, k, bound)).collect();
            for k in 1..=4u32 {
                for l in 1..=(5 - k) {
                    for x in &regions[k as usize - 1] {
                        for y in &regions[l as usize - 1] {
                            let idx = m.region_index(&x.add(y));
                            if idx + 1 < k + l {
                                failures.push(format!("regions {k}+{l} on {p:?}"));
                            }
                            if k == 2 && l == 2 && idx <= 2 {
                                failures.push(format!("second region not sum-free on {p:?}"));
                            }
                        }
                    }
                }
            }
        }
    }

    for (d, g_max) in [(2usize, 7u32), (3, 5)] {
        for (g, group) in enumerate_gns_tree(d, g_max).unwrap().iter().enumerate().skip(1) {
            let region = ARegion::new(d, g as u64).unwrap();
            if group.iter().any(|s| !s.gaps().iter().all(|x| region.contains(x))) {
                failures.push(format!("gap outside the hyperbolic region at d={d} g={g}"));
            }
        }
    }

    let tree = walk_gns_tree(2, 14, TreeOptions { depth: true, census: false }).unwrap();
    for g in 2..=5u32 {
        if tree.depth_count(g, g) != 4 {
            failures.push(format!("n(g={g}, q=g) = {}", tree.depth_count(g, g)));
        }
    }
    for g in 1..=14u32 {
        if BigUint::from(tree.depth_count(g, 1)) != count_partitions(1, g + 1).unwrap() {
            failures.push(format!("depth-1 column at g={g}"));
        }
    }

    for k in 1..=7u32 {
        for g in 0..=200u32 {
            let best = g_k(k, argmax_r(k, g), g);
            let sum: BigUint = (1..=g + 1).map(|x| g_k(k, x, g)).sum();
            if sum > best * (g + 1) {
                failures.push(format!("binomial peak bound at k={k} g={g}"));
            }
        }
    }

    report("8", failures.is_empty(), &format!("structural properties hold (failures: {failures:?})"));
    assert!(failures.is_empty());
}

#[test]
fn criterion_09_argmax_convergence() {
    let c3: f64 = c_k(3, 1e-12).unwrap().value;
    let ratio = argmax_r(3, 2000) as f64 / 2000.0;
    let pass = (ratio - c3).abs() <= ARGMAX_TOL;
    report("9", pass, &format!("argmax ratio {ratio:.4} vs c3 = {c3:.6}"));
    assert!(pass);
}

#[test]
fn criterion_10_fig5_values() {
    let counts: Vec<BigCount> = DEPTH2_PLANAR.iter().map(|s| big(s)).collect();
    let series = fig5_series(&counts, 87).unwrap();
    let spots = [(2u32, 0.679036986368646), (10, 1.16501247372463), (87, 1.226209627779)];
    let mut worst = 0f64;
    for (g, want) in spots {
        let got = series[g as usize - 2].scaled;
        worst = worst.max((got - want).abs() / want);
    }
    let pass = worst <= FIG5_REL_TOL;
    report("10", pass, &format!("plotted values at g = 2, 10, 87 within relative error {worst:.2e}"));
    assert!(pass);
}
