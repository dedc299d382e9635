//! Growth constants and the numerical diagnostics around them.
//!
//! Every root is found by bisection on a bracket where the function changes
//! sign. Functions with steep growth are handed to the bisector as logarithms
//! so that the residual stays on the scale of the tolerance.

use num_bigint::BigUint;
use num_traits::{Float, ToPrimitive};
use rayon::prelude::*;

use crate::counting::{binomial, BigCount};
use crate::error::{Error, Result};
use crate::partition::partition_counts_upto;

/// Tolerance used when callers have no preference.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Iteration cap for every bisection.
pub const MAX_ITERATIONS: u32 = 200;

/// A root located by bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult<T> {
    pub value: T,
    /// `|h(value)|` for the function that was bisected.
    pub residual: T,
    pub iterations: u32,
    /// Final bracket; it contains `value`.
    pub bracket: (T, T),
}

fn lit<T: Float>(v: f64) -> T {
    T::from(v).expect("float literal")
}

fn as_f64<T: Float>(v: T) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Bisects `h` on `[lo, hi]`, where `h(lo)` and `h(hi)` have opposite signs
/// (infinite values allowed). Stops once the bracket is no wider than `tol`
/// and the midpoint residual is within `tol`, or when the bracket cannot
/// shrink further.
pub fn bisect<T, F>(h: F, lo: T, hi: T, tol: T) -> Result<RootResult<T>>
where
    T: Float,
    F: Fn(T) -> T,
{
    if tol.is_nan() || tol <= T::zero() || tol < lit::<T>(4.0) * T::epsilon() * lo.abs().max(hi.abs()) {
        return Err(Error::Tolerance(as_f64(tol)));
    }
    let (mut lo, mut hi) = (lo, hi);
    let (h_lo, h_hi) = (h(lo), h(hi));
    if h_lo == T::zero() {
        return Ok(RootResult { value: lo, residual: T::zero(), iterations: 0, bracket: (lo, lo) });
    }
    if h_hi == T::zero() {
        return Ok(RootResult { value: hi, residual: T::zero(), iterations: 0, bracket: (hi, hi) });
    }
    if h_lo.is_nan() || h_hi.is_nan() || h_lo.signum() == h_hi.signum() {
        return Err(Error::NoBracket { lo: as_f64(lo), hi: as_f64(hi) });
    }
    let rising = h_lo < T::zero();
    let two = lit::<T>(2.0);
    let mut iterations = 0;
    loop {
        let mid = lo + (hi - lo) / two;
        let v = h(mid);
        let done = hi - lo <= tol && v.abs() <= tol;
        if v == T::zero() {
            return Ok(RootResult { value: mid, residual: v, iterations, bracket: (mid, mid) });
        }
        if done || iterations == MAX_ITERATIONS || mid <= lo || mid >= hi {
            return Ok(RootResult { value: mid, residual: v.abs(), iterations, bracket: (lo, hi) });
        }
        iterations += 1;
        if (v < T::zero()) == rising {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// `r_k`, the positive root of `x^k = (x + 1)^{k−1}`, found in `[1, k]` from
/// `k ln x − (k − 1) ln(x + 1)`.
pub fn r_k<T: Float>(k: u32, tol: T) -> Result<RootResult<T>> {
    if k == 0 {
        return Err(Error::Domain("r_k needs k ≥ 1".into()));
    }
    let kf: T = lit(k as f64);
    let h = |x: T| kf * x.ln() - (kf - T::one()) * x.ln_1p();
    bisect(h, T::one(), kf.max(lit(2.0)), tol)
}

/// `F_k(x) = k^k (1 − x) x^k / ((k + 1)x − 1)^{k+1}`.
pub fn f_k_eval<T: Float>(k: u32, x: T) -> Result<T> {
    let kf: T = lit(k as f64);
    let den = (kf + T::one()) * x - T::one();
    if den == T::zero() {
        return Err(Error::Pole(as_f64(x)));
    }
    Ok((T::one() - x) * (kf * x / den).powi(k as i32) / den)
}

/// `c_k`, the root of `F_k(x) = 1` above `1/(k + 1)`, bisected on
/// `(1/(k + 1), 1)` through `ln F_k`.
pub fn c_k<T: Float>(k: u32, tol: T) -> Result<RootResult<T>> {
    if k == 0 {
        return Err(Error::Domain("c_k needs k ≥ 1".into()));
    }
    let kf: T = lit(k as f64);
    let h = |x: T| {
        let den = (kf + T::one()) * x - T::one();
        if den <= T::zero() {
            return T::infinity();
        }
        (-x).ln_1p() + kf * (kf * x / den).ln() - den.ln()
    };
    bisect(h, (kf + T::one()).recip(), T::one(), tol)
}

/// `G_k(x, g) = C(kx, g + 1 − x)`.
pub fn g_k(k: u32, x: u32, g: u32) -> BigCount {
    binomial(k as u64 * x as u64, g as i64 + 1 - x as i64)
}

/// `r_k(g)`: the `x ∈ [1, g + 1]` maximizing `G_k(x, g)`, smallest on ties.
pub fn argmax_r(k: u32, g: u32) -> u32 {
    (1..=g + 1)
        .into_par_iter()
        .map(|x| (g_k(k, x, g), x))
        .reduce_with(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
        .map(|(_, x)| x)
        .expect("range is nonempty")
}

/// Root of a truncated partition series `Σ_{n ≤ N} p_e(n) x^{−n} = 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RPrime<T> {
    pub root: RootResult<T>,
    pub dim: usize,
    pub truncation: u32,
    /// Set for dimensions without a product formula. The dropped terms are
    /// positive, so a truncated root is a lower estimate.
    pub estimate: bool,
}

/// `r′` for partitions of dimension `e`, truncated at `N`.
///
/// Dimensions 0, 1 and 2 use product formulas for `p_e(n)`; higher
/// dimensions enumerate, so `N` is capped and the result is an estimate.
pub fn r_prime<T: Float>(e: usize, truncation: u32, tol: T) -> Result<RPrime<T>> {
    let coeffs: Vec<T> = partition_counts_upto(e, truncation)?
        .iter()
        .map(|c| lit(c.to_f64().unwrap_or(f64::INFINITY)))
        .collect();
    let two: T = lit(2.0);
    let h = |x: T| {
        let y = x.recip();
        coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * y + c) - two
    };
    if h(T::one()).partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::Domain(format!("truncation N = {truncation} too small to bracket the root")));
    }
    let mut hi = two;
    while h(hi) >= T::zero() {
        hi = hi * two;
    }
    let root = bisect(h, T::one(), hi, tol)?;
    Ok(RPrime { root, dim: e, truncation, estimate: e >= 3 })
}

/// `r_k ln k / k`, which tends to 1.
pub fn rk_asymptotic_ratio(k: u32) -> Result<f64> {
    if k < 2 {
        return Err(Error::Domain("ratio needs k ≥ 2".into()));
    }
    let r = r_k(k, DEFAULT_TOL * k as f64)?.value;
    Ok(r * (k as f64).ln() / k as f64)
}

/// One point of the plot of `r₄^{−√g} n_g^{1/√g}` against `1/g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fig5Point {
    pub g: u32,
    pub inv_g: f64,
    pub scaled: f64,
}

/// Natural log of a positive big integer.
pub fn ln_big(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    (n >> shift).to_f64().expect("fits").ln() + shift as f64 * std::f64::consts::LN_2
}

/// Scaled depth-2 planar counts for `g = 2, …, g_max`; `counts[g]` holds
/// `n_{g,2,2}`.
pub fn fig5_series(counts: &[BigCount], g_max: u32) -> Result<Vec<Fig5Point>> {
    let ln_r4 = r_k(4, DEFAULT_TOL)?.value.ln();
    (2..=g_max)
        .map(|g| {
            let n = counts
                .get(g as usize)
                .filter(|n| **n > BigUint::default())
                .ok_or_else(|| Error::MissingCount { stat: "depth2".into(), g })?;
            let s = (g as f64).sqrt();
            let scaled = (ln_big(n) / s - s * ln_r4).exp();
            Ok(Fig5Point { g, inv_g: 1.0 / g as f64, scaled })
        })
        .collect()
}

/// `x` with `digits` significant digits in positional notation.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// CSV with header `g,inv_g,scaled`.
pub fn fig5_csv(points: &[Fig5Point]) -> String {
    let mut out = String::from("g,inv_g,scaled\n");
    for p in points {
        out += &format!("{},{},{}\n", p.g, format_significant(p.inv_g, 12), format_significant(p.scaled, 12));
    }
    out
}
