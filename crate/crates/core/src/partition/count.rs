//! Counting e-dimensional partitions: exact product expansions for e ≤ 2 and
//! memoized enumeration above.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::enumerate_partitions;

/// Coefficients of x⁰..x^N of the generating function P_e(x) for e ∈ {0,1,2}:
/// `1/(1−x)`, `∏ 1/(1−x^k)` and MacMahon's `∏ 1/(1−x^k)^k`.
pub fn series_coefficients(e: usize, order: usize) -> Result<Vec<BigUint>> {
    if e > 2 {
        return Err(Error::Domain(format!("no product formula for dimension {e}")));
    }
    let mut coeffs = vec![BigUint::zero(); order + 1];
    coeffs[0] = BigUint::one();
    if e == 0 {
        return Ok(vec![BigUint::one(); order + 1]);
    }
    for k in 1..=order {
        let multiplicity = if e == 1 { 1 } else { k };
        for _ in 0..multiplicity {
            // Multiply by 1/(1 − x^k): running sum with stride k.
            for n in k..=order {
                let prev = coeffs[n - k].clone();
                coeffs[n] += prev;
            }
        }
    }
    Ok(coeffs)
}

type Memo = Mutex<HashMap<(usize, u32), BigUint>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// p_e(n), the number of e-dimensional partitions of n.
pub fn count_partitions(e: usize, n: u32) -> Result<BigUint> {
    if let Some(v) = memo().lock().unwrap().get(&(e, n)) {
        return Ok(v.clone());
    }
    let value = if e <= 2 {
        let series = series_coefficients(e, n as usize)?;
        let mut m = memo().lock().unwrap();
        for (i, c) in series.iter().enumerate() {
            m.entry((e, i as u32)).or_insert_with(|| c.clone());
        }
        series[n as usize].clone()
    } else {
        BigUint::from(enumerate_partitions(e, n)?.count())
    };
    memo().lock().unwrap().insert((e, n), value.clone());
    Ok(value)
}

/// `p_e(0), …, p_e(n)`.
pub fn partition_counts_upto(e: usize, n: u32) -> Result<Vec<BigUint>> {
    if e <= 2 {
        return series_coefficients(e, n as usize);
    }
    (0..=n).map(|i| count_partitions(e, i)).collect()
}
