use crate::error::{Error, Result};
use crate::point::Point;

/// Largest cardinality [`ARegion::points`] will materialize.
pub const MAX_REGION_POINTS: u64 = 20_000_000;

/// `A_g = {x ∈ N₀^d : ∏(x_i + 1) ≤ 2g}`, which contains every gap of a
/// genus-g semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ARegion {
    dim: usize,
    g: u64,
}

impl ARegion {
    pub fn new(dim: usize, g: u64) -> Result<ARegion> {
        if dim == 0 || g == 0 {
            return Err(Error::Domain("A_g needs d ≥ 1 and g ≥ 1".into()));
        }
        Ok(ARegion { dim, g })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn genus(&self) -> u64 {
        self.g
    }

    pub fn contains(&self, x: &Point) -> bool {
        let bound = 2 * self.g;
        let mut prod: u64 = 1;
        for &c in x.coords() {
            prod = prod.saturating_mul(c as u64 + 1);
            if prod > bound {
                return false;
            }
        }
        x.dim() == self.dim
    }

    /// `#A_g`, via `count(d, N) = Σ_{x < N} count(d − 1, ⌊N / (x + 1)⌋)`.
    pub fn cardinality(&self) -> u64 {
        fn count(d: usize, n: u64) -> u64 {
            if d == 1 {
                return n;
            }
            (0..n).map(|x| count(d - 1, n / (x + 1))).sum()
        }
        count(self.dim, 2 * self.g)
    }

    /// All points in graded-lex order.
    pub fn points(&self) -> Result<Vec<Point>> {
        if self.cardinality() > MAX_REGION_POINTS {
            return Err(Error::cap("A_g enumeration", MAX_REGION_POINTS));
        }
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.dim);
        fn rec(dim: usize, budget: u64, cur: &mut Vec<u32>, out: &mut Vec<Point>) {
            if cur.len() == dim {
                out.push(Point::new(cur.clone()));
                return;
            }
            for x in 0..budget {
                cur.push(x as u32);
                rec(dim, budget / (x + 1), cur, out);
                cur.pop();
            }
        }
        rec(self.dim, 2 * self.g, &mut cur, &mut out);
        out.sort();
        Ok(out)
    }
}
