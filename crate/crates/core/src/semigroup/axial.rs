use std::collections::HashSet;

use crate::error::{point_list, Error, Result};
use crate::point::{for_each_in_box, Point};
use crate::semigroup::Gns;

/// A semigroup with simplex multset `M_k` and depth `q`: every nonzero point
/// of degree below k, the points `t · e₁` with `t ≤ (q − 1)k + 1` and `k ∤ t`,
/// plus `extra` points of degree strictly between k and 2k.
pub fn axial_family(d: usize, k: u32, q: u32, extra: &[Point]) -> Result<Gns> {
    if d < 2 || k < 2 || q < 3 {
        return Err(Error::AxialFamily(format!("need d ≥ 2, k ≥ 2, q ≥ 3 (got d={d}, k={k}, q={q})")));
    }
    let mut gaps: HashSet<Point> = HashSet::new();
    for_each_in_box(&vec![k; d], |x| {
        if x.iter().sum::<u32>() < k {
            gaps.insert(Point::new(x.to_vec()));
        }
    });
    gaps.remove(&Point::origin(d));
    let axis: Vec<Point> = (1..=(q - 1) * k + 1).filter(|t| t % k != 0).map(|t| Point::axis(d, 0, t)).collect();
    let mut bad = Vec::new();
    for p in extra {
        if p.dim() != d {
            return Err(Error::DimensionMismatch { left: d, right: p.dim() });
        }
        let deg = p.degree();
        let on_axis = axis.contains(p);
        if deg <= k as u64 || deg >= 2 * k as u64 || on_axis {
            bad.push(p.clone());
        }
    }
    if !bad.is_empty() {
        return Err(Error::AxialFamily(format!(
            "extra points must lie in R₂(M_k) ∖ M_k off the axis set: {}",
            point_list(&bad)
        )));
    }
    gaps.extend(axis);
    gaps.extend(extra.iter().cloned());
    Gns::new(d, gaps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::tests::pts;
    use crate::semigroup::Multset;

    #[test]
    fn family_members_are_semigroups_of_depth_q() {
        for d in 2..=3 {
            for k in 2..=4 {
                for q in 3..=6 {
                    let s = axial_family(d, k, q, &[]).unwrap();
                    assert_eq!(s.depth(), q, "d={d} k={k} q={q}");
                    assert_eq!(s.multset(), Multset::simplex(d, k).unwrap());
                    let s1 = Multset::simplex(d, k).unwrap().region_sizes(1)[0] as usize;
                    let axis = ((q - 1) * k + 1 - (q - 1)) as usize;
                    let below = (k - 1) as usize;
                    assert_eq!(s.genus(), s1 - 1 + axis - below);
                    assert_eq!(s.genus(), s1 + ((q - 2) * (k - 1)) as usize);
                }
            }
        }
    }

    #[test]
    fn pictured_example() {
        let s = axial_family(2, 3, 5, &pts(&[&[2, 2], &[1, 4], &[4, 1]])).unwrap();
        assert_eq!(s.depth(), 5);
        assert_eq!(s.genus(), 15);
        assert_eq!(axial_family(2, 3, 5, &[]).unwrap().genus(), 12);
        let one = axial_family(2, 3, 5, &pts(&[&[2, 2]])).unwrap();
        assert_eq!((one.genus(), one.depth()), (13, 5));
        assert_eq!(axial_family(2, 2, 3, &[]).unwrap().depth(), 3);
    }

    #[test]
    fn rejects_bad_extras() {
        assert!(axial_family(2, 3, 5, &pts(&[&[3, 0]])).is_err());
        assert!(axial_family(2, 3, 5, &pts(&[&[1, 2]])).is_err());
        assert!(axial_family(2, 3, 5, &pts(&[&[4, 0]])).is_err());
        assert!(axial_family(2, 3, 5, &pts(&[&[3, 3]])).is_err());
        assert!(axial_family(1, 3, 5, &[]).is_err());
    }
}
