//! Exact rational linear algebra for small point sets: rank, affine-hull
//! membership and convex-hull membership (phase-one simplex, Bland's rule).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::LatticePoint;

fn to_q(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

/// Rank of a list of row vectors.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let lead = m[r][c].clone();
        for v in &mut m[r][c..] {
            *v = &*v / &lead;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *v -= &f * p;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

fn differences(base: &LatticePoint, pts: &[LatticePoint]) -> Vec<Vec<BigRational>> {
    pts.iter()
        .map(|q| q.0.iter().zip(&base.0).map(|(a, b)| to_q(&(a - b))).collect())
        .collect()
}

/// Dimension of the affine hull of a non-empty point set.
pub fn affine_dimension(pts: &[LatticePoint]) -> usize {
    match pts.split_first() {
        None => 0,
        Some((first, rest)) => rank(&differences(first, rest)),
    }
}

/// Whether `p` lies in the affine hull of the non-empty set `pts`.
pub fn in_affine_hull(p: &LatticePoint, pts: &[LatticePoint]) -> bool {
    let (first, rest) = pts.split_first().expect("non-empty point set");
    let mut rows = differences(first, rest);
    let base = rank(&rows);
    rows.extend(differences(first, std::slice::from_ref(p)));
    rank(&rows) == base
}

/// Whether `p` is a convex combination of `pts`: feasibility of
/// `sum l_j q_j = p, sum l_j = 1, l >= 0`.
pub fn in_convex_hull(p: &LatticePoint, pts: &[LatticePoint]) -> bool {
    if pts.is_empty() {
        return false;
    }
    let n = p.0.len();
    let m = pts.len();
    // constraint rows: n coordinate rows plus the sum-to-one row
    let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(n + 1);
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    for k in 0..n {
        a.push(pts.iter().map(|q| to_q(&q.0[k])).collect());
        b.push(to_q(&p.0[k]));
    }
    a.push(vec![BigRational::from_integer(1.into()); m]);
    b.push(BigRational::from_integer(1.into()));
    phase_one_feasible(a, b)
}

/// Phase-one simplex on `A x = b, x >= 0`. Returns whether a feasible `x` exists.
fn phase_one_feasible(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> bool {
    let rows = a.len();
    let m = a[0].len();
    for i in 0..rows {
        if b[i].is_negative() {
            b[i] = -b[i].clone();
            for v in a[i].iter_mut() {
                *v = -v.clone();
            }
        }
    }
    let cols = m + rows;
    let zero = BigRational::zero();
    let one = BigRational::from_integer(1.into());
    let mut t: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend((0..rows).map(|k| if k == i { one.clone() } else { zero.clone() }));
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut basis: Vec<usize> = (m..cols).collect();
    // reduced objective for minimising the artificial sum
    let mut obj: Vec<BigRational> = (0..=cols)
        .map(|j| {
            if j < m || j == cols {
                t.iter().map(|row| row[j].clone()).sum()
            } else {
                zero.clone()
            }
        })
        .collect();
    while let Some(enter) = (0..cols).find(|&j| obj[j].is_positive() && !basis.contains(&j)) {
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..rows {
            if t[i][enter].is_positive() {
                let ratio = &t[i][cols] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // unbounded direction cannot occur in phase one; stop defensively
            break;
        };
        let piv = t[r][enter].clone();
        for v in t[r].iter_mut() {
            *v = &*v / &piv;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (v, pv) in obj.iter_mut().zip(&pivot_row) {
                *v -= &f * pv;
            }
        }
        basis[r] = enter;
    }
    obj[cols].is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[i64]) -> LatticePoint {
        LatticePoint::from_i64s(c)
    }

    #[test]
    fn ranks() {
        let q = |v: &[i64]| v.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        assert_eq!(rank(&[q(&[1, 2]), q(&[2, 4])]), 1);
        assert_eq!(rank(&[q(&[1, 2]), q(&[2, 5])]), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn hull_membership() {
        let square = [pt(&[0, 0]), pt(&[2, 0]), pt(&[0, 2]), pt(&[2, 2])];
        assert!(in_convex_hull(&pt(&[1, 1]), &square));
        assert!(in_convex_hull(&pt(&[2, 1]), &square));
        assert!(!in_convex_hull(&pt(&[3, 1]), &square));
        assert!(in_convex_hull(&pt(&[1, 1]), &[pt(&[0, 0]), pt(&[2, 2])]));
        assert!(!in_convex_hull(&pt(&[1, 0]), &[pt(&[0, 0]), pt(&[2, 2])]));
        assert!(!in_convex_hull(&pt(&[3, 3]), &[pt(&[0, 0]), pt(&[2, 2])]));
    }

    #[test]
    fn affine_membership() {
        let line = [pt(&[1, 0, 0]), pt(&[0, 1, 0])];
        assert!(in_affine_hull(&pt(&[2, -1, 0]), &line));
        assert!(!in_affine_hull(&pt(&[0, 0, 0]), &line));
        assert_eq!(affine_dimension(&[pt(&[0, 0, 0]), pt(&[1, 1, 1]), pt(&[2, 2, 2])]), 1);
    }
}
