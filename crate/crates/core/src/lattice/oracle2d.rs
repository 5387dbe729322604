//! Exhaustive Minkowski-summand search for lattice polygons.
//!
//! Write the boundary of a convex lattice polygon counter-clockwise as edges
//! `l_k * u_k` with `u_k` primitive. Integral summands (up to translation)
//! are exactly the choices `0 <= m_k <= l_k` with `sum m_k u_k = 0`; the
//! complementary summand uses `l_k - m_k`. The polygon is decomposable iff
//! some choice is neither all-zero nor all-full.

use std::cmp::Ordering;

use num_traits::ToPrimitive;

use super::{
    hull_vertices, minkowski_sum, Criterion, DecomposabilityVerdict, GeometryError,
    LatticePoint, LatticePolytope, OracleConfig,
};

type V2 = (i64, i64);

fn cross(a: V2, b: V2) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Counter-clockwise vertex order starting from the lowest (then leftmost)
/// vertex.
fn ccw_order(vs: &[V2]) -> Vec<V2> {
    let start = *vs.iter().min_by_key(|v| (v.1, v.0)).unwrap();
    let mut rest: Vec<V2> = vs.iter().copied().filter(|v| *v != start).collect();
    rest.sort_by(|a, b| {
        let da = (a.0 - start.0, a.1 - start.1);
        let db = (b.0 - start.0, b.1 - start.1);
        match cross(da, db) {
            c if c > 0 => Ordering::Less,
            c if c < 0 => Ordering::Greater,
            _ => (da.0.abs() + da.1.abs()).cmp(&(db.0.abs() + db.1.abs())),
        }
    });
    let mut out = vec![start];
    out.extend(rest);
    out
}

fn to_point(v: V2) -> LatticePoint {
    LatticePoint::from_i64s(&[v.0, v.1])
}

fn walk(start: V2, steps: &[(i64, V2)]) -> Vec<LatticePoint> {
    let mut cur = start;
    let mut pts = vec![to_point(cur)];
    for &(m, u) in steps {
        cur = (cur.0 + m * u.0, cur.1 + m * u.1);
        pts.push(to_point(cur));
    }
    pts
}

/// Searches for an integral Minkowski splitting of a lattice polygon.
pub fn polygon_summands_2d(
    poly: &LatticePolytope,
    cfg: &OracleConfig,
) -> Result<DecomposabilityVerdict, GeometryError> {
    if poly.dim() != 2 {
        return Err(GeometryError::NotTwoDimensional(poly.dim()));
    }
    let verts = poly.vertices();
    if verts.len() == 1 {
        return Ok(DecomposabilityVerdict::Indecomposable(Criterion::SinglePoint));
    }
    let span = |k: usize| {
        let lo = verts.iter().map(|v| &v.0[k]).min().unwrap();
        let hi = verts.iter().map(|v| &v.0[k]).max().unwrap();
        (hi - lo).to_u64()
    };
    let within = [0, 1].iter().all(|&k| span(k).is_some_and(|s| s <= cfg.coord_bound));
    if !within {
        return Ok(DecomposabilityVerdict::Unknown(format!(
            "coordinate span exceeds the bound {}",
            cfg.coord_bound
        )));
    }
    let base = (verts[0].0[0].clone(), verts[0].0[1].clone());
    let local: Vec<V2> = verts
        .iter()
        .map(|v| {
            (
                (&v.0[0] - &base.0).to_i64().unwrap(),
                (&v.0[1] - &base.1).to_i64().unwrap(),
            )
        })
        .collect();
    let order = ccw_order(&local);
    let k = order.len();
    let edges: Vec<(i64, V2)> = (0..k)
        .map(|i| {
            let a = order[i];
            let b = order[(i + 1) % k];
            let d = (b.0 - a.0, b.1 - a.1);
            let l = gcd(d.0, d.1);
            (l, (d.0 / l, d.1 / l))
        })
        .collect();

    let unshift = |p: LatticePoint| {
        LatticePoint(vec![&p.0[0] + &base.0, &p.0[1] + &base.1])
    };
    let build = |choice: &[i64]| -> Result<DecomposabilityVerdict, GeometryError> {
        let a_steps: Vec<(i64, V2)> = choice.iter().zip(&edges).map(|(m, e)| (*m, e.1)).collect();
        let b_steps: Vec<(i64, V2)> =
            choice.iter().zip(&edges).map(|(m, e)| (e.0 - m, e.1)).collect();
        let a_pts: Vec<LatticePoint> = walk(order[0], &a_steps).into_iter().map(unshift).collect();
        let a = hull_vertices(&a_pts)?.vertices().to_vec();
        let b = hull_vertices(&walk((0, 0), &b_steps))?.vertices().to_vec();
        debug_assert_eq!(minkowski_sum(&a, &b)?.vertices(), verts);
        Ok(DecomposabilityVerdict::Decomposable { a, b })
    };

    if k == 2 {
        // a segment: both edges have the same lattice length
        let l = edges[0].0;
        if l >= 2 {
            return build(&[1, 1]);
        }
        return Ok(DecomposabilityVerdict::Indecomposable(Criterion::PolygonSearch));
    }

    let free = &edges[..k - 2];
    let mut candidates: u128 = 1;
    for (l, _) in free {
        candidates = candidates.saturating_mul(*l as u128 + 1);
    }
    if candidates > cfg.budget as u128 {
        return Ok(DecomposabilityVerdict::Unknown(format!(
            "{candidates} split candidates exceed the budget {}",
            cfg.budget
        )));
    }
    let (ua, ub) = (edges[k - 2].1, edges[k - 1].1);
    let det = cross(ua, ub);
    let mut m = vec![0i64; k];
    loop {
        let s = free
            .iter()
            .zip(&m)
            .fold((0i64, 0i64), |acc, ((_, u), mi)| (acc.0 + mi * u.0, acc.1 + mi * u.1));
        let rhs = (-s.0, -s.1);
        let na = cross(rhs, ub);
        let nb = cross(ua, rhs);
        if na % det == 0 && nb % det == 0 {
            let (ma, mb) = (na / det, nb / det);
            if (0..=edges[k - 2].0).contains(&ma) && (0..=edges[k - 1].0).contains(&mb) {
                m[k - 2] = ma;
                m[k - 1] = mb;
                let all_zero = m.iter().all(|&x| x == 0);
                let all_full = m.iter().zip(&edges).all(|(x, e)| *x == e.0);
                if !all_zero && !all_full {
                    return build(&m);
                }
            }
        }
        // odometer over the free edges
        let mut i = 0;
        loop {
            if i == k - 2 {
                return Ok(DecomposabilityVerdict::Indecomposable(Criterion::PolygonSearch));
            }
            if m[i] < free[i].0 {
                m[i] += 1;
                break;
            }
            m[i] = 0;
            i += 1;
        }
    }
}
