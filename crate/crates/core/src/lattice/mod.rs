//! Integral polytope geometry: convex-hull vertices, the segment and pyramid
//! gcd criteria for integral indecomposability, an exhaustive Minkowski
//! summand search for lattice polygons, and the Goldbach condition for
//! polytopes.

mod goldbach;
pub mod linalg;
mod oracle2d;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::poly::ExponentVector;

pub use goldbach::{goldbach_condition_check, GoldbachReport, GoldbachVerdict};
pub use oracle2d::polygon_summands_2d;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("points have mismatched dimensions ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("empty point set")]
    Empty,
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("apex lies in the affine hull of the base")]
    ApexInBaseHyperplane,
    #[error("expected a polytope in dimension 2, got dimension {0}")]
    NotTwoDimensional(usize),
    #[error("point {0} has a negative coordinate")]
    NegativeCoordinate(LatticePoint),
}

/// An integral point of `R^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(pub Vec<BigInt>);

impl LatticePoint {
    pub fn from_i64s(c: &[i64]) -> Self {
        LatticePoint(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        LatticePoint(vec![BigInt::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn sub(&self, other: &Self) -> Self {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    /// Back to an exponent vector, if all coordinates are non-negative.
    pub fn to_exponent(&self) -> Option<ExponentVector> {
        self.0
            .iter()
            .map(|c| c.to_biguint())
            .collect::<Option<Vec<_>>>()
            .map(ExponentVector::new)
    }
}

impl From<&ExponentVector> for LatticePoint {
    fn from(e: &ExponentVector) -> Self {
        LatticePoint(e.to_signed())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// gcd of the components of `v`; 0 for the zero vector.
pub fn gcd_of_vector(v: &[BigInt]) -> BigUint {
    v.iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c))
        .magnitude()
        .clone()
}

/// gcd of all components of all vectors; 0 for an empty or all-zero family.
pub fn gcd_of_family<'a, I>(vs: I) -> BigUint
where
    I: IntoIterator<Item = &'a [BigInt]>,
{
    vs.into_iter()
        .fold(BigUint::zero(), |acc, v| acc.gcd(&gcd_of_vector(v)))
}

/// Convex hull of integral points, stored as its sorted vertex list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<LatticePoint>,
}

impl LatticePolytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// Newton polytope of an exponent set.
    pub fn from_exponents(exps: &[ExponentVector]) -> Result<Self, GeometryError> {
        let pts: Vec<LatticePoint> = exps.iter().map(LatticePoint::from).collect();
        hull_vertices(&pts)
    }

    /// One vertex per row, `| 1 0 |` style.
    pub fn to_matrix_text(&self) -> String {
        matrix_text(&self.vertices)
    }
}

/// Formats points as matrix rows `| a b c |`.
pub fn matrix_text(points: &[LatticePoint]) -> String {
    points
        .iter()
        .map(|p| {
            let cells: Vec<String> = p.0.iter().map(ToString::to_string).collect();
            format!("| {} |", cells.join(" "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn check_dims(points: &[LatticePoint]) -> Result<usize, GeometryError> {
    let first = points.first().ok_or(GeometryError::Empty)?;
    let dim = first.dim();
    for p in points {
        if p.dim() != dim {
            return Err(GeometryError::DimensionMismatch(dim, p.dim()));
        }
    }
    Ok(dim)
}

/// Vertices of the convex hull. A point is kept iff it is not a convex
/// combination of the other (distinct) points, decided exactly.
pub fn hull_vertices(points: &[LatticePoint]) -> Result<LatticePolytope, GeometryError> {
    let dim = check_dims(points)?;
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let vertices = if pts.len() <= 2 {
        pts
    } else {
        (0..pts.len())
            .filter(|&i| {
                let others: Vec<LatticePoint> = pts
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, q)| q.clone())
                    .collect();
                !linalg::in_convex_hull(&pts[i], &others)
            })
            .map(|i| pts[i].clone())
            .collect()
    };
    Ok(LatticePolytope { dim, vertices })
}

/// The segment `a b` is integrally indecomposable iff `gcd(b - a) = 1`.
pub fn segment_indecomposable(a: &LatticePoint, b: &LatticePoint) -> Result<bool, GeometryError> {
    check_dims(&[a.clone(), b.clone()])?;
    if a == b {
        return Err(GeometryError::DegenerateSegment);
    }
    Ok(gcd_of_vector(&b.sub(a).0) == BigUint::from(1u32))
}

/// Pyramid criterion: for a base lying in a hyperplane that misses `apex`,
/// `conv(base, apex)` is integrally indecomposable iff the gcd of all
/// coordinates of `apex - v_i` over the base vertices `v_i` is 1.
pub fn pyramid_indecomposable(
    base: &[LatticePoint],
    apex: &LatticePoint,
) -> Result<bool, GeometryError> {
    let mut all = base.to_vec();
    all.push(apex.clone());
    check_dims(&all)?;
    // a hyperplane through the base avoiding the apex exists iff the apex is
    // outside the affine hull of the base
    if linalg::in_affine_hull(apex, base) {
        return Err(GeometryError::ApexInBaseHyperplane);
    }
    let hull = hull_vertices(base)?;
    let diffs: Vec<LatticePoint> = hull.vertices.iter().map(|v| apex.sub(v)).collect();
    Ok(gcd_of_family(diffs.iter().map(|d| d.0.as_slice())) == BigUint::from(1u32))
}

/// Minkowski sum of two point sets, as a polytope.
pub fn minkowski_sum(a: &[LatticePoint], b: &[LatticePoint]) -> Result<LatticePolytope, GeometryError> {
    let sums: Vec<LatticePoint> = a.iter().flat_map(|p| b.iter().map(move |q| p.add(q))).collect();
    hull_vertices(&sums)
}

/// Which criterion settled indecomposability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    SinglePoint,
    SegmentGcd,
    PyramidGcd,
    PolygonSearch,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::SinglePoint => "single point",
            Criterion::SegmentGcd => "segment gcd",
            Criterion::PyramidGcd => "pyramid gcd",
            Criterion::PolygonSearch => "exhaustive polygon search",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecomposabilityVerdict {
    Indecomposable(Criterion),
    /// `a + b` equals the input; both parts have at least two points.
    Decomposable { a: Vec<LatticePoint>, b: Vec<LatticePoint> },
    /// Neither criterion applies or the search budget ran out.
    Unknown(String),
}

impl DecomposabilityVerdict {
    pub fn is_indecomposable(&self) -> bool {
        matches!(self, DecomposabilityVerdict::Indecomposable(_))
    }
}

/// Limits for the exhaustive polygon search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Maximum coordinate span along either axis.
    pub coord_bound: u64,
    /// Maximum number of edge-split candidates.
    pub budget: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            coord_bound: 64,
            budget: 1_000_000,
        }
    }
}

/// Decides integral indecomposability of `conv(points)` with whichever exact
/// tool applies: single point, segment gcd, pyramid gcd (some vertex lies off
/// the affine hull of the others) or, in dimension 2, the polygon search.
/// Anything else is `Unknown`.
pub fn decide_indecomposable(
    points: &[LatticePoint],
    cfg: &OracleConfig,
) -> Result<DecomposabilityVerdict, GeometryError> {
    let hull = hull_vertices(points)?;
    let vs = &hull.vertices;
    match vs.len() {
        1 => return Ok(DecomposabilityVerdict::Indecomposable(Criterion::SinglePoint)),
        2 => {
            return Ok(if segment_indecomposable(&vs[0], &vs[1])? {
                DecomposabilityVerdict::Indecomposable(Criterion::SegmentGcd)
            } else {
                // a segment with lattice length l >= 2 splits off a primitive step
                let d = vs[1].sub(&vs[0]);
                let g = BigInt::from(gcd_of_vector(&d.0));
                let step = LatticePoint(d.0.iter().map(|c| c / &g).collect());
                let rest = LatticePoint(d.0.iter().map(|c| c - c / &g).collect());
                DecomposabilityVerdict::Decomposable {
                    a: vec![vs[0].clone(), vs[0].add(&step)],
                    b: vec![LatticePoint::origin(hull.dim), rest],
                }
            });
        }
        _ => {}
    }
    for (i, apex) in vs.iter().enumerate() {
        let base: Vec<LatticePoint> = vs
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.clone())
            .collect();
        if !linalg::in_affine_hull(apex, &base) {
            return Ok(if pyramid_indecomposable(&base, apex)? {
                DecomposabilityVerdict::Indecomposable(Criterion::PyramidGcd)
            } else if hull.dim == 2 {
                polygon_summands_2d(&hull, cfg)?
            } else {
                DecomposabilityVerdict::Unknown(
                    "pyramid gcd exceeds 1 and no explicit splitting is searched above dimension 2"
                        .into(),
                )
            });
        }
    }
    if hull.dim == 2 {
        return polygon_summands_2d(&hull, cfg);
    }
    Ok(DecomposabilityVerdict::Unknown(format!(
        "no applicable criterion for a {}-vertex polytope in dimension {}",
        vs.len(),
        hull.dim
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[i64]) -> LatticePoint {
        LatticePoint::from_i64s(c)
    }

    fn big(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_of_vector(&big(&[3, 5])), BigUint::from(1u32));
        assert_eq!(gcd_of_vector(&big(&[0, 0, 0])), BigUint::zero());
        assert_eq!(gcd_of_vector(&big(&[-4, 6])), BigUint::from(2u32));
        let fam = [big(&[2, 0, 0]), big(&[4, 4, 5])];
        assert_eq!(gcd_of_family(fam.iter().map(Vec::as_slice)), BigUint::from(1u32));
        assert_eq!(gcd_of_family(std::iter::empty::<&[BigInt]>()), BigUint::zero());
    }

    #[test]
    fn hull_examples() {
        let sq = [pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1]), pt(&[1, 1])];
        assert_eq!(hull_vertices(&sq).unwrap().vertices().len(), 4);
        let diag = hull_vertices(&[pt(&[0, 0]), pt(&[1, 1]), pt(&[2, 2])]).unwrap();
        assert_eq!(diag.vertices(), &[pt(&[0, 0]), pt(&[2, 2])]);
        let tet = [pt(&[0, 0, 0]), pt(&[2, 0, 0]), pt(&[0, 2, 0]), pt(&[0, 0, 2])];
        assert_eq!(hull_vertices(&tet).unwrap().vertices().len(), 4);
        assert_eq!(
            hull_vertices(&[pt(&[0, 0]), pt(&[1])]),
            Err(GeometryError::DimensionMismatch(2, 1))
        );
        assert_eq!(hull_vertices(&[]), Err(GeometryError::Empty));
    }

    #[test]
    fn segment_examples() {
        let o = pt(&[0, 0]);
        assert!(segment_indecomposable(&o, &pt(&[1, 4])).unwrap());
        assert!(!segment_indecomposable(&o, &pt(&[2, 2])).unwrap());
        assert!(segment_indecomposable(&pt(&[0, 0, 0]), &pt(&[4, 4, 5])).unwrap());
        assert_eq!(segment_indecomposable(&o, &o), Err(GeometryError::DegenerateSegment));
    }

    #[test]
    fn pyramid_examples() {
        assert!(pyramid_indecomposable(&[pt(&[2, 0, 0]), pt(&[4, 4, 5])], &pt(&[0, 0, 0])).unwrap());
        assert!(pyramid_indecomposable(&[pt(&[1, 1]), pt(&[1, 4])], &pt(&[0, 0])).unwrap());
        assert!(!pyramid_indecomposable(&[pt(&[2, 0]), pt(&[0, 2])], &pt(&[0, 0])).unwrap());
        assert_eq!(
            pyramid_indecomposable(&[pt(&[1, 1]), pt(&[2, 2])], &pt(&[0, 0])),
            Err(GeometryError::ApexInBaseHyperplane)
        );
    }

    #[test]
    fn pyramid_ignores_interior_base_points() {
        // (1,1) is not a vertex of the base; including it must not lower the gcd
        let base = [pt(&[2, 0]), pt(&[0, 2]), pt(&[1, 1])];
        assert!(!pyramid_indecomposable(&base, &pt(&[0, 0])).unwrap());
    }

    #[test]
    fn decider_routes() {
        let cfg = OracleConfig::default();
        let v = decide_indecomposable(&[pt(&[3, 3, 3])], &cfg).unwrap();
        assert_eq!(v, DecomposabilityVerdict::Indecomposable(Criterion::SinglePoint));
        let v = decide_indecomposable(&[pt(&[0, 0, 0]), pt(&[2, 2, 2])], &cfg).unwrap();
        let DecomposabilityVerdict::Decomposable { a, b } = v else {
            panic!("segment of length 2 splits")
        };
        assert_eq!(minkowski_sum(&a, &b).unwrap().vertices(), &[pt(&[0, 0, 0]), pt(&[2, 2, 2])]);
        let tri = [pt(&[0, 0, 0]), pt(&[2, 0, 0]), pt(&[4, 4, 5])];
        assert_eq!(
            decide_indecomposable(&tri, &cfg).unwrap(),
            DecomposabilityVerdict::Indecomposable(Criterion::PyramidGcd)
        );
        // the 3-cube has no apex and lives in dimension 3
        let cube: Vec<LatticePoint> = (0..8)
            .map(|m| pt(&[(m & 1) as i64, ((m >> 1) & 1) as i64, ((m >> 2) & 1) as i64]))
            .collect();
        assert!(matches!(
            decide_indecomposable(&cube, &cfg).unwrap(),
            DecomposabilityVerdict::Unknown(_)
        ));
    }

    #[test]
    fn matrix_layout() {
        let pts = [pt(&[1, 1]), pt(&[1, 0])];
        assert_eq!(matrix_text(&pts), "| 1 1 |\n| 1 0 |");
    }
}
