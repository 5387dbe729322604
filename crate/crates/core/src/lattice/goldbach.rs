use std::collections::BTreeSet;

use super::{
    decide_indecomposable, DecomposabilityVerdict, GeometryError, LatticePoint, LatticePolytope,
    OracleConfig,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GoldbachVerdict {
    Holds,
    Fails(String),
    Unknown(String),
}

/// Per-condition outcome of a Goldbach-condition check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldbachReport {
    /// (i): the witness hull.
    pub witness_hull: Option<DecomposabilityVerdict>,
    /// (ii): the supports of the witness points have empty intersection.
    pub supports_disjoint: bool,
    /// (iii): the hull of the polytope together with the witness points.
    pub joint_hull: Option<DecomposabilityVerdict>,
    pub verdict: GoldbachVerdict,
}

fn condition(label: &str, v: &DecomposabilityVerdict) -> Option<GoldbachVerdict> {
    match v {
        DecomposabilityVerdict::Indecomposable(_) => None,
        DecomposabilityVerdict::Decomposable { .. } => {
            Some(GoldbachVerdict::Fails(format!("condition {label}: hull is decomposable")))
        }
        DecomposabilityVerdict::Unknown(why) => {
            Some(GoldbachVerdict::Unknown(format!("condition {label}: {why}")))
        }
    }
}

/// Checks conditions (i)-(iii) for the supplied witness points. Conditions
/// (i) and (iii) are decided by the exact criteria in
/// [`decide_indecomposable`]; when none applies the verdict is `Unknown`.
pub fn goldbach_condition_check(
    polytope: &LatticePolytope,
    witness: &[LatticePoint],
    cfg: &OracleConfig,
) -> Result<GoldbachReport, GeometryError> {
    for w in witness {
        if w.dim() != polytope.dim() {
            return Err(GeometryError::DimensionMismatch(polytope.dim(), w.dim()));
        }
        if !w.is_nonnegative() {
            return Err(GeometryError::NegativeCoordinate(w.clone()));
        }
    }
    if witness.is_empty() {
        return Ok(GoldbachReport {
            witness_hull: None,
            supports_disjoint: false,
            joint_hull: None,
            verdict: GoldbachVerdict::Fails("empty witness".into()),
        });
    }

    let witness_hull = decide_indecomposable(witness, cfg)?;

    let mut common: BTreeSet<usize> = (0..polytope.dim()).collect();
    for w in witness {
        common.retain(|&k| w.0[k] != 0.into());
    }
    let supports_disjoint = common.is_empty();

    let mut joint: Vec<LatticePoint> = polytope.vertices().to_vec();
    joint.extend_from_slice(witness);
    let joint_hull = decide_indecomposable(&joint, cfg)?;

    let mut unknown = None;
    let mut verdict = None;
    if let Some(v) = condition("(i)", &witness_hull) {
        match v {
            GoldbachVerdict::Fails(_) => verdict = Some(v),
            other => unknown = unknown.or(Some(other)),
        }
    }
    if verdict.is_none() && !supports_disjoint {
        let shared: Vec<String> = common.iter().map(|k| (k + 1).to_string()).collect();
        verdict = Some(GoldbachVerdict::Fails(format!(
            "condition (ii): coordinates {{{}}} lie in every witness support",
            shared.join(",")
        )));
    }
    if verdict.is_none() {
        if let Some(v) = condition("(iii)", &joint_hull) {
            match v {
                GoldbachVerdict::Fails(_) => verdict = Some(v),
                other => unknown = unknown.or(Some(other)),
            }
        }
    }
    let verdict = verdict.or(unknown).unwrap_or(GoldbachVerdict::Holds);
    Ok(GoldbachReport {
        witness_hull: Some(witness_hull),
        supports_disjoint,
        joint_hull: Some(joint_hull),
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::super::hull_vertices;
    use super::*;

    fn pt(c: &[i64]) -> LatticePoint {
        LatticePoint::from_i64s(c)
    }

    fn square() -> LatticePolytope {
        hull_vertices(&[pt(&[1, 1]), pt(&[1, 0]), pt(&[0, 1]), pt(&[0, 0])]).unwrap()
    }

    #[test]
    fn singleton_witness_fails_support_condition() {
        let seg = hull_vertices(&[pt(&[0, 0]), pt(&[2, 2])]).unwrap();
        let r = goldbach_condition_check(&seg, &[pt(&[1, 4])], &OracleConfig::default()).unwrap();
        assert!(r.witness_hull.unwrap().is_indecomposable());
        assert!(!r.supports_disjoint);
        assert!(matches!(r.verdict, GoldbachVerdict::Fails(ref m) if m.contains("(ii)")));
    }

    #[test]
    fn every_condition_is_decided_in_the_plane() {
        let r = goldbach_condition_check(&square(), &[pt(&[1, 4]), pt(&[2, 0])], &OracleConfig::default())
            .unwrap();
        assert!(!matches!(r.verdict, GoldbachVerdict::Unknown(_)));
        assert!(!matches!(r.witness_hull, Some(DecomposabilityVerdict::Unknown(_))));
        assert!(!matches!(r.joint_hull, Some(DecomposabilityVerdict::Unknown(_))));
        // supp(1,4) and supp(2,0) share the first coordinate
        assert!(!r.supports_disjoint);
    }

    #[test]
    fn axis_witness_holds_for_the_square() {
        let r = goldbach_condition_check(&square(), &[pt(&[2, 0]), pt(&[0, 3])], &OracleConfig::default())
            .unwrap();
        assert_eq!(r.verdict, GoldbachVerdict::Holds);
    }

    #[test]
    fn empty_witness_fails() {
        let r = goldbach_condition_check(&square(), &[], &OracleConfig::default()).unwrap();
        assert_eq!(r.verdict, GoldbachVerdict::Fails("empty witness".into()));
    }

    #[test]
    fn witness_errors() {
        let cfg = OracleConfig::default();
        assert_eq!(
            goldbach_condition_check(&square(), &[pt(&[1, 1, 1])], &cfg),
            Err(GeometryError::DimensionMismatch(2, 3))
        );
        assert!(matches!(
            goldbach_condition_check(&square(), &[pt(&[-1, 1])], &cfg),
            Err(GeometryError::NegativeCoordinate(_))
        ));
    }
}
