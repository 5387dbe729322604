//! Decomposition of a polynomial in at least two variables into at most `2r`
//! absolutely irreducible summands, each carrying a certificate that can be
//! re-checked with the lattice criteria.
//!
//! Every non-constant term `a x^i` becomes a pair
//! `A1 = a x^i + x^w + 1`, `A2 = -x^w - 1`: the Newton polytope of `A1` is the
//! triangle `conv{0, i, w}` (pyramid criterion) and that of `A2` is the
//! segment `0 -> w` with `gcd(w) = 1`. The constant term goes into a linear
//! pair.

mod document;
mod report;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Pow, ToPrimitive, Zero};
use thiserror::Error;

use crate::field::Coefficient;
use crate::lattice::{
    decide_indecomposable, goldbach_condition_check, pyramid_indecomposable,
    segment_indecomposable, DecomposabilityVerdict, GeometryError, GoldbachReport, GoldbachVerdict,
    LatticePoint, LatticePolytope, OracleConfig,
};
use crate::poly::{ExponentVector, PolyError, Polynomial};

pub use document::{decomposition_from_json, decomposition_to_json, DocumentError};
pub use report::session_report;

/// Largest exponent (in bits) the two-variable rule may produce.
const MAX_W_BITS: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("decompositions need at least two variables, got {0}")]
    ArityTooSmall(usize),
    #[error("the zero exponent has no w point")]
    ZeroExponent,
    #[error("w point for {0} would exceed {MAX_W_BITS} bits")]
    WTooLarge(ExponentVector),
    #[error("witness rejected: {0}")]
    WitnessRejected(String),
    #[error("denominator {0} is not in the multiplicative system")]
    DenominatorNotInSystem(String),
    #[error("no certificate applies to {0}")]
    NoCertificate(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecompositionMode {
    /// gcd-one monomials become `a x^i - 1`, the `+1` joins the constant.
    Shortcut,
    /// Every monomial gets the pyramid pair.
    UniformPyramid,
    /// Uniform pyramid, with the constant handled by `x1 + x2 + c` so no
    /// summand is a monomial.
    LocalizationSafe,
}

impl DecompositionMode {
    pub const ALL: [DecompositionMode; 3] = [
        DecompositionMode::Shortcut,
        DecompositionMode::UniformPyramid,
        DecompositionMode::LocalizationSafe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DecompositionMode::Shortcut => "shortcut",
            DecompositionMode::UniformPyramid => "pyramid",
            DecompositionMode::LocalizationSafe => "localization",
        }
    }
}

impl fmt::Display for DecompositionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DecompositionMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "shortcut" => Ok(DecompositionMode::Shortcut),
            "pyramid" | "uniform-pyramid" => Ok(DecompositionMode::UniformPyramid),
            "localization" | "localization-safe" => Ok(DecompositionMode::LocalizationSafe),
            other => Err(format!(
                "unknown mode `{other}` (expected shortcut, pyramid or localization)"
            )),
        }
    }
}

/// The w point chosen for a monomial `x^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WChoice {
    pub monomial: ExponentVector,
    pub w: ExponentVector,
    /// `None` in two variables, where no `p` is involved.
    pub p: Option<BigUint>,
    /// 0-based; entry `k` is the slot that position `k` was moved to.
    /// The rule only ever uses the identity or a transposition.
    pub permutation: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SummandCertificate {
    /// Newton polytope is the segment `0 -> endpoint`, `gcd(endpoint) = 1`.
    SegmentGcd { endpoint: ExponentVector },
    /// Newton polytope is the triangle `conv{0, i, w}` with joint gcd 1.
    PyramidGcd { i: ExponentVector, w: ExponentVector },
    /// Total degree one.
    Linear,
    /// Summand of a split along Goldbach-condition witness points.
    WitnessSplit { witness: Vec<ExponentVector> },
}

impl SummandCertificate {
    pub fn kind(&self) -> &'static str {
        match self {
            SummandCertificate::SegmentGcd { .. } => "segment-gcd",
            SummandCertificate::PyramidGcd { .. } => "pyramid-gcd",
            SummandCertificate::Linear => "linear",
            SummandCertificate::WitnessSplit { .. } => "witness-split",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub input: Polynomial,
    pub mode: DecompositionMode,
    pub summands: Vec<(Polynomial, SummandCertificate)>,
    pub w_choices: Vec<WChoice>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificationReport {
    pub ok: bool,
    pub failures: Vec<String>,
}

fn big_pow(base: &BigUint, exp: &BigUint, i: &ExponentVector) -> Result<BigUint, EngineError> {
    let e = exp
        .to_u32()
        .filter(|&e| u64::from(e) * base.bits().max(1) <= MAX_W_BITS)
        .ok_or_else(|| EngineError::WTooLarge(i.clone()))?;
    Ok(Pow::pow(base, e))
}

/// Deterministic choice of `w` for the monomial `x^i` in `n` variables.
///
/// * `n = 2`: `w = (i1, (i1+1)^(i2+1))` when `i1 != 0`, else
///   `w = ((i2+1)^(i1+1), i2)`.
/// * `n >= 3`: pick the last slot `s >= 3` with `i_s != 0`; if there is none,
///   swap slot `n` with the first nonzero slot of `i` and use `s = n`. With
///   `p = prod_{j in supp} i_j + 2`, put `w = (p, p+1, 0, .., 2 i_s p, .., 0)`
///   and undo the swap.
pub fn select_w(i: &ExponentVector, n: usize) -> Result<WChoice, EngineError> {
    if n < 2 {
        return Err(EngineError::ArityTooSmall(n));
    }
    if i.arity() != n {
        return Err(PolyError::BadExponentArity(i.clone(), n).into());
    }
    if i.is_zero() {
        return Err(EngineError::ZeroExponent);
    }
    let e = i.entries();
    let one = BigUint::one();
    if n == 2 {
        let w = if !e[0].is_zero() {
            vec![e[0].clone(), big_pow(&(&e[0] + &one), &(&e[1] + &one), i)?]
        } else {
            vec![big_pow(&(&e[1] + &one), &(&e[0] + &one), i)?, e[1].clone()]
        };
        return Ok(WChoice {
            monomial: i.clone(),
            w: ExponentVector::new(w),
            p: None,
            permutation: vec![0, 1],
        });
    }

    let mut perm: Vec<usize> = (0..n).collect();
    let s = match (2..n).rev().find(|&k| !e[k].is_zero()) {
        Some(s) => s,
        None => {
            let first = e.iter().position(|x| !x.is_zero()).expect("nonzero exponent");
            perm.swap(first, n - 1);
            n - 1
        }
    };
    // a transposition is its own inverse, so the same index map goes both ways
    let ip: Vec<&BigUint> = (0..n).map(|k| &e[perm[k]]).collect();
    let p: BigUint = ip.iter().filter(|x| !x.is_zero()).fold(one.clone(), |acc, x| acc * *x)
        + BigUint::from(2u32);
    let mut wp = vec![BigUint::zero(); n];
    wp[0] = p.clone();
    wp[1] = &p + &one;
    wp[s] = BigUint::from(2u32) * ip[s] * &p;
    let w: Vec<BigUint> = (0..n).map(|k| wp[perm[k]].clone()).collect();
    Ok(WChoice {
        monomial: i.clone(),
        w: ExponentVector::new(w),
        p: Some(p),
        permutation: perm,
    })
}

/// Splits `h` into certified absolutely irreducible summands.
///
/// Summands follow the terms of `h` in descending graded-lex order (each
/// term contributing `A1` then `A2`), with the constant pair last. The zero
/// polynomial becomes `x1 + (-x1)` (or `(x1+x2) + (-x1-x2)`).
pub fn decompose(h: &Polynomial, mode: DecompositionMode) -> Result<Decomposition, EngineError> {
    let n = h.arity();
    if n < 2 {
        return Err(EngineError::ArityTooSmall(n));
    }
    let field = h.field().clone();
    let one = field.one();
    let unit = h.constant_like(one.clone());
    let mut constant = h.constant_coefficient();
    let had_constant = !field.is_zero(&constant);

    let monomials: Vec<(ExponentVector, Coefficient)> = h
        .terms_desc()
        .filter(|(e, _)| !e.is_zero())
        .map(|(e, c)| (e.clone(), c.clone()))
        .collect();
    let gcd_one = monomials.iter().filter(|(e, _)| e.gcd().is_one()).count();
    // with a single gcd-one term and no constant, the carried +1 would need
    // its own pair and break the 2r bound
    let shortcut = mode == DecompositionMode::Shortcut && !(gcd_one == 1 && !had_constant);

    let mut summands = Vec::new();
    let mut w_choices = Vec::new();
    for (e, c) in monomials {
        let term = h.monomial_like(e.clone(), c);
        if shortcut && e.gcd().is_one() {
            summands.push((&term - &unit, SummandCertificate::SegmentGcd { endpoint: e }));
            constant = field.add(&constant, &one);
            continue;
        }
        let choice = select_w(&e, n)?;
        let tail = &h.monomial_like(choice.w.clone(), one.clone()) + &unit;
        summands.push((
            &term + &tail,
            SummandCertificate::PyramidGcd {
                i: e,
                w: choice.w.clone(),
            },
        ));
        summands.push((
            -tail,
            SummandCertificate::SegmentGcd {
                endpoint: choice.w.clone(),
            },
        ));
        w_choices.push(choice);
    }

    if !field.is_zero(&constant) || summands.is_empty() {
        let mut linear = h.variable_like(0);
        if mode == DecompositionMode::LocalizationSafe {
            linear = &linear + &h.variable_like(1);
        }
        summands.push((
            &linear + &h.constant_like(constant),
            SummandCertificate::Linear,
        ));
        summands.push((-linear, SummandCertificate::Linear));
    }

    Ok(Decomposition {
        input: h.clone(),
        mode,
        summands,
        w_choices,
    })
}

fn origin(n: usize) -> LatticePoint {
    LatticePoint::origin(n)
}

fn support_set(f: &Polynomial) -> BTreeSet<ExponentVector> {
    f.support().into_iter().collect()
}

fn gao_check(f: &Polynomial) -> Result<(), String> {
    if f.divisible_by_some_variable() {
        return Err("divisible by a variable".into());
    }
    let pts: Vec<LatticePoint> = f.support().iter().map(LatticePoint::from).collect();
    match decide_indecomposable(&pts, &OracleConfig::default()).map_err(|e| e.to_string())? {
        DecomposabilityVerdict::Indecomposable(_) => Ok(()),
        DecomposabilityVerdict::Decomposable { .. } => {
            Err("Newton polytope is integrally decomposable".into())
        }
        DecomposabilityVerdict::Unknown(why) => Err(format!("Newton polytope undecided: {why}")),
    }
}

/// Re-checks one certificate against its summand.
pub fn check_certificate(f: &Polynomial, cert: &SummandCertificate) -> Result<(), String> {
    let n = f.arity();
    let zero = ExponentVector::zero(n);
    match cert {
        SummandCertificate::Linear => match f.total_degree() {
            Some(d) if d.is_one() => Ok(()),
            _ => Err("total degree is not 1".into()),
        },
        SummandCertificate::SegmentGcd { endpoint } => {
            let expected: BTreeSet<ExponentVector> = [zero, endpoint.clone()].into();
            if endpoint.arity() != n || endpoint.is_zero() || support_set(f) != expected {
                return Err(format!("support is not {{0, {endpoint}}}"));
            }
            match segment_indecomposable(&origin(n), &endpoint.into()) {
                Ok(true) => Ok(()),
                Ok(false) => Err(format!("gcd{endpoint} = {} is not 1", endpoint.gcd())),
                Err(e) => Err(e.to_string()),
            }
        }
        SummandCertificate::PyramidGcd { i, w } => {
            let expected: BTreeSet<ExponentVector> = [zero, i.clone(), w.clone()].into();
            if i.arity() != n || w.arity() != n || expected.len() != 3 || support_set(f) != expected
            {
                return Err(format!("support is not {{0, {i}, {w}}}"));
            }
            match pyramid_indecomposable(&[i.into(), w.into()], &origin(n)) {
                Ok(true) => Ok(()),
                Ok(false) => Err(format!("joint gcd of {i} and {w} is not 1")),
                Err(e) => Err(e.to_string()),
            }
        }
        SummandCertificate::WitnessSplit { witness } => {
            let support = support_set(f);
            if let Some(w) = witness.iter().find(|w| !support.contains(w)) {
                return Err(format!("witness point {w} is not in the support"));
            }
            gao_check(f)
        }
    }
}

/// Recomputes the sum, the `2r` bound and every certificate.
pub fn certify(d: &Decomposition) -> CertificationReport {
    let mut failures = Vec::new();
    let mut sum = d.input.zero_like();
    for (k, (f, _)) in d.summands.iter().enumerate() {
        match sum.try_add(f) {
            Ok(s) => sum = s,
            Err(e) => failures.push(format!("summand {}: {e}", k + 1)),
        }
    }
    if failures.is_empty() && sum != d.input {
        failures.push(format!(
            "sum mismatch: the summands add up to {sum}, expected {}",
            d.input
        ));
    }
    let bound = 2 * d.input.term_count().max(1);
    if d.summands.len() > bound {
        failures.push(format!(
            "{} summands exceed the bound 2*max(r,1) = {bound}",
            d.summands.len()
        ));
    }
    for (k, (f, cert)) in d.summands.iter().enumerate() {
        if let Err(why) = check_certificate(f, cert) {
            failures.push(format!("summand {} ({f}), {}: {why}", k + 1, cert.kind()));
        }
    }
    CertificationReport {
        ok: failures.is_empty(),
        failures,
    }
}

fn infer_certificate(f: &Polynomial) -> Result<SummandCertificate, EngineError> {
    if f.total_degree().is_some_and(|d| d.is_one()) {
        return Ok(SummandCertificate::Linear);
    }
    let has_constant = !f.field().is_zero(&f.constant_coefficient());
    let mut others: Vec<ExponentVector> =
        f.support().into_iter().filter(|e| !e.is_zero()).collect();
    others.sort();
    match (has_constant, others.len()) {
        (true, 1) => Ok(SummandCertificate::SegmentGcd {
            endpoint: others.pop().unwrap(),
        }),
        (true, 2) => {
            let w = others.pop().unwrap();
            let i = others.pop().unwrap();
            Ok(SummandCertificate::PyramidGcd { i, w })
        }
        _ => Err(EngineError::NoCertificate(f.to_string())),
    }
}

impl Decomposition {
    /// Wraps externally supplied summands, inferring a certificate for each
    /// from its shape (linear, two-term segment or three-term triangle with
    /// a constant). Nothing is verified here; see [`certify`].
    pub fn from_summands(
        input: &Polynomial,
        mode: DecompositionMode,
        summands: Vec<Polynomial>,
    ) -> Result<Self, EngineError> {
        let summands = summands
            .into_iter()
            .map(|f| infer_certificate(&f).map(|c| (f, c)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Decomposition {
            input: input.clone(),
            mode,
            summands,
            w_choices: Vec::new(),
        })
    }

    pub fn polynomials(&self) -> impl Iterator<Item = &Polynomial> {
        self.summands.iter().map(|(f, _)| f)
    }
}

/// Outcome of [`split_by_witness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSplitOutcome {
    pub f1: Polynomial,
    pub f2: Polynomial,
    pub certificate: SummandCertificate,
    pub report: GoldbachReport,
}

/// Writes `f = (f + sum x^w) + (-sum x^w)` after checking that the witness
/// points satisfy the Goldbach condition for the Newton polytope of `f`.
pub fn split_by_witness(
    f: &Polynomial,
    witness: &[ExponentVector],
    cfg: &OracleConfig,
) -> Result<WitnessSplitOutcome, EngineError> {
    if f.is_zero() {
        return Err(EngineError::WitnessRejected("the zero polynomial has no Newton polytope".into()));
    }
    if f.divisible_by_some_variable() {
        return Err(EngineError::WitnessRejected(format!("{f} is divisible by a variable")));
    }
    for w in witness {
        if w.arity() != f.arity() {
            return Err(PolyError::BadExponentArity(w.clone(), f.arity()).into());
        }
    }
    let witness: Vec<ExponentVector> = witness
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .rev()
        .collect();
    let polytope = LatticePolytope::from_exponents(&f.support())?;
    let points: Vec<LatticePoint> = witness.iter().map(LatticePoint::from).collect();
    let report = goldbach_condition_check(&polytope, &points, cfg)?;
    match &report.verdict {
        GoldbachVerdict::Holds => {}
        GoldbachVerdict::Fails(why) => return Err(EngineError::WitnessRejected(why.clone())),
        GoldbachVerdict::Unknown(why) => {
            return Err(EngineError::WitnessRejected(format!("undecided: {why}")))
        }
    }
    let one = f.field().one();
    let s = witness
        .iter()
        .fold(f.zero_like(), |acc, w| &acc + &f.monomial_like(w.clone(), one.clone()));
    let f1 = f + &s;
    let f2 = -s;
    let certificate = SummandCertificate::WitnessSplit { witness };
    for g in [&f1, &f2] {
        check_certificate(g, &certificate)
            .map_err(|why| EngineError::WitnessRejected(format!("{g}: {why}")))?;
    }
    Ok(WitnessSplitOutcome {
        f1,
        f2,
        certificate,
        report,
    })
}

/// Multiplicative systems of the polynomial ring supported by
/// [`localize_decompose`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultiplicativeSystem {
    /// Nonzero scalar multiples of monomials.
    Monomials,
}

impl MultiplicativeSystem {
    pub fn contains(&self, w: &Polynomial) -> bool {
        match self {
            MultiplicativeSystem::Monomials => w.term_count() == 1,
        }
    }
}

/// A decomposition of `H / W`: every summand is read over the common
/// denominator `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedDecomposition {
    pub decomposition: Decomposition,
    pub denominator: Polynomial,
}

impl LocalizedDecomposition {
    /// `(numerator, denominator)` pairs.
    pub fn fractions(&self) -> impl Iterator<Item = (&Polynomial, &Polynomial)> {
        self.decomposition
            .polynomials()
            .map(move |f| (f, &self.denominator))
    }
}

/// Decomposes `H / W` in the localization at `system`. No summand is a
/// monomial, so none becomes a unit after localizing.
pub fn localize_decompose(
    h: &Polynomial,
    w: &Polynomial,
    system: MultiplicativeSystem,
) -> Result<LocalizedDecomposition, EngineError> {
    if h.field() != w.field() {
        return Err(PolyError::FieldMismatch(h.field().clone(), w.field().clone()).into());
    }
    if h.vars() != w.vars() {
        return Err(PolyError::ArityMismatch(h.vars().to_vec(), w.vars().to_vec()).into());
    }
    if !system.contains(w) {
        return Err(EngineError::DenominatorNotInSystem(w.to_string()));
    }
    let decomposition = decompose(h, DecompositionMode::LocalizationSafe)?;
    debug_assert!(decomposition.polynomials().all(|f| !f.is_monomial()));
    Ok(LocalizedDecomposition {
        decomposition,
        denominator: w.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::{parse_polynomial, var_list};

    fn q(text: &str, vars: &str) -> Polynomial {
        parse_polynomial(text, &var_list(vars), &FieldSpec::Rationals).unwrap()
    }

    fn ev(e: &[u64]) -> ExponentVector {
        ExponentVector::from_u64s(e)
    }

    #[test]
    fn two_variable_w_points() {
        assert_eq!(select_w(&ev(&[1, 1]), 2).unwrap().w, ev(&[1, 4]));
        assert_eq!(select_w(&ev(&[0, 1]), 2).unwrap().w, ev(&[2, 1]));
        assert_eq!(select_w(&ev(&[1, 0]), 2).unwrap().w, ev(&[1, 2]));
        assert_eq!(select_w(&ev(&[2, 2]), 2).unwrap().w, ev(&[2, 27]));
    }

    #[test]
    fn three_variable_w_points() {
        let c = select_w(&ev(&[2, 0, 0]), 3).unwrap();
        assert_eq!(c.w, ev(&[16, 5, 4]));
        assert_eq!(c.p, Some(BigUint::from(4u32)));
        assert_eq!(c.permutation, vec![2, 1, 0]);
        // last nonzero slot s >= 3 stays put
        let c = select_w(&ev(&[1, 2, 3]), 3).unwrap();
        assert_eq!(c.p, Some(BigUint::from(8u32)));
        assert_eq!(c.w, ev(&[8, 9, 48]));
        let c = select_w(&ev(&[0, 0, 1, 0]), 4).unwrap();
        assert_eq!(c.w, ev(&[3, 4, 6, 0]));
    }

    #[test]
    fn w_errors() {
        assert_eq!(select_w(&ev(&[0, 0]), 2), Err(EngineError::ZeroExponent));
        assert_eq!(select_w(&ev(&[1]), 1), Err(EngineError::ArityTooSmall(1)));
        assert!(matches!(
            select_w(&ev(&[5000, 100000]), 2),
            Err(EngineError::WTooLarge(_))
        ));
    }

    #[test]
    fn square_in_pyramid_mode() {
        let d = decompose(&q("x*y + x + y + 1", "x,y"), DecompositionMode::UniformPyramid).unwrap();
        let got: Vec<String> = d.polynomials().map(ToString::to_string).collect();
        assert_eq!(
            got,
            [
                "x*y^4 + x*y + 1",
                "-x*y^4 - 1",
                "x*y^2 + x + 1",
                "-x*y^2 - 1",
                "x^2*y + y + 1",
                "-x^2*y - 1",
                "x + 1",
                "-x"
            ]
        );
        assert!(certify(&d).ok);
    }

    #[test]
    fn constants_and_zero() {
        let d = decompose(&q("5", "x,y,z"), DecompositionMode::UniformPyramid).unwrap();
        let got: Vec<String> = d.polynomials().map(ToString::to_string).collect();
        assert_eq!(got, ["x + 5", "-x"]);
        let d = decompose(&q("0", "x,y"), DecompositionMode::Shortcut).unwrap();
        let got: Vec<String> = d.polynomials().map(ToString::to_string).collect();
        assert_eq!(got, ["x", "-x"]);
        let d = decompose(&q("0", "x,y"), DecompositionMode::LocalizationSafe).unwrap();
        let got: Vec<String> = d.polynomials().map(ToString::to_string).collect();
        assert_eq!(got, ["x + y", "-x - y"]);
        assert!(certify(&d).ok);
    }

    #[test]
    fn shortcut_carries_units() {
        let d = decompose(&q("x*y + x^2 + 3", "x,y"), DecompositionMode::Shortcut).unwrap();
        let got: Vec<String> = d.polynomials().map(ToString::to_string).collect();
        assert_eq!(
            got,
            ["x^2*y^3 + x^2 + 1", "-x^2*y^3 - 1", "x*y - 1", "x + 4", "-x"]
        );
        assert!(certify(&d).ok);
    }

    #[test]
    fn shortcut_count_repair() {
        // one gcd-one term, no constant: falls back to the pyramid pair
        let d = decompose(&q("x*y^2", "x,y"), DecompositionMode::Shortcut).unwrap();
        assert_eq!(d.summands.len(), 2);
        assert!(certify(&d).ok);
        let d = decompose(&q("x*y + x", "x,y"), DecompositionMode::Shortcut).unwrap();
        assert_eq!(d.summands.len(), 4);
        assert!(certify(&d).ok);
    }

    #[test]
    fn certificates_catch_tampering() {
        let h = q("x*y + x + y + 1", "x,y");
        let mut d = decompose(&h, DecompositionMode::UniformPyramid).unwrap();
        d.summands[0].0 = -d.summands[0].0.clone();
        let r = certify(&d);
        assert!(!r.ok);
        assert!(r.failures[0].starts_with("sum mismatch"));

        let bad = q("x^2*y^2 + 1", "x,y");
        let r = check_certificate(
            &bad,
            &SummandCertificate::SegmentGcd {
                endpoint: ev(&[2, 2]),
            },
        );
        assert!(r.unwrap_err().contains("is not 1"));
    }

    #[test]
    fn univariate_is_rejected() {
        assert_eq!(
            decompose(&q("x + 1", "x"), DecompositionMode::Shortcut),
            Err(EngineError::ArityTooSmall(1))
        );
    }

    #[test]
    fn reference_summands_certify() {
        let g = q("2*x^2 + 3*y^2 - 7*z^2 + 5", "x,y,z");
        let parts = [
            "x^4*y^4*z^5 + 2*x^2 + 1",
            "x^4*y^4*z^5 + 3*y^2 + 1",
            "x^4*y^5*z^4 - 7*z^2 + 1",
            "x + 5",
            "-x^4*y^4*z^5 - 1",
            "-x^4*y^4*z^5 - 1",
            "-x^4*y^5*z^4 - 1",
            "-x",
        ];
        let polys = parts.iter().map(|t| q(t, "x,y,z")).collect();
        let d = Decomposition::from_summands(&g, DecompositionMode::UniformPyramid, polys).unwrap();
        assert!(certify(&d).ok, "{:?}", certify(&d).failures);
    }

    #[test]
    fn witness_split_on_the_square() {
        let f = q("x*y + x + y + 1", "x,y");
        let out = split_by_witness(&f, &[ev(&[2, 0]), ev(&[0, 3])], &OracleConfig::default()).unwrap();
        assert_eq!(&out.f1 + &out.f2, f);
        assert_eq!(out.f2.to_string(), "-y^3 - x^2");
        assert!(check_certificate(&out.f1, &out.certificate).is_ok());

        let err = split_by_witness(&f, &[ev(&[1, 4]), ev(&[2, 0])], &OracleConfig::default());
        assert!(matches!(err, Err(EngineError::WitnessRejected(ref m)) if m.contains("(ii)")));
        let err = split_by_witness(&q("x*y + x", "x,y"), &[ev(&[2, 0])], &OracleConfig::default());
        assert!(matches!(err, Err(EngineError::WitnessRejected(_))));
    }

    #[test]
    fn localization_avoids_monomials() {
        let h = q("x*y + x + y + 1", "x,y");
        let ld = localize_decompose(&h, &q("x^2*y", "x,y"), MultiplicativeSystem::Monomials).unwrap();
        assert_eq!(ld.fractions().count(), 8);
        assert!(ld.decomposition.polynomials().all(|f| !f.is_monomial()));
        let last: Vec<String> = ld.decomposition.polynomials().skip(6).map(ToString::to_string).collect();
        assert_eq!(last, ["x + y + 1", "-x - y"]);
        assert!(matches!(
            localize_decompose(&h, &q("x + 1", "x,y"), MultiplicativeSystem::Monomials),
            Err(EngineError::DenominatorNotInSystem(_))
        ));
    }
}
