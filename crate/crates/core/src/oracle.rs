//! Exhaustive referees over small finite fields: polynomial enumeration,
//! irreducibility by trial division, sums of irreducibles, and the
//! quotient-ring identity showing that a Gao-irreducible polynomial can turn
//! reducible modulo a relation.
//!
//! Everything here is deliberately naive. Budgets make infeasible searches
//! fail loudly instead of running forever.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::field::{Coefficient, FieldError, FieldSpec};
use crate::poly::{ExponentVector, PolyError, Polynomial};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("exhaustive search needs a finite field, got {0}")]
    NotFinite(FieldSpec),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("{needed} candidates exceed the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

fn field_size(field: &FieldSpec) -> Result<u128, OracleError> {
    field.size().ok_or_else(|| OracleError::NotFinite(field.clone()))
}

fn check_budget(needed: Option<u128>, budget: u64) -> Result<u128, OracleError> {
    match needed {
        Some(n) if n <= budget as u128 => Ok(n),
        n => Err(OracleError::BudgetExceeded {
            needed: n.unwrap_or(u128::MAX),
            budget,
        }),
    }
}

/// Exponent vectors with total degree `<= max_total` and entry `k` at most
/// `bounds[k]`, ascending in graded-lex order.
fn monomials(max_total: u64, bounds: &[u64]) -> Vec<ExponentVector> {
    fn go(k: usize, left: u64, bounds: &[u64], cur: &mut Vec<u64>, out: &mut Vec<ExponentVector>) {
        if k == bounds.len() {
            out.push(ExponentVector::from_u64s(cur));
            return;
        }
        for e in 0..=left.min(bounds[k]) {
            cur.push(e);
            go(k + 1, left - e, bounds, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, max_total, bounds, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Polynomial whose coefficient on `monos[j]` is digit `j` of `idx` in base
/// `q` (least significant first).
fn from_index(
    field: &FieldSpec,
    vars: &[String],
    monos: &[ExponentVector],
    q: u128,
    mut idx: u128,
) -> Polynomial {
    let mut terms = Vec::new();
    for e in monos {
        let d = idx % q;
        idx /= q;
        if d != 0 {
            terms.push((e.clone(), field.element(d)));
        }
    }
    Polynomial::from_terms(field.clone(), vars, terms).expect("well-formed terms")
}

/// Every polynomial of total degree `<= max_degree`, each exactly once.
///
/// Candidate `k` has as coefficient on the `j`-th monomial (graded-lex
/// ascending, constant first) the `j`-th base-`q` digit of `k`; so the
/// stream starts `0, 1, .., x_n, x_n + 1, ..`.
pub struct PolynomialEnumeration {
    field: FieldSpec,
    vars: Vec<String>,
    monos: Vec<ExponentVector>,
    q: u128,
    next: u128,
    total: u128,
}

impl PolynomialEnumeration {
    pub fn total(&self) -> u128 {
        self.total
    }
}

impl Iterator for PolynomialEnumeration {
    type Item = Polynomial;

    fn next(&mut self) -> Option<Polynomial> {
        if self.next >= self.total {
            return None;
        }
        let p = from_index(&self.field, &self.vars, &self.monos, self.q, self.next);
        self.next += 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = usize::try_from(self.total - self.next).unwrap_or(usize::MAX);
        (left, Some(left))
    }
}

pub fn enumerate_polynomials(
    field: &FieldSpec,
    vars: &[String],
    max_degree: u64,
    budget: u64,
) -> Result<PolynomialEnumeration, OracleError> {
    let q = field_size(field)?;
    Polynomial::zero(field.clone(), vars)?;
    let monos = monomials(max_degree, &vec![max_degree; vars.len()]);
    let total = check_budget(
        u32::try_from(monos.len()).ok().and_then(|m| q.checked_pow(m)),
        budget,
    )?;
    Ok(PolynomialEnumeration {
        field: field.clone(),
        vars: vars.to_vec(),
        monos,
        q,
        next: 0,
        total,
    })
}

/// Result of a factor search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibilityVerdict {
    pub irreducible: bool,
    /// `f = g * h` with neither factor a unit, when reducible.
    pub factorization: Option<(Polynomial, Polynomial)>,
    /// Candidate divisors tried.
    pub candidates: u128,
}

fn small_degree(d: Option<BigUint>) -> Result<u64, OracleError> {
    d.and_then(|d| d.to_u64())
        .ok_or_else(|| OracleError::NotApplicable("degree too large for enumeration".into()))
}

/// Searches for a proper factor of `f` by trial division.
///
/// Only elementary restrictions prune the candidates `g`: a proper factor
/// can be taken with `1 <= deg g <= deg f / 2`, degree in each variable at
/// most that of `f`, leading coefficient 1, and a nonzero constant term
/// whenever `f(0) != 0`.
pub fn irreducibility_search(f: &Polynomial, budget: u64) -> Result<IrreducibilityVerdict, OracleError> {
    let field = f.field();
    let q = field_size(field)?;
    if f.is_zero() {
        return Err(OracleError::NotApplicable("the zero polynomial".into()));
    }
    if f.is_constant() {
        return Err(OracleError::NotApplicable(format!("{f} is a unit")));
    }
    let deg = small_degree(f.total_degree())?;
    let bounds = (0..f.arity())
        .map(|k| small_degree(f.degree_in(k)))
        .collect::<Result<Vec<_>, _>>()?;
    let monos = monomials(deg / 2, &bounds);
    let needs_constant = !field.is_zero(&f.constant_coefficient());

    // leading monomial at index j (j >= 1); lower coefficients are free,
    // except that the constant must be nonzero when f(0) != 0
    let count_for = |j: usize| -> Option<u128> {
        let free = q.checked_pow(u32::try_from(j).ok()?)?;
        Some(if needs_constant { free / q * (q - 1) } else { free })
    };
    let needed = (1..monos.len()).try_fold(0u128, |acc, j| acc.checked_add(count_for(j)?));
    check_budget(needed, budget)?;

    let one = field.one();
    let mut candidates = 0u128;
    for j in 1..monos.len() {
        let lower = &monos[..j];
        let free = q.pow(j as u32);
        for idx in 0..free {
            if needs_constant && idx % q == 0 {
                continue;
            }
            candidates += 1;
            let g = &from_index(field, f.vars(), lower, q, idx) + &f.monomial_like(monos[j].clone(), one.clone());
            if let Ok(h) = f.try_exact_divide(&g) {
                return Ok(IrreducibilityVerdict {
                    irreducible: false,
                    factorization: Some((g, h)),
                    candidates,
                });
            }
        }
    }
    Ok(IrreducibilityVerdict {
        irreducible: true,
        factorization: None,
        candidates,
    })
}

pub fn is_irreducible_bruteforce(f: &Polynomial) -> Result<bool, OracleError> {
    irreducibility_search(f, DEFAULT_BUDGET).map(|v| v.irreducible)
}

/// Outcome of [`check_sum_of_irreducibles`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumSearch {
    pub witness: Option<Vec<Polynomial>>,
    /// Polynomials of degree `<= bound` enumerated.
    pub enumerated: u128,
    /// How many of them are irreducible.
    pub irreducibles: usize,
    /// `(k-1)`-multisets of irreducibles tried.
    pub tuples: u128,
}

fn multisets(n: u128, k: u32) -> Option<u128> {
    // C(n + k - 1, k)
    (0..k as u128).try_fold(1u128, |acc, i| Some(acc.checked_mul(n + i)? / (i + 1)))
}

/// Looks for `k` irreducible polynomials of total degree `<= bound` whose sum
/// is `target`. Witnesses are reported with non-decreasing enumeration
/// index, so the first one found is deterministic.
pub fn check_sum_of_irreducibles(
    target: &Polynomial,
    k: usize,
    bound: u64,
    budget: u64,
) -> Result<SumSearch, OracleError> {
    let all = enumerate_polynomials(target.field(), target.vars(), bound, budget)?;
    let enumerated = all.total();
    let mut irreducibles = Vec::new();
    for f in all {
        if f.is_constant() {
            continue;
        }
        if irreducibility_search(&f, budget)?.irreducible {
            irreducibles.push(f);
        }
    }
    let count = irreducibles.len();
    let mut out = SumSearch {
        witness: None,
        enumerated,
        irreducibles: count,
        tuples: 0,
    };
    if k == 0 {
        out.witness = target.is_zero().then(Vec::new);
        return Ok(out);
    }
    let needed = u32::try_from(k - 1)
        .ok()
        .and_then(|k| multisets(count as u128, k));
    check_budget(needed, budget)?;

    let index: HashMap<&Polynomial, usize> =
        irreducibles.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    let mut tuples = 0u128;
    #[allow(clippy::too_many_arguments)]
    fn go(
        start: usize,
        left: usize,
        rest: &Polynomial,
        irr: &[Polynomial],
        index: &HashMap<&Polynomial, usize>,
        chosen: &mut Vec<usize>,
        tuples: &mut u128,
    ) -> bool {
        if left == 1 {
            *tuples += 1;
            if let Some(&j) = index.get(rest) {
                if j >= start {
                    chosen.push(j);
                    return true;
                }
            }
            return false;
        }
        for i in start..irr.len() {
            chosen.push(i);
            if go(i, left - 1, &(rest - &irr[i]), irr, index, chosen, tuples) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    if go(0, k, target, &irreducibles, &index, &mut chosen, &mut tuples) {
        out.witness = Some(chosen.iter().map(|&i| irreducibles[i].clone()).collect());
    }
    out.tuples = tuples;
    Ok(out)
}

/// Maps a polynomial over `F_p` into `F_{p^k}`.
pub fn extend_scalars(f: &Polynomial, target: &FieldSpec) -> Result<Polynomial, OracleError> {
    let FieldSpec::PrimeField(p) = f.field() else {
        return Err(OracleError::NotApplicable(format!("{} is not a prime field", f.field())));
    };
    if target.characteristic() != *p {
        return Err(OracleError::NotApplicable(format!("{target} has another characteristic")));
    }
    let terms = f.terms().map(|(e, c)| {
        let Coefficient::Residue(r) = c else { unreachable!("prime-field coefficient") };
        (e.clone(), target.from_i64(*r as i64))
    });
    Ok(Polynomial::from_terms(target.clone(), f.vars(), terms)?)
}

/// Verdict of the search over one field.
pub type ExtensionCheck = (FieldSpec, Result<bool, OracleError>);

/// Evidence only: repeats the factor search for `f` over `F_{p^k}` for
/// `k = 1..=max_k`. Irreducibility over these few extensions is consistent
/// with, but does not prove, absolute irreducibility.
pub fn extension_spot_check(
    f: &Polynomial,
    max_k: u32,
    budget: u64,
) -> Result<Vec<ExtensionCheck>, OracleError> {
    let FieldSpec::PrimeField(p) = f.field() else {
        return Err(OracleError::NotApplicable(format!("{} is not a prime field", f.field())));
    };
    let mut out = vec![(f.field().clone(), irreducibility_search(f, budget).map(|v| v.irreducible))];
    for k in 2..=max_k {
        let ext = FieldSpec::extension(*p, k)?;
        let g = extend_scalars(f, &ext)?;
        out.push((ext, irreducibility_search(&g, budget).map(|v| v.irreducible)));
    }
    Ok(out)
}

/// In `Q[w,x,y]` with `g = w^p x^(p+1) + y^(2pi)` and
/// `A = w^p x^(p+1) y^(2pi) + 1`, checks
/// (a) `A - (w^p x^(p+1)) g - (1 - w^(2p) x^(2(p+1))) = 0`, and
/// (b) `g` divides `A - (w^p x^(p+1) + 1)(y^(2pi) + 1)`.
/// Together they show `A` becomes a product modulo `g`.
pub fn verify_quotient_identity(p: u64, i: u64) -> bool {
    let vars: Vec<String> = ["w", "x", "y"].iter().map(|s| s.to_string()).collect();
    let field = FieldSpec::Rationals;
    let mono = |a: u64, b: u64, c: u64| {
        Polynomial::from_terms(
            field.clone(),
            &vars,
            [(ExponentVector::from_u64s(&[a, b, c]), field.one())],
        )
        .expect("three variables")
    };
    let one = mono(0, 0, 0);
    let wx = mono(p, p + 1, 0);
    let y = mono(0, 0, 2 * p * i);
    let g = &wx + &y;
    let a = &mono(p, p + 1, 2 * p * i) + &one;

    let lhs = &(&a - &(&wx * &g)) - &(&one - &mono(2 * p, 2 * (p + 1), 0));
    let part_a = lhs.is_zero();
    let diff = &a - &(&(&wx + &one) * &(&y + &one));
    let part_b = diff.try_exact_divide(&g).is_ok();
    part_a && part_b && !diff.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, var_list};

    fn fp(text: &str, vars: &str, p: u64) -> Polynomial {
        parse_polynomial(text, &var_list(vars), &FieldSpec::prime(p).unwrap()).unwrap()
    }

    #[test]
    fn enumeration_counts_and_order() {
        let f2 = FieldSpec::prime(2).unwrap();
        let got: Vec<String> = enumerate_polynomials(&f2, &var_list("x"), 1, DEFAULT_BUDGET)
            .unwrap()
            .map(|f| f.to_string())
            .collect();
        assert_eq!(got, ["0", "1", "x", "x + 1"]);
        assert_eq!(enumerate_polynomials(&f2, &var_list("x"), 2, DEFAULT_BUDGET).unwrap().count(), 8);
        let f3 = FieldSpec::prime(3).unwrap();
        let all: Vec<Polynomial> = enumerate_polynomials(&f3, &var_list("x,y"), 1, DEFAULT_BUDGET)
            .unwrap()
            .collect();
        assert_eq!(all.len(), 27);
        let distinct: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), 27);
        assert!(matches!(
            enumerate_polynomials(&f3, &var_list("x,y"), 4, 1000),
            Err(OracleError::BudgetExceeded { .. })
        ));
        assert!(matches!(
            enumerate_polynomials(&FieldSpec::Rationals, &var_list("x"), 1, 10),
            Err(OracleError::NotFinite(_))
        ));
    }

    #[test]
    fn small_irreducibility_facts() {
        assert!(is_irreducible_bruteforce(&fp("x^2 + x + 1", "x", 2)).unwrap());
        assert!(!is_irreducible_bruteforce(&fp("x^2 + x", "x", 2)).unwrap());
        assert!(is_irreducible_bruteforce(&fp("x*y + 1", "x,y", 2)).unwrap());
        assert!(!is_irreducible_bruteforce(&fp("x^2 + 1", "x", 2)).unwrap());
        // x^2 y^2 + 1 = (xy + 2)(xy - 2) over F5
        assert!(!is_irreducible_bruteforce(&fp("x^2*y^2 + 1", "x,y", 5)).unwrap());
        let v = irreducibility_search(&fp("x^2 - y^2", "x,y", 5), DEFAULT_BUDGET).unwrap();
        let (g, h) = v.factorization.unwrap();
        assert_eq!(&g * &h, fp("x^2 - y^2", "x,y", 5));
        assert!(matches!(
            is_irreducible_bruteforce(&fp("3", "x", 5)),
            Err(OracleError::NotApplicable(_))
        ));
        assert!(matches!(
            is_irreducible_bruteforce(&fp("0", "x", 5)),
            Err(OracleError::NotApplicable(_))
        ));
    }

    #[test]
    fn two_summands_do_not_suffice_over_f2() {
        let t = fp("x^2 + x", "x", 2);
        let s = check_sum_of_irreducibles(&t, 2, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.witness, None);
        assert_eq!(s.irreducibles, 3);
        let s = check_sum_of_irreducibles(&t, 3, 2, DEFAULT_BUDGET).unwrap();
        let mut w: Vec<String> = s.witness.unwrap().iter().map(|f| f.to_string()).collect();
        w.sort();
        assert_eq!(w, ["x", "x + 1", "x^2 + x + 1"]);
    }

    #[test]
    fn zero_over_f3() {
        let s = check_sum_of_irreducibles(&fp("0", "x", 3), 2, 1, DEFAULT_BUDGET).unwrap();
        let w: Vec<String> = s.witness.unwrap().iter().map(|f| f.to_string()).collect();
        assert_eq!(w, ["x", "2*x"]);
    }

    #[test]
    fn quotient_identity() {
        for p in 1..=3 {
            for i in 1..=3 {
                assert!(verify_quotient_identity(p, i), "p={p} i={i}");
            }
        }
    }

    #[test]
    fn extension_checks() {
        // x^2 + 1 is irreducible over F3 but splits over F9
        let r = extension_spot_check(&fp("x^2 + 1", "x", 3), 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(r[0].1, Ok(true));
        assert_eq!(r[1].1, Ok(false));
        let r = extension_spot_check(&fp("x*y + 1", "x,y", 2), 3, DEFAULT_BUDGET).unwrap();
        assert!(r.iter().all(|(_, v)| *v == Ok(true)));
    }
}
