//! Prime sums in localizations `S^{-1} Z` where `S` is generated by finitely
//! many primes: approximating any real interval by a sum of copies of one
//! irreducible, greedy expansions `x = sum p_i / q^{n_i}`, and rescaling of
//! representations by elements of `S`.
//!
//! Primes outside `S` stay irreducible in `S^{-1} Z`, and so does `p / s`
//! for any `s` in `S`, since `s` is a unit there.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::primes::{is_prime, prev_prime};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalizationError {
    #[error("a multiplicative system needs at least one generator")]
    NoGenerators,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("empty interval: {} >= {}", .0.0, .0.1)]
    EmptyInterval(Box<(BigRational, BigRational)>),
    #[error("{0} is not in the multiplicative system")]
    NotInSystem(BigInt),
    #[error("tolerance must be positive")]
    BadTolerance,
    #[error("tolerance not reached after {} terms (remainder {})", .0.terms.len(), .0.remainder)]
    ToleranceNotReached(Box<PrimeSeries>),
    #[error("intermediate value {0} is out of range")]
    OutOfRange(BigRational),
}

/// `S` = all finite products of the generator primes (including 1).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiplicativeSet {
    generators: Vec<u64>,
}

impl MultiplicativeSet {
    pub fn new(generators: &[u64]) -> Result<Self, LocalizationError> {
        if generators.is_empty() {
            return Err(LocalizationError::NoGenerators);
        }
        if let Some(&g) = generators.iter().find(|&&g| !is_prime(g)) {
            return Err(LocalizationError::NotPrime(g));
        }
        let mut generators = generators.to_vec();
        generators.sort_unstable();
        generators.dedup();
        Ok(MultiplicativeSet { generators })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Least element of `S` above 1.
    pub fn n0(&self) -> u64 {
        self.generators[0]
    }

    /// Whether `s` is a (positive) product of generators.
    pub fn contains(&self, s: &BigInt) -> bool {
        if !s.is_positive() {
            return false;
        }
        let mut s = s.clone();
        for &g in &self.generators {
            let g = BigInt::from(g);
            while s.is_multiple_of(&g) {
                s /= &g;
            }
        }
        s.is_one()
    }

    /// The least positive prime that is not a generator.
    pub fn smallest_prime_outside(&self) -> u64 {
        (2..)
            .find(|&k| is_prime(k) && !self.generators.contains(&k))
            .expect("finitely many generators")
    }
}

impl fmt::Display for MultiplicativeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.generators.iter().map(u64::to_string).collect();
        write!(f, "<{}>", g.join(","))
    }
}

fn q_int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `(n - 1)` copies of the irreducible `p / n0^e`, landing strictly inside
/// the requested interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseApproxResult {
    /// Prime outside `S`, negative for intervals left of 0.
    pub p: BigInt,
    pub n0: u64,
    pub e: u32,
    pub n: BigUint,
    pub value: BigRational,
}

impl DenseApproxResult {
    /// The repeated summand `p / n0^e`.
    pub fn summand(&self) -> BigRational {
        BigRational::new(self.p.clone(), BigInt::from(self.n0).pow(self.e))
    }

    /// Number of summands, `n - 1`.
    pub fn count(&self) -> BigUint {
        &self.n - 1u32
    }
}

/// Picks `p` (least prime outside `S`), `e` minimal with
/// `p / n0^e < y0 - x0`, and `n` least with `n p / n0^e >= y0`; then
/// `x0 < (n - 1) p / n0^e < y0`. Intervals with `y0 <= 0` are mirrored and
/// answered with `-p`.
pub fn dense_approx(
    s: &MultiplicativeSet,
    x0: &BigRational,
    y0: &BigRational,
) -> Result<DenseApproxResult, LocalizationError> {
    if x0 >= y0 {
        return Err(LocalizationError::EmptyInterval(Box::new((x0.clone(), y0.clone()))));
    }
    if !y0.is_positive() {
        let mut r = dense_approx(s, &-y0, &-x0)?;
        r.p = -r.p;
        r.value = -r.value;
        return Ok(r);
    }
    let p = s.smallest_prime_outside();
    let n0 = s.n0();
    let width = y0 - x0;
    let mut e = 0u32;
    let mut step = q_int(p);
    while step >= width {
        e += 1;
        step = BigRational::new(BigInt::from(p), BigInt::from(n0).pow(e));
    }
    // least n with n * step >= y0
    let n = (y0 / &step).ceil().to_integer();
    let n = n.to_biguint().expect("y0 > 0");
    let value = &step * q_int(BigInt::from(n.clone()) - 1);
    debug_assert!(*x0 < value && value < *y0);
    Ok(DenseApproxResult {
        p: BigInt::from(p),
        n0,
        e,
        n,
        value,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesTerm {
    /// Signed prime, never `+-q`.
    pub p: BigInt,
    pub n: i64,
    pub partial_sum: BigRational,
}

impl SeriesTerm {
    pub fn value(&self, q: u64) -> BigRational {
        q_pow(q, -self.n) * q_int(self.p.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSeries {
    pub x: BigRational,
    pub q: u64,
    pub terms: Vec<SeriesTerm>,
    /// `x` minus the last partial sum.
    pub remainder: BigRational,
}

fn q_pow(q: u64, n: i64) -> BigRational {
    let m = BigInt::from(q).pow(n.unsigned_abs() as u32);
    if n >= 0 {
        q_int(m)
    } else {
        BigRational::new(BigInt::one(), m)
    }
}

/// Greedy expansion `x ~ sum_t p_t / q^{n_t}`.
///
/// At each step `n_t` is the least integer above `n_{t-1}` such that some
/// prime other than `q` is at most `T = |r| q^{n_t}` (so `T >= 2`, or
/// `T >= 3` when `q = 2`); `p_t` is the largest such prime, signed like the
/// remainder `r`. By Bertrand's postulate `p_t > T/2`, so the remainder
/// roughly halves each step.
pub fn greedy_prime_series(
    x: &BigRational,
    q: u64,
    tolerance: &BigRational,
    max_terms: usize,
) -> Result<PrimeSeries, LocalizationError> {
    if !is_prime(q) {
        return Err(LocalizationError::NotPrime(q));
    }
    if !tolerance.is_positive() {
        return Err(LocalizationError::BadTolerance);
    }
    let threshold = q_int(if q == 2 { 3 } else { 2 });
    let mut r = x.clone();
    let mut partial = BigRational::zero();
    let mut terms = Vec::new();
    let mut prev: Option<i64> = None;
    while r.abs() >= *tolerance && terms.len() < max_terms {
        let a = r.abs();
        let mut n = match prev {
            Some(p) => p + 1,
            None => {
                // smallest n with |r| q^n >= threshold, searching down from 0
                let mut n = 0i64;
                while &a * q_pow(q, n - 1) >= threshold {
                    n -= 1;
                }
                n
            }
        };
        while &a * q_pow(q, n) < threshold {
            n += 1;
        }
        let t = (&a * q_pow(q, n)).floor().to_integer();
        let t = t
            .to_u64()
            .ok_or_else(|| LocalizationError::OutOfRange(&a * q_pow(q, n)))?;
        let mut p = prev_prime(t).expect("T >= 2");
        if p == q {
            p = prev_prime(p - 1).expect("T >= 3 when q = 2");
        }
        let signed = if r.is_negative() { -BigInt::from(p) } else { BigInt::from(p) };
        let term = SeriesTerm {
            p: signed,
            n,
            partial_sum: BigRational::zero(),
        };
        let v = term.value(q);
        partial += &v;
        r -= v;
        terms.push(SeriesTerm {
            partial_sum: partial.clone(),
            ..term
        });
        prev = Some(n);
    }
    let series = PrimeSeries {
        x: x.clone(),
        q,
        terms,
        remainder: r,
    };
    if series.remainder.abs() >= *tolerance {
        return Err(LocalizationError::ToleranceNotReached(Box::new(series)));
    }
    Ok(series)
}

/// A term `s' p / s` of a representation in `S^{-1} Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepTerm {
    pub numerator_unit: BigInt,
    pub prime: BigInt,
    pub denominator: BigInt,
}

impl RepTerm {
    pub fn new(s_prime: i64, p: i64, s: i64) -> Self {
        RepTerm {
            numerator_unit: s_prime.into(),
            prime: p.into(),
            denominator: s.into(),
        }
    }

    pub fn value(&self) -> BigRational {
        BigRational::new(&self.numerator_unit * &self.prime, self.denominator.clone())
    }
}

pub fn representation_value(terms: &[RepTerm]) -> BigRational {
    terms.iter().map(RepTerm::value).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RescaleDirection {
    Multiply,
    Divide,
}

/// Folds `s^m` into every numerator (multiply) or denominator (divide), so
/// the represented value scales by `s^{+-m}` with the same number of terms.
pub fn rescale_representation(
    set: &MultiplicativeSet,
    terms: &[RepTerm],
    s: &BigInt,
    m: u32,
    direction: RescaleDirection,
) -> Result<Vec<RepTerm>, LocalizationError> {
    if !set.contains(s) {
        return Err(LocalizationError::NotInSystem(s.clone()));
    }
    for t in terms {
        for u in [&t.numerator_unit, &t.denominator] {
            if !set.contains(u) {
                return Err(LocalizationError::NotInSystem(u.clone()));
            }
        }
    }
    let factor = s.pow(m);
    Ok(terms
        .iter()
        .map(|t| match direction {
            RescaleDirection::Multiply => RepTerm {
                numerator_unit: &t.numerator_unit * &factor,
                ..t.clone()
            },
            RescaleDirection::Divide => RepTerm {
                denominator: &t.denominator * &factor,
                ..t.clone()
            },
        })
        .collect())
}
