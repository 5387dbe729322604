//! Coefficient fields: the rationals, prime fields and small extensions of
//! prime fields (the latter only used by the brute-force oracle).

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::primes::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("field modulus must be non-zero")]
    ZeroModulus,
    #[error("field modulus {0} is not prime")]
    NotPrime(u64),
    #[error("field modulus {0} is too large (must be below 2^63)")]
    ModulusTooLarge(u64),
    #[error("extension degree must be at least 2, got {0}")]
    BadExtensionDegree(u32),
    #[error("extension field of size {p}^{k} is too large")]
    ExtensionTooLarge { p: u64, k: u32 },
    #[error("division by zero in the coefficient field")]
    DivisionByZero,
    #[error("unrecognised field `{0}` (expected QQ, F<p> or GF(<p>^<k>))")]
    Unrecognised(String),
}

/// `F_p[t] / (modulus)`, with `modulus` monic irreducible of degree `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtensionField {
    p: u64,
    /// Coefficients of the monic modulus, lowest degree first, length `k + 1`.
    modulus: Vec<u64>,
}

impl ExtensionField {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        (self.modulus.len() - 1) as u32
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn k(&self) -> usize {
        self.modulus.len() - 1
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p as u128;
        let k = self.k();
        let mut prod = vec![0u128; 2 * k - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + *x as u128 * *y as u128) % p;
            }
        }
        // reduce top-down with t^k = -(m_0 + ... + m_{k-1} t^{k-1})
        for d in (k..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (j, m) in self.modulus[..k].iter().enumerate() {
                let idx = d - k + j;
                prod[idx] = (prod[idx] + (p - c) * *m as u128) % p;
            }
        }
        prod[..k].iter().map(|&c| c as u64).collect()
    }

    fn pow(&self, a: &[u64], mut e: u128) -> Vec<u64> {
        let mut acc = self.one();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.k()];
        v[0] = 1;
        v
    }

    fn size(&self) -> u128 {
        (self.p as u128).pow(self.degree())
    }
}

/// Smallest (in lexicographic order of coefficients) monic irreducible
/// polynomial of degree `k` over `F_p`, found by trial division.
fn find_irreducible(p: u64, k: u32) -> Vec<u64> {
    let k = k as usize;
    let count = (p as u128).pow(k as u32);
    'candidates: for idx in 0..count {
        let mut m = digits(idx, p, k);
        m.push(1);
        if m[0] == 0 {
            continue;
        }
        for d in 1..=k / 2 {
            let dcount = (p as u128).pow(d as u32);
            for didx in 0..dcount {
                let mut g = digits(didx, p, d);
                g.push(1);
                if univariate_rem(&m, &g, p).iter().all(|&c| c == 0) {
                    continue 'candidates;
                }
            }
        }
        return m;
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

fn digits(mut idx: u128, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len + 1);
    for _ in 0..len {
        out.push((idx % p as u128) as u64);
        idx /= p as u128;
    }
    out
}

/// Remainder of `a` by monic `g` over `F_p`, coefficients lowest first.
fn univariate_rem(a: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        for (j, gc) in g.iter().enumerate() {
            let sub = (lead as u128 * *gc as u128 % p as u128) as u64;
            r[shift + j] = (r[shift + j] + p - sub) % p;
        }
        r.pop();
    }
    r
}

/// The coefficient field of a polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
    Extension(Arc<ExtensionField>),
}

/// A field element. Its meaning depends on the [`FieldSpec`] it is used with.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Rational(BigRational),
    Residue(u64),
    /// Coordinates in the power basis `1, t, ..., t^{k-1}`.
    Extension(Vec<u64>),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p == 0 {
            return Err(FieldError::ZeroModulus);
        }
        if p >= 1 << 63 {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    /// `F_{p^k}` represented as `F_p[t]/(m)` with a fixed irreducible `m`.
    pub fn extension(p: u64, k: u32) -> Result<Self, FieldError> {
        FieldSpec::prime(p)?;
        if k < 2 {
            return Err(FieldError::BadExtensionDegree(k));
        }
        if (p as f64).powi(k as i32) > 1e12 {
            return Err(FieldError::ExtensionTooLarge { p, k });
        }
        let modulus = find_irreducible(p, k);
        Ok(FieldSpec::Extension(Arc::new(ExtensionField { p, modulus })))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
            FieldSpec::Extension(e) => e.p,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn size(&self) -> Option<u128> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(*p as u128),
            FieldSpec::Extension(e) => Some(e.size()),
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, FieldSpec::Rationals)
    }

    pub fn zero(&self) -> Coefficient {
        match self {
            FieldSpec::Rationals => Coefficient::Rational(BigRational::zero()),
            FieldSpec::PrimeField(_) => Coefficient::Residue(0),
            FieldSpec::Extension(e) => Coefficient::Extension(vec![0; e.k()]),
        }
    }

    pub fn one(&self) -> Coefficient {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Coefficient {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coefficient {
        match self {
            FieldSpec::Rationals => Coefficient::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::PrimeField(p) => Coefficient::Residue(reduce(n, *p)),
            FieldSpec::Extension(e) => {
                let mut v = vec![0; e.k()];
                v[0] = reduce(n, e.p);
                Coefficient::Extension(v)
            }
        }
    }

    /// Image of the rational `num/den` in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Coefficient, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match self {
            FieldSpec::Rationals => Ok(Coefficient::Rational(BigRational::new(
                num.clone(),
                den.clone(),
            ))),
            _ => {
                let d = self.from_bigint(den);
                let inv = self.inv(&d).ok_or(FieldError::DivisionByZero)?;
                Ok(self.mul(&self.from_bigint(num), &inv))
            }
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Coefficient, FieldError> {
        self.from_ratio(q.numer(), q.denom())
    }

    pub fn is_zero(&self, c: &Coefficient) -> bool {
        match c {
            Coefficient::Rational(q) => q.is_zero(),
            Coefficient::Residue(r) => *r == 0,
            Coefficient::Extension(v) => v.iter().all(|&x| x == 0),
        }
    }

    pub fn is_one(&self, c: &Coefficient) -> bool {
        *c == self.one()
    }

    pub fn add(&self, a: &Coefficient, b: &Coefficient) -> Coefficient {
        match (self, a, b) {
            (FieldSpec::Rationals, Coefficient::Rational(x), Coefficient::Rational(y)) => {
                Coefficient::Rational(x + y)
            }
            (FieldSpec::PrimeField(p), Coefficient::Residue(x), Coefficient::Residue(y)) => {
                Coefficient::Residue(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            (FieldSpec::Extension(e), Coefficient::Extension(x), Coefficient::Extension(y)) => {
                Coefficient::Extension(e.add(x, y))
            }
            _ => panic!("coefficient does not belong to field {self}"),
        }
    }

    pub fn neg(&self, a: &Coefficient) -> Coefficient {
        match (self, a) {
            (FieldSpec::Rationals, Coefficient::Rational(x)) => Coefficient::Rational(-x),
            (FieldSpec::PrimeField(p), Coefficient::Residue(x)) => Coefficient::Residue((p - x) % p),
            (FieldSpec::Extension(e), Coefficient::Extension(x)) => Coefficient::Extension(e.neg(x)),
            _ => panic!("coefficient does not belong to field {self}"),
        }
    }

    pub fn sub(&self, a: &Coefficient, b: &Coefficient) -> Coefficient {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coefficient, b: &Coefficient) -> Coefficient {
        match (self, a, b) {
            (FieldSpec::Rationals, Coefficient::Rational(x), Coefficient::Rational(y)) => {
                Coefficient::Rational(x * y)
            }
            (FieldSpec::PrimeField(p), Coefficient::Residue(x), Coefficient::Residue(y)) => {
                Coefficient::Residue((*x as u128 * *y as u128 % *p as u128) as u64)
            }
            (FieldSpec::Extension(e), Coefficient::Extension(x), Coefficient::Extension(y)) => {
                Coefficient::Extension(e.mul(x, y))
            }
            _ => panic!("coefficient does not belong to field {self}"),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: &Coefficient) -> Option<Coefficient> {
        if self.is_zero(a) {
            return None;
        }
        Some(match (self, a) {
            (FieldSpec::Rationals, Coefficient::Rational(x)) => Coefficient::Rational(x.recip()),
            (FieldSpec::PrimeField(p), Coefficient::Residue(x)) => {
                let inv = BigInt::from(*x).modpow(&BigInt::from(p - 2), &BigInt::from(*p));
                Coefficient::Residue(inv.to_u64().expect("residue fits"))
            }
            (FieldSpec::Extension(e), Coefficient::Extension(x)) => {
                Coefficient::Extension(e.pow(x, e.size() - 2))
            }
            _ => panic!("coefficient does not belong to field {self}"),
        })
    }

    pub fn div(&self, a: &Coefficient, b: &Coefficient) -> Result<Coefficient, FieldError> {
        let inv = self.inv(b).ok_or(FieldError::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    /// The `idx`-th element in the fixed enumeration order of a finite field
    /// (index 0 is zero, index 1 is one).
    pub fn element(&self, idx: u128) -> Coefficient {
        match self {
            FieldSpec::Rationals => panic!("the rationals are not enumerable here"),
            FieldSpec::PrimeField(p) => Coefficient::Residue((idx % *p as u128) as u64),
            FieldSpec::Extension(e) => Coefficient::Extension(digits(idx, e.p, e.k())),
        }
    }

    /// Whether `c` is a valid canonical element of this field.
    pub fn contains(&self, c: &Coefficient) -> bool {
        match (self, c) {
            (FieldSpec::Rationals, Coefficient::Rational(q)) => q.denom().is_positive(),
            (FieldSpec::PrimeField(p), Coefficient::Residue(r)) => r < p,
            (FieldSpec::Extension(e), Coefficient::Extension(v)) => {
                v.len() == e.k() && v.iter().all(|x| *x < e.p)
            }
            _ => false,
        }
    }
}

fn reduce(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
            FieldSpec::Extension(e) => write!(f, "GF({}^{})", e.p, e.degree()),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "QQ" || t == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let bad = || FieldError::Unrecognised(s.to_string());
        if let Some(rest) = t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
            return match rest.split_once('^') {
                Some((p, k)) => {
                    let p = p.trim().parse().map_err(|_| bad())?;
                    let k = k.trim().parse().map_err(|_| bad())?;
                    FieldSpec::extension(p, k)
                }
                None => FieldSpec::prime(rest.trim().parse().map_err(|_| bad())?),
            };
        }
        let digits = t
            .strip_prefix("Fp")
            .or_else(|| t.strip_prefix('F'))
            .or_else(|| t.strip_prefix("ZZ/"))
            .ok_or_else(bad)?;
        FieldSpec::prime(digits.parse().map_err(|_| bad())?)
    }
}

/// Writes a coefficient for display. Rationals as `a` or `a/b`, residues as
/// their canonical representative, extension elements as `(c_0 + c_1*t + ...)`.
pub(crate) fn write_coefficient(c: &Coefficient) -> String {
    match c {
        Coefficient::Rational(q) => {
            if q.is_integer() {
                q.numer().to_string()
            } else {
                format!("{}/{}", q.numer(), q.denom())
            }
        }
        Coefficient::Residue(r) => r.to_string(),
        Coefficient::Extension(v) => {
            let mut parts = Vec::new();
            for (d, c) in v.iter().enumerate().rev() {
                if *c == 0 {
                    continue;
                }
                let mono = match d {
                    0 => String::new(),
                    1 => "t".to_string(),
                    _ => format!("t^{d}"),
                };
                parts.push(match (c, d) {
                    (_, 0) => c.to_string(),
                    (1, _) => mono,
                    _ => format!("{c}*{mono}"),
                });
            }
            if parts.is_empty() {
                "0".into()
            } else {
                format!("({})", parts.join(" + "))
            }
        }
    }
}

impl Coefficient {
    /// Whether the coefficient is "negative" for display purposes.
    /// Only rationals carry a sign.
    pub(crate) fn is_negative(&self) -> bool {
        matches!(self, Coefficient::Rational(q) if q.is_negative())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coefficient::Rational(q) => Some(q),
            _ => None,
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_coefficient(self))
    }
}

/// Convenience: `BigRational` from two machine integers.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_construction() {
        assert_eq!(FieldSpec::prime(0), Err(FieldError::ZeroModulus));
        assert_eq!(FieldSpec::prime(9), Err(FieldError::NotPrime(9)));
        assert_eq!(FieldSpec::prime(1), Err(FieldError::NotPrime(1)));
        assert_eq!(FieldSpec::prime(5), Ok(FieldSpec::PrimeField(5)));
    }

    #[test]
    fn parse_field_names() {
        assert_eq!("QQ".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("F2".parse::<FieldSpec>().unwrap(), FieldSpec::PrimeField(2));
        assert_eq!("Fp7".parse::<FieldSpec>().unwrap(), FieldSpec::PrimeField(7));
        assert_eq!("GF(5)".parse::<FieldSpec>().unwrap(), FieldSpec::PrimeField(5));
        assert!(matches!("F4".parse::<FieldSpec>(), Err(FieldError::NotPrime(4))));
        assert!("RR".parse::<FieldSpec>().is_err());
        let gf8: FieldSpec = "GF(2^3)".parse().unwrap();
        assert_eq!(gf8.size(), Some(8));
        assert_eq!(gf8.to_string(), "GF(2^3)");
    }

    #[test]
    fn residues_are_reduced() {
        let f = FieldSpec::PrimeField(5);
        assert_eq!(f.from_i64(-7), Coefficient::Residue(3));
        assert_eq!(f.from_ratio(&1.into(), &2.into()).unwrap(), Coefficient::Residue(3));
        assert_eq!(f.from_ratio(&1.into(), &5.into()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = FieldSpec::Rationals;
        let c = q.from_ratio(&BigInt::from(4), &BigInt::from(-6)).unwrap();
        let r = c.as_rational().unwrap();
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(r.denom(), &BigInt::from(3));
        assert!(q.contains(&c));
    }

    #[test]
    fn extension_field_axioms() {
        for (p, k) in [(2u64, 2u32), (2, 3), (3, 2)] {
            let f = FieldSpec::extension(p, k).unwrap();
            let n = f.size().unwrap();
            let els: Vec<_> = (0..n).map(|i| f.element(i)).collect();
            for a in &els {
                if !f.is_zero(a) {
                    let inv = f.inv(a).unwrap();
                    assert_eq!(f.mul(a, &inv), f.one(), "{f}: inverse of {a}");
                }
                for b in &els {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in &els {
                        let lhs = f.mul(a, &f.add(b, c));
                        let rhs = f.add(&f.mul(a, b), &f.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn gf4_modulus_is_the_unique_quadratic() {
        let FieldSpec::Extension(e) = FieldSpec::extension(2, 2).unwrap() else {
            unreachable!()
        };
        assert_eq!(e.modulus(), &[1, 1, 1]);
    }
}
