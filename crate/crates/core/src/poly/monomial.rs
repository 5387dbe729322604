use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

/// Exponent vector of a monomial. Entries are arbitrary precision because the
/// two-variable construction produces exponents like `(i1+1)^(i2+1)`.
///
/// The `Ord` impl is graded lexicographic: total degree first, then the
/// first differing entry (larger exponent of an earlier variable wins).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<BigUint>);

impl ExponentVector {
    pub fn new(entries: Vec<BigUint>) -> Self {
        ExponentVector(entries)
    }

    pub fn from_u64s(entries: &[u64]) -> Self {
        ExponentVector(entries.iter().map(|&e| BigUint::from(e)).collect())
    }

    pub fn zero(arity: usize) -> Self {
        ExponentVector(vec![BigUint::zero(); arity])
    }

    /// The `k`-th unit vector.
    pub fn unit(arity: usize, k: usize) -> Self {
        let mut v = Self::zero(arity);
        v.0[k] = BigUint::one();
        v
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigUint> {
        self.0
    }

    pub fn total_degree(&self) -> BigUint {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// 0-based indices of nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// gcd of all entries; 0 for the zero vector.
    pub fn gcd(&self) -> BigUint {
        self.0.iter().fold(BigUint::zero(), |acc, e| acc.gcd(e))
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.arity(), other.arity());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Whether `self` divides `other` as monomials.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other - self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        self.divides(other)
            .then(|| ExponentVector(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn scale(&self, k: &BigUint) -> Self {
        ExponentVector(self.0.iter().map(|e| e * k).collect())
    }

    /// Entries as signed integers, for lattice geometry.
    pub fn to_signed(&self) -> Vec<BigInt> {
        self.0.iter().map(|e| BigInt::from(e.clone())).collect()
    }

    /// Copy with entry `k` removed.
    pub fn remove(&self, k: usize) -> Self {
        let mut v = self.0.clone();
        v.remove(k);
        ExponentVector(v)
    }

    /// Copy with a zero entry inserted at position `k`.
    pub fn insert_zero(&self, k: usize) -> Self {
        let mut v = self.0.clone();
        v.insert(k, BigUint::zero());
        ExponentVector(v)
    }

    /// Copy with positions `a` and `b` swapped.
    pub fn swapped(&self, a: usize, b: usize) -> Self {
        let mut v = self.0.clone();
        v.swap(a, b);
        ExponentVector(v)
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}
