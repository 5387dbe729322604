//! Explicit decompositions of multivariate polynomials into sums of
//! absolutely irreducible polynomials, certified through Newton-polytope
//! gcd criteria, together with the companion constructions for localized
//! rings, linear forcing algebras and prime sums in localizations of `Z`.

pub mod engine;
pub mod field;
pub mod forcing;
pub mod lattice;
pub mod localization;
pub mod oracle;
pub mod poly;
pub mod primes;

pub use engine::{
    certify, decompose, select_w, Decomposition, DecompositionMode, EngineError,
    SummandCertificate, WChoice,
};
pub use field::{Coefficient, FieldError, FieldSpec};
pub use poly::{parse_polynomial, ExponentVector, ParseError, PolyError, Polynomial};
