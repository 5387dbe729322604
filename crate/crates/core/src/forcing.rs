//! Linear forcing algebras `A = K[x_1..x_n] / (f_1 x_1 + .. + f_n x_n + f)`
//! with constant `f_i`. Solving the relation for a pivot variable gives
//! `A ~ K[x_1..x_n without x_i]`, so decompositions transfer through the
//! normal form.

use thiserror::Error;

use crate::engine::{decompose, Decomposition, DecompositionMode, EngineError};
use crate::field::{Coefficient, FieldError, FieldSpec};
use crate::poly::{ExponentVector, PolyError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForcingError {
    #[error("the pivot coefficient is zero")]
    PivotCoefficientZero,
    #[error("pivot {0} out of range for {1} variables")]
    PivotOutOfRange(usize, usize),
    #[error("forcing decompositions need n >= 3 variables, got {0}")]
    UnsupportedArity(usize),
    #[error("element has {0} variables, the relation has {1}")]
    ArityMismatch(usize, usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// The relation `f_1 x_1 + .. + f_n x_n + f` and the variable solved for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcingData {
    field: FieldSpec,
    coefficients: Vec<Coefficient>,
    constant: Coefficient,
    pivot: usize,
}

impl ForcingData {
    /// `pivot` defaults to the first index with a nonzero coefficient.
    pub fn new(
        field: FieldSpec,
        coefficients: Vec<Coefficient>,
        constant: Coefficient,
        pivot: Option<usize>,
    ) -> Result<Self, ForcingError> {
        for c in coefficients.iter().chain([&constant]) {
            if !field.contains(c) {
                return Err(FieldError::Unrecognised(c.to_string()).into());
            }
        }
        let n = coefficients.len();
        let pivot = match pivot {
            Some(i) if i >= n => return Err(ForcingError::PivotOutOfRange(i, n)),
            Some(i) => i,
            None => coefficients
                .iter()
                .position(|c| !field.is_zero(c))
                .ok_or(ForcingError::PivotCoefficientZero)?,
        };
        if field.is_zero(&coefficients[pivot]) {
            return Err(ForcingError::PivotCoefficientZero);
        }
        Ok(ForcingData {
            field,
            coefficients,
            constant,
            pivot,
        })
    }

    /// Integer coefficients, for quick construction.
    pub fn from_i64s(
        field: FieldSpec,
        coefficients: &[i64],
        constant: i64,
        pivot: Option<usize>,
    ) -> Result<Self, ForcingError> {
        let cs = coefficients.iter().map(|&c| field.from_i64(c)).collect();
        let f = field.from_i64(constant);
        ForcingData::new(field, cs, f, pivot)
    }

    pub fn arity(&self) -> usize {
        self.coefficients.len()
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    fn check(&self, element: &Polynomial) -> Result<(), ForcingError> {
        if element.arity() != self.arity() {
            return Err(ForcingError::ArityMismatch(element.arity(), self.arity()));
        }
        if element.field() != &self.field {
            return Err(PolyError::FieldMismatch(element.field().clone(), self.field.clone()).into());
        }
        Ok(())
    }

    /// The relation as a polynomial in the variables of `like`.
    pub fn relation(&self, like: &Polynomial) -> Result<Polynomial, ForcingError> {
        self.check(like)?;
        let n = self.arity();
        let terms = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(k, c)| (ExponentVector::unit(n, k), c.clone()))
            .chain([(ExponentVector::zero(n), self.constant.clone())]);
        Ok(Polynomial::from_terms(self.field.clone(), like.vars(), terms)?)
    }

    /// `x_i -> -sum_{j != i} (f_j / f_i) x_j - f / f_i`.
    fn replacement(&self, like: &Polynomial) -> Result<Polynomial, ForcingError> {
        let fi = &self.coefficients[self.pivot];
        let rel = self.relation(like)?;
        let scale = self.field.neg(&self.field.inv(fi).ok_or(ForcingError::PivotCoefficientZero)?);
        let without_pivot = &rel - &like.monomial_like(ExponentVector::unit(self.arity(), self.pivot), fi.clone());
        Ok(without_pivot.scale(&scale))
    }

    /// Image of `element` in the polynomial ring without the pivot variable.
    /// Congruent elements have equal normal forms.
    pub fn normal_form(&self, element: &Polynomial) -> Result<Polynomial, ForcingError> {
        self.check(element)?;
        let r = self.replacement(element)?;
        Ok(element.substitute_linear(self.pivot, &r)?)
    }

    /// Re-embeds a polynomial in the surviving variables into the full ring.
    pub fn lift(&self, f: &Polynomial, pivot_name: &str) -> Result<Polynomial, ForcingError> {
        Ok(f.insert_variable(self.pivot, pivot_name)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcingDecomposition {
    pub normal_form: Polynomial,
    pub decomposition: Decomposition,
    /// Whether `sum(summands) - element` normalizes to zero, i.e. lies in
    /// the ideal of the relation.
    pub congruent: bool,
}

/// Decomposes the class of `element` in `A` through its normal form.
pub fn decompose_in_forcing(
    data: &ForcingData,
    element: &Polynomial,
    mode: DecompositionMode,
) -> Result<ForcingDecomposition, ForcingError> {
    let n = data.arity();
    if n <= 2 {
        return Err(ForcingError::UnsupportedArity(n));
    }
    let normal_form = data.normal_form(element)?;
    let decomposition = decompose(&normal_form, mode)?;
    let name = &element.vars()[data.pivot];
    let mut sum = element.zero_like();
    for f in decomposition.polynomials() {
        sum = sum.try_add(&data.lift(f, name)?)?;
    }
    let congruent = data.normal_form(&(&sum - element))?.is_zero();
    Ok(ForcingDecomposition {
        normal_form,
        decomposition,
        congruent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::certify;
    use crate::poly::{parse_polynomial, var_list};

    fn q(text: &str, vars: &str) -> Polynomial {
        parse_polynomial(text, &var_list(vars), &FieldSpec::Rationals).unwrap()
    }

    #[test]
    fn normal_forms() {
        let d = ForcingData::from_i64s(FieldSpec::Rationals, &[1, 1, 1], 0, Some(2)).unwrap();
        let x3 = q("x3", "x1,x2,x3");
        assert_eq!(d.normal_form(&x3).unwrap(), q("-x1 - x2", "x1,x2"));
        let rel = d.relation(&x3).unwrap();
        assert!(d.normal_form(&rel).unwrap().is_zero());

        let d = ForcingData::from_i64s(FieldSpec::Rationals, &[2, 0, 1], 3, None).unwrap();
        assert_eq!(d.pivot(), 0);
        let nf = d.normal_form(&q("x1 + x2", "x1,x2,x3")).unwrap();
        assert_eq!(nf, q("x2 - 1/2*x3 - 3/2", "x2,x3"));
    }

    #[test]
    fn pivot_errors() {
        assert_eq!(
            ForcingData::from_i64s(FieldSpec::Rationals, &[0, 1, 1], 0, Some(0)),
            Err(ForcingError::PivotCoefficientZero)
        );
        assert_eq!(
            ForcingData::from_i64s(FieldSpec::Rationals, &[0, 0, 0], 1, None),
            Err(ForcingError::PivotCoefficientZero)
        );
        let f5 = FieldSpec::prime(5).unwrap();
        // 5 = 0 in F5
        assert_eq!(
            ForcingData::from_i64s(f5, &[5, 1, 1], 0, Some(0)),
            Err(ForcingError::PivotCoefficientZero)
        );
    }

    #[test]
    fn decompositions_are_congruent() {
        let d = ForcingData::from_i64s(FieldSpec::Rationals, &[1, 2, 3, 4], 5, None).unwrap();
        let e = q("x4^2*x2 + 3*x1*x3 - 7", "x1,x2,x3,x4");
        let out = decompose_in_forcing(&d, &e, DecompositionMode::UniformPyramid).unwrap();
        assert!(out.congruent);
        assert!(certify(&out.decomposition).ok);

        let d = ForcingData::from_i64s(FieldSpec::Rationals, &[1, 1, 1], 0, None).unwrap();
        let out = decompose_in_forcing(&d, &q("4", "x,y,z"), DecompositionMode::UniformPyramid).unwrap();
        let got: Vec<String> = out.decomposition.polynomials().map(ToString::to_string).collect();
        assert_eq!(got, ["y + 4", "-y"]);

        let d = ForcingData::from_i64s(FieldSpec::Rationals, &[1, 1], 0, None).unwrap();
        assert_eq!(
            decompose_in_forcing(&d, &q("x", "x,y"), DecompositionMode::UniformPyramid),
            Err(ForcingError::UnsupportedArity(2))
        );
    }
}
