//! Machine-readable decomposition documents:
//!
//! ```text
//! {input, field, vars, mode,
//!  summands: [{poly, certificate: {type, data}}],
//!  wChoices: [{monomial, w, p, permutation}]}
//! ```
//!
//! Polynomials are strings in the expression grammar (rationals as `a/b`),
//! exponents are JSON integers of any size, permutations are 1-based.

use std::str::FromStr;

use num_bigint::BigUint;
use serde_json::{json, Map, Number, Value};
use thiserror::Error;

use super::{Decomposition, DecompositionMode, SummandCertificate, WChoice};
use crate::field::FieldSpec;
use crate::poly::{parse_polynomial, ExponentVector, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("missing or malformed field `{0}`")]
    Field(&'static str),
    #[error("{0}")]
    Invalid(String),
    #[error("cannot parse `{text}`: {source}")]
    Parse { text: String, source: ParseError },
}

fn big(n: &BigUint) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("decimal digits"))
}

fn exponent(e: &ExponentVector) -> Value {
    Value::Array(e.entries().iter().map(big).collect())
}

fn certificate(c: &SummandCertificate) -> Value {
    let data = match c {
        SummandCertificate::SegmentGcd { endpoint } => json!({ "endpoint": exponent(endpoint) }),
        SummandCertificate::PyramidGcd { i, w } => json!({ "i": exponent(i), "w": exponent(w) }),
        SummandCertificate::Linear => Value::Null,
        SummandCertificate::WitnessSplit { witness } => {
            json!({ "witness": witness.iter().map(exponent).collect::<Vec<_>>() })
        }
    };
    json!({ "type": c.kind(), "data": data })
}

pub fn decomposition_to_json(d: &Decomposition) -> Value {
    let summands: Vec<Value> = d
        .summands
        .iter()
        .map(|(f, c)| json!({ "poly": f.to_string(), "certificate": certificate(c) }))
        .collect();
    let w_choices: Vec<Value> = d
        .w_choices
        .iter()
        .map(|wc| {
            json!({
                "monomial": exponent(&wc.monomial),
                "w": exponent(&wc.w),
                "p": wc.p.as_ref().map_or(Value::Null, big),
                "permutation": wc.permutation.iter().map(|k| k + 1).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "input": d.input.to_string(),
        "field": d.input.field().to_string(),
        "vars": d.input.vars(),
        "mode": d.mode.name(),
        "summands": summands,
        "wChoices": w_choices,
    })
}

fn get<'a>(obj: &'a Map<String, Value>, key: &'static str) -> Result<&'a Value, DocumentError> {
    obj.get(key).ok_or(DocumentError::Field(key))
}

fn read_big(v: &Value, key: &'static str) -> Result<BigUint, DocumentError> {
    match v {
        Value::Number(n) => BigUint::from_str(&n.to_string()).map_err(|_| DocumentError::Field(key)),
        _ => Err(DocumentError::Field(key)),
    }
}

fn read_exponent(v: &Value, key: &'static str, arity: usize) -> Result<ExponentVector, DocumentError> {
    let entries = v
        .as_array()
        .ok_or(DocumentError::Field(key))?
        .iter()
        .map(|x| read_big(x, key))
        .collect::<Result<Vec<_>, _>>()?;
    if entries.len() != arity {
        return Err(DocumentError::Invalid(format!(
            "`{key}` has {} entries, expected {arity}",
            entries.len()
        )));
    }
    Ok(ExponentVector::new(entries))
}

fn read_certificate(v: &Value, arity: usize) -> Result<SummandCertificate, DocumentError> {
    let obj = v.as_object().ok_or(DocumentError::Field("certificate"))?;
    let kind = get(obj, "type")?.as_str().ok_or(DocumentError::Field("type"))?;
    let data = obj.get("data").unwrap_or(&Value::Null);
    let field = |key: &'static str| data.get(key).ok_or(DocumentError::Field(key));
    Ok(match kind {
        "segment-gcd" => SummandCertificate::SegmentGcd {
            endpoint: read_exponent(field("endpoint")?, "endpoint", arity)?,
        },
        "pyramid-gcd" => SummandCertificate::PyramidGcd {
            i: read_exponent(field("i")?, "i", arity)?,
            w: read_exponent(field("w")?, "w", arity)?,
        },
        "linear" => SummandCertificate::Linear,
        "witness-split" => SummandCertificate::WitnessSplit {
            witness: field("witness")?
                .as_array()
                .ok_or(DocumentError::Field("witness"))?
                .iter()
                .map(|w| read_exponent(w, "witness", arity))
                .collect::<Result<_, _>>()?,
        },
        other => return Err(DocumentError::Invalid(format!("unknown certificate type `{other}`"))),
    })
}

fn read_permutation(v: &Value, arity: usize) -> Result<Vec<usize>, DocumentError> {
    let perm = v
        .as_array()
        .ok_or(DocumentError::Field("permutation"))?
        .iter()
        .map(|k| {
            k.as_u64()
                .and_then(|k| usize::try_from(k).ok())
                .filter(|&k| (1..=arity).contains(&k))
                .map(|k| k - 1)
                .ok_or(DocumentError::Field("permutation"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut seen = perm.clone();
    seen.sort_unstable();
    if seen != (0..arity).collect::<Vec<_>>() {
        return Err(DocumentError::Invalid("`permutation` is not a permutation".into()));
    }
    Ok(perm)
}

/// Parses a document produced by [`decomposition_to_json`] (or written by
/// hand). Only the shape is validated; the mathematics is left to `certify`.
pub fn decomposition_from_json(v: &Value) -> Result<Decomposition, DocumentError> {
    let obj = v.as_object().ok_or(DocumentError::Invalid("expected a JSON object".into()))?;
    let field: FieldSpec = get(obj, "field")?
        .as_str()
        .ok_or(DocumentError::Field("field"))?
        .parse()
        .map_err(|e: crate::field::FieldError| DocumentError::Invalid(e.to_string()))?;
    let vars: Vec<String> = get(obj, "vars")?
        .as_array()
        .ok_or(DocumentError::Field("vars"))?
        .iter()
        .map(|x| x.as_str().map(str::to_string).ok_or(DocumentError::Field("vars")))
        .collect::<Result<_, _>>()?;
    let mode: DecompositionMode = get(obj, "mode")?
        .as_str()
        .ok_or(DocumentError::Field("mode"))?
        .parse()
        .map_err(DocumentError::Invalid)?;
    let poly = |text: &str| {
        parse_polynomial(text, &vars, &field).map_err(|source| DocumentError::Parse {
            text: text.to_string(),
            source,
        })
    };
    let input = poly(get(obj, "input")?.as_str().ok_or(DocumentError::Field("input"))?)?;
    let n = vars.len();

    let summands = get(obj, "summands")?
        .as_array()
        .ok_or(DocumentError::Field("summands"))?
        .iter()
        .map(|s| {
            let text = s.get("poly").and_then(Value::as_str).ok_or(DocumentError::Field("poly"))?;
            let cert = s.get("certificate").ok_or(DocumentError::Field("certificate"))?;
            Ok((poly(text)?, read_certificate(cert, n)?))
        })
        .collect::<Result<Vec<_>, DocumentError>>()?;

    let w_choices = match obj.get("wChoices") {
        None | Some(Value::Null) => Vec::new(),
        Some(Value::Array(items)) => items
            .iter()
            .map(|wc| {
                let at = |key: &'static str| wc.get(key).ok_or(DocumentError::Field(key));
                Ok(WChoice {
                    monomial: read_exponent(at("monomial")?, "monomial", n)?,
                    w: read_exponent(at("w")?, "w", n)?,
                    p: match wc.get("p") {
                        None | Some(Value::Null) => None,
                        Some(p) => Some(read_big(p, "p")?),
                    },
                    permutation: read_permutation(at("permutation")?, n)?,
                })
            })
            .collect::<Result<Vec<_>, DocumentError>>()?,
        Some(_) => return Err(DocumentError::Field("wChoices")),
    };

    Ok(Decomposition {
        input,
        mode,
        summands,
        w_choices,
    })
}
