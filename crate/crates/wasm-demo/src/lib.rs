//! Browser bindings. Every export takes plain strings and returns a JSON
//! string: `{"ok": true, ...}` or `{"ok": false, "error": "..."}`, so the
//! page needs no glue beyond `JSON.parse`.

use goldbach_core::engine::{certify, decompose as engine_decompose, decomposition_to_json, session_report, DecompositionMode};
use goldbach_core::field::FieldSpec;
use goldbach_core::lattice::{hull_vertices, polygon_summands_2d, DecomposabilityVerdict, LatticePoint, OracleConfig};
use goldbach_core::localization::{dense_approx as core_dense_approx, MultiplicativeSet};
use goldbach_core::poly::{infer_variables, parse_polynomial, var_list};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(mut v) => {
            v["ok"] = json!(true);
            v.to_string()
        }
        Err(e) => json!({ "ok": false, "error": e }).to_string(),
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

pub fn decompose_value(poly: &str, vars: &str, field: &str, mode: &str) -> Result<Value, String> {
    let field: FieldSpec = field.parse().map_err(err)?;
    let vars = if vars.trim().is_empty() { infer_variables(poly).map_err(err)? } else { var_list(vars) };
    let h = parse_polynomial(poly, &vars, &field).map_err(err)?;
    let mode: DecompositionMode = mode.parse()?;
    let d = engine_decompose(&h, mode).map_err(err)?;
    let cert = certify(&d);
    Ok(json!({
        "report": session_report(&d),
        "summands": d.summands.iter().map(|(f, c)| json!({ "poly": f.to_string(), "kind": c.kind() })).collect::<Vec<_>>(),
        "certified": cert.ok,
        "failures": cert.failures,
        "document": decomposition_to_json(&d),
    }))
}

fn parse_points(text: &str) -> Result<Vec<LatticePoint>, String> {
    text.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.split(',')
                .map(|c| c.trim().parse::<BigInt>().map_err(|e| format!("`{p}`: {e}")))
                .collect::<Result<Vec<_>, _>>()
                .map(LatticePoint)
        })
        .collect()
}

fn rows(points: &[LatticePoint]) -> Vec<Vec<String>> {
    points.iter().map(|p| p.0.iter().map(ToString::to_string).collect()).collect()
}

pub fn polygon_summands_value(points: &str) -> Result<Value, String> {
    let pts = parse_points(points)?;
    let hull = hull_vertices(&pts).map_err(err)?;
    let verdict = polygon_summands_2d(&hull, &OracleConfig::default()).map_err(err)?;
    let hull_rows = rows(hull.vertices());
    Ok(match verdict {
        DecomposabilityVerdict::Indecomposable(c) => {
            json!({ "hull": hull_rows, "verdict": "indecomposable", "reason": c.to_string() })
        }
        DecomposabilityVerdict::Decomposable { a, b } => {
            json!({ "hull": hull_rows, "verdict": "decomposable", "a": rows(&a), "b": rows(&b) })
        }
        DecomposabilityVerdict::Unknown(why) => json!({ "hull": hull_rows, "verdict": "unknown", "reason": why }),
    })
}

pub fn dense_approx_value(gens: &str, x0: &str, y0: &str) -> Result<Value, String> {
    let gens = gens
        .split(',')
        .map(|g| g.trim().parse::<u64>().map_err(|e| format!("generator `{g}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    let s = MultiplicativeSet::new(&gens).map_err(err)?;
    let rational = |t: &str| t.trim().parse::<BigRational>().map_err(|e| format!("`{t}`: {e}"));
    let r = core_dense_approx(&s, &rational(x0)?, &rational(y0)?).map_err(err)?;
    let summand = r.summand();
    Ok(json!({
        "value": r.value.to_string(),
        "summand": summand.to_string(),
        "count": r.count().to_string(),
        "p": r.p.to_string(),
        "e": r.e,
        "n": r.n.to_string(),
        "n0": r.n0,
    }))
}

/// Certified decomposition of `poly`; `vars` may be empty to infer them.
#[wasm_bindgen]
pub fn decompose(poly: &str, vars: &str, field: &str, mode: &str) -> String {
    respond(decompose_value(poly, vars, field, mode))
}

/// Integral Minkowski summands of the polygon spanned by "a,b;c,d;...".
#[wasm_bindgen]
pub fn polygon_summands(points: &str) -> String {
    respond(polygon_summands_value(points))
}

/// A sum of equal irreducibles of Z localized at `gens` inside (x0, y0).
#[wasm_bindgen]
pub fn dense_approx(gens: &str, x0: &str, y0: &str) -> String {
    respond(dense_approx_value(gens, x0, y0))
}
