//! One function per subcommand. Each prints to stdout and reports failures
//! through [`CliError`].

use std::io::Read;

use goldbach_core::engine::{
    certify as certify_decomposition, decompose as engine_decompose, decomposition_from_json,
    decomposition_to_json, localize_decompose, session_report, split_by_witness, DecompositionMode,
    MultiplicativeSystem,
};
use goldbach_core::field::FieldSpec;
use goldbach_core::forcing::{decompose_in_forcing, ForcingData};
use goldbach_core::lattice::{
    gcd_of_family, gcd_of_vector, goldbach_condition_check, hull_vertices, matrix_text,
    polygon_summands_2d, pyramid_indecomposable, segment_indecomposable, DecomposabilityVerdict,
    GoldbachVerdict, LatticePoint, OracleConfig,
};
use goldbach_core::localization::{
    dense_approx, greedy_prime_series, representation_value, rescale_representation,
    LocalizationError, MultiplicativeSet, PrimeSeries, RepTerm, RescaleDirection,
};
use goldbach_core::oracle::{
    check_sum_of_irreducibles, enumerate_polynomials, extension_spot_check, irreducibility_search,
    verify_quotient_identity,
};
use goldbach_core::poly::{var_list, ExponentVector, Polynomial};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::args::{self, domain, CliError, CliResult, POINTS_GRAMMAR};

fn mode(text: &str) -> CliResult<DecompositionMode> {
    text.parse()
        .map_err(|e: String| CliError::usage("--mode", e, "shortcut | pyramid | localization"))
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

pub fn decompose(
    poly: &str,
    vars: Option<&str>,
    field: &str,
    mode_text: &str,
    json: bool,
    denominator: Option<&str>,
) -> CliResult {
    let field = args::field(field)?;
    let h = args::poly("--poly", poly, vars, &field)?;
    if let Some(w) = denominator {
        let w = args::poly("--denominator", w, Some(&h.vars().join(",")), &field)?;
        let ld = localize_decompose(&h, &w, MultiplicativeSystem::Monomials).map_err(domain)?;
        if json {
            let mut doc = decomposition_to_json(&ld.decomposition);
            doc["denominator"] = json!(w.to_string());
            print_json(&doc);
        } else {
            println!("({h})/({w}) = sum of {} fractions:", ld.decomposition.summands.len());
            println!();
            for (num, den) in ld.fractions() {
                println!("  ({num})/({den})");
            }
        }
        return Ok(());
    }
    let d = engine_decompose(&h, mode(mode_text)?).map_err(domain)?;
    if json {
        print_json(&decomposition_to_json(&d));
    } else {
        print!("{}", session_report(&d));
    }
    Ok(())
}

pub fn certify(file: &str) -> CliResult {
    let text = if file == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(domain)?;
        s
    } else {
        std::fs::read_to_string(file).map_err(|e| domain(format!("{file}: {e}")))?
    };
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| domain(format!("not JSON: {e}")))?;
    let d = decomposition_from_json(&value).map_err(domain)?;
    let report = certify_decomposition(&d);
    if report.ok {
        println!("ok: {} summands of {} verified", d.summands.len(), d.input);
        Ok(())
    } else {
        println!("FAILED");
        for f in &report.failures {
            println!("  {f}");
        }
        Err(CliError::Domain(format!("{} check(s) failed", report.failures.len())))
    }
}

fn verdict_text(v: &DecomposabilityVerdict) -> String {
    match v {
        DecomposabilityVerdict::Indecomposable(c) => format!("indecomposable ({c})"),
        DecomposabilityVerdict::Decomposable { a, b } => format!(
            "decomposable\nA =\n{}\nB =\n{}",
            matrix_text(a),
            matrix_text(b)
        ),
        DecomposabilityVerdict::Unknown(why) => format!("unknown: {why}"),
    }
}

pub fn hull(points: Option<&str>, poly: Option<&str>, vars: Option<&str>) -> CliResult {
    let pts = match (points, poly) {
        (Some(p), _) => args::points("--points", p)?,
        (None, Some(text)) => {
            let f = args::poly("--poly", text, vars, &FieldSpec::Rationals)?;
            f.support().iter().map(LatticePoint::from).collect()
        }
        (None, None) => unreachable!("clap requires one of them"),
    };
    let h = hull_vertices(&pts).map_err(domain)?;
    println!("{}", h.to_matrix_text());
    Ok(())
}

pub fn segment(a: &str, b: &str) -> CliResult {
    let a = args::point("--a", a)?;
    let b = args::point("--b", b)?;
    let ok = segment_indecomposable(&a, &b).map_err(domain)?;
    let g = if a.dim() == b.dim() { gcd_of_vector(&b.sub(&a).0) } else { 0u32.into() };
    println!("{} (gcd {g})", if ok { "indecomposable" } else { "decomposable" });
    Ok(())
}

pub fn pyramid(base: &str, apex: &str) -> CliResult {
    let base = args::points("--base", base)?;
    let apex = args::point("--apex", apex)?;
    let ok = pyramid_indecomposable(&base, &apex).map_err(domain)?;
    let diffs: Vec<LatticePoint> = hull_vertices(&base)
        .map_err(domain)?
        .vertices()
        .iter()
        .map(|v| apex.sub(v))
        .collect();
    let g = gcd_of_family(diffs.iter().map(|d| d.0.as_slice()));
    println!("{} (gcd {g})", if ok { "indecomposable" } else { "decomposable" });
    Ok(())
}

pub fn summands(points: &str, budget: u64, coord_bound: u64) -> CliResult {
    let pts = args::points("--points", points)?;
    let poly = hull_vertices(&pts).map_err(domain)?;
    let v = polygon_summands_2d(&poly, &OracleConfig { coord_bound, budget }).map_err(domain)?;
    println!("{}", verdict_text(&v));
    Ok(())
}

pub fn goldbach(points: &str, witness: &str) -> CliResult {
    let pts = args::points("--points", points)?;
    let wit = args::points("--witness", witness)?;
    let poly = hull_vertices(&pts).map_err(domain)?;
    let r = goldbach_condition_check(&poly, &wit, &OracleConfig::default()).map_err(domain)?;
    let show = |v: &Option<DecomposabilityVerdict>| match v {
        Some(v) => verdict_text(v).lines().next().unwrap_or_default().to_string(),
        None => "not checked".into(),
    };
    println!("(i)   witness hull: {}", show(&r.witness_hull));
    println!("(ii)  supports disjoint: {}", r.supports_disjoint);
    println!("(iii) joint hull: {}", show(&r.joint_hull));
    match r.verdict {
        GoldbachVerdict::Holds => println!("holds"),
        GoldbachVerdict::Fails(why) => println!("fails: {why}"),
        GoldbachVerdict::Unknown(why) => println!("unknown: {why}"),
    }
    Ok(())
}

pub fn witness_split(poly: &str, vars: Option<&str>, field: &str, witness: &str) -> CliResult {
    let field = args::field(field)?;
    let f = args::poly("--poly", poly, vars, &field)?;
    let w: Vec<ExponentVector> = args::exponents("--witness", witness)?;
    if w.iter().any(|e| e.arity() != f.arity()) {
        return Err(CliError::usage(
            "--witness",
            format!("points must have {} coordinates", f.arity()),
            POINTS_GRAMMAR,
        ));
    }
    let out = split_by_witness(&f, &w, &OracleConfig::default()).map_err(domain)?;
    println!("f1 = {}", out.f1);
    println!("f2 = {}", out.f2);
    println!("both absolutely irreducible; f1 + f2 = {f}");
    Ok(())
}

fn finite_field(text: &str) -> CliResult<FieldSpec> {
    let f = args::field(text)?;
    if !f.is_finite() {
        return Err(CliError::usage("--field", "exhaustive searches need a finite field", "F<p> | GF(p^k)"));
    }
    Ok(f)
}

pub fn irreducible(poly: &str, vars: Option<&str>, field: &str, extensions: u32, budget: u64) -> CliResult {
    let field = finite_field(field)?;
    let f = args::poly("--poly", poly, vars, &field)?;
    let v = irreducibility_search(&f, budget).map_err(domain)?;
    match &v.factorization {
        None => println!("irreducible over {field}"),
        Some((g, h)) => println!("reducible over {field}: ({g})*({h})"),
    }
    println!("candidates tried: {}", v.candidates);
    if extensions > 1 {
        let checks = extension_spot_check(&f, extensions, budget).map_err(domain)?;
        println!("extension spot check (evidence only, not a proof):");
        for (ext, r) in checks.iter().skip(1) {
            match r {
                Ok(true) => println!("  {ext}: irreducible"),
                Ok(false) => println!("  {ext}: reducible"),
                Err(e) => println!("  {ext}: {e}"),
            }
        }
    }
    Ok(())
}

pub fn sum(
    target: &str,
    vars: Option<&str>,
    field: &str,
    k: usize,
    deg: u64,
    budget: u64,
    verbose: bool,
) -> CliResult {
    let field = finite_field(field)?;
    let t = args::poly("--target", target, vars, &field)?;
    let s = check_sum_of_irreducibles(&t, k, deg, budget).map_err(domain)?;
    match &s.witness {
        None => println!("None"),
        Some(w) => println!("{{{}}}", w.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")),
    }
    if verbose {
        println!("polynomials enumerated: {}", s.enumerated);
        println!("irreducible: {}", s.irreducibles);
        println!("tuples tried: {}", s.tuples);
    }
    Ok(())
}

pub fn enumerate(vars: &str, field: &str, deg: u64, budget: u64) -> CliResult {
    let field = finite_field(field)?;
    let it = enumerate_polynomials(&field, &var_list(vars), deg, budget).map_err(domain)?;
    for f in it {
        println!("{f}");
    }
    Ok(())
}

pub fn identity(p: u64, i: u64) -> CliResult {
    if p == 0 || i == 0 {
        return Err(CliError::usage("--p/--i", "both must be at least 1", "natural >= 1"));
    }
    if verify_quotient_identity(p, i) {
        println!("true");
        Ok(())
    } else {
        println!("false");
        Err(CliError::Domain("identity does not hold".into()))
    }
}

fn set(gens: &str) -> CliResult<MultiplicativeSet> {
    MultiplicativeSet::new(&args::u64_list("--gens", gens)?)
        .map_err(|e| CliError::usage("--gens", e, "comma-separated primes, e.g. 2,5"))
}

pub fn approx(gens: &str, x0: &str, y0: &str, decimals: Option<u32>, explain: bool) -> CliResult {
    let s = set(gens)?;
    let x0 = args::rational("--interval", x0)?;
    let y0 = args::rational("--interval", y0)?;
    let r = dense_approx(&s, &x0, &y0).map_err(domain)?;
    println!("{}", args::show(&r.value));
    if let Some(d) = decimals {
        println!("~ {}", args::decimal(&r.value, d));
    }
    if explain {
        println!("S = {s}, n0 = {}, p = {}, e = {}, n = {}", r.n0, r.p, r.e, r.n);
        println!("value = {} * {}", r.count(), args::show(&r.summand()));
    }
    Ok(())
}

fn print_series(s: &PrimeSeries, decimals: Option<u32>) {
    for t in &s.terms {
        match decimals {
            Some(d) => println!("{} {} {} {} ~ {}", t.p, s.q, t.n, args::show(&t.partial_sum), args::decimal(&t.partial_sum, d)),
            None => println!("{} {} {} {}", t.p, s.q, t.n, args::show(&t.partial_sum)),
        }
    }
    println!("remainder {}", args::show(&s.remainder));
}

pub fn series(x: &str, q: u64, tol: &str, max_terms: usize, decimals: Option<u32>) -> CliResult {
    let x = args::rational("--x", x)?;
    let tol = args::rational("--tol", tol)?;
    match greedy_prime_series(&x, q, &tol, max_terms) {
        Ok(s) => {
            print_series(&s, decimals);
            Ok(())
        }
        Err(LocalizationError::ToleranceNotReached(s)) => {
            print_series(&s, decimals);
            Err(CliError::Domain(format!("tolerance not reached within {max_terms} terms")))
        }
        Err(e @ LocalizationError::NotPrime(_)) => Err(CliError::usage("--q", e, "a prime")),
        Err(e @ LocalizationError::BadTolerance) => Err(CliError::usage("--tol", e, "positive rational")),
        Err(e) => Err(domain(e)),
    }
}

pub fn rescale(gens: &str, terms: &str, s: &str, m: u32, direction: &str) -> CliResult {
    let set = set(gens)?;
    let direction = match direction {
        "multiply" => RescaleDirection::Multiply,
        "divide" => RescaleDirection::Divide,
        other => return Err(CliError::usage("--direction", format!("`{other}`"), "multiply | divide")),
    };
    let terms: Vec<RepTerm> = args::points("--terms", terms)?
        .into_iter()
        .map(|p| match p.0.as_slice() {
            [a, b, c] => Ok(RepTerm {
                numerator_unit: a.clone(),
                prime: b.clone(),
                denominator: c.clone(),
            }),
            _ => Err(CliError::usage("--terms", "each term needs s',p,s", "terms := s',p,s (';' s',p,s)*")),
        })
        .collect::<Result<_, _>>()?;
    let s: BigInt = s.parse().map_err(|e| CliError::usage("--s", e, "integer"))?;
    let out = rescale_representation(&set, &terms, &s, m, direction).map_err(domain)?;
    for t in &out {
        println!("{} {} {}", t.numerator_unit, t.prime, t.denominator);
    }
    println!("value {}", args::show(&representation_value(&out)));
    Ok(())
}

fn forcing_data(f: &Polynomial, coeffs: &str, constant: &str, pivot: Option<usize>) -> CliResult<ForcingData> {
    let field = f.field();
    let to_field = |flag: &'static str, t: &str| {
        let q = args::rational(flag, t)?;
        field.from_rational(&q).map_err(|e| CliError::usage(flag, e, ""))
    };
    let cs = coeffs
        .split(',')
        .map(|c| to_field("--coeffs", c))
        .collect::<Result<Vec<_>, _>>()?;
    if cs.len() != f.arity() {
        return Err(CliError::usage(
            "--coeffs",
            format!("{} coefficients for {} variables", cs.len(), f.arity()),
            "f1,..,fn",
        ));
    }
    let pivot = match pivot {
        Some(0) => return Err(CliError::usage("--pivot", "pivots are 1-based", "1..n")),
        p => p.map(|p| p - 1),
    };
    ForcingData::new(field.clone(), cs, to_field("--constant", constant)?, pivot).map_err(domain)
}

pub fn forcing_normal_form(
    poly: &str,
    vars: Option<&str>,
    field: &str,
    coeffs: &str,
    constant: &str,
    pivot: Option<usize>,
) -> CliResult {
    let field = args::field(field)?;
    let f = args::poly("--poly", poly, vars, &field)?;
    let data = forcing_data(&f, coeffs, constant, pivot)?;
    println!("{}", data.normal_form(&f).map_err(domain)?);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn forcing_decompose(
    poly: &str,
    vars: Option<&str>,
    field: &str,
    coeffs: &str,
    constant: &str,
    pivot: Option<usize>,
    mode_text: &str,
    json: bool,
) -> CliResult {
    let field = args::field(field)?;
    let f = args::poly("--poly", poly, vars, &field)?;
    let data = forcing_data(&f, coeffs, constant, pivot)?;
    let out = decompose_in_forcing(&data, &f, mode(mode_text)?).map_err(domain)?;
    let cert = certify_decomposition(&out.decomposition);
    if json {
        print_json(&json!({
            "relation": data.relation(&f).map_err(domain)?.to_string(),
            "normalForm": out.normal_form.to_string(),
            "congruent": out.congruent,
            "decomposition": decomposition_to_json(&out.decomposition),
        }));
    } else {
        println!("relation: {} = 0", data.relation(&f).map_err(domain)?);
        println!("normal form: {}", out.normal_form);
        println!();
        print!("{}", session_report(&out.decomposition));
        println!();
        println!("congruence check: {}", if out.congruent { "passed" } else { "FAILED" });
        println!("certificates: {}", if cert.ok { "ok" } else { "FAILED" });
    }
    if out.congruent && cert.ok {
        Ok(())
    } else {
        Err(CliError::Domain("forcing decomposition failed verification".into()))
    }
}

/// Random polynomial with at most `terms` terms of total degree `<= degree`.
pub fn random_polynomial(rng: &mut ChaCha8Rng, field: &FieldSpec, n: usize, degree: u64, terms: usize) -> Polynomial {
    let vars: Vec<String> = (1..=n).map(|k| format!("x{k}")).collect();
    let r = rng.gen_range(0..=terms);
    let mut ts = Vec::with_capacity(r);
    for _ in 0..r {
        let d = rng.gen_range(0..=degree);
        let mut e = vec![0u64; n];
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = match field {
            FieldSpec::Rationals => {
                let num = rng.gen_range(-9i64..=9);
                let den = rng.gen_range(1i64..=4);
                field.from_ratio(&num.into(), &den.into()).expect("nonzero denominator")
            }
            _ => field.from_i64(rng.gen_range(0..1_000)),
        };
        ts.push((ExponentVector::from_u64s(&e), c));
    }
    Polynomial::from_terms(field.clone(), &vars, ts).expect("well-formed")
}

pub fn check(seed: u64, count: usize, field: &str, max_vars: usize, degree: u64, terms: usize) -> CliResult {
    let field = args::field(field)?;
    if max_vars < 2 {
        return Err(CliError::usage("--max-vars", "at least 2", "natural >= 2"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0usize;
    for k in 0..count {
        let n = rng.gen_range(2..=max_vars);
        let h = random_polynomial(&mut rng, &field, n, degree, terms);
        for m in DecompositionMode::ALL {
            let ok = engine_decompose(&h, m).map(|d| certify_decomposition(&d));
            match ok {
                Ok(r) if r.ok => {}
                Ok(r) => {
                    failures += 1;
                    println!("#{k} {m} {h}: {}", r.failures.join("; "));
                }
                Err(e) => {
                    failures += 1;
                    println!("#{k} {m} {h}: {e}");
                }
            }
        }
    }
    println!("seed {seed}: {count} polynomials x {} modes, {failures} failures", DecompositionMode::ALL.len());
    if failures == 0 {
        Ok(())
    } else {
        Err(CliError::Domain(format!("{failures} failures")))
    }
}
