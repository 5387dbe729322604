//! Parsers for flag values and the CLI error type.

use std::fmt;

use goldbach_core::field::FieldSpec;
use goldbach_core::lattice::LatticePoint;
use goldbach_core::poly::{infer_variables, parse_polynomial, var_list, ExponentVector, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub const POLY_GRAMMAR: &str = "expr := term (('+'|'-') term)*; term := factor ('*' factor)*; \
factor := INT ('/' INT)? | VAR ('^' INT)? | '(' expr ')' ('^' INT)? | '-' factor";
pub const POINTS_GRAMMAR: &str = "points := point (';' point)*; point := INT (',' INT)*";
pub const RATIONAL_GRAMMAR: &str = "rational := ['-'] INT ['/' INT] | decimal, e.g. 7/2, -0.25, 1e-6";

#[derive(Debug)]
pub enum CliError {
    /// Malformed flag value: exit code 2.
    Usage {
        flag: &'static str,
        message: String,
        grammar: &'static str,
    },
    /// The input is well-formed but the operation fails: exit code 1.
    Domain(String),
}

impl CliError {
    pub fn usage(flag: &'static str, message: impl fmt::Display, grammar: &'static str) -> Self {
        CliError::Usage {
            flag,
            message: message.to_string(),
            grammar,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage { .. } => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage {
                flag,
                message,
                grammar,
            } => {
                write!(f, "error: invalid value for {flag}: {message}")?;
                if !grammar.is_empty() {
                    write!(f, "\n  expected: {grammar}")?;
                }
                Ok(())
            }
            CliError::Domain(m) => write!(f, "error: {m}"),
        }
    }
}

pub fn domain(e: impl fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

pub type CliResult<T = ()> = Result<T, CliError>;

pub fn field(text: &str) -> CliResult<FieldSpec> {
    text.parse()
        .map_err(|e| CliError::usage("--field", e, "QQ | F<p> | GF(p^k)"))
}

/// Parses `--poly`-style text; variables default to order of appearance.
pub fn poly(
    flag: &'static str,
    text: &str,
    vars: Option<&str>,
    field: &FieldSpec,
) -> CliResult<Polynomial> {
    let vars = match vars {
        Some(v) => var_list(v),
        None => infer_variables(text).map_err(|e| CliError::usage(flag, e, POLY_GRAMMAR))?,
    };
    if vars.is_empty() {
        return Err(CliError::usage(
            "--vars",
            "no variables given or found in the expression",
            "comma-separated names, e.g. x,y,z",
        ));
    }
    parse_polynomial(text, &vars, field).map_err(|e| CliError::usage(flag, e, POLY_GRAMMAR))
}

pub fn points(flag: &'static str, text: &str) -> CliResult<Vec<LatticePoint>> {
    text.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.split(',')
                .map(|c| c.trim().parse::<BigInt>())
                .collect::<Result<Vec<_>, _>>()
                .map(LatticePoint)
                .map_err(|e| CliError::usage(flag, format!("`{p}`: {e}"), POINTS_GRAMMAR))
        })
        .collect()
}

pub fn exponents(flag: &'static str, text: &str) -> CliResult<Vec<ExponentVector>> {
    points(flag, text)?
        .into_iter()
        .map(|p| {
            p.to_exponent()
                .ok_or_else(|| CliError::usage(flag, format!("{p} has a negative entry"), POINTS_GRAMMAR))
        })
        .collect()
}

pub fn point(flag: &'static str, text: &str) -> CliResult<LatticePoint> {
    let mut ps = points(flag, text)?;
    if ps.len() != 1 {
        return Err(CliError::usage(flag, "expected exactly one point", POINTS_GRAMMAR));
    }
    Ok(ps.remove(0))
}

/// `a/b`, an integer, or a decimal with optional exponent.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        return (!d.is_zero()).then(|| BigRational::new(n, d));
    }
    let (mantissa, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("{int}{frac}").parse().ok()?;
    let ten = BigInt::from(10);
    let scale = exp - frac.len() as i32;
    let mut q = BigRational::from_integer(all);
    if scale >= 0 {
        q *= BigRational::from_integer(ten.pow(scale as u32));
    } else {
        q /= BigRational::from_integer(ten.pow((-scale) as u32));
    }
    Some(if neg { -q } else { q })
}

pub fn rational(flag: &'static str, text: &str) -> CliResult<BigRational> {
    parse_rational(text).ok_or_else(|| CliError::usage(flag, format!("`{text}`"), RATIONAL_GRAMMAR))
}

pub fn u64_list(flag: &'static str, text: &str) -> CliResult<Vec<u64>> {
    text.split(',')
        .map(|g| g.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::usage(flag, e, "comma-separated naturals, e.g. 2,5"))
}

/// Exact rational as `a/b` (or `a`).
pub fn show(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Decimal expansion truncated towards zero to `digits` places.
pub fn decimal(q: &BigRational, digits: u32) -> String {
    let scaled = (q.abs() * BigRational::from_integer(BigInt::from(10).pow(digits))).trunc().to_integer();
    let s = scaled.to_string();
    let s = format!("{s:0>width$}", width = digits as usize + 1);
    let (int, frac) = s.split_at(s.len() - digits as usize);
    let sign = if q.is_negative() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use goldbach_core::field::ratio;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("7/2"), Some(ratio(7, 2)));
        assert_eq!(parse_rational("-1/2"), Some(ratio(-1, 2)));
        assert_eq!(parse_rational("3"), Some(ratio(3, 1)));
        assert_eq!(parse_rational("-0.25"), Some(ratio(-1, 4)));
        assert_eq!(parse_rational("1e-6"), Some(ratio(1, 1_000_000)));
        assert_eq!(parse_rational(".5"), Some(ratio(1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational(""), None);
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal(&ratio(27, 8), 3), "3.375");
        assert_eq!(decimal(&ratio(-1, 3), 4), "-0.3333");
        assert_eq!(decimal(&ratio(5, 1), 0), "5");
        assert_eq!(show(&ratio(6, 3)), "2");
    }

    #[test]
    fn point_lists() {
        assert_eq!(points("--p", "1,1; 0,2").unwrap().len(), 2);
        assert!(points("--p", "1,x").is_err());
        assert!(exponents("--w", "-1,2").is_err());
    }
}
