//! Human-readable session report for a decomposition.

use super::{Decomposition, SummandCertificate};
use crate::lattice::{matrix_text, LatticePoint};
use crate::poly::{ExponentVector, Polynomial};

/// A run of summands belonging to one input term (or the constant).
struct Group<'a> {
    a1: &'a Polynomial,
    a2: Option<&'a Polynomial>,
    w: Option<ExponentVector>,
}

fn groups(d: &Decomposition) -> Vec<Group<'_>> {
    let s = &d.summands;
    let mut out = Vec::new();
    let mut k = 0;
    while k < s.len() {
        let paired = matches!(
            (&s[k].1, s.get(k + 1)),
            (SummandCertificate::PyramidGcd { .. }, Some((_, SummandCertificate::SegmentGcd { .. })))
                | (SummandCertificate::Linear, Some((_, SummandCertificate::Linear)))
        );
        if paired {
            let a2 = &s[k + 1].0;
            let neg = -a2;
            // the w point is the monomial -A2 - 1 (pyramid) or -A2 (constant)
            let w = match &s[k].1 {
                SummandCertificate::PyramidGcd { w, .. } => Some(w.clone()),
                _ if neg.is_monomial() => neg.support().pop(),
                _ => None,
            };
            out.push(Group { a1: &s[k].0, a2: Some(a2), w });
            k += 2;
        } else {
            out.push(Group { a1: &s[k].0, a2: None, w: None });
            k += 1;
        }
    }
    out
}

fn braced<I: IntoIterator<Item = String>>(items: I) -> String {
    format!("{{{}}}", items.into_iter().collect::<Vec<_>>().join(", "))
}

fn monomial(h: &Polynomial, e: &ExponentVector) -> String {
    h.monomial_like(e.clone(), h.field().one()).to_string()
}

/// Text laid out like an interactive session: monomials, exponent matrix,
/// w points, then the two lists of irreducible summands.
pub fn session_report(d: &Decomposition) -> String {
    let h = &d.input;
    let gs = groups(d);
    let support = h.support();
    let mut out = String::new();
    let mut block = |title: &str, body: String| {
        out.push_str(title);
        out.push_str("\n\n");
        out.push_str(&body);
        out.push_str("\n\n");
    };

    block("The monomials of", h.to_string());
    block("are", braced(support.iter().map(|e| monomial(h, e))));
    block("The exponent set of", h.to_string());
    let rows: Vec<LatticePoint> = support.iter().map(LatticePoint::from).collect();
    block("is", matrix_text(&rows));

    let ws: Vec<&ExponentVector> = gs.iter().filter_map(|g| g.w.as_ref()).collect();
    if !ws.is_empty() {
        let rows: Vec<LatticePoint> = ws.iter().map(|w| LatticePoint::from(*w)).collect();
        block("The w points are", matrix_text(&rows));
        block(
            "The corresponding monomials given by the w points are",
            braced(ws.iter().map(|w| monomial(h, w))),
        );
    }
    let seconds: Vec<String> = gs
        .iter()
        .filter_map(|g| g.a2.map(|a2| (-a2).to_string()))
        .collect();
    if !seconds.is_empty() {
        block("The corresponding absolutely irreducible polynomials are", braced(seconds));
    }
    block("and also", braced(gs.iter().map(|g| g.a1.to_string())));

    out.push_str(&format!(
        "{} = sum of {} absolutely irreducible summands ({} mode):\n\n",
        h,
        d.summands.len(),
        d.mode
    ));
    for (f, c) in &d.summands {
        out.push_str(&format!("  {f}    [{}]\n", c.kind()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{decompose, DecompositionMode};
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::{parse_polynomial, var_list};

    #[test]
    fn square_report_layout() {
        let h = parse_polynomial("x*y+x+y+1", &var_list("x,y"), &FieldSpec::Rationals).unwrap();
        let text = session_report(&decompose(&h, DecompositionMode::UniformPyramid).unwrap());
        assert!(text.contains("are\n\n{x*y, x, y, 1}"));
        assert!(text.contains("is\n\n| 1 1 |\n| 1 0 |\n| 0 1 |\n| 0 0 |"));
        assert!(text.contains("The w points are\n\n| 1 4 |\n| 1 2 |\n| 2 1 |\n| 1 0 |"));
        assert!(text.contains("{x*y^4, x*y^2, x^2*y, x}"));
        assert!(text.contains(
            "The corresponding absolutely irreducible polynomials are\n\n{x*y^4 + 1, x*y^2 + 1, x^2*y + 1, x}"
        ));
        assert!(text.contains("and also\n\n{x*y^4 + x*y + 1, x*y^2 + x + 1, x^2*y + y + 1, x + 1}"));
    }

    #[test]
    fn shortcut_terms_stand_alone() {
        let h = parse_polynomial("x*y + 2", &var_list("x,y"), &FieldSpec::Rationals).unwrap();
        let text = session_report(&decompose(&h, DecompositionMode::Shortcut).unwrap());
        assert!(text.contains("and also\n\n{x*y - 1, x + 3}"));
        assert!(text.contains("The w points are\n\n| 1 0 |"));
    }
}
