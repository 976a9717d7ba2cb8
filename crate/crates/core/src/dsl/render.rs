//! Canonical text rendering, inverse to [`super::parse_in`].

use num_traits::{One, Signed};

use crate::algebra::InfoQuantity;
use crate::rational::format_rational;

/// Terms in canonical basis order, e.g. `- S(B) + S(AB) + S(BC) - S(ABC)`.
/// The empty quantity renders as `0`.
pub fn render(q: &InfoQuantity) -> String {
    let mut out = String::new();
    for (region, coeff) in q.terms() {
        let negative = coeff.is_negative();
        match (out.is_empty(), negative) {
            (true, true) => out.push_str("- "),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        let magnitude = coeff.abs();
        if !magnitude.is_one() {
            out.push_str(&format_rational(&magnitude));
            out.push(' ');
        }
        out.push_str("S(");
        out.push_str(&q.region_label(region));
        out.push(')');
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse, parse_in};

    #[test]
    fn levin_wen_canonical_text() {
        let q = parse("S(AB)+S(BC)-S(B)-S(ABC)").unwrap();
        assert_eq!(render(&q), "- S(B) + S(AB) + S(BC) - S(ABC)");
    }

    #[test]
    fn empty_renders_zero() {
        assert_eq!(render(&parse("0").unwrap()), "0");
    }

    #[test]
    fn mmi_canonical_text() {
        let q = parse("S(AB)+S(AC)+S(BC)-S(A)-S(B)-S(C)-S(ABC)").unwrap();
        let text = render(&q);
        assert_eq!(text, "- S(A) - S(B) - S(C) + S(AB) + S(AC) + S(BC) - S(ABC)");
        assert_eq!(parse(&text).unwrap(), q);
    }

    #[test]
    fn fractional_and_indexed() {
        let q = parse_in("3/2 S(A1,A2) - 2 S(A3)", &["A1", "A2", "A3"]).unwrap();
        let text = render(&q);
        assert_eq!(text, "- 2 S(A3) + 3/2 S(A1,A2)");
        assert_eq!(parse_in(&text, q.parties()).unwrap(), q);
    }
}
