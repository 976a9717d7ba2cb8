//! Recursive-descent parser for the quantity language.
//!
//! ```text
//! expr    := "0" | [sign] term (sign term)*
//! term    := [rational ["*"]] atom
//! atom    := "S(" regions ")"
//!          | "I(" regions (":" regions)+ ["|" regions] ")"
//! regions := label+                 (juxtaposed: ABC, A1A2)
//!          | label ("," label)*     (comma separated: A1,A2,A10)
//! label   := letter digit*
//! sign    := "+" | "-"
//! ```
//!
//! `I(X1:…:Xm)` expands by inclusion–exclusion; `I(X1:…:Xm | W)` expands to
//! `Σ_J (-1)^{|J|+1} [S(X_J W) - S(W)]`, which for `m = 3` coincides with
//! `I(X:Y:ZW) - I(X:Y:W)`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraError, InfoQuantity};
use crate::party::{check_party_label, natural_cmp, LabelError, PartySet};
use crate::rational::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown party {label:?} at position {position}")]
    UnknownParty { label: String, position: usize },
    #[error("reserved label \"O\" at position {position}: the outer region cannot appear in a quantity")]
    ReservedLabel { position: usize },
    #[error("invalid label {label:?} at position {position}")]
    BadLabel { label: String, position: usize },
    #[error("overlapping arguments in I(...) at position {position}")]
    Overlap { position: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug)]
struct Labels {
    names: Vec<String>,
    position: usize,
}

#[derive(Debug)]
enum Atom {
    Entropy(Labels),
    Info { args: Vec<Labels>, condition: Option<Labels>, position: usize },
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { position: self.pos, message: message.into() }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn sign(&mut self) -> Option<bool> {
        self.skip_ws();
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            Some('-') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn coefficient(&mut self) -> Result<Rational, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let digits = |s: &str| s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
        let mut len = digits(rest);
        if len == 0 {
            return Ok(Rational::one());
        }
        if rest[len..].starts_with('/') {
            let den = digits(&rest[len + 1..]);
            if den == 0 {
                self.pos = start + len + 1;
                return Err(self.error("expected denominator"));
            }
            len += 1 + den;
        }
        if rest[len..].starts_with('.') {
            self.pos = start + len;
            return Err(self.error("decimal coefficients are not allowed; write p/q"));
        }
        let value = parse_rational(&rest[..len]).map_err(|e| ParseError::Syntax { position: start, message: e.to_string() })?;
        self.pos = start + len;
        self.skip_ws();
        if self.peek() == Some('*') {
            self.pos += 1;
        }
        Ok(value)
    }

    fn regions(&mut self) -> Result<Labels, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let end = self.src[start..]
            .find([':', '|', ')'])
            .map(|i| start + i)
            .ok_or_else(|| self.error("unterminated region"))?;
        let raw = &self.src[start..end];
        self.pos = end;
        let mut names = Vec::new();
        if raw.contains(',') {
            let mut offset = start;
            for piece in raw.split(',') {
                let label = piece.trim();
                if label.is_empty() {
                    return Err(ParseError::Syntax { position: offset, message: "empty label".into() });
                }
                names.push((label.to_string(), offset));
                offset += piece.len() + 1;
            }
        } else {
            let compact: Vec<(usize, char)> =
                raw.char_indices().filter(|(_, c)| !c.is_whitespace()).map(|(i, c)| (start + i, c)).collect();
            let mut i = 0;
            while i < compact.len() {
                let (at, c) = compact[i];
                if !c.is_ascii_alphabetic() {
                    return Err(ParseError::BadLabel { label: c.to_string(), position: at });
                }
                let mut label = c.to_string();
                i += 1;
                while i < compact.len() && compact[i].1.is_ascii_digit() {
                    label.push(compact[i].1);
                    i += 1;
                }
                names.push((label, at));
            }
        }
        if names.is_empty() {
            return Err(ParseError::Syntax { position: start, message: "empty region".into() });
        }
        for (label, at) in &names {
            match check_party_label(label) {
                Ok(()) => {}
                Err(LabelError::Reserved) => return Err(ParseError::ReservedLabel { position: *at }),
                Err(_) => return Err(ParseError::BadLabel { label: label.clone(), position: *at }),
            }
        }
        Ok(Labels { names: names.into_iter().map(|(l, _)| l).collect(), position: start })
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        self.skip_ws();
        let position = self.pos;
        match self.peek() {
            Some('S') => {
                self.pos += 1;
                self.expect('(')?;
                let r = self.regions()?;
                self.expect(')')?;
                Ok(Atom::Entropy(r))
            }
            Some('I') => {
                self.pos += 1;
                self.expect('(')?;
                let mut args = vec![self.regions()?];
                let mut condition = None;
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some(':') => {
                            self.pos += 1;
                            args.push(self.regions()?);
                        }
                        Some('|') => {
                            self.pos += 1;
                            condition = Some(self.regions()?);
                            self.expect(')')?;
                            break;
                        }
                        Some(')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.error("expected ':', '|' or ')'")),
                    }
                }
                if args.len() < 2 {
                    return Err(ParseError::Syntax { position, message: "I(...) needs at least two arguments".into() });
                }
                Ok(Atom::Info { args, condition, position })
            }
            _ => Err(self.error("expected S(...) or I(...)")),
        }
    }

    fn expression(&mut self) -> Result<Vec<(Rational, Atom)>, ParseError> {
        self.skip_ws();
        if self.src[self.pos..].trim() == "0" {
            self.pos = self.src.len();
            return Ok(Vec::new());
        }
        let mut terms = Vec::new();
        let mut negative = self.sign().unwrap_or(false);
        loop {
            let mut c = self.coefficient()?;
            if negative {
                c = -c;
            }
            terms.push((c, self.atom()?));
            self.skip_ws();
            if self.pos == self.src.len() {
                return Ok(terms);
            }
            negative = self.sign().ok_or_else(|| self.error("expected '+' or '-'"))?;
        }
    }
}

fn parse_terms(text: &str) -> Result<Vec<(Rational, Atom)>, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    p.expression()
}

fn atom_labels(atom: &Atom) -> Vec<&str> {
    let groups: Vec<&Labels> = match atom {
        Atom::Entropy(r) => vec![r],
        Atom::Info { args, condition, .. } => args.iter().chain(condition.iter()).collect(),
    };
    groups.into_iter().flat_map(|g| g.names.iter().map(String::as_str)).collect()
}

/// Parse with the party universe inferred from the labels mentioned, in
/// natural label order.
pub fn parse(text: &str) -> Result<InfoQuantity, ParseError> {
    let terms = parse_terms(text)?;
    let mut labels: Vec<String> = terms.iter().flat_map(|(_, a)| atom_labels(a)).map(String::from).collect();
    labels.sort_by(|a, b| natural_cmp(a, b));
    labels.dedup();
    build(terms, &labels)
}

/// Parse against a declared party list.
pub fn parse_in<S: AsRef<str>>(text: &str, parties: &[S]) -> Result<InfoQuantity, ParseError> {
    let labels: Vec<String> = parties.iter().map(|s| s.as_ref().to_string()).collect();
    build(parse_terms(text)?, &labels)
}

fn build(terms: Vec<(Rational, Atom)>, parties: &[String]) -> Result<InfoQuantity, ParseError> {
    let mut q = InfoQuantity::new(parties)?;
    let resolve = |r: &Labels| -> Result<PartySet, ParseError> {
        r.names.iter().try_fold(PartySet::EMPTY, |acc, l| {
            q.party_index(l)
                .map(|i| acc.union(PartySet::singleton(i)))
                .ok_or_else(|| ParseError::UnknownParty { label: l.clone(), position: r.position })
        })
    };
    let mut expanded: Vec<(PartySet, Rational)> = Vec::new();
    for (c, atom) in &terms {
        match atom {
            Atom::Entropy(r) => expanded.push((resolve(r)?, c.clone())),
            Atom::Info { args, condition, position } => {
                let sets = args.iter().map(&resolve).collect::<Result<Vec<_>, _>>()?;
                let w = condition.as_ref().map(&resolve).transpose()?.unwrap_or(PartySet::EMPTY);
                let mut seen = w;
                for s in &sets {
                    if !s.is_disjoint(seen) {
                        return Err(ParseError::Overlap { position: *position });
                    }
                    seen = seen.union(*s);
                }
                expanded.extend(multi_information_terms(&sets, w, c));
            }
        }
    }
    for (region, c) in expanded {
        q.add_term(region, c)?;
    }
    Ok(q)
}

/// Terms of `coeff · I(X_1 : … : X_m | W)` (unconditional when `W` is empty).
pub(crate) fn multi_information_terms(args: &[PartySet], w: PartySet, coeff: &Rational) -> Vec<(PartySet, Rational)> {
    let m = args.len();
    let mut out = Vec::with_capacity(1 << m);
    let mut w_total = Rational::zero();
    for mask in 1u64..(1 << m) {
        let sign = if mask.count_ones() % 2 == 1 { coeff.clone() } else { -coeff.clone() };
        let union = (0..m).filter(|j| mask >> j & 1 == 1).fold(w, |acc, j| acc.union(args[j]));
        if !w.is_empty() {
            w_total -= &sign;
        }
        out.push((union, sign));
    }
    if !w.is_empty() {
        out.push((w, w_total));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn rendered_terms(q: &InfoQuantity) -> Vec<(String, Rational)> {
        q.terms().map(|(s, c)| (q.region_label(s), c.clone())).collect()
    }

    #[test]
    fn levin_wen_expression() {
        let q = parse("S(AB)+S(BC)-S(B)-S(ABC)").unwrap();
        assert_eq!(q.parties(), ["A", "B", "C"]);
        assert_eq!(
            rendered_terms(&q),
            vec![("B".into(), int(-1)), ("AB".into(), int(1)), ("BC".into(), int(1)), ("ABC".into(), int(-1))]
        );
        assert_eq!(parse("I(A:C|B)").unwrap(), q);
    }

    #[test]
    fn tripartite_information_expands() {
        let q = parse("I(A:B:C)").unwrap();
        let expect = parse("S(A)+S(B)+S(C)-S(AB)-S(AC)-S(BC)+S(ABC)").unwrap();
        assert_eq!(q, expect);
    }

    #[test]
    fn conditional_matches_difference_identity() {
        let lhs = parse_in("I(A:B:C|D)", &["A", "B", "C", "D"]).unwrap();
        let rhs = parse_in("I(A:B:CD) - I(A:B:D)", &["A", "B", "C", "D"]).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.sum_coeffs(), int(0));
    }

    #[test]
    fn cancellation_gives_empty() {
        let q = parse("3/2 S(AB) - 3/2 S(AB)").unwrap();
        assert!(q.is_empty());
        assert!(parse("0").unwrap().is_empty());
    }

    #[test]
    fn coefficients_and_indexed_labels() {
        let q = parse("-2 S(A1,A2) + 1/2*S(A10) + S(A1A2)").unwrap();
        assert_eq!(q.parties(), ["A1", "A2", "A10"]);
        assert_eq!(q.term_count(), 2);
        assert_eq!(q.coefficient(q.region(&["A1", "A2"]).unwrap()), int(-1));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse("S(AB) + S(O)"), Err(ParseError::ReservedLabel { position: 10 })));
        assert!(matches!(parse("S(AB) S(B)"), Err(ParseError::Syntax { position: 6, .. })));
        assert!(matches!(parse("1.5 S(A)"), Err(ParseError::Syntax { position: 1, .. })));
        assert!(matches!(parse("S(AB"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("I(AB)"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("I(A:AB)"), Err(ParseError::Overlap { .. })));
        assert!(matches!(parse("S(A#)"), Err(ParseError::BadLabel { .. })));
        assert!(matches!(parse_in("S(AD)", &["A", "B"]), Err(ParseError::UnknownParty { .. })));
        assert!(matches!(parse(""), Err(ParseError::Syntax { .. })));
    }
}
