//! Tripartite `I^pC^q` forms: `Q = Σ_i -I_3(X_i : Y_i : Z_i | W_i)`.

use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, InfoQuantity};
use crate::party::{check_party_list, PartySet};
use crate::rational::Rational;

use super::parser::multi_information_terms;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TripartiteError {
    #[error("term {index}: X, Y and Z must be nonempty")]
    EmptyArgument { index: usize },
    #[error("term {index}: arguments X, Y, Z, W must be pairwise disjoint")]
    NotDisjoint { index: usize },
    #[error("term {index}: arguments outside the declared parties")]
    OutOfRange { index: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripartiteTerm {
    pub x: PartySet,
    pub y: PartySet,
    pub z: PartySet,
    /// Conditioning system; empty for an unconditional term.
    pub w: PartySet,
}

impl TripartiteTerm {
    pub fn is_conditional(&self) -> bool {
        !self.w.is_empty()
    }

    fn check(&self, index: usize, universe: PartySet) -> Result<(), TripartiteError> {
        if self.x.is_empty() || self.y.is_empty() || self.z.is_empty() {
            return Err(TripartiteError::EmptyArgument { index });
        }
        let parts = [self.x, self.y, self.z, self.w];
        for (i, a) in parts.iter().enumerate() {
            if !a.is_subset_of(universe) {
                return Err(TripartiteError::OutOfRange { index });
            }
            if parts[i + 1..].iter().any(|b| !a.is_disjoint(*b)) {
                return Err(TripartiteError::NotDisjoint { index });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TripartiteForm {
    parties: Vec<String>,
    terms: Vec<TripartiteTerm>,
}

impl TripartiteForm {
    pub fn new<S: AsRef<str>>(parties: &[S], terms: Vec<TripartiteTerm>) -> Result<Self, TripartiteError> {
        check_party_list(parties).map_err(AlgebraError::from)?;
        let universe = PartySet::full(parties.len());
        for (i, t) in terms.iter().enumerate() {
            t.check(i, universe)?;
        }
        Ok(TripartiteForm { parties: parties.iter().map(|s| s.as_ref().to_string()).collect(), terms })
    }

    pub fn parties(&self) -> &[String] {
        &self.parties
    }

    pub fn terms(&self) -> &[TripartiteTerm] {
        &self.terms
    }

    /// Number of unconditional `-I_3` terms.
    pub fn p(&self) -> usize {
        self.terms.iter().filter(|t| !t.is_conditional()).count()
    }

    /// Number of conditional terms.
    pub fn q(&self) -> usize {
        self.terms.iter().filter(|t| t.is_conditional()).count()
    }

    /// Expand into the subsystem basis. Conditional terms use
    /// `I_3(X:Y:Z|W) = I_3(X:Y:ZW) - I_3(X:Y:W)`.
    pub fn expand(&self) -> InfoQuantity {
        let mut q = InfoQuantity::new(&self.parties).expect("party list checked on construction");
        let minus = -Rational::one();
        for t in &self.terms {
            let mut pieces = multi_information_terms(&[t.x, t.y, t.z.union(t.w)], PartySet::EMPTY, &minus);
            if t.is_conditional() {
                pieces.extend(multi_information_terms(&[t.x, t.y, t.w], PartySet::EMPTY, &Rational::one()));
            }
            for (region, c) in pieces {
                q.add_term(region, c).expect("regions are nonempty subsets of the universe");
            }
        }
        q.with_name(format!("I^{}C^{}", self.p(), self.q()))
    }

    pub fn to_json(&self) -> TripartiteFormJson {
        let labels = |s: PartySet| s.labels(&self.parties);
        TripartiteFormJson {
            parties: self.parties.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| TripartiteTermJson { x: labels(t.x), y: labels(t.y), z: labels(t.z), w: labels(t.w) })
                .collect(),
        }
    }

    pub fn from_json(json: &TripartiteFormJson) -> Result<Self, TripartiteError> {
        let q = InfoQuantity::new(&json.parties)?;
        let terms = json
            .terms
            .iter()
            .map(|t| {
                Ok(TripartiteTerm { x: q.region(&t.x)?, y: q.region(&t.y)?, z: q.region(&t.z)?, w: q.region(&t.w)? })
            })
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        TripartiteForm::new(&json.parties, terms)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripartiteFormJson {
    pub parties: Vec<String>,
    pub terms: Vec<TripartiteTermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripartiteTermJson {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub z: Vec<String>,
    #[serde(default)]
    pub w: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TripartiteMatch {
    pub matches: bool,
    pub p: usize,
    pub q: usize,
}

/// Check a claimed decomposition termwise. Forms over a different party list
/// are compared after embedding into the quantity's parties.
pub fn verify_tripartite_form(q: &InfoQuantity, form: &TripartiteForm) -> TripartiteMatch {
    let expanded = form.expand();
    let matches = if expanded.parties() == q.parties() {
        expanded == *q
    } else {
        expanded.embed(q.parties()).map(|e| e == *q).unwrap_or(false)
    };
    TripartiteMatch { matches, p: form.p(), q: form.q() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{named, parse_in};
    use crate::party::default_labels;
    use crate::rational::int;

    fn s(i: &[usize]) -> PartySet {
        PartySet::from_indices(i.iter().copied())
    }

    fn unconditional(x: &[usize], y: &[usize], z: &[usize]) -> TripartiteTerm {
        TripartiteTerm { x: s(x), y: s(y), z: s(z), w: PartySet::EMPTY }
    }

    #[test]
    fn single_term_is_mmi() {
        let form = TripartiteForm::new(&["A", "B", "C"], vec![unconditional(&[0], &[1], &[2])]).unwrap();
        assert_eq!(form.expand(), named("MMI").unwrap());
        let m = verify_tripartite_form(&named("MMI").unwrap(), &form);
        assert_eq!(m, TripartiteMatch { matches: true, p: 1, q: 0 });
    }

    #[test]
    fn argument_order_is_irrelevant() {
        let mmi = named("MMI").unwrap();
        let form = TripartiteForm::new(&["A", "B", "C"], vec![unconditional(&[2], &[0], &[1])]).unwrap();
        assert!(verify_tripartite_form(&mmi, &form).matches);
    }

    #[test]
    fn conditional_expansion() {
        let labels = default_labels(4);
        let t = TripartiteTerm { x: s(&[0]), y: s(&[1]), z: s(&[2]), w: s(&[3]) };
        let form = TripartiteForm::new(&labels, vec![t]).unwrap();
        let expect = parse_in("-I(A:B:C|D)", &labels).unwrap();
        assert_eq!(form.expand(), expect);
        assert_eq!(form.expand().sum_coeffs(), int(0));
        assert_eq!((form.p(), form.q()), (0, 1));
    }

    #[test]
    fn levin_wen_has_no_unconditional_form() {
        let lw = named("LW").unwrap();
        let labels = default_labels(3);
        for perm in [[0, 1, 2], [1, 0, 2], [2, 1, 0]] {
            let form = TripartiteForm::new(&labels, vec![unconditional(&[perm[0]], &[perm[1]], &[perm[2]])]).unwrap();
            assert!(!verify_tripartite_form(&lw, &form).matches);
        }
    }

    #[test]
    fn invalid_terms_rejected() {
        let labels = default_labels(3);
        assert_eq!(
            TripartiteForm::new(&labels, vec![unconditional(&[0], &[0, 1], &[2])]),
            Err(TripartiteError::NotDisjoint { index: 0 })
        );
        assert_eq!(
            TripartiteForm::new(&labels, vec![unconditional(&[0], &[], &[2])]),
            Err(TripartiteError::EmptyArgument { index: 0 })
        );
        assert_eq!(
            TripartiteForm::new(&labels, vec![unconditional(&[0], &[1], &[3])]),
            Err(TripartiteError::OutOfRange { index: 0 })
        );
    }

    #[test]
    fn json_form() {
        let text = r#"{"parties":["A","B","C","D"],"terms":[{"x":["A"],"y":["B"],"z":["C"]},{"x":["A"],"y":["B"],"z":["C"],"w":["D"]}]}"#;
        let json: TripartiteFormJson = serde_json::from_str(text).unwrap();
        let form = TripartiteForm::from_json(&json).unwrap();
        assert_eq!((form.p(), form.q()), (1, 1));
        assert_eq!(TripartiteForm::from_json(&form.to_json()).unwrap(), form);
    }
}
