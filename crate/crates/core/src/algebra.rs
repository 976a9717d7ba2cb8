//! Information quantities `Q = Σ_T a_T S(T)` over the nonempty-subsystem
//! basis of a declared party list, and their balance structure.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::party::{check_party_list, LabelError, PartySet};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error("unknown party {0:?}")]
    UnknownParty(String),
    #[error("empty region is not a valid term")]
    EmptyRegion,
    #[error("region {0:?} is not a subset of the declared parties")]
    RegionOutOfRange(PartySet),
    #[error("balance order k = {k} out of range 1..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("no entropy value assigned to region {0}")]
    MissingAssignment(String),
    #[error("relabeling is not a bijection on the {0} declared parties")]
    NotBijective(usize),
    #[error("party lists differ: {0:?} vs {1:?}")]
    PartyMismatch(Vec<String>, Vec<String>),
    #[error("term {0} uses parties outside the kept set")]
    NotMarginal(String),
    #[error("invalid coefficient: {0}")]
    Coefficient(#[from] rational::RationalParseError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    /// 1- and 2-balanced: evaluates to `-c·γ` on any disk partition.
    FixedTopology,
    /// 1-balanced only: extracts γ on particular geometries.
    FixedGeometry,
    Unbalanced,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::FixedTopology => "fixed-topology",
            Classification::FixedGeometry => "fixed-geometry",
            Classification::Unbalanced => "unbalanced",
        })
    }
}

/// Balance data at one cluster size `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct BalanceSlice {
    pub k: usize,
    pub balanced: bool,
    /// Clusters with nonzero residue `Σ_{T ⊇ S} a_T`, in canonical order.
    pub violations: Vec<(PartySet, Rational)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BalanceProfile {
    pub slices: Vec<BalanceSlice>,
}

impl BalanceProfile {
    /// Largest `k` such that the quantity is `j`-balanced for every `j ≤ k`.
    pub fn max_balanced_k(&self) -> usize {
        self.slices.iter().take_while(|s| s.balanced).count()
    }

    pub fn slice(&self, k: usize) -> Option<&BalanceSlice> {
        self.slices.get(k.checked_sub(1)?)
    }
}

#[derive(Clone, Debug)]
pub struct InfoQuantity {
    name: String,
    parties: Vec<String>,
    terms: BTreeMap<PartySet, Rational>,
}

impl PartialEq for InfoQuantity {
    /// Names are metadata; equality is on the party list and coefficients.
    fn eq(&self, other: &Self) -> bool {
        self.parties == other.parties && self.terms == other.terms
    }
}

impl InfoQuantity {
    pub fn new<S: AsRef<str>>(parties: &[S]) -> Result<Self, AlgebraError> {
        check_party_list(parties)?;
        Ok(InfoQuantity {
            name: String::new(),
            parties: parties.iter().map(|s| s.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn parties(&self) -> &[String] {
        &self.parties
    }

    pub fn party_count(&self) -> usize {
        self.parties.len()
    }

    pub fn universe(&self) -> PartySet {
        PartySet::full(self.parties.len())
    }

    pub fn party_index(&self, label: &str) -> Option<usize> {
        self.parties.iter().position(|p| p == label)
    }

    /// Region from party labels.
    pub fn region<S: AsRef<str>>(&self, labels: &[S]) -> Result<PartySet, AlgebraError> {
        labels.iter().try_fold(PartySet::EMPTY, |acc, l| {
            let l = l.as_ref();
            self.party_index(l)
                .map(|i| acc.union(PartySet::singleton(i)))
                .ok_or_else(|| AlgebraError::UnknownParty(l.to_string()))
        })
    }

    pub fn region_label(&self, region: PartySet) -> String {
        region.render(&self.parties)
    }

    /// Add `coeff · S(region)`; zero results are removed.
    pub fn add_term(&mut self, region: PartySet, coeff: Rational) -> Result<(), AlgebraError> {
        if region.is_empty() {
            return Err(AlgebraError::EmptyRegion);
        }
        if !region.is_subset_of(self.universe()) {
            return Err(AlgebraError::RegionOutOfRange(region));
        }
        if coeff.is_zero() {
            return Ok(());
        }
        let slot = self.terms.entry(region).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&region);
        }
        Ok(())
    }

    pub fn add_labeled<S: AsRef<str>>(&mut self, labels: &[S], coeff: Rational) -> Result<(), AlgebraError> {
        let region = self.region(labels)?;
        self.add_term(region, coeff)
    }

    /// Nonzero terms in canonical basis order.
    pub fn terms(&self) -> impl Iterator<Item = (PartySet, &Rational)> {
        self.terms.iter().map(|(s, c)| (*s, c))
    }

    pub fn coefficient(&self, region: PartySet) -> Rational {
        self.terms.get(&region).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Parties that occur in at least one term.
    pub fn support(&self) -> PartySet {
        self.terms.keys().fold(PartySet::EMPTY, |acc, s| acc.union(*s))
    }

    pub fn sum_coeffs(&self) -> Rational {
        self.terms.values().sum()
    }

    /// Residues `Σ_{T ⊇ S} a_T` for every `k`-cluster `S` that lies inside
    /// some term; clusters outside every term have residue zero.
    pub fn residues(&self, k: usize) -> BTreeMap<PartySet, Rational> {
        let mut acc: HashMap<PartySet, Rational> = HashMap::new();
        for (t, a) in &self.terms {
            t.for_each_subset_of_size(k, |s| {
                *acc.entry(s).or_insert_with(Rational::zero) += a;
            });
        }
        acc.into_iter().collect()
    }

    fn balance_slice_unchecked(&self, k: usize) -> BalanceSlice {
        let violations: Vec<(PartySet, Rational)> =
            self.residues(k).into_iter().filter(|(_, r)| !r.is_zero()).collect();
        BalanceSlice { k, balanced: violations.is_empty(), violations }
    }

    pub fn k_balance(&self, k: usize) -> Result<BalanceSlice, AlgebraError> {
        let n = self.party_count();
        if k == 0 || k > n {
            return Err(AlgebraError::KOutOfRange { k, n });
        }
        Ok(self.balance_slice_unchecked(k))
    }

    pub fn balance_profile(&self) -> BalanceProfile {
        BalanceProfile {
            slices: (1..=self.party_count()).map(|k| self.balance_slice_unchecked(k)).collect(),
        }
    }

    /// Cluster sizes beyond the party count have no clusters and count as
    /// balanced.
    pub fn classify(&self) -> Classification {
        let balanced = |k: usize| k > self.party_count() || self.balance_slice_unchecked(k).balanced;
        match (balanced(1), balanced(2)) {
            (true, true) => Classification::FixedTopology,
            (true, false) => Classification::FixedGeometry,
            _ => Classification::Unbalanced,
        }
    }

    /// `Σ a_T s(T)` against an exact entropy assignment.
    pub fn evaluate_on_vector(&self, s: &HashMap<PartySet, Rational>) -> Result<Rational, AlgebraError> {
        self.terms.iter().try_fold(Rational::zero(), |acc, (t, a)| {
            let v = s
                .get(t)
                .ok_or_else(|| AlgebraError::MissingAssignment(self.region_label(*t)))?;
            Ok(acc + a * v)
        })
    }

    /// `Σ a_T s(T)` against a real-valued assignment.
    pub fn evaluate_on_vector_f64(&self, s: impl Fn(PartySet) -> Option<f64>) -> Result<f64, AlgebraError> {
        self.terms.iter().try_fold(0.0, |acc, (t, a)| {
            let v = s(*t).ok_or_else(|| AlgebraError::MissingAssignment(self.region_label(*t)))?;
            Ok(acc + rational::to_f64(a) * v)
        })
    }

    /// Value on the GHZ entropy vector (`S(T) = log 2` for every nonempty
    /// `T`), in units of `log 2`.
    pub fn ghz_value(&self) -> Rational {
        self.sum_coeffs()
    }

    /// Transport coefficients along a party permutation; `perm[i]` is the new
    /// position of party `i`. The party list itself is unchanged.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, AlgebraError> {
        let n = self.party_count();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&j| j >= n || std::mem::replace(&mut seen[j], true)) {
            return Err(AlgebraError::NotBijective(n));
        }
        let terms = self.terms.iter().map(|(t, a)| (t.map_indices(perm), a.clone())).collect();
        Ok(InfoQuantity { name: self.name.clone(), parties: self.parties.clone(), terms })
    }

    /// Relabel by party names, e.g. `[("A", "C"), ("C", "A")]`; parties not
    /// mentioned stay fixed.
    pub fn relabel_by_names(&self, map: &[(&str, &str)]) -> Result<Self, AlgebraError> {
        let mut perm: Vec<usize> = (0..self.party_count()).collect();
        for (from, to) in map {
            let i = self.party_index(from).ok_or_else(|| AlgebraError::UnknownParty(from.to_string()))?;
            let j = self.party_index(to).ok_or_else(|| AlgebraError::UnknownParty(to.to_string()))?;
            perm[i] = j;
        }
        self.relabel(&perm)
    }

    /// Re-express over a larger (or reordered) party list.
    pub fn embed<S: AsRef<str>>(&self, universe: &[S]) -> Result<Self, AlgebraError> {
        let mut out = InfoQuantity::new(universe)?.with_name(self.name.clone());
        let map = self
            .parties
            .iter()
            .map(|p| out.party_index(p).ok_or_else(|| AlgebraError::UnknownParty(p.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        for (t, a) in &self.terms {
            out.add_term(t.map_indices(&map), a.clone())?;
        }
        Ok(out)
    }

    /// Restrict to the listed parties; every term must already live there.
    pub fn marginalize<S: AsRef<str>>(&self, keep: &[S]) -> Result<Self, AlgebraError> {
        let mut out = InfoQuantity::new(keep)?.with_name(self.name.clone());
        let kept = self.region(keep)?;
        let mut map = vec![usize::MAX; self.party_count()];
        for (j, l) in keep.iter().enumerate() {
            map[self.party_index(l.as_ref()).expect("checked above")] = j;
        }
        for (t, a) in &self.terms {
            if !t.is_subset_of(kept) {
                return Err(AlgebraError::NotMarginal(self.region_label(*t)));
            }
            out.add_term(t.map_indices(&map), a.clone())?;
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        let mut out = InfoQuantity { name: self.name.clone(), parties: self.parties.clone(), terms: BTreeMap::new() };
        if !factor.is_zero() {
            out.terms = self.terms.iter().map(|(t, a)| (*t, a * factor)).collect();
        }
        out
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.parties != other.parties {
            return Err(AlgebraError::PartyMismatch(self.parties.clone(), other.parties.clone()));
        }
        let mut out = self.clone();
        for (t, a) in &other.terms {
            out.add_term(*t, a.clone())?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&other.scaled(&-Rational::one()))
    }

    pub fn to_json(&self) -> QuantityJson {
        QuantityJson {
            name: (!self.name.is_empty()).then(|| self.name.clone()),
            parties: self.parties.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, a)| TermJson { coeff: a.clone(), region: t.labels(&self.parties) })
                .collect(),
        }
    }

    pub fn from_json(json: &QuantityJson) -> Result<Self, AlgebraError> {
        let mut q = InfoQuantity::new(&json.parties)?;
        if let Some(name) = &json.name {
            q.name = name.clone();
        }
        for term in &json.terms {
            q.add_labeled(&term.region, term.coeff.clone())?;
        }
        Ok(q)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("quantity JSON is always serialisable")
    }
}

/// Canonical quantity serialization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantityJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub parties: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    #[serde(with = "rational::serde_string")]
    pub coeff: Rational,
    pub region: Vec<String>,
}
