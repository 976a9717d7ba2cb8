//! Generators for the standard quantity families.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use thiserror::Error;

use crate::algebra::{AlgebraError, InfoQuantity};
use crate::party::{default_labels, PartySet};
use crate::rational::Rational;

use super::parser::{multi_information_terms, parse_in};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeneratorError {
    #[error("multi-information needs at least one party")]
    NoParties,
    #[error("cyclic quantities need an odd party count >= 3, got {0}")]
    BadCyclicCount(usize),
    #[error("chosen parties must be a nonempty subset of the universe: {0}")]
    BadChoice(String),
    #[error("unknown named quantity {0:?} (expected SA, MMI, LW, KP, Q61 or Q62)")]
    UnknownName(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `I_n = Σ_i S(A_i) - Σ_{i<j} S(A_i A_j) + … + (-1)^{n+1} S(A_1…A_n)`.
pub fn multi_information(n: usize) -> Result<InfoQuantity, GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::NoParties);
    }
    let labels = default_labels(n);
    multi_information_over(&labels, &labels)
}

/// `I_{m,n}`: multi-information of the chosen parties, embedded in the
/// basis of the full universe.
pub fn partial_multi_information<S: AsRef<str>, T: AsRef<str>>(
    chosen: &[S],
    universe: &[T],
) -> Result<InfoQuantity, GeneratorError> {
    if chosen.is_empty() {
        return Err(GeneratorError::BadChoice("no parties chosen".into()));
    }
    multi_information_over(chosen, universe)
}

fn multi_information_over<S: AsRef<str>, T: AsRef<str>>(
    chosen: &[S],
    universe: &[T],
) -> Result<InfoQuantity, GeneratorError> {
    let mut q = InfoQuantity::new(universe)?;
    let mut singles = Vec::with_capacity(chosen.len());
    for c in chosen {
        let i = q
            .party_index(c.as_ref())
            .ok_or_else(|| GeneratorError::BadChoice(format!("{:?} is not in the universe", c.as_ref())))?;
        let s = PartySet::singleton(i);
        if singles.contains(&s) {
            return Err(GeneratorError::BadChoice(format!("{:?} chosen twice", c.as_ref())));
        }
        singles.push(s);
    }
    let name = if chosen.len() == universe.len() {
        format!("I_{}", chosen.len())
    } else {
        format!("I_{{{},{}}}", chosen.len(), universe.len())
    };
    for (region, c) in multi_information_terms(&singles, PartySet::EMPTY, &Rational::one()) {
        q.add_term(region, c)?;
    }
    Ok(q.with_name(name))
}

/// Cyclic quantity on `2n+1` parties:
/// `Σ_i S(A_i…A_{i+n}) - Σ_i S(A_i…A_{i+n-1}) - S(A_1…A_{2n+1})`, indices mod `2n+1`.
pub fn cyclic(party_count: usize) -> Result<InfoQuantity, GeneratorError> {
    if party_count < 3 || party_count.is_multiple_of(2) {
        return Err(GeneratorError::BadCyclicCount(party_count));
    }
    let n = party_count / 2;
    let labels = default_labels(party_count);
    let mut q = InfoQuantity::new(&labels)?;
    let block = |start: usize, len: usize| PartySet::from_indices((0..len).map(|j| (start + j) % party_count));
    let one = Rational::one();
    for i in 0..party_count {
        q.add_term(block(i, n + 1), one.clone())?;
        q.add_term(block(i, n), -one.clone())?;
    }
    q.add_term(PartySet::full(party_count), -one)?;
    Ok(q.with_name(format!("Q_{party_count}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedQuantity {
    /// Subadditivity `S(A) + S(B) - S(AB)`.
    Sa,
    /// Monogamy of mutual information, `-I_3`.
    Mmi,
    /// Levin–Wen conditional mutual information `I(A:C|B)`.
    Lw,
    /// Kitaev–Preskill combination (same terms as MMI, `S_topo >= 0` sign).
    Kp,
    Q61,
    Q62,
}

impl NamedQuantity {
    pub const ALL: [NamedQuantity; 6] =
        [NamedQuantity::Sa, NamedQuantity::Mmi, NamedQuantity::Lw, NamedQuantity::Kp, NamedQuantity::Q61, NamedQuantity::Q62];

    pub fn as_str(self) -> &'static str {
        match self {
            NamedQuantity::Sa => "SA",
            NamedQuantity::Mmi => "MMI",
            NamedQuantity::Lw => "LW",
            NamedQuantity::Kp => "KP",
            NamedQuantity::Q61 => "Q61",
            NamedQuantity::Q62 => "Q62",
        }
    }

    fn definition(self) -> (usize, &'static str) {
        match self {
            NamedQuantity::Sa => (2, "S(A) + S(B) - S(AB)"),
            NamedQuantity::Mmi | NamedQuantity::Kp => (3, "S(AB) + S(AC) + S(BC) - S(A) - S(B) - S(C) - S(ABC)"),
            NamedQuantity::Lw => (3, "S(AB) + S(BC) - S(B) - S(ABC)"),
            NamedQuantity::Q61 => (
                6,
                "S(AEF) + S(BEF) + S(ADE) + S(ADF) + S(BDE) + S(BDF) + S(ABCD) + S(ABCE) \
                 + S(ABCF) + S(C) - S(ABCEF) - S(ABCDF) - S(ABCDE) - S(AD) - S(AE) - S(AF) \
                 - S(BD) - S(BE) - S(BF) - S(CDEF)",
            ),
            NamedQuantity::Q62 => (
                6,
                "S(ADE) + S(ADF) + S(AEF) + S(BDE) + S(BDF) + S(BEF) + S(CDE) + S(CDF) + S(CEF) \
                 + S(ABC) - S(AD) - S(AE) - S(AF) - S(BD) - S(BE) - S(BF) - S(CD) - S(CE) - S(CF) \
                 - 2 S(DEF) - S(ABCDEF)",
            ),
        }
    }

    pub fn build(self) -> InfoQuantity {
        let (n, text) = self.definition();
        parse_in(text, &default_labels(n))
            .expect("built-in definitions parse")
            .with_name(self.as_str())
    }
}

impl fmt::Display for NamedQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NamedQuantity {
    type Err = GeneratorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NamedQuantity::ALL
            .into_iter()
            .find(|n| n.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| GeneratorError::UnknownName(s.to_string()))
    }
}

pub fn named(name: &str) -> Result<InfoQuantity, GeneratorError> {
    Ok(name.parse::<NamedQuantity>()?.build())
}
