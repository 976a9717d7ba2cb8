//! Substituting punctured-sphere and area-law entropies into a quantity.
//!
//! TQFT modes double each union `X` along its boundary; the boundary
//! triple points become punctures and `S(X)` is half the entropy of the
//! resulting sphere(s). In paper mode all punctures of `X` go on one sphere,
//! in additive mode each connected component of `X` gets its own. The
//! area-law mode keeps per-edge lengths symbolic and charges `γ` once per
//! boundary circuit.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::InfoQuantity;
use crate::anyon::{AnyonError, AnyonModel};
use crate::arrangement::{Arrangement, ArrangementError, Region};
use crate::party::PartySet;
use crate::rational::{format_rational, int, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("party {0:?} is not an internal face of the arrangement")]
    UnknownParty(String),
    #[error("union {region} has a component with {b0} boundary circuits; punctured-sphere formulas do not apply (use the area-law mode)")]
    HoleRejected { region: String, b0: usize },
    #[error("arrangement is invalid: {0}")]
    InvalidArrangement(String),
    #[error("puncture count must be nonnegative, got {0}")]
    NegativePunctures(i64),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

/// `c_log_d · log D + c_k · K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SymEntropy {
    pub c_log_d: Rational,
    pub c_k: Rational,
}

impl SymEntropy {
    pub fn new(c_log_d: Rational, c_k: Rational) -> Self {
        SymEntropy { c_log_d, c_k }
    }

    pub fn zero() -> Self {
        SymEntropy::default()
    }

    pub fn log_d(c: i64) -> Self {
        SymEntropy::new(int(c), int(0))
    }

    pub fn is_zero(&self) -> bool {
        self.c_log_d.is_zero() && self.c_k.is_zero()
    }

    pub fn scaled(&self, by: &Rational) -> Self {
        SymEntropy::new(&self.c_log_d * by, &self.c_k * by)
    }
}

impl Add for SymEntropy {
    type Output = SymEntropy;
    fn add(self, rhs: SymEntropy) -> SymEntropy {
        SymEntropy::new(self.c_log_d + rhs.c_log_d, self.c_k + rhs.c_k)
    }
}

impl AddAssign<&SymEntropy> for SymEntropy {
    fn add_assign(&mut self, rhs: &SymEntropy) {
        self.c_log_d += &rhs.c_log_d;
        self.c_k += &rhs.c_k;
    }
}

impl Sub for SymEntropy {
    type Output = SymEntropy;
    fn sub(self, rhs: SymEntropy) -> SymEntropy {
        self + (-rhs)
    }
}

impl Neg for SymEntropy {
    type Output = SymEntropy;
    fn neg(self) -> SymEntropy {
        SymEntropy::new(-self.c_log_d, -self.c_k)
    }
}

impl Mul<&Rational> for &SymEntropy {
    type Output = SymEntropy;
    fn mul(self, rhs: &Rational) -> SymEntropy {
        self.scaled(rhs)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, c: &Rational, symbol: &str, first: bool) -> fmt::Result {
    if c.is_zero() {
        return Ok(());
    }
    let sign = if c.is_negative() { "-" } else { "+" };
    match (first, c.is_negative()) {
        (true, false) => {}
        (true, true) => f.write_str("-")?,
        (false, _) => write!(f, " {sign} ")?,
    }
    let mag = c.abs();
    if mag.is_one() {
        f.write_str(symbol)
    } else {
        write!(f, "{}·{symbol}", format_rational(&mag))
    }
}

impl fmt::Display for SymEntropy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        write_term(f, &self.c_log_d, "logD", true)?;
        write_term(f, &self.c_k, "K", self.c_log_d.is_zero())
    }
}

/// `𝒮_k = 2(k-1)·log D - k·K` for `k >= 2`; zero for `k <= 1`.
pub fn sphere_entropy_symbolic(k: i64) -> Result<SymEntropy, EvalError> {
    if k < 0 {
        return Err(EvalError::NegativePunctures(k));
    }
    Ok(sphere(k as usize))
}

fn sphere(k: usize) -> SymEntropy {
    if k <= 1 {
        return SymEntropy::zero();
    }
    let k = k as i64;
    SymEntropy::new(int(2 * (k - 1)), int(-k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "snake_case")]
pub enum EvalMode {
    /// One sphere per union, all punctures merged.
    Paper,
    /// One sphere per connected component.
    Additive,
}

impl EvalMode {
    pub fn as_str(self) -> &'static str {
        match self {
            EvalMode::Paper => "paper",
            EvalMode::Additive => "additive",
        }
    }
}

impl fmt::Display for EvalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EvalMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "paper" => Ok(EvalMode::Paper),
            "additive" => Ok(EvalMode::Additive),
            _ => Err(format!("unknown mode {s:?} (expected paper or additive)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EvalOptions {
    /// Reject unions with a component bounded by more than one circuit.
    pub strict: bool,
}

/// One term of a TQFT evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct TallyRow {
    pub region: PartySet,
    pub label: String,
    pub coeff: Rational,
    /// Puncture count of each sphere the union doubles into.
    pub spheres: Vec<usize>,
    /// `S(X)` for this union (not multiplied by the coefficient).
    pub entropy: SymEntropy,
}

/// Per-term bookkeeping of a TQFT evaluation. `positive` and `negative`
/// hold, per puncture count `k`, the total coefficient magnitude of `𝒮_k`
/// contributed by positive resp. negative terms; the value is
/// `(1/2)·Σ_k (positive_k - negative_k)·𝒮_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tally {
    pub mode: EvalMode,
    pub rows: Vec<TallyRow>,
    pub positive: BTreeMap<usize, Rational>,
    pub negative: BTreeMap<usize, Rational>,
}

impl Tally {
    /// Net coefficient of `𝒮_k` inside the `(1/2)[…]` bracket.
    pub fn net(&self) -> BTreeMap<usize, Rational> {
        let mut out = self.positive.clone();
        for (k, c) in &self.negative {
            *out.entry(*k).or_insert_with(Rational::zero) -= c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn value(&self) -> SymEntropy {
        let half = Rational::new(1.into(), 2.into());
        let mut total = SymEntropy::zero();
        for (k, c) in self.net() {
            total += &sphere(k).scaled(&(c * &half));
        }
        total
    }
}

/// Map each party of `q` to its face bit in `a`.
fn face_map(q: &InfoQuantity, a: &Arrangement) -> Result<Vec<u64>, EvalError> {
    q.parties()
        .iter()
        .map(|p| match a.face_index(p) {
            Some(f) if f != a.outer() => Ok(1u64 << f),
            _ => Err(EvalError::UnknownParty(p.clone())),
        })
        .collect()
}

fn to_region(map: &[u64], s: PartySet) -> Region {
    Region::from_bits(s.iter().fold(0, |acc, i| acc | map[i]))
}

fn require_valid(a: &Arrangement) -> Result<(), EvalError> {
    let report = a.validate();
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(EvalError::InvalidArrangement(v.to_string())),
    }
}

fn spheres_of(a: &Arrangement, r: Region, mode: EvalMode, opts: &EvalOptions, label: impl Fn() -> String) -> Result<Vec<usize>, EvalError> {
    if !opts.strict && mode == EvalMode::Paper {
        return Ok(vec![a.total_punctures(r)?]);
    }
    let comps = a.components(r)?;
    if opts.strict {
        if let Some(c) = comps.iter().find(|c| c.boundary_b0 > 1) {
            return Err(EvalError::HoleRejected { region: label(), b0: c.boundary_b0 });
        }
    }
    Ok(match mode {
        EvalMode::Paper => vec![comps.iter().map(|c| c.punctures).sum()],
        EvalMode::Additive => comps.iter().map(|c| c.punctures).collect(),
    })
}

/// Full per-term tally.
pub fn tally_tqft(q: &InfoQuantity, a: &Arrangement, mode: EvalMode, opts: &EvalOptions) -> Result<Tally, EvalError> {
    require_valid(a)?;
    let map = face_map(q, a)?;
    let half = Rational::new(1.into(), 2.into());
    let mut tally = Tally { mode, rows: Vec::with_capacity(q.term_count()), positive: BTreeMap::new(), negative: BTreeMap::new() };
    for (s, coeff) in q.terms() {
        let r = to_region(&map, s);
        let spheres = spheres_of(a, r, mode, opts, || q.region_label(s))?;
        let side = if coeff.is_negative() { &mut tally.negative } else { &mut tally.positive };
        let mag = coeff.abs();
        let mut entropy = SymEntropy::zero();
        for &k in &spheres {
            *side.entry(k).or_insert_with(Rational::zero) += &mag;
            entropy += &sphere(k);
        }
        tally.rows.push(TallyRow { region: s, label: q.region_label(s), coeff: coeff.clone(), spheres, entropy: entropy.scaled(&half) });
    }
    Ok(tally)
}

/// Exact TQFT value, without keeping per-term rows.
pub fn eval_tqft_with(q: &InfoQuantity, a: &Arrangement, mode: EvalMode, opts: &EvalOptions) -> Result<SymEntropy, EvalError> {
    require_valid(a)?;
    let map = face_map(q, a)?;
    let mut net: BTreeMap<usize, Rational> = BTreeMap::new();
    for (s, coeff) in q.terms() {
        for k in spheres_of(a, to_region(&map, s), mode, opts, || q.region_label(s))? {
            *net.entry(k).or_insert_with(Rational::zero) += coeff;
        }
    }
    let half = Rational::new(1.into(), 2.into());
    let mut total = SymEntropy::zero();
    for (k, c) in net {
        total += &sphere(k).scaled(&(c * &half));
    }
    Ok(total)
}

pub fn eval_tqft(q: &InfoQuantity, a: &Arrangement, mode: EvalMode) -> Result<SymEntropy, EvalError> {
    eval_tqft_with(q, a, mode, &EvalOptions::default())
}

/// `Σ_e length_coeffs[e]·α·ℓ_e + c_gamma·γ`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AreaLawExpr {
    /// Keyed by edge id; zero entries are dropped.
    pub length_coeffs: BTreeMap<usize, Rational>,
    pub c_gamma: Rational,
}

impl AreaLawExpr {
    pub fn lengths_vanish(&self) -> bool {
        self.length_coeffs.is_empty()
    }
}

impl fmt::Display for AreaLawExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.length_coeffs {
            write_term(f, c, &format!("ℓ{e}"), first)?;
            first = false;
        }
        if !self.c_gamma.is_zero() {
            write_term(f, &self.c_gamma, "γ", first)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Area-law value: `S(X) = Σ_{e ∈ ∂X} ℓ_e - b0(∂X)·γ`.
pub fn eval_area_law(q: &InfoQuantity, a: &Arrangement) -> Result<AreaLawExpr, EvalError> {
    require_valid(a)?;
    let map = face_map(q, a)?;
    let mut out = AreaLawExpr::default();
    for (s, coeff) in q.terms() {
        let r = to_region(&map, s);
        let edges = a.boundary_edges(r)?;
        for &e in &edges {
            *out.length_coeffs.entry(a.edges()[e].id).or_insert_with(Rational::zero) += coeff;
        }
        out.c_gamma -= coeff * Rational::from_integer(a.boundary_b0(r)?.into());
    }
    out.length_coeffs.retain(|_, c| !c.is_zero());
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "kebab-case")]
pub enum CheckMode {
    Paper,
    Additive,
    AreaLaw,
}

impl CheckMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckMode::Paper => "paper",
            CheckMode::Additive => "additive",
            CheckMode::AreaLaw => "area-law",
        }
    }
}

impl fmt::Display for CheckMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "paper" => Ok(CheckMode::Paper),
            "additive" => Ok(CheckMode::Additive),
            "area-law" | "area_law" => Ok(CheckMode::AreaLaw),
            _ => Err(format!("unknown mode {s:?} (expected paper, additive or area-law)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CheckValue {
    Tqft(SymEntropy),
    AreaLaw(AreaLawExpr),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopologicalCheck {
    pub mode: CheckMode,
    pub topological: bool,
    pub value: CheckValue,
    /// `-c·log D`; only in paper mode.
    pub expected: Option<SymEntropy>,
    /// Whether a topological paper-mode value equals `expected`.
    pub matches_expected: Option<bool>,
}

/// Topological means no `K` term (TQFT modes) or no surviving length terms
/// (area law).
pub fn topological_check(q: &InfoQuantity, a: &Arrangement, mode: CheckMode, opts: &EvalOptions) -> Result<TopologicalCheck, EvalError> {
    let (topological, value) = match mode {
        CheckMode::AreaLaw => {
            let v = eval_area_law(q, a)?;
            (v.lengths_vanish(), CheckValue::AreaLaw(v))
        }
        CheckMode::Paper | CheckMode::Additive => {
            let m = if mode == CheckMode::Paper { EvalMode::Paper } else { EvalMode::Additive };
            let v = eval_tqft_with(q, a, m, opts)?;
            (v.c_k.is_zero(), CheckValue::Tqft(v))
        }
    };
    let (expected, matches_expected) = match (&value, mode) {
        (CheckValue::Tqft(v), CheckMode::Paper) => {
            let e = SymEntropy::new(-q.sum_coeffs(), Rational::zero());
            let m = topological.then(|| *v == e);
            (Some(e), m)
        }
        _ => (None, None),
    };
    Ok(TopologicalCheck { mode, topological, value, expected, matches_expected })
}

/// `c_log_d·log D + c_k·K` for a concrete model (natural log).
pub fn evaluate_numeric(v: &SymEntropy, m: &AnyonModel) -> Result<f64, AnyonError> {
    let s = m.derived_scalars()?;
    Ok(crate::rational::to_f64(&v.c_log_d) * s.d.ln() + crate::rational::to_f64(&v.c_k) * s.k)
}
