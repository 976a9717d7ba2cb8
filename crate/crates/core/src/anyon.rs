//! Anyon models: labels, quantum dimensions and fusion multiplicities.
//!
//! The punctured-sphere entropy has a closed form `2(k-1)·log D - k·K`; the
//! brute-force routine recomputes it directly from the fusion tensor by
//! enumerating every assignment of charges to the `k` punctures, which makes
//! it an independent check on the formula.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance for dimension and probability checks.
pub const TOLERANCE: f64 = 1e-9;

/// Default cap on the puncture count for brute-force enumeration.
pub const DEFAULT_KMAX: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnyonError {
    #[error("unknown anyon model {0:?} (expected trivial, toric, z<n>, fibonacci or ising)")]
    UnknownModel(String),
    #[error("invalid model {name}: {first}")]
    Invalid { name: String, first: String },
    #[error("puncture count must be nonnegative, got {0}")]
    NegativePunctures(i64),
    #[error("k = {k} exceeds k_max = {kmax}")]
    TooManyPunctures { k: usize, kmax: usize },
    #[error("model file: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnyonModel {
    pub name: String,
    /// The first label is the vacuum.
    pub labels: Vec<String>,
    pub dims: Vec<f64>,
    /// `fusion[a][b][c]` is the multiplicity of `c` in `a × b`.
    pub fusion: Vec<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelViolation {
    Shape { message: String },
    VacuumDimension { d: f64 },
    DimensionBelowOne { label: String, d: f64 },
    VacuumNotIdentity { a: String, b: String },
    Conjugation { label: String, partners: usize },
    Dimension { a: String, b: String, lhs: f64, rhs: f64 },
    Associativity { a: String, b: String, c: String, d: String },
}

impl fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelViolation::Shape { message } => f.write_str(message),
            ModelViolation::VacuumDimension { d } => write!(f, "vacuum dimension is {d}, not 1"),
            ModelViolation::DimensionBelowOne { label, d } => write!(f, "d_{label} = {d} < 1"),
            ModelViolation::VacuumNotIdentity { a, b } => write!(f, "N_1{a}^{b} differs from the identity"),
            ModelViolation::Conjugation { label, partners } => {
                write!(f, "{label} has {partners} conjugates (need exactly one with multiplicity 1)")
            }
            ModelViolation::Dimension { a, b, lhs, rhs } => {
                write!(f, "Σ_c N_{a}{b}^c d_c = {lhs} but d_{a} d_{b} = {rhs}")
            }
            ModelViolation::Associativity { a, b, c, d } => {
                write!(f, "fusion not associative at ({a}, {b}, {c}) -> {d}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelReport {
    pub model: String,
    pub violations: Vec<ModelViolation>,
}

impl ModelReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivedScalars {
    /// Total quantum dimension.
    pub d: f64,
    /// `Σ_a P_a log d_a`.
    pub k: f64,
    /// `P_a = d_a² / D²`.
    pub p: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BruteForce {
    pub punctures: usize,
    pub entropy: f64,
    /// Sum of all configuration probabilities; 1 up to rounding.
    pub total_probability: f64,
    /// `marginals[i][a]`: probability of charge `a` at puncture `i`.
    pub marginals: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub labels: Vec<String>,
    pub dims: Vec<f64>,
    pub fusion: Vec<Vec<Vec<u32>>>,
}

fn abelian(name: impl Into<String>, labels: Vec<String>, product: impl Fn(usize, usize) -> usize) -> AnyonModel {
    let n = labels.len();
    let mut fusion = vec![vec![vec![0; n]; n]; n];
    for (a, row) in fusion.iter_mut().enumerate() {
        for (b, out) in row.iter_mut().enumerate() {
            out[product(a, b)] = 1;
        }
    }
    AnyonModel { name: name.into(), labels, dims: vec![1.0; n], fusion }
}

impl AnyonModel {
    pub fn trivial() -> Self {
        abelian("trivial", vec!["1".into()], |_, _| 0)
    }

    /// Toric code: `1, e, m, f` with `Z_2 × Z_2` fusion.
    pub fn toric() -> Self {
        abelian("toric", ["1", "e", "m", "f"].map(String::from).to_vec(), |a, b| a ^ b)
    }

    pub fn z_n(n: usize) -> Self {
        let labels = (0..n).map(|i| if i == 0 { "1".to_string() } else { i.to_string() }).collect();
        abelian(format!("z{n}"), labels, |a, b| (a + b) % n)
    }

    pub fn fibonacci() -> Self {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let fusion = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]];
        AnyonModel { name: "fibonacci".into(), labels: vec!["1".into(), "tau".into()], dims: vec![1.0, phi], fusion }
    }

    pub fn ising() -> Self {
        // 1, sigma, psi
        let fusion = vec![
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]],
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]],
        ];
        AnyonModel {
            name: "ising".into(),
            labels: ["1", "sigma", "psi"].map(String::from).to_vec(),
            dims: vec![1.0, 2f64.sqrt(), 1.0],
            fusion,
        }
    }

    /// Every builtin with a representative cyclic group.
    pub fn builtins() -> Vec<AnyonModel> {
        vec![Self::trivial(), Self::toric(), Self::z_n(3), Self::fibonacci(), Self::ising()]
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn validate(&self) -> ModelReport {
        let mut out = Vec::new();
        let n = self.labels.len();
        let shape_ok = n > 0
            && self.dims.len() == n
            && self.fusion.len() == n
            && self.fusion.iter().all(|row| row.len() == n && row.iter().all(|v| v.len() == n));
        if !shape_ok {
            out.push(ModelViolation::Shape {
                message: format!("need {n} labels, {n} dims and an {n}x{n}x{n} fusion tensor"),
            });
            return ModelReport { model: self.name.clone(), violations: out };
        }
        let (l, d, nn) = (&self.labels, &self.dims, &self.fusion);
        if (d[0] - 1.0).abs() > TOLERANCE {
            out.push(ModelViolation::VacuumDimension { d: d[0] });
        }
        for a in 0..n {
            if d[a].is_nan() || d[a] < 1.0 - TOLERANCE {
                out.push(ModelViolation::DimensionBelowOne { label: l[a].clone(), d: d[a] });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let id = u32::from(a == b);
                if nn[0][a][b] != id || nn[a][0][b] != id {
                    out.push(ModelViolation::VacuumNotIdentity { a: l[a].clone(), b: l[b].clone() });
                }
            }
        }
        for a in 0..n {
            let partners = (0..n).filter(|&b| nn[a][b][0] != 0).count();
            let unit = (0..n).filter(|&b| nn[a][b][0] == 1).count();
            if partners != 1 || unit != 1 {
                out.push(ModelViolation::Conjugation { label: l[a].clone(), partners });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let lhs: f64 = (0..n).map(|c| nn[a][b][c] as f64 * d[c]).sum();
                let rhs = d[a] * d[b];
                if (lhs - rhs).abs() > TOLERANCE {
                    out.push(ModelViolation::Dimension { a: l[a].clone(), b: l[b].clone(), lhs, rhs });
                }
            }
        }
        'assoc: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for x in 0..n {
                        let left: u64 = (0..n).map(|e| nn[a][b][e] as u64 * nn[e][c][x] as u64).sum();
                        let right: u64 = (0..n).map(|f| nn[b][c][f] as u64 * nn[a][f][x] as u64).sum();
                        if left != right {
                            out.push(ModelViolation::Associativity {
                                a: l[a].clone(),
                                b: l[b].clone(),
                                c: l[c].clone(),
                                d: l[x].clone(),
                            });
                            break 'assoc;
                        }
                    }
                }
            }
        }
        ModelReport { model: self.name.clone(), violations: out }
    }

    fn require_valid(&self) -> Result<(), AnyonError> {
        let report = self.validate();
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(AnyonError::Invalid { name: self.name.clone(), first: v.to_string() }),
        }
    }

    pub fn derived_scalars(&self) -> Result<DerivedScalars, AnyonError> {
        self.require_valid()?;
        Ok(self.scalars_unchecked())
    }

    fn scalars_unchecked(&self) -> DerivedScalars {
        let d2: f64 = self.dims.iter().map(|d| d * d).sum();
        let p: Vec<f64> = self.dims.iter().map(|d| d * d / d2).collect();
        let k = p.iter().zip(&self.dims).map(|(p, d)| p * d.ln()).sum();
        DerivedScalars { d: d2.sqrt(), k, p }
    }

    /// `2(k-1)·log D - k·K` for `k >= 2`, zero for `k <= 1`.
    pub fn closed_form_entropy(&self, k: i64) -> Result<f64, AnyonError> {
        if k < 0 {
            return Err(AnyonError::NegativePunctures(k));
        }
        let s = self.derived_scalars()?;
        if k <= 1 {
            return Ok(0.0);
        }
        Ok(2.0 * (k - 1) as f64 * s.d.ln() - k as f64 * s.k)
    }

    /// Entropy of `k` punctures on a sphere with total vacuum charge, by
    /// enumerating every charge assignment and every fusion channel.
    pub fn brute_force(&self, k: usize, kmax: usize) -> Result<BruteForce, AnyonError> {
        if k > kmax {
            return Err(AnyonError::TooManyPunctures { k, kmax });
        }
        self.require_valid()?;
        let n = self.rank();
        let s = self.scalars_unchecked();
        let norm = (s.d * s.d).powi(k.saturating_sub(1) as i32);
        let mut acc = Acc { entropy: 0.0, total: 0.0, marginals: vec![vec![0.0; n]; k] };
        if k > 0 {
            let mut tuple = vec![0usize; k];
            for a in 0..n {
                let mut channels = vec![0u128; n];
                channels[a] = 1;
                tuple[0] = a;
                self.descend(&mut tuple, 1, &channels, self.dims[a], norm, &mut acc);
            }
        }
        Ok(BruteForce { punctures: k, entropy: -acc.entropy, total_probability: acc.total, marginals: acc.marginals })
    }

    /// `channels[c]`: number of ways the first `depth` charges fuse to `c`.
    fn descend(&self, tuple: &mut [usize], depth: usize, channels: &[u128], dims: f64, norm: f64, acc: &mut Acc) {
        let n = self.rank();
        if depth == tuple.len() {
            let count = channels[0];
            if count == 0 {
                return;
            }
            let p = count as f64 * dims / norm;
            acc.entropy += p * (p / count as f64).ln();
            acc.total += p;
            for (i, &a) in tuple.iter().enumerate() {
                acc.marginals[i][a] += p;
            }
            return;
        }
        for a in 0..n {
            let mut next = vec![0u128; n];
            for (b, &m) in channels.iter().enumerate() {
                if m != 0 {
                    for (c, slot) in next.iter_mut().enumerate() {
                        *slot += m * self.fusion[b][a][c] as u128;
                    }
                }
            }
            if next.iter().all(|&m| m == 0) {
                continue;
            }
            tuple[depth] = a;
            self.descend(tuple, depth + 1, &next, dims * self.dims[a], norm, acc);
        }
    }

    pub fn brute_force_entropy(&self, k: usize) -> Result<f64, AnyonError> {
        Ok(self.brute_force(k, DEFAULT_KMAX)?.entropy)
    }

    pub fn to_json(&self) -> ModelJson {
        ModelJson {
            name: Some(self.name.clone()),
            labels: self.labels.clone(),
            dims: self.dims.clone(),
            fusion: self.fusion.clone(),
        }
    }

    pub fn from_json(json: ModelJson) -> AnyonModel {
        AnyonModel { name: json.name.unwrap_or_else(|| "custom".into()), labels: json.labels, dims: json.dims, fusion: json.fusion }
    }

    pub fn from_json_str(text: &str) -> Result<AnyonModel, AnyonError> {
        let json: ModelJson = serde_json::from_str(text).map_err(|e| AnyonError::Json(e.to_string()))?;
        Ok(AnyonModel::from_json(json))
    }
}

struct Acc {
    entropy: f64,
    total: f64,
    marginals: Vec<Vec<f64>>,
}

impl FromStr for AnyonModel {
    type Err = AnyonError;

    /// `trivial`, `toric`, `fibonacci`/`fib`, `ising`, and cyclic groups as
    /// `z3`, `Z_3` or `Z_3(k)` (the level does not change dimensions or
    /// fusion and is ignored).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || AnyonError::UnknownModel(s.to_string());
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "trivial" => return Ok(Self::trivial()),
            "toric" | "toric_code" => return Ok(Self::toric()),
            "fibonacci" | "fib" => return Ok(Self::fibonacci()),
            "ising" => return Ok(Self::ising()),
            _ => {}
        }
        let rest = t.strip_prefix('z').ok_or_else(unknown)?;
        let rest = rest.strip_prefix('_').unwrap_or(rest);
        let digits = match rest.find('(') {
            Some(i) if rest.ends_with(')') => &rest[..i],
            Some(_) => return Err(unknown()),
            None => rest,
        };
        match digits.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Self::z_n(n)),
            _ => Err(unknown()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        for m in AnyonModel::builtins() {
            assert!(m.validate().is_valid(), "{}: {:?}", m.name, m.validate());
        }
    }

    #[test]
    fn derived_values() {
        let t = AnyonModel::toric().derived_scalars().unwrap();
        assert!((t.d - 2.0).abs() < 1e-12 && t.k.abs() < 1e-15);
        assert!(t.p.iter().all(|p| (p - 0.25).abs() < 1e-15));
        let triv = AnyonModel::trivial().derived_scalars().unwrap();
        assert_eq!((triv.d, triv.k), (1.0, 0.0));
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let f = AnyonModel::fibonacci().derived_scalars().unwrap();
        assert!((f.d * f.d - (1.0 + phi * phi)).abs() < 1e-12);
        let k_fib = phi * phi * phi.ln() / (1.0 + phi * phi);
        assert!((f.k - k_fib).abs() < 1e-12, "{}", f.k);
        assert!((f.k - 0.3481).abs() < 5e-4);
        assert!((f.p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let i = AnyonModel::ising().derived_scalars().unwrap();
        assert!((i.d - 2.0).abs() < 1e-12);
        assert!((i.k - 0.25 * 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn closed_form_values() {
        let toric = AnyonModel::toric();
        assert!((toric.closed_form_entropy(4).unwrap() - 6.0 * 2f64.ln()).abs() < 1e-12);
        assert_eq!(toric.closed_form_entropy(1).unwrap(), 0.0);
        assert!(toric.closed_form_entropy(-1).is_err());
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let d2 = 1.0 + phi * phi;
        let expect = 4.0 * 0.5 * d2.ln() - 3.0 * phi * phi * phi.ln() / d2;
        let fib = AnyonModel::fibonacci().closed_form_entropy(3).unwrap();
        assert!((fib - expect).abs() < 1e-12, "{fib}");
    }

    #[test]
    fn toric_three_punctures() {
        let bf = AnyonModel::toric().brute_force(3, 8).unwrap();
        assert!((bf.entropy - 4.0 * 2f64.ln()).abs() < 1e-12);
        assert!((bf.total_probability - 1.0).abs() < 1e-12);
        assert_eq!(AnyonModel::fibonacci().brute_force(1, 8).unwrap().entropy, 0.0);
    }

    #[test]
    fn brute_force_matches_closed_form() {
        for m in AnyonModel::builtins() {
            for k in 2..=6 {
                let bf = m.brute_force_entropy(k).unwrap();
                let cf = m.closed_form_entropy(k as i64).unwrap();
                assert!((bf - cf).abs() < 1e-9, "{} k={k}: {bf} vs {cf}", m.name);
            }
        }
    }

    #[test]
    fn kmax_enforced() {
        assert!(matches!(AnyonModel::toric().brute_force(9, 8), Err(AnyonError::TooManyPunctures { k: 9, kmax: 8 })));
    }

    #[test]
    fn broken_models_flagged() {
        let mut fib = AnyonModel::fibonacci();
        fib.dims[1] = 1.7;
        let r = fib.validate();
        assert!(r.violations.iter().any(|v| matches!(v, ModelViolation::Dimension { .. })), "{r:?}");
        assert!(fib.derived_scalars().is_err());

        let mut z3 = AnyonModel::z_n(3);
        // break associativity while keeping the vacuum row and conjugates
        z3.fusion[1][1] = vec![0, 1, 1];
        z3.dims = vec![1.0, 1.0, 1.0];
        let r = z3.validate();
        assert!(r.violations.iter().any(|v| matches!(v, ModelViolation::Associativity { .. })), "{r:?}");
    }

    #[test]
    fn names() {
        assert_eq!("Z_3".parse::<AnyonModel>().unwrap().rank(), 3);
        assert_eq!("z4".parse::<AnyonModel>().unwrap().rank(), 4);
        assert_eq!("Z_5(2)".parse::<AnyonModel>().unwrap().rank(), 5);
        assert_eq!("Fibonacci".parse::<AnyonModel>().unwrap().name, "fibonacci");
        assert!("su2".parse::<AnyonModel>().is_err());
        assert!("z0".parse::<AnyonModel>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = AnyonModel::ising();
        let text = serde_json::to_string(&m.to_json()).unwrap();
        assert_eq!(AnyonModel::from_json_str(&text).unwrap(), m);
    }
}
