use clap::Args;
use serde::Serialize;
use serde_json::json;

use tee_probe::anyon::{AnyonError, AnyonModel, DEFAULT_KMAX, TOLERANCE};

use crate::format::{emit, float, table};
use crate::sources::resolve_model;
use crate::{exit, CliError, Outcome, OutputFormat};

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Builtin model name or model JSON file.
    #[arg(long, default_value = "fibonacci")]
    pub model: String,
    /// Largest puncture count to check; rows run from 2 up to this.
    #[arg(long, default_value_t = 6)]
    pub punctures: usize,
    /// Enumeration cap.
    #[arg(long, env = "TEE_PROBE_KMAX", default_value_t = DEFAULT_KMAX)]
    pub kmax: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleRow {
    pub punctures: usize,
    pub closed_form: f64,
    pub brute_force: f64,
    pub delta: f64,
    /// `|Σ P - 1|`.
    pub probability_defect: f64,
    /// Largest deviation of a single-puncture marginal from `d_a²/D²`.
    pub marginal_deviation: f64,
    pub pass: bool,
}

pub fn oracle_rows(model: &AnyonModel, k: usize, kmax: usize) -> Result<Vec<OracleRow>, AnyonError> {
    let expected = model.derived_scalars()?.p;
    (2..=k)
        .map(|j| {
            let closed = model.closed_form_entropy(j as i64)?;
            let bf = model.brute_force(j, kmax)?;
            let delta = (closed - bf.entropy).abs();
            let defect = (bf.total_probability - 1.0).abs();
            let marginal = bf
                .marginals
                .iter()
                .flat_map(|m| m.iter().zip(&expected).map(|(x, y)| (x - y).abs()))
                .fold(0.0, f64::max);
            let pass = delta <= TOLERANCE && defect <= TOLERANCE && marginal <= TOLERANCE;
            Ok(OracleRow {
                punctures: j,
                closed_form: closed,
                brute_force: bf.entropy,
                delta,
                probability_defect: defect,
                marginal_deviation: marginal,
                pass,
            })
        })
        .collect()
}

pub fn run(args: &OracleArgs, format: OutputFormat) -> Result<Outcome, CliError> {
    let model = resolve_model(&args.model)?;
    let report = model.validate();
    if !report.is_valid() {
        return Err(CliError::input(format!("model {} is not a valid fusion category: {:?}", model.name, report.violations)));
    }
    if args.punctures > args.kmax {
        return Err(CliError::input(AnyonError::TooManyPunctures { k: args.punctures, kmax: args.kmax }));
    }
    let rows = oracle_rows(&model, args.punctures, args.kmax).map_err(CliError::input)?;
    let pass = rows.iter().all(|r| r.pass);
    let value = json!({ "model": model.name, "tolerance": TOLERANCE, "rows": rows, "pass": pass });
    let stdout = emit(format, &value, || {
        let mut t = vec![["k", "closed form", "brute force", "delta", "marginal dev", "pass"].map(String::from).to_vec()];
        for r in &rows {
            t.push(vec![
                r.punctures.to_string(),
                float(r.closed_form),
                float(r.brute_force),
                format!("{:.2e}", r.delta),
                format!("{:.2e}", r.marginal_deviation),
                if r.pass { "✓".into() } else { "✗".into() },
            ]);
        }
        let mut out = format!("model {}\n", model.name);
        out.push_str(&table(&t));
        out.push_str(if pass { "oracle: pass\n" } else { "oracle: FAIL\n" });
        out
    })?;
    Ok(Outcome { stdout, code: if pass { exit::OK } else { exit::FAILED } })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_rows() {
        // abelian models: every charge is equally likely and K vanishes
        let rows = oracle_rows(&AnyonModel::z_n(3), 5, DEFAULT_KMAX).unwrap();
        assert_eq!(rows.len(), 4);
        for r in rows {
            let expected = (r.punctures - 1) as f64 * 3f64.ln();
            assert!(r.pass);
            assert!((r.brute_force - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn kmax_is_enforced() {
        assert!(oracle_rows(&AnyonModel::ising(), 5, 4).is_err());
    }
}
