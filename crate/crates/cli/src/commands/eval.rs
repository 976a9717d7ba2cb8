use clap::Args;
use serde_json::{json, Value};

use tee_probe::anyon::AnyonModel;
use tee_probe::evaluator::{
    evaluate_numeric, tally_tqft, topological_check, CheckMode, CheckValue, EvalError, EvalMode, EvalOptions, TopologicalCheck,
};
use tee_probe::rational::to_f64;
use tee_probe::{Arrangement, InfoQuantity};

use crate::format::{area_json, emit, float, sym_json, tally_json, tally_table};
use crate::sources::{resolve_geometry, resolve_model, resolve_quantity};
use crate::{CliError, Outcome, OutputFormat};

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Quantity: file, shorthand (In5, Q5, MMI, …) or inline DSL.
    #[arg(long = "q")]
    pub quantity: String,
    /// Builtin (kp_disk3, pie<n>, strips<n>) or arrangement JSON file.
    #[arg(long)]
    pub geometry: String,
    /// paper, additive or area-law.
    #[arg(long, default_value = "paper")]
    pub mode: CheckMode,
    /// Anyon model for a numeric value (name or JSON file).
    #[arg(long)]
    pub model: Option<String>,
    /// Evaluate in all three modes side by side.
    #[arg(long)]
    pub compare_modes: bool,
    /// Per-term puncture bookkeeping (TQFT modes).
    #[arg(long)]
    pub tally: bool,
    /// Reject unions whose components have more than one boundary circuit.
    #[arg(long)]
    pub strict: bool,
}

pub(crate) fn eval_error(e: EvalError) -> CliError {
    match e {
        EvalError::HoleRejected { .. } => CliError::unsupported(e),
        other => CliError::input(other),
    }
}

/// Numeric value: TQFT values directly, area-law values only once all
/// lengths cancel (with γ = log D).
pub(crate) fn numeric(check: &TopologicalCheck, model: &AnyonModel) -> Result<Option<f64>, CliError> {
    match &check.value {
        CheckValue::Tqft(v) => evaluate_numeric(v, model).map(Some).map_err(CliError::input),
        CheckValue::AreaLaw(v) if v.lengths_vanish() => {
            let d = model.derived_scalars().map_err(CliError::input)?.d;
            Ok(Some(to_f64(&v.c_gamma) * d.ln()))
        }
        CheckValue::AreaLaw(_) => Ok(None),
    }
}

struct ModeResult {
    check: TopologicalCheck,
    numeric: Option<f64>,
    tally: Option<tee_probe::Tally>,
}

fn evaluate(q: &InfoQuantity, a: &Arrangement, mode: CheckMode, args: &EvalArgs, model: Option<&AnyonModel>) -> Result<ModeResult, CliError> {
    let opts = EvalOptions { strict: args.strict };
    let check = topological_check(q, a, mode, &opts).map_err(eval_error)?;
    let numeric = match model {
        Some(m) => numeric(&check, m)?,
        None => None,
    };
    let tally = match mode {
        CheckMode::Paper if args.tally => Some(tally_tqft(q, a, EvalMode::Paper, &opts).map_err(eval_error)?),
        CheckMode::Additive if args.tally => Some(tally_tqft(q, a, EvalMode::Additive, &opts).map_err(eval_error)?),
        _ => None,
    };
    Ok(ModeResult { check, numeric, tally })
}

fn result_json(r: &ModeResult, model: Option<&AnyonModel>) -> Value {
    let mut v = match &r.check.value {
        CheckValue::Tqft(s) => sym_json(s),
        CheckValue::AreaLaw(a) => area_json(a),
    };
    v["mode"] = json!(r.check.mode.as_str());
    v["topological"] = json!(r.check.topological);
    if let Some(e) = &r.check.expected {
        v["expected"] = sym_json(e);
        v["matches_expected"] = json!(r.check.matches_expected);
    }
    if let (Some(m), Some(x)) = (model, r.numeric) {
        v["numeric"] = json!({ "model": m.name, "value": x });
    }
    if let Some(t) = &r.tally {
        v["tally"] = tally_json(t);
    }
    v
}

fn result_line(r: &ModeResult, model: Option<&AnyonModel>) -> String {
    let value = match &r.check.value {
        CheckValue::Tqft(s) => s.to_string(),
        CheckValue::AreaLaw(a) => a.to_string(),
    };
    let mut line = format!(
        "{:<9} {}  [{}]",
        r.check.mode.as_str(),
        value,
        if r.check.topological { "topological" } else { "not topological" }
    );
    if let (Some(e), Some(m)) = (&r.check.expected, r.check.matches_expected) {
        line.push_str(&format!("  expected {e}: {}", if m { "match" } else { "MISMATCH" }));
    }
    if let (Some(m), Some(x)) = (model, r.numeric) {
        line.push_str(&format!("  {} = {}", m.name, float(x)));
    }
    line.push('\n');
    if let Some(t) = &r.tally {
        line.push_str(&tally_table(t));
    }
    line
}

pub fn run(args: &EvalArgs, format: OutputFormat) -> Result<Outcome, CliError> {
    let q = resolve_quantity(&args.quantity)?;
    let (gname, a) = resolve_geometry(&args.geometry)?;
    let report = a.validate();
    if !report.is_valid() {
        return Err(CliError::input(format!("{gname}: invalid arrangement\n{report}")));
    }
    let model = args.model.as_deref().map(resolve_model).transpose()?;
    let modes: Vec<CheckMode> =
        if args.compare_modes { vec![CheckMode::Paper, CheckMode::Additive, CheckMode::AreaLaw] } else { vec![args.mode] };
    let results = modes.iter().map(|&m| evaluate(&q, &a, m, args, model.as_ref())).collect::<Result<Vec<_>, _>>()?;
    log::info!("evaluated {} on {gname} in {} mode(s)", q.name(), results.len());

    let value = if args.compare_modes {
        json!({
            "quantity": q.name(),
            "geometry": gname,
            "results": results.iter().map(|r| result_json(r, model.as_ref())).collect::<Vec<_>>(),
        })
    } else {
        let mut v = result_json(&results[0], model.as_ref());
        v["quantity"] = json!(q.name());
        v["geometry"] = json!(gname);
        v
    };
    let text = emit(format, &value, || {
        let mut out = format!("{} on {gname}\n", if q.name().is_empty() { "quantity" } else { q.name() });
        for r in &results {
            out.push_str(&result_line(r, model.as_ref()));
        }
        out
    })?;
    Ok(Outcome::ok(text))
}
