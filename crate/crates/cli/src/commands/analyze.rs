use std::path::PathBuf;

use clap::Args;
use serde_json::{json, Value};

use tee_probe::dsl::{verify_tripartite_form, TripartiteForm, TripartiteFormJson};
use tee_probe::InfoQuantity;

use crate::format::{emit, rat};
use crate::sources::resolve_quantity;
use crate::{CliError, Outcome, OutputFormat};

/// Residue witnesses listed per cluster size.
const WITNESS_LIMIT: usize = 20;

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Quantity: file, shorthand (In5, Q5, MMI, …) or inline DSL.
    #[arg(long = "q")]
    pub quantity: String,
    /// Tripartite form (JSON) to verify against the quantity.
    #[arg(long)]
    pub form: Option<PathBuf>,
}

pub fn analysis_json(q: &InfoQuantity) -> Value {
    let profile = q.balance_profile();
    let slices: Vec<Value> = profile
        .slices
        .iter()
        .map(|s| {
            let witnesses: Vec<Value> = s
                .violations
                .iter()
                .take(WITNESS_LIMIT)
                .map(|(c, r)| json!({ "cluster": q.region_label(*c), "residue": rat(r) }))
                .collect();
            json!({ "k": s.k, "balanced": s.balanced, "violations": s.violations.len(), "witnesses": witnesses })
        })
        .collect();
    json!({
        "name": q.name(),
        "parties": q.parties(),
        "terms": q.term_count(),
        "sum_coeffs": rat(&q.sum_coeffs()),
        "ghz_log2": rat(&q.ghz_value()),
        "max_balanced_k": profile.max_balanced_k(),
        "classification": q.classify(),
        "balance": slices,
    })
}

fn analysis_table(q: &InfoQuantity) -> String {
    let profile = q.balance_profile();
    let mut out = format!("quantity: {} ({} parties, {} terms)\n", display_name(q), q.party_count(), q.term_count());
    for s in &profile.slices {
        if s.balanced {
            out.push_str(&format!("  {}-balanced ✓\n", s.k));
        } else {
            let shown: Vec<String> =
                s.violations.iter().take(5).map(|(c, r)| format!("{} → {}", q.region_label(*c), rat(r))).collect();
            let more = if s.violations.len() > 5 { format!(" (+{} more)", s.violations.len() - 5) } else { String::new() };
            out.push_str(&format!("  {}-balanced ✗  residues {}{more}\n", s.k, shown.join(", ")));
        }
    }
    out.push_str(&format!("max balanced k: {}\n", profile.max_balanced_k()));
    out.push_str(&format!("classification: {}\n", q.classify()));
    out.push_str(&format!("c = {}\n", rat(&q.sum_coeffs())));
    out.push_str(&format!("GHZ value: {}·log 2\n", rat(&q.ghz_value())));
    out
}

fn display_name(q: &InfoQuantity) -> &str {
    if q.name().is_empty() {
        "(unnamed)"
    } else {
        q.name()
    }
}

pub fn run(args: &AnalyzeArgs, format: OutputFormat) -> Result<Outcome, CliError> {
    let q = resolve_quantity(&args.quantity)?;
    let mut value = analysis_json(&q);
    let mut table = analysis_table(&q);
    if let Some(path) = &args.form {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        let json: TripartiteFormJson =
            serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        let form = TripartiteForm::from_json(&json).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        let m = verify_tripartite_form(&q, &form);
        value["form"] = json!({ "matches": m.matches, "p": m.p, "q": m.q });
        table.push_str(&format!(
            "tripartite form I^{}C^{}: {}\n",
            m.p,
            m.q,
            if m.matches { "matches" } else { "does NOT match" }
        ));
    }
    Ok(Outcome::ok(emit(format, &value, || table)?))
}
