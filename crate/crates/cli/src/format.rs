//! Shared rendering helpers. Exact values travel as rational strings;
//! floats are for display only and always use a fixed precision.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use tee_probe::evaluator::{AreaLawExpr, SymEntropy, Tally};
use tee_probe::rational::format_rational;
use tee_probe::Rational;

use crate::{CliError, OutputFormat};

pub fn rat(r: &Rational) -> String {
    format_rational(r)
}

pub fn float(x: f64) -> String {
    format!("{x:.10}")
}

pub fn sym_json(v: &SymEntropy) -> Value {
    json!({ "c_logD": rat(&v.c_log_d), "c_K": rat(&v.c_k) })
}

pub fn area_json(v: &AreaLawExpr) -> Value {
    let lengths: BTreeMap<String, String> = v.length_coeffs.iter().map(|(e, c)| (e.to_string(), rat(c))).collect();
    json!({ "length_coeffs": lengths, "c_gamma": rat(&v.c_gamma) })
}

/// `(1/2)[3𝒮_7 + 2𝒮_6 - 3𝒮_6 - 3𝒮_5]`: positive parts by descending `k`,
/// then negative parts by descending `k`.
pub fn tally_bracket(t: &Tally) -> String {
    let mut out = String::new();
    let mut push = |c: &Rational, k: usize, negative: bool| {
        let coeff = if num_is_one(c) { String::new() } else { rat(c) };
        match (out.is_empty(), negative) {
            (true, false) => {}
            (true, true) => out.push('-'),
            (false, false) => out.push_str(" + "),
            (false, true) => out.push_str(" - "),
        }
        out.push_str(&format!("{coeff}𝒮_{k}"));
    };
    for (k, c) in t.positive.iter().rev() {
        push(c, *k, false);
    }
    for (k, c) in t.negative.iter().rev() {
        push(c, *k, true);
    }
    if out.is_empty() {
        out.push('0');
    }
    format!("(1/2)[{out}]")
}

fn num_is_one(c: &Rational) -> bool {
    c.is_integer() && c.numer() == &1.into()
}

pub fn tally_json(t: &Tally) -> Value {
    let side = |m: &BTreeMap<usize, Rational>| -> BTreeMap<String, String> { m.iter().map(|(k, c)| (k.to_string(), rat(c))).collect() };
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|r| json!({ "region": r.label, "coeff": rat(&r.coeff), "spheres": r.spheres, "entropy": sym_json(&r.entropy) }))
        .collect();
    json!({ "rows": rows, "positive": side(&t.positive), "negative": side(&t.negative), "bracket": tally_bracket(t) })
}

pub fn tally_table(t: &Tally) -> String {
    let mut rows = vec![vec!["coeff".to_string(), "region".into(), "punctures".into(), "S(X)".into()]];
    for r in &t.rows {
        let spheres: Vec<String> = r.spheres.iter().map(|k| format!("𝒮_{k}")).collect();
        rows.push(vec![rat(&r.coeff), r.label.clone(), spheres.join(" + "), r.entropy.to_string()]);
    }
    let mut out = table(&rows);
    out.push_str(&format!("sum = {}\n", tally_bracket(t)));
    out
}

/// Left-aligned columns separated by two spaces; the first row is a header.
pub fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s}{}", " ".repeat(widths[c] - s.chars().count())))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
        if i == 0 {
            let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
            out.push_str(&rule.join("  "));
            out.push('\n');
        }
    }
    out
}

pub fn to_json_text<T: Serialize + ?Sized>(v: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(v).map(|mut s| {
        s.push('\n');
        s
    }).map_err(|e| CliError::input(format!("cannot serialise output: {e}")))
}

/// Pick the JSON value or the table text by format.
pub fn emit(format: OutputFormat, json: &Value, table: impl FnOnce() -> String) -> Result<String, CliError> {
    match format {
        OutputFormat::Json => to_json_text(json),
        OutputFormat::Table => Ok(table()),
    }
}
