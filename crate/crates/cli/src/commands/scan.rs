use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Args;
use rayon::prelude::*;
use serde::Serialize;
use num_traits::Signed;
use serde_json::{json, Value};

use tee_probe::anyon::AnyonModel;
use tee_probe::dsl::{load_catalog, starter_catalog, CatalogEntry};
use tee_probe::evaluator::{topological_check, CheckMode, CheckValue, EvalOptions};
use tee_probe::{Arrangement, Classification};

use crate::commands::eval::numeric;
use crate::format::{float, rat, table, to_json_text};
use crate::sources::{resolve_geometry, resolve_model, split_list};
use crate::{exit, CliError, Outcome, OutputFormat};

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Catalog JSON file, or `starter` for the bundled catalog.
    #[arg(long, default_value = "starter")]
    pub catalog: String,
    /// Comma-separated geometries (builtin names or files).
    #[arg(long, default_value = "kp_disk3,pie5,pie7")]
    pub geometries: String,
    /// Comma-separated modes: paper, additive, area-law.
    #[arg(long, default_value = "paper")]
    pub modes: String,
    /// Write the full report to a .json or .csv file.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Anyon model for numeric values.
    #[arg(long)]
    pub model: Option<String>,
    /// Record per-row wall time (makes reports non-reproducible).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub index: usize,
    pub quantity: String,
    pub facet: bool,
    pub geometry: String,
    pub mode: String,
    /// `ok`, `skipped` (parties are not faces of the geometry) or `error`.
    pub status: String,
    pub classification: Classification,
    pub sum_coeffs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_log_d: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_k: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_gamma: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub topological: Option<bool>,
    /// Value is `-c·log D` (paper mode only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_expected: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nonnegative: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ModeSummary {
    pub mode: String,
    pub evaluated: usize,
    pub skipped: usize,
    pub errors: usize,
    pub topological: usize,
    /// Topological with a nonnegative value.
    pub valid: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub catalog: String,
    pub geometries: Vec<String>,
    pub modes: Vec<String>,
    pub model: Option<String>,
    pub rows: Vec<ScanRow>,
    pub summary: Vec<ModeSummary>,
    /// Facet entries on three or more parties that are not topological,
    /// negative or off `-c·log D` in paper mode.
    pub facet_failures: Vec<String>,
}

fn scan_one(
    index: usize,
    entry: &CatalogEntry,
    class: Classification,
    (gname, a): (&str, &Arrangement),
    mode: CheckMode,
    model: Option<&AnyonModel>,
    timings: bool,
) -> ScanRow {
    let start = timings.then(Instant::now);
    let q = &entry.quantity;
    let mut row = ScanRow {
        index,
        quantity: entry.name().to_string(),
        facet: entry.facet,
        geometry: gname.to_string(),
        mode: mode.as_str().to_string(),
        status: "ok".into(),
        classification: class,
        sum_coeffs: rat(&q.sum_coeffs()),
        c_log_d: None,
        c_k: None,
        c_gamma: None,
        topological: None,
        matches_expected: None,
        nonnegative: None,
        numeric: None,
        message: None,
        wall_ms: None,
    };
    let internal = a.internal_labels();
    if let Some(p) = q.parties().iter().find(|p| !internal.contains(p)) {
        row.status = "skipped".into();
        row.message = Some(format!("party {p} is not a face of {gname}"));
        return row;
    }
    match topological_check(q, a, mode, &EvalOptions::default()) {
        Ok(check) => {
            match &check.value {
                CheckValue::Tqft(v) => {
                    row.c_log_d = Some(rat(&v.c_log_d));
                    row.c_k = Some(rat(&v.c_k));
                    row.nonnegative = Some(check.topological && !v.c_log_d.is_negative());
                }
                CheckValue::AreaLaw(v) => {
                    row.c_gamma = Some(rat(&v.c_gamma));
                    row.nonnegative = Some(check.topological && !v.c_gamma.is_negative());
                }
            }
            row.topological = Some(check.topological);
            row.matches_expected = check.matches_expected;
            if let Some(m) = model {
                match numeric(&check, m) {
                    Ok(x) => row.numeric = x,
                    Err(e) => row.message = Some(e.message),
                }
            }
        }
        Err(e) => {
            row.status = "error".into();
            row.message = Some(e.to_string());
        }
    }
    if let Some(s) = start {
        row.wall_ms = Some(s.elapsed().as_secs_f64() * 1e3);
    }
    row
}

pub fn build_report(args: &ScanArgs) -> Result<ScanReport, CliError> {
    let (catalog_name, entries) = if args.catalog == "starter" {
        ("starter".to_string(), starter_catalog())
    } else {
        let entries = load_catalog(&args.catalog).map_err(CliError::input)?;
        (args.catalog.clone(), entries)
    };
    let geometries = split_list(&args.geometries)
        .iter()
        .map(|g| resolve_geometry(g))
        .collect::<Result<Vec<_>, _>>()?;
    for (name, a) in &geometries {
        let report = a.validate();
        if !report.is_valid() {
            return Err(CliError::input(format!("{name}: invalid arrangement\n{report}")));
        }
    }
    let modes = split_list(&args.modes)
        .iter()
        .map(|m| m.parse::<CheckMode>().map_err(CliError::input))
        .collect::<Result<Vec<_>, _>>()?;
    let model = args.model.as_deref().map(resolve_model).transpose()?;
    let classes: Vec<Classification> = entries.par_iter().map(|e| e.quantity.classify()).collect();

    let (ng, nm) = (geometries.len(), modes.len());
    let jobs: Vec<(usize, usize, usize)> = (0..entries.len())
        .flat_map(|c| (0..ng).flat_map(move |g| (0..nm).map(move |m| (c, g, m))))
        .collect();
    log::info!("scanning {} rows", jobs.len());
    let rows: Vec<ScanRow> = jobs
        .par_iter()
        .map(|&(c, g, m)| {
            let (gname, a) = &geometries[g];
            scan_one(c, &entries[c], classes[c], (gname, a), modes[m], model.as_ref(), args.timings)
        })
        .collect();

    let summary = modes
        .iter()
        .map(|m| {
            let of_mode: Vec<&ScanRow> = rows.iter().filter(|r| r.mode == m.as_str()).collect();
            ModeSummary {
                mode: m.as_str().to_string(),
                evaluated: of_mode.iter().filter(|r| r.status == "ok").count(),
                skipped: of_mode.iter().filter(|r| r.status == "skipped").count(),
                errors: of_mode.iter().filter(|r| r.status == "error").count(),
                topological: of_mode.iter().filter(|r| r.topological == Some(true)).count(),
                valid: of_mode.iter().filter(|r| r.nonnegative == Some(true)).count(),
            }
        })
        .collect();
    let facet_failures = rows
        .iter()
        .filter(|r| r.mode == CheckMode::Paper.as_str() && r.status == "ok" && r.facet)
        .filter(|r| entries[r.index].quantity.party_count() >= 3)
        .filter(|r| !(r.topological == Some(true) && r.nonnegative == Some(true) && r.matches_expected == Some(true)))
        .map(|r| format!("{} on {}", r.quantity, r.geometry))
        .collect();
    Ok(ScanReport {
        catalog: catalog_name,
        geometries: geometries.into_iter().map(|(n, _)| n).collect(),
        modes: modes.iter().map(|m| m.as_str().to_string()).collect(),
        model: model.map(|m| m.name),
        rows,
        summary,
        facet_failures,
    })
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

pub fn write_csv(report: &ScanReport, path: &Path) -> Result<(), CliError> {
    let io = |e: csv::Error| CliError::input(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    let mut header = vec![
        "index", "quantity", "facet", "geometry", "mode", "status", "classification", "sum_coeffs", "c_logD", "c_K", "c_gamma",
        "topological", "matches_expected", "nonnegative", "numeric", "message",
    ];
    if report.rows.iter().any(|r| r.wall_ms.is_some()) {
        header.push("wall_ms");
    }
    w.write_record(&header).map_err(io)?;
    for r in &report.rows {
        let mut rec = vec![
            r.index.to_string(),
            r.quantity.clone(),
            r.facet.to_string(),
            r.geometry.clone(),
            r.mode.clone(),
            r.status.clone(),
            r.classification.to_string(),
            r.sum_coeffs.clone(),
            opt(&r.c_log_d),
            opt(&r.c_k),
            opt(&r.c_gamma),
            opt(&r.topological),
            opt(&r.matches_expected),
            opt(&r.nonnegative),
            r.numeric.map(float).unwrap_or_default(),
            opt(&r.message),
        ];
        if header.len() > rec.len() {
            rec.push(r.wall_ms.map(|x| format!("{x:.3}")).unwrap_or_default());
        }
        w.write_record(&rec).map_err(io)?;
    }
    w.flush().map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// `[("2", "logD"), ("-1", "K")]` renders as `2·logD - K`.
fn linear(terms: &[(&String, &str)]) -> String {
    let mut out = String::new();
    for (c, sym) in terms.iter().filter(|(c, _)| c.as_str() != "0") {
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, c.as_str()),
        };
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
            (true, false) => {}
        }
        if mag != "1" {
            out.push_str(mag);
            out.push('·');
        }
        out.push_str(sym);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn report_table(report: &ScanReport) -> String {
    let mut rows = vec![["#", "quantity", "geometry", "mode", "class", "c", "value", "topological", "ok"].map(String::from).to_vec()];
    for r in &report.rows {
        let value = match (&r.c_log_d, &r.c_k, &r.c_gamma) {
            (Some(l), Some(k), _) => linear(&[(l, "logD"), (k, "K")]),
            (_, _, Some(g)) if r.topological == Some(true) => linear(&[(g, "γ")]),
            (_, _, Some(g)) => format!("{} + lengths", linear(&[(g, "γ")])),
            _ => r.message.clone().unwrap_or_default(),
        };
        rows.push(vec![
            r.index.to_string(),
            r.quantity.clone(),
            r.geometry.clone(),
            r.mode.clone(),
            r.classification.to_string(),
            r.sum_coeffs.clone(),
            if r.status == "ok" { value } else { format!("{}: {value}", r.status) },
            opt(&r.topological),
            opt(&r.nonnegative),
        ]);
    }
    let mut out = table(&rows);
    for s in &report.summary {
        out.push_str(&format!(
            "{}: {} evaluated, {} topological, {} valid, {} skipped, {} errors\n",
            s.mode, s.evaluated, s.topological, s.valid, s.skipped, s.errors
        ));
    }
    if report.facet_failures.is_empty() {
        out.push_str("facet check: pass\n");
    } else {
        out.push_str(&format!("facet check: FAIL ({})\n", report.facet_failures.join(", ")));
    }
    out
}

pub fn run(args: &ScanArgs, format: OutputFormat) -> Result<Outcome, CliError> {
    let report = build_report(args)?;
    if let Some(path) = &args.report {
        match path.extension().and_then(|x| x.to_str()) {
            Some("csv") => write_csv(&report, path)?,
            Some("json") => std::fs::write(path, to_json_text(&report)?)
                .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?,
            _ => return Err(CliError::input(format!("{}: report must end in .json or .csv", path.display()))),
        }
    }
    let value: Value = match format {
        OutputFormat::Json => serde_json::to_value(&report).map_err(|e| CliError::input(e.to_string()))?,
        OutputFormat::Table => json!(null),
    };
    let stdout = match format {
        OutputFormat::Json => to_json_text(&value)?,
        OutputFormat::Table => report_table(&report),
    };
    let code = if report.facet_failures.is_empty() { exit::OK } else { exit::FAILED };
    Ok(Outcome { stdout, code })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(geometries: &str, modes: &str) -> ScanArgs {
        ScanArgs {
            catalog: "starter".into(),
            geometries: geometries.into(),
            modes: modes.into(),
            report: None,
            model: None,
            timings: false,
        }
    }

    #[test]
    fn rows_follow_catalog_then_geometry_then_mode() {
        let r = build_report(&args("pie7,kp_disk3", "area-law,paper")).unwrap();
        let n = starter_catalog().len();
        assert_eq!(r.rows.len(), n * 4);
        let keys: Vec<(usize, &str, &str)> = r.rows[..4].iter().map(|x| (x.index, x.geometry.as_str(), x.mode.as_str())).collect();
        assert_eq!(keys, [(0, "pie7", "area-law"), (0, "pie7", "paper"), (0, "kp_disk3", "area-law"), (0, "kp_disk3", "paper")]);
        assert!(r.facet_failures.is_empty());
        assert!(r.rows.iter().all(|x| x.wall_ms.is_none()));
    }

    #[test]
    fn bad_mode_is_input_error() {
        assert_eq!(build_report(&args("pie5", "paper,bogus")).unwrap_err().code, exit::INPUT);
    }

    #[test]
    fn linear_rendering() {
        let s = |x: &str| x.to_string();
        assert_eq!(linear(&[(&s("2"), "logD"), (&s("-1"), "K")]), "2·logD - K");
        assert_eq!(linear(&[(&s("-1"), "logD"), (&s("0"), "K")]), "-logD");
        assert_eq!(linear(&[(&s("0"), "γ")]), "0");
    }
}
