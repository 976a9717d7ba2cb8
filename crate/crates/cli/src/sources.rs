//! Resolving command-line arguments into quantities, arrangements and
//! anyon models.

use std::path::Path;

use tee_probe::algebra::QuantityJson;
use tee_probe::anyon::AnyonModel;
use tee_probe::arrangement::{Arrangement, Builtin};
use tee_probe::dsl::{cyclic, multi_information, named, parse, NamedQuantity};
use tee_probe::InfoQuantity;

use crate::CliError;

/// A quantity given as
/// - a file: `.json` (quantity object) or DSL text,
/// - a shorthand: `In5`/`I5` (multi-information), `Q5`/`cyclic5`, or a named
///   quantity (`SA`, `MMI`, `LW`, `KP`, `Q61`, `Q62`),
/// - inline DSL, e.g. `"S(A) + S(B) - S(AB)"`.
pub fn resolve_quantity(spec: &str) -> Result<InfoQuantity, CliError> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{spec}: {e}")))?;
        if path.extension().is_some_and(|x| x == "json") {
            let json: QuantityJson = serde_json::from_str(&text).map_err(|e| CliError::input(format!("{spec}: {e}")))?;
            let q = InfoQuantity::from_json(&json).map_err(|e| CliError::input(format!("{spec}: {e}")))?;
            return Ok(q);
        }
        return parse(&text).map_err(|e| CliError::input(format!("{spec}: {e}")));
    }
    if let Some(q) = shorthand(spec)? {
        return Ok(q);
    }
    parse(spec).map_err(|e| CliError::input(format!("cannot read quantity {spec:?}: {e}")))
}

fn shorthand(spec: &str) -> Result<Option<InfoQuantity>, CliError> {
    let t = spec.trim();
    if let Ok(n) = t.parse::<NamedQuantity>() {
        return Ok(Some(n.build()));
    }
    let number = |rest: &str| rest.parse::<usize>().ok();
    let lower = t.to_ascii_lowercase();
    let multi = lower.strip_prefix("in").or_else(|| lower.strip_prefix('i')).and_then(number);
    if let Some(n) = multi {
        return multi_information(n).map(Some).map_err(CliError::input);
    }
    let cyc = lower.strip_prefix("cyclic").or_else(|| lower.strip_prefix('q')).and_then(number);
    if let Some(n) = cyc {
        return cyclic(n).map(Some).map_err(CliError::input);
    }
    Ok(None)
}

/// Quantity by generator name only (no files, no DSL).
pub fn named_quantity(name: &str) -> Result<InfoQuantity, CliError> {
    named(name).map_err(CliError::input)
}

/// A builtin name (`kp_disk3`, `pie5`, `resolved_pie(5)`, `strips3`) or an
/// arrangement JSON file. Returns a display name alongside.
pub fn resolve_geometry(spec: &str) -> Result<(String, Arrangement), CliError> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{spec}: {e}")))?;
        let a = Arrangement::from_json_str(&text).map_err(|e| CliError::input(format!("{spec}: {e}")))?;
        return Ok((spec.to_string(), a));
    }
    let builtin: Builtin = spec.parse().map_err(CliError::input)?;
    let a = builtin.build().map_err(CliError::input)?;
    Ok((builtin.to_string(), a))
}

/// A builtin model name or a model JSON file.
pub fn resolve_model(spec: &str) -> Result<AnyonModel, CliError> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{spec}: {e}")))?;
        return AnyonModel::from_json_str(&text).map_err(|e| CliError::input(format!("{spec}: {e}")));
    }
    spec.parse().map_err(CliError::input)
}

/// Split a comma-separated list, dropping empty items.
pub fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(String::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthands() {
        assert_eq!(resolve_quantity("In5").unwrap().name(), "I_5");
        assert_eq!(resolve_quantity("I3").unwrap().name(), "I_3");
        assert_eq!(resolve_quantity("Q5").unwrap().name(), "Q_5");
        assert_eq!(resolve_quantity("cyclic7").unwrap().name(), "Q_7");
        assert_eq!(resolve_quantity("Q62").unwrap().term_count(), 21);
        assert_eq!(resolve_quantity("lw").unwrap(), named("LW").unwrap());
        assert_eq!(resolve_quantity("S(A) + S(B) - S(AB)").unwrap(), named("SA").unwrap());
        assert!(resolve_quantity("Q4").is_err());
        assert!(resolve_quantity("S(A").is_err());
    }

    #[test]
    fn geometries() {
        assert_eq!(resolve_geometry("pie5").unwrap().0, "pie5");
        assert_eq!(resolve_geometry("resolved_pie(6)").unwrap().0, "pie6");
        assert!(resolve_geometry("pie1").is_err());
    }
}
