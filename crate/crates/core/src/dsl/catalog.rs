//! Quantity catalogs.
//!
//! ```json
//! {"quantities": [
//!   {"name": "MMI", "facet": true, "source": "...",
//!    "parties": ["A","B","C"],
//!    "terms": [{"coeff": "-1", "region": ["A"]}, ...]}
//! ]}
//! ```
//!
//! A bare top-level array of quantity objects is accepted as well.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::{InfoQuantity, QuantityJson};

const STARTER_CATALOG: &str = include_str!("../../data/starter_catalog.json");

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot read catalog {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("catalog is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("catalog must be an array or an object with a \"quantities\" array")]
    Shape,
    #[error("entry {index}: {message}")]
    Schema { index: usize, message: String },
    #[error("duplicate name {name:?} (entries {first} and {second})")]
    DuplicateName { name: String, first: usize, second: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub quantity: InfoQuantity,
    pub facet: bool,
    pub source: Option<String>,
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        self.quantity.name()
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct EntryJson {
    #[serde(flatten)]
    quantity: QuantityJson,
    #[serde(default)]
    facet: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source: Option<String>,
}

#[derive(Serialize)]
struct CatalogJson<'a> {
    quantities: &'a [EntryJson],
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let root: Value = serde_json::from_str(text)?;
    let items = match root {
        Value::Array(items) => items,
        Value::Object(mut map) => match map.remove("quantities") {
            Some(Value::Array(items)) => items,
            _ => return Err(CatalogError::Shape),
        },
        _ => return Err(CatalogError::Shape),
    };
    let mut names: HashMap<String, usize> = HashMap::new();
    let mut out = Vec::with_capacity(items.len());
    for (index, item) in items.into_iter().enumerate() {
        let schema = |message: String| CatalogError::Schema { index, message };
        // serde cannot deny unknown fields through a flattened struct
        if let Value::Object(map) = &item {
            if let Some(k) = map.keys().find(|k| !["name", "facet", "source", "parties", "terms"].contains(&k.as_str())) {
                return Err(schema(format!("unknown field {k:?}")));
            }
        }
        let entry: EntryJson = serde_json::from_value(item).map_err(|e| schema(e.to_string()))?;
        let mut quantity = InfoQuantity::from_json(&entry.quantity).map_err(|e| schema(e.to_string()))?;
        match &entry.quantity.name {
            Some(name) => {
                if let Some(&first) = names.get(name) {
                    return Err(CatalogError::DuplicateName { name: name.clone(), first, second: index });
                }
                names.insert(name.clone(), index);
            }
            None => quantity.set_name(format!("#{index}")),
        }
        out.push(CatalogEntry { quantity, facet: entry.facet, source: entry.source });
    }
    Ok(out)
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Vec<CatalogEntry>, CatalogError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| CatalogError::Io { path: path.display().to_string(), source })?;
    parse_catalog(&text)
}

pub fn write_catalog(entries: &[CatalogEntry]) -> String {
    let items: Vec<EntryJson> = entries
        .iter()
        .map(|e| EntryJson { quantity: e.quantity.to_json(), facet: e.facet, source: e.source.clone() })
        .collect();
    serde_json::to_string_pretty(&CatalogJson { quantities: &items }).expect("catalog JSON is always serialisable")
}

/// The bundled starter catalog: SA, MMI, cyclic Q_5, Q_7, Q_9, Q_{6,1} and
/// Q_{6,2}.
pub fn starter_catalog() -> Vec<CatalogEntry> {
    parse_catalog(STARTER_CATALOG).expect("bundled catalog is valid")
}
