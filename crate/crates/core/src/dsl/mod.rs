//! Text language, generators, tripartite forms and catalogs for
//! information quantities.

mod catalog;
mod generators;
mod parser;
mod render;
mod tripartite;

pub use catalog::{load_catalog, parse_catalog, starter_catalog, write_catalog, CatalogEntry, CatalogError};
pub use generators::{cyclic, multi_information, named, partial_multi_information, GeneratorError, NamedQuantity};
pub use parser::{parse, parse_in, ParseError};
pub use render::render;
pub use tripartite::{
    verify_tripartite_form, TripartiteError, TripartiteForm, TripartiteFormJson, TripartiteMatch, TripartiteTerm,
    TripartiteTermJson,
};
