pub mod analyze;
pub mod eval;
pub mod generate;
pub mod geometry;
pub mod oracle;
pub mod scan;
