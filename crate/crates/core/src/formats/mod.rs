//! File formats: JSON for distributions, witnesses and mappings; CSV for relations.

pub mod csv;
pub mod json;
