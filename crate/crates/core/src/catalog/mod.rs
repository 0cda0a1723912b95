//! Static cohomology data for every supported `(G, p)`: generators,
//! operation tables, transgressions, torsion indices and restriction tables.

mod data;
mod types;
mod validate;

pub use data::{lookup, supported_cases, MAX_CLASSICAL_RANK};
pub use types::*;
pub use validate::{validate_catalog, validate_model, CatalogReport, EntryReport};
