//! Number fields from CSV catalogs or cubic enumeration, with Frobenius
//! classification and local-condition filtering.

mod conditions;
mod csv_io;
mod enumerate;
mod galois;
mod record;

pub use conditions::{filter_by_conditions, DiscWindow, LocalCondition, LocalConditionSet};
pub use csv_io::{load_catalog, write_catalog, LoadedCatalog, RowDiagnostic};
pub use enumerate::{
    enumerate_cubics, DEDUP_PRIME_BOUND, GALOIS_PRIME_BUDGET, MAX_ENUMERATION_HEIGHT,
};
pub use galois::{galois_heuristic_is_sn, GaloisEvidence};
pub use record::{
    frobenius_class, FrobeniusClass, FrobeniusObservation, GroupTag, NumberFieldRecord,
};
