//! Batch suites: rational scans against an expected predicate, closed-form
//! expansion tables, and bases built from a prescribed left endpoint expansion.

mod closed_forms;
mod examples;
mod scan;

pub use closed_forms::{verify_closed_forms, ClosedFormReport, ClosedFormRow};
pub use examples::{
    beta_from_left_expansion, example12_report, example15_report, left_expansion_polynomial, Example12Report,
    Example12Row, Example15Report,
};
pub use scan::{scan_rationals, Predicate, ScanReport, ScanRow, Violation};

/// Short description of a base for reports.
pub fn describe_base(base: &crate::BaseContext) -> String {
    match base.family() {
        crate::Family::General => base.minpoly().to_string(),
        f => format!("{} ({f})", base.minpoly()),
    }
}
