//! Verification suites, transcribed fixtures and golden files.

mod fixtures;
mod golden;
mod report;
mod suites;

pub use fixtures::{
    comparison_table, fixture_checks, load_comparison, render_row, render_table, Comparison, External, FixtureEntry,
    FixtureFile, Part, TableRow, X_DEGREE,
};
pub use golden::{golden_check, golden_json, golden_specs, write_golden, GoldenFile, GoldenSpec, GOLDEN_VERSION};
pub use report::{Check, Status, SuiteReport};
pub use suites::{Suite, Verifier};

/// The fixtures shipped with this crate.
pub const DEFAULT_FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/v1");
