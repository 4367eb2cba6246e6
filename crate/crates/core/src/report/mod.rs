//! Scan records with their JSON and CSV renderings, range scans, the published
//! example table and single-field queries.

mod examples;
mod quad;
mod record;
mod scan;

pub use examples::{verify_examples, CheckMode, ExampleReport, ExampleRow};
pub use quad::{field_radicand, quad_query, render_unit, QuadQuery};
pub use record::{csv_writer, write_csv_header, write_csv_record, ScanRecord, CSV_HEADER};
pub use scan::{scan, ScanFilter, ScanOptions, ScanOutput, ScanSummary};

/// JSON schema of one [`ScanRecord`].
pub const RECORD_SCHEMA: &str = include_str!("../../schema/scan_record.schema.json");
