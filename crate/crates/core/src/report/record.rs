use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::arith::SymbolRecord;
use crate::classifier::{GroupType, Verdict};
use crate::error::{Error, Result};
use crate::formulas::H2Kind;

/// Columns of the CSV rendering, in order.
pub const CSV_HEADER: [&str; 8] = ["d", "rank", "case_id", "type", "h2_kind", "h2_value", "annotations", "symbols"];

/// Flat, serializable form of a [`Verdict`]. Field names are frozen.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub d: u64,
    pub rank: Option<u8>,
    pub case_id: Option<u8>,
    #[serde(rename = "type")]
    pub group_type: GroupType,
    pub h2_kind: H2Kind,
    pub h2_value: u64,
    pub annotations: Vec<String>,
    pub symbols: Vec<SymbolRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl From<&Verdict> for ScanRecord {
    fn from(v: &Verdict) -> Self {
        let mut annotations = v.annotations.clone();
        annotations.extend(v.diagnostics.iter().map(|d| format!("diagnostic: {d}")));
        ScanRecord {
            d: v.d,
            rank: v.rank(),
            case_id: v.case_id(),
            group_type: v.group_type,
            h2_kind: v.h2.kind,
            h2_value: v.h2.value,
            annotations,
            symbols: v.symbols.clone(),
            timing_ms: None,
        }
    }
}

fn opt(v: Option<u8>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl ScanRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }

    /// CSV fields; list fields are joined with `"; "`.
    pub fn csv_fields(&self) -> [String; 8] {
        let symbols: Vec<String> = self.symbols.iter().map(|s| format!("{}={}", s.symbol, s.value)).collect();
        [
            self.d.to_string(),
            opt(self.rank),
            opt(self.case_id),
            self.group_type.to_string(),
            self.h2_kind.to_string(),
            self.h2_value.to_string(),
            self.annotations.join("; "),
            symbols.join("; "),
        ]
    }
}

pub fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().has_headers(false).from_writer(w)
}

pub fn write_csv_header<W: Write>(w: &mut csv::Writer<W>) -> Result<()> {
    w.write_record(CSV_HEADER).map_err(csv_err)
}

pub fn write_csv_record<W: Write>(w: &mut csv::Writer<W>, r: &ScanRecord) -> Result<()> {
    w.write_record(r.csv_fields()).map_err(csv_err)
}

fn csv_err(e: csv::Error) -> Error {
    Error::Precondition(format!("csv output: {e}"))
}
