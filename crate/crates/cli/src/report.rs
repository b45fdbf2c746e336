use serde::Serialize;

use crate::args::Format;

pub const SCHEMA_VERSION: u32 = 1;

/// What a command produced: the bytes to emit, the exit code, and warnings
/// for stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub body: String,
    pub code: u8,
    pub warnings: Vec<String>,
}

/// A command result renderable in every output format.
pub trait Report: Serialize {
    fn text(&self) -> String;
    fn csv_header(&self) -> Vec<&'static str>;
    fn csv_rows(&self) -> Vec<Vec<String>>;
}

pub fn render<R: Report>(r: &R, format: Format) -> anyhow::Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(r)? + "\n",
        Format::Text => r.text(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(r.csv_header())?;
            for row in r.csv_rows() {
                w.write_record(&row)?;
            }
            String::from_utf8(w.into_inner()?)?
        }
    })
}
