use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;

use hdsel::SquareMatrix;

use crate::args::Format;
use crate::args::OutputArgs;

/// Self-describing output of one command. Everything except `wall_time_ms`
/// is a pure function of `config` and the input files.
#[derive(Debug, Serialize)]
pub struct Report<C: Serialize, R: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: C,
    pub result: R,
    pub warnings: Vec<String>,
    pub wall_time_ms: u64,
}

impl<C: Serialize, R: Serialize> Report<C, R> {
    pub fn new(
        command: &'static str,
        config: C,
        result: R,
        warnings: Vec<String>,
        started: Instant,
    ) -> Self {
        Self {
            tool: "hdsel",
            version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            result,
            warnings,
            wall_time_ms: started.elapsed().as_millis() as u64,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut out = serde_json::to_string_pretty(self)?;
        out.push('\n');
        Ok(out)
    }
}

/// A named table in the CSV view: optional header plus numeric rows.
pub struct CsvBlock {
    pub name: String,
    pub header: Option<Vec<String>>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvBlock {
    pub fn matrix(name: &str, m: &SquareMatrix) -> Self {
        Self {
            name: name.to_string(),
            header: None,
            rows: m.to_rows(),
        }
    }
}

/// Blocks separated by `# name` lines.
pub fn render_csv(blocks: &[CsvBlock]) -> Result<String> {
    let mut out = String::new();
    for block in blocks {
        writeln!(out, "# {}", block.name)?;
        if let Some(header) = &block.header {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(header)?;
            out.push_str(std::str::from_utf8(&w.into_inner()?)?);
        }
        for row in &block.rows {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
    }
    Ok(out)
}

pub fn emit(output: &OutputArgs, text: &str) -> Result<()> {
    match &output.output {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

pub fn is_csv(output: &OutputArgs) -> bool {
    output.format == Format::Csv
}
