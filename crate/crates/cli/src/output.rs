//! Artifact rendering and reading back.

use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, Format};
use crate::error::{CliError, Result};
use crate::run::{Artifact, Cell};

const CONFIG_PREFIX: &str = "# config: ";

/// JSON artifact: the resolved config and the command's result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub config: ExperimentConfig,
    pub result: serde_json::Value,
}

/// CSV artifact as read back.
#[derive(Clone, Debug, PartialEq)]
pub struct CsvDocument {
    pub config: ExperimentConfig,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

fn cell(c: &Cell) -> String {
    match c {
        Cell::Int(i) => i.to_string(),
        // 17 significant digits, locale-free
        Cell::Float(x) => format!("{x:.16e}"),
        Cell::Bool(b) => b.to_string(),
        Cell::Text(s) => s.clone(),
    }
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::config(format!("artifact csv: {e}"))
}

pub fn render(config: &ExperimentConfig, artifact: Artifact) -> String {
    match config.format {
        Format::Json => {
            let doc = Document {
                config: config.clone(),
                result: artifact.result,
            };
            serde_json::to_string_pretty(&doc).expect("document serializes") + "\n"
        }
        Format::Csv => {
            let mut out = String::new();
            out.push_str(CONFIG_PREFIX);
            out.push_str(&serde_json::to_string(config).expect("config serializes"));
            out.push('\n');
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&artifact.table.header).expect("in-memory write");
            for row in &artifact.table.rows {
                w.write_record(row.iter().map(cell)).expect("in-memory write");
            }
            let body = w.into_inner().expect("in-memory flush");
            out.push_str(std::str::from_utf8(&body).expect("utf-8 cells"));
            out
        }
    }
}

pub fn read_json(text: &str) -> Result<Document> {
    serde_json::from_str(text).map_err(|e| CliError::config(format!("artifact: {e}")))
}

pub fn read_csv(text: &str) -> Result<CsvDocument> {
    let (config, body) = text
        .split_once('\n')
        .and_then(|(first, rest)| Some((first.strip_prefix(CONFIG_PREFIX)?, rest)))
        .ok_or_else(|| CliError::config("artifact: missing config line"))?;
    let config = serde_json::from_str(config)
        .map_err(|e| CliError::config(format!("artifact config: {e}")))?;
    let mut reader = csv::Reader::from_reader(body.as_bytes());
    let header = reader
        .headers()
        .map_err(csv_error)?
        .iter()
        .map(String::from)
        .collect();
    let rows = reader
        .records()
        .map(|r| r.map(|r| r.iter().map(String::from).collect()))
        .collect::<Result<Vec<Vec<String>>, _>>()
        .map_err(csv_error)?;
    Ok(CsvDocument {
        config,
        header,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_cells() {
        assert_eq!(cell(&Cell::Float(0.1)), "1.0000000000000001e-1");
        assert_eq!(cell(&Cell::Float(0.1)).parse::<f64>().unwrap(), 0.1);
    }
}
