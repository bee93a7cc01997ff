//! Rendering of tables and reports as JSON, CSV or aligned text.

use serde_json::{json, Value};
use spinchar::cyclo::CycloNum;

use crate::{CliError, Format};

/// Version of the JSON documents written by this tool.
pub const SCHEMA: u32 = 1;

/// An order or count as a JSON number when it fits, else as a string.
pub fn big(n: u128) -> Value {
    match u64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

/// Exact value string, followed by a decimal rendering when requested.
pub fn cell(v: &CycloNum, decimal: bool) -> String {
    if decimal {
        format!("{v} ~ {}", v.to_decimal_string())
    } else {
        v.to_string()
    }
}

/// A JSON document, pretty-printed with sorted keys and a trailing newline.
pub fn json_doc(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// A rectangular table: a header row and data rows of strings.
pub struct Grid {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Grid {
    pub fn render(&self, format: Format, json: &Value) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(json_doc(json)),
            Format::Csv => self.csv(),
            Format::Pretty => Ok(self.pretty()),
        }
    }

    fn csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| CliError::Internal(e.to_string());
        w.write_record(&self.header).map_err(err)?;
        for r in &self.rows {
            w.write_record(r).map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
    }

    fn pretty(&self) -> String {
        let cols = self.header.len();
        let mut width = vec![0usize; cols];
        for r in std::iter::once(&self.header).chain(&self.rows) {
            for (c, cell) in r.iter().enumerate() {
                width[c] = width[c].max(cell.chars().count());
            }
        }
        let mut out = String::new();
        for r in std::iter::once(&self.header).chain(&self.rows) {
            let cells: Vec<String> =
                r.iter().enumerate().map(|(c, cell)| format!("{cell:<w$}", w = width[c])).collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

/// Only JSON (or its pretty-printed text form) is available for reports.
pub fn report(format: Format, v: &Value) -> Result<String, CliError> {
    match format {
        Format::Json | Format::Pretty => Ok(json_doc(v)),
        Format::Csv => Err(CliError::Usage("csv output is only available for classes and chartable".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_labels_with_commas() {
        let g = Grid { header: vec!["character".into(), "(2,1)".into()], rows: vec![vec!["xi(3)".into(), "1".into()]] };
        let s = g.render(Format::Csv, &Value::Null).unwrap();
        assert_eq!(s, "character,\"(2,1)\"\nxi(3),1\n");
    }

    #[test]
    fn big_numbers_fall_back_to_strings() {
        assert_eq!(big(7), json!(7));
        assert_eq!(big(u128::from(u64::MAX) + 1), json!("18446744073709551616"));
    }
}
