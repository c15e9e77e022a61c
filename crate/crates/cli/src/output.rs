//! Aligned text, CSV and JSON emission.

use std::io::Write;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

/// Rows for text and CSV, plus a JSON mirror and trailing summary lines
/// (text only).
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub summary: Vec<String>,
    pub json: Value,
}

impl Report {
    pub fn new(headers: &[&str]) -> Self {
        Report {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            ..Report::default()
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.headers.len());
        self.rows.push(cells);
    }

    pub fn emit(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Table => self.write_table(out),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.headers)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                w.flush()
            }
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.json)?;
                writeln!(out)
            }
        }
    }

    fn write_table(&self, out: &mut dyn Write) -> std::io::Result<()> {
        if !self.headers.is_empty() && !self.rows.is_empty() {
            let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
            for r in &self.rows {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            writeln!(out, "{}", line(&self.headers))?;
            let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
            writeln!(out, "{}", rule.join("  "))?;
            for r in &self.rows {
                writeln!(out, "{}", line(r))?;
            }
        }
        for s in &self.summary {
            writeln!(out, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new(&["n", "codim"]);
        r.row(vec!["1".into(), "5".into()]);
        r.row(vec!["10".into(), "3, 4".into()]);
        r.summary.push("done".into());
        r.json = serde_json::json!({"n": 1});
        r
    }

    fn render(f: Format) -> String {
        let mut buf = Vec::new();
        sample().emit(f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn aligned_table() {
        assert_eq!(render(Format::Table), "n   codim\n--  -----\n1   5\n10  3, 4\ndone\n");
    }

    #[test]
    fn csv_quotes_commas() {
        assert_eq!(render(Format::Csv), "n,codim\n1,5\n10,\"3, 4\"\n");
    }

    #[test]
    fn json_mirror() {
        assert_eq!(render(Format::Json), "{\n  \"n\": 1\n}\n");
    }
}
