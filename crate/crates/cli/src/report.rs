//! Rendering of command results as aligned text, CSV or JSON.

use std::io::Write;

use clap::ValueEnum;
use serde_json::{json, Value};

use crate::error::CliResult;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

/// One command's output. `grid` feeds the text and CSV forms, the JSON form
/// carries `inputs`, `result`, `provenance` and `timing_ms`.
#[derive(Clone, Debug)]
pub struct Report {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
    pub inputs: Value,
    pub result: Value,
    pub provenance: Value,
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn new(title: impl Into<String>, inputs: Value) -> Self {
        Report {
            title: title.into(),
            header: Vec::new(),
            rows: Vec::new(),
            notes: Vec::new(),
            inputs,
            result: Value::Null,
            provenance: Value::Null,
            timing_ms: None,
        }
    }

    pub fn header<I: IntoIterator<Item = S>, S: Into<String>>(mut self, cols: I) -> Self {
        self.header = cols.into_iter().map(Into::into).collect();
        self
    }

    pub fn row<I: IntoIterator<Item = S>, S: Into<String>>(&mut self, cells: I) {
        self.rows.push(cells.into_iter().map(Into::into).collect());
    }

    pub fn render<W: Write>(&self, format: Format, out: &mut W) -> CliResult<()> {
        match format {
            Format::Text => self.render_text(out),
            Format::Csv => self.render_csv(out),
            Format::Json => {
                let doc = json!({
                    "inputs": self.inputs,
                    "result": self.result,
                    "provenance": self.provenance,
                    "timing_ms": self.timing_ms,
                });
                serde_json::to_writer_pretty(&mut *out, &doc).map_err(std::io::Error::from)?;
                writeln!(out)?;
                Ok(())
            }
        }
    }

    fn render_text<W: Write>(&self, out: &mut W) -> CliResult<()> {
        if !self.title.is_empty() {
            writeln!(out, "{}", self.title)?;
        }
        let cols = self
            .header
            .len()
            .max(self.rows.iter().map(Vec::len).max().unwrap_or(0));
        let mut width = vec![0; cols];
        for r in std::iter::once(&self.header).chain(&self.rows) {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |out: &mut W, r: &[String]| -> std::io::Result<()> {
            let cells: Vec<String> = r
                .iter()
                .zip(&width)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            writeln!(out, "{}", cells.join("  ").trim_end())
        };
        if !self.header.is_empty() {
            line(out, &self.header)?;
        }
        for r in &self.rows {
            line(out, r)?;
        }
        for n in &self.notes {
            writeln!(out, "{n}")?;
        }
        if let Some(t) = self.timing_ms {
            writeln!(out, "time: {t:.1} ms")?;
        }
        Ok(())
    }

    fn render_csv<W: Write>(&self, out: &mut W) -> CliResult<()> {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
        if !self.header.is_empty() {
            w.write_record(&self.header)?;
        }
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Three decimals, the precision used for every LP cell.
pub fn fixed3(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

/// Four significant digits in `d.ddde<exp>` form.
pub fn sci4(digits: &str) -> String {
    let digits = digits.trim_start_matches('-');
    let exp = digits.len() - 1;
    if exp < 4 {
        return digits.to_string();
    }
    // Round the leading five digits to four.
    let lead: u64 = digits[..5].parse().unwrap_or(0);
    let mut m = (lead + 5) / 10;
    let mut exp = exp;
    if m >= 10_000 {
        m /= 10;
        exp += 1;
    }
    format!("{}.{:03}e{exp}", m / 1000, m % 1000)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scientific_rounding() {
        assert_eq!(sci4("67108864"), "6.711e7");
        assert_eq!(sci4("99996"), "1.000e5");
        assert_eq!(sci4("2048"), "2048");
        assert_eq!(sci4("12345"), "1.235e4");
    }

    #[test]
    fn text_columns_align() {
        let mut r = Report::new("t", Value::Null).header(["a", "long"]);
        r.row(["123", "4"]);
        let mut buf = Vec::new();
        r.render(Format::Text, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "t\n  a  long\n123     4\n");
    }

    #[test]
    fn csv_quotes_commas() {
        let mut r = Report::new("", Value::Null).header(["code", "n"]);
        r.row(["rm:m=4,r=2", "16"]);
        let mut buf = Vec::new();
        r.render(Format::Csv, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "code,n\n\"rm:m=4,r=2\",16\n"
        );
    }
}
