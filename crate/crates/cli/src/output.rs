use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Rows of string cells under a fixed header. Missing cells render as an
/// empty CSV field, a JSON `null`, or `-` in text.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Option<String>>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = Option<S>>,
        S: Into<String>,
    {
        let row: Vec<Option<String>> = cells.into_iter().map(|c| c.map(Into::into)).collect();
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Appends a row where every cell is present.
    pub fn push_all<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.push(cells.into_iter().map(Some));
    }

    fn with_elapsed(&self, micros: Option<u128>) -> Table {
        let Some(us) = micros else {
            return self.clone();
        };
        let mut t = self.clone();
        t.columns.push("elapsed_us");
        for row in &mut t.rows {
            row.push(Some(us.to_string()));
        }
        t
    }
}

pub fn render(table: &Table, format: Format, elapsed_us: Option<u128>, out: &mut dyn Write) -> io::Result<()> {
    let table = table.with_elapsed(elapsed_us);
    match format {
        Format::Text => render_text(&table, out),
        Format::Json => render_json(&table, out),
        Format::Csv => render_csv(&table, out),
    }
}

fn render_text(table: &Table, out: &mut dyn Write) -> io::Result<()> {
    let cell = |c: &Option<String>| c.clone().unwrap_or_else(|| "-".to_string());
    let mut widths: Vec<usize> = table.columns.iter().map(|c| c.len()).collect();
    for row in &table.rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell(c).len());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(table.columns.iter().map(|c| c.to_string()).collect()))?;
    for row in &table.rows {
        writeln!(out, "{}", line(row.iter().map(cell).collect()))?;
    }
    Ok(())
}

fn render_json(table: &Table, out: &mut dyn Write) -> io::Result<()> {
    for row in &table.rows {
        let mut obj = Map::new();
        for (col, c) in table.columns.iter().zip(row) {
            let v = c.clone().map_or(Value::Null, Value::String);
            obj.insert((*col).to_string(), v);
        }
        serde_json::to_writer(&mut *out, &Value::Object(obj))?;
        writeln!(out)?;
    }
    Ok(())
}

fn render_csv(table: &Table, out: &mut dyn Write) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(|c| c.as_deref().unwrap_or("")))?;
    }
    w.flush()
}

/// `x` with six significant digits, in plain decimal notation.
pub fn six_significant(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["n", "value"]);
        t.push_all(["1", "14"]);
        t.push([Some("2"), None]);
        t
    }

    fn rendered(format: Format, elapsed: Option<u128>) -> String {
        let mut buf = Vec::new();
        render(&sample(), format, elapsed, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn formats() {
        assert_eq!(rendered(Format::Csv, None), "n,value\n1,14\n2,\n");
        assert_eq!(
            rendered(Format::Json, None),
            "{\"n\":\"1\",\"value\":\"14\"}\n{\"n\":\"2\",\"value\":null}\n"
        );
        assert_eq!(rendered(Format::Text, None), "n  value\n1  14\n2  -\n");
        assert!(rendered(Format::Csv, Some(5)).starts_with("n,value,elapsed_us\n1,14,5\n"));
    }

    #[test]
    fn significant_digits() {
        assert_eq!(six_significant(0.0061014812), "0.00610148");
        assert_eq!(six_significant(1.5), "1.50000");
        assert_eq!(six_significant(123456.7), "123457");
    }
}
