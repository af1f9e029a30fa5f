//! Deterministic text output: CSV tables and flat JSON objects.
//!
//! Numbers are written with 12 significant digits in the style of C's `%.12g`
//! (trailing zeros trimmed, exponent for very large or small magnitudes). The
//! time column is fixed-point with 12 decimals. Non-finite values are written
//! as `nan`, `inf` and `-inf` in CSV and as `null` in JSON.

use std::fs;
use std::path::Path;

use serde_json::{Map, Value};

use crate::error::{Error, Result};

const DIGITS: i32 = 12;

/// `%.12g`
pub fn fmt_g(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..DIGITS).contains(&exp) {
        let decimals = (DIGITS - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Fixed point with 12 decimals, used for the time axis.
pub fn fmt_fixed(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.12}")
    } else {
        fmt_g(x)
    }
}

/// The value a reader gets back from `fmt_g(x)`.
pub fn round_g(x: f64) -> f64 {
    fmt_g(x).parse().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Fixed,
    General,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub style: Style,
    pub values: Vec<f64>,
}

/// Equal-length named columns.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<Column>,
}

impl Table {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a column. Panics if its length differs from the first column.
    pub fn push(&mut self, name: impl Into<String>, style: Style, values: Vec<f64>) -> &mut Self {
        if let Some(first) = self.columns.first() {
            assert_eq!(first.values.len(), values.len(), "column length mismatch");
        }
        self.columns.push(Column {
            name: name.into(),
            style,
            values,
        });
        self
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |c| c.values.len())
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.values.as_slice())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<&str> = self.columns.iter().map(|c| c.name.as_str()).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for i in 0..self.rows() {
            let cells: Vec<String> = self
                .columns
                .iter()
                .map(|c| match c.style {
                    Style::Fixed => fmt_fixed(c.values[i]),
                    Style::General => fmt_g(c.values[i]),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// `{"name": [values...], ...}` with values rounded as in CSV.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for c in &self.columns {
            let values = c.values.iter().map(|&v| number(v)).collect();
            map.insert(c.name.clone(), Value::Array(values));
        }
        Value::Object(map)
    }

    pub fn parse_csv(text: &str) -> std::result::Result<Self, String> {
        let mut lines = text.lines();
        let header = lines.next().ok_or("empty file")?;
        let mut columns: Vec<Column> = header
            .split(',')
            .map(|name| Column {
                name: name.to_string(),
                style: Style::General,
                values: Vec::new(),
            })
            .collect();
        for (i, line) in lines.enumerate() {
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != columns.len() {
                return Err(format!(
                    "row {}: {} fields, header has {}",
                    i + 2,
                    cells.len(),
                    columns.len()
                ));
            }
            for (col, cell) in columns.iter_mut().zip(cells) {
                let v = cell
                    .parse()
                    .map_err(|_| format!("row {}: '{cell}' is not a number", i + 2))?;
                col.values.push(v);
            }
        }
        if let Some(first) = columns.first_mut() {
            if first.name == "t" {
                first.style = Style::Fixed;
            }
        }
        Ok(Self { columns })
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_csv(&text).map_err(|message| Error::Parse {
            path: path.to_path_buf(),
            message,
        })
    }
}

/// A JSON number rounded to 12 significant digits; `null` if not finite.
pub fn number(x: f64) -> Value {
    Value::from(round_g(x))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn write_json(path: &Path, value: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    text.push('\n');
    write_text(path, &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_format_matches_printf() {
        let cases = [
            (1.0, "1"),
            (0.3, "0.3"),
            (-0.0, "0"),
            (0.1 + 0.2, "0.3"),
            (5.6e-5, "5.6e-05"),
            (1e-4, "0.0001"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (0.185684479864, "0.185684479864"),
            (2.0 / 3.0, "0.666666666667"),
            (-1.5e300, "-1.5e+300"),
            (9.9999999999996, "10"),
            (f64::NAN, "nan"),
            (f64::NEG_INFINITY, "-inf"),
        ];
        for (x, s) in cases {
            assert_eq!(fmt_g(x), s, "{x:e}");
        }
        assert_eq!(fmt_fixed(0.0), "0.000000000000");
        assert_eq!(fmt_fixed(5.235987755983), "5.235987755983");
    }

    #[test]
    fn csv_round_trip() {
        let mut table = Table::new();
        table.push("t", Style::Fixed, vec![0.0, 0.5, 1.0]).push(
            "x",
            Style::General,
            vec![1.0 / 3.0, f64::NAN, -2e-9],
        );
        let text = table.to_csv();
        assert_eq!(
            text,
            "t,x\n0.000000000000,0.333333333333\n0.500000000000,nan\n1.000000000000,-2e-09\n"
        );
        let back = Table::parse_csv(&text).unwrap();
        assert_eq!(back.column("t").unwrap(), &[0.0, 0.5, 1.0]);
        let x = back.column("x").unwrap();
        assert!((x[0] - 1.0 / 3.0).abs() < 1e-12 && x[1].is_nan() && x[2] == -2e-9);
        assert_eq!(back.to_csv(), text);
    }

    #[test]
    fn malformed_csv() {
        assert!(Table::parse_csv("").is_err());
        assert!(Table::parse_csv("a,b\n1\n").is_err());
        assert!(Table::parse_csv("a\nx\n").is_err());
    }

    #[test]
    fn json_uses_null_for_non_finite() {
        let mut table = Table::new();
        table.push("g", Style::General, vec![0.1, f64::INFINITY]);
        assert_eq!(table.to_json().to_string(), r#"{"g":[0.1,null]}"#);
    }
}
