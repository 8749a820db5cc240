//! Fixed-precision number formatting and table writers.

use std::io::{self, Write};

use serde_json::{Map, Number, Value};

/// Significant digits carried by every serialized float.
pub const DIGITS: usize = 15;

/// Formats like C's `%.15g`: shortest of fixed or exponent notation, with
/// trailing zeros removed.
pub fn fmt_g(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{:.*e}", DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= DIGITS as i32 {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// The value actually written by [`fmt_g`], parsed back. JSON output uses
/// these so that both formats carry identical numbers.
pub fn rounded(x: f64) -> f64 {
    if x.is_finite() {
        fmt_g(x).parse().expect("fmt_g output parses")
    } else {
        x
    }
}

/// JSON number for `x`, or `null` when it is not finite.
pub fn json_num(x: f64) -> Value {
    Number::from_f64(rounded(x)).map_or(Value::Null, Value::Number)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// A cell is either a count or a measured value.
#[derive(Debug, Clone, Copy)]
pub enum Cell {
    Int(u64),
    Real(f64),
}

impl Cell {
    fn text(self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Real(x) => fmt_g(x),
        }
    }

    fn json(self) -> Value {
        match self {
            Cell::Int(n) => Value::from(n),
            Cell::Real(x) => json_num(x),
        }
    }
}

/// Writes a table as CSV (header plus rows) or as a JSON array of records.
pub fn write_table<W: Write>(
    out: &mut W,
    format: Format,
    header: &[&str],
    rows: &[Vec<Cell>],
) -> io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "{}", header.join(","))?;
            for row in rows {
                let line: Vec<String> = row.iter().map(|c| c.text()).collect();
                writeln!(out, "{}", line.join(","))?;
            }
        }
        Format::Json => {
            let records: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let m: Map<String, Value> = header
                        .iter()
                        .zip(row)
                        .map(|(h, c)| (h.to_string(), c.json()))
                        .collect();
                    Value::Object(m)
                })
                .collect();
            write_json(out, &Value::Array(records))?;
        }
    }
    Ok(())
}

pub fn write_json<W: Write>(out: &mut W, v: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(io::Error::other)?;
    writeln!(out)
}
