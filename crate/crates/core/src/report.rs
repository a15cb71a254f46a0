//! Machine-readable output: 12-significant-digit floats, `p/q` rationals,
//! CSV rows and JSON experiment records.

use serde::{Serialize, Serializer};

/// `x` rounded to `digits` significant decimal digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x).parse().unwrap_or(x)
}

/// Locale-free text for a float with at most 12 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{}", round_sig(x, 12))
}

pub fn ser_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*x, 12))
}

pub fn ser_opt_f64<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&round_sig(*v, 12)),
        None => s.serialize_none(),
    }
}

/// A record type that can be laid out as CSV with a fixed header.
pub trait Tabular {
    fn header() -> Vec<&'static str>;
    fn row(&self) -> Vec<String>;
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn to_csv<T: Tabular>(rows: &[T]) -> String {
    let mut out = T::header().join(",");
    out.push('\n');
    for r in rows {
        let fields: Vec<String> = r.row().iter().map(|f| csv_escape(f)).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Fixed-width text table for terminals.
pub fn to_table<T: Tabular>(rows: &[T]) -> String {
    let header: Vec<String> = T::header().iter().map(|s| s.to_string()).collect();
    let body: Vec<Vec<String>> = rows.iter().map(Tabular::row).collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|i| body.iter().map(|r| r[i].len()).chain([header[i].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| {
        cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
    };
    let mut out = line(&header);
    out.push('\n');
    for r in &body {
        out.push_str(&line(r));
        out.push('\n');
    }
    out
}

/// `{experiment, params, checkpoints[]}`.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentRecord<T: Serialize> {
    pub experiment: String,
    pub params: serde_json::Value,
    pub checkpoints: Vec<T>,
}

impl<T: Serialize> ExperimentRecord<T> {
    pub fn new(experiment: &str, params: serde_json::Value, checkpoints: Vec<T>) -> Self {
        Self { experiment: experiment.to_string(), params, checkpoints }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize")
    }
}
