use clap::ValueEnum;
use morsekit::report::ExperimentRecord;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Table,
}

/// What a command produced, renderable in every format.
#[derive(Debug, Clone)]
pub struct Output {
    pub experiment: &'static str,
    pub params: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub records: Vec<Value>,
    /// Lines printed above the table in table format.
    pub summary: Vec<String>,
    /// Replaces the aligned table in table format.
    pub plain: Option<String>,
    /// Set when a checked invariant failed.
    pub violation: Option<String>,
}

impl Output {
    pub fn new(experiment: &'static str, params: Value, header: Vec<&'static str>) -> Self {
        Self {
            experiment,
            params,
            header,
            rows: Vec::new(),
            records: Vec::new(),
            summary: Vec::new(),
            plain: None,
            violation: None,
        }
    }

    pub fn push(&mut self, row: Vec<String>, record: Value) {
        self.rows.push(row);
        self.records.push(record);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut text = ExperimentRecord::new(self.experiment, self.params.clone(), self.records.clone()).to_json();
                text.push('\n');
                text
            }
            Format::Csv => {
                let mut out = self.header.join(",");
                out.push('\n');
                for r in &self.rows {
                    out.push_str(&r.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(","));
                    out.push('\n');
                }
                out
            }
            Format::Table => {
                let mut out = String::new();
                for line in &self.summary {
                    out.push_str(line);
                    out.push('\n');
                }
                match &self.plain {
                    Some(p) => out.push_str(p),
                    None => out.push_str(&aligned(&self.header, &self.rows)),
                }
                out
            }
        }
    }
}

fn csv_field(f: &str) -> String {
    if f.contains([',', '"', '\n']) {
        format!("\"{}\"", f.replace('"', "\"\""))
    } else {
        f.to_string()
    }
}

fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|i| rows.iter().map(|r| r[i].chars().count()).chain([header[i].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{}{c}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ") + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Output {
        let mut o = Output::new("demo", json!({"N": 3}), vec!["k", "value"]);
        o.push(vec!["1".into(), "-1/3".into()], json!({"k": 1, "value": "-1/3"}));
        o.push(vec!["10".into(), "a,b".into()], json!({"k": 10, "value": "a,b"}));
        o
    }

    #[test]
    fn csv_quotes_commas() {
        assert_eq!(sample().render(Format::Csv), "k,value\n1,-1/3\n10,\"a,b\"\n");
    }

    #[test]
    fn table_right_aligns() {
        assert_eq!(sample().render(Format::Table), " k  value\n 1   -1/3\n10    a,b\n");
    }

    #[test]
    fn json_record_shape() {
        let v: Value = serde_json::from_str(&sample().render(Format::Json)).unwrap();
        assert_eq!(v["experiment"], "demo");
        assert_eq!(v["params"]["N"], 3);
        assert_eq!(v["checkpoints"][1]["k"], 10);
    }
}
