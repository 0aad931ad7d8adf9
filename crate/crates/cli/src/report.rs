use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::IsTerminal;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_ID: &str = "rigidclass-report/v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// A flat table used by the `table` and `csv` renderers.
#[derive(Debug, Clone)]
pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, headers: &[&str]) -> Self {
        Table {
            title: title.into(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.headers.len());
        self.rows.push(cells);
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct Envelope<'a> {
    schema: &'static str,
    command: &'a str,
    parameters: &'a BTreeMap<String, Value>,
    results: &'a Value,
    tool_version: &'static str,
    exact: bool,
}

/// Output of one subcommand: the structured payload plus its tabular view.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub results: Value,
    pub tables: Vec<Table>,
    /// Free-form lines printed under the tables in `table` format.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            results: Value::Null,
            tables: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters
            .insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
            Format::Table => self.render_table(color_enabled()),
        }
    }

    fn render_json(&self) -> String {
        let env = Envelope {
            schema: SCHEMA_ID,
            command: &self.command,
            parameters: &self.parameters,
            results: &self.results,
            tool_version: env!("CARGO_PKG_VERSION"),
            exact: true,
        };
        let mut s = serde_json::to_string_pretty(&env).expect("serializable");
        s.push('\n');
        s
    }

    /// One CSV block per table; with several tables each block is preceded by
    /// a `# title` line and separated by a blank line.
    fn render_csv(&self) -> String {
        let mut out = String::new();
        let many = self.tables.len() > 1;
        for (k, t) in self.tables.iter().enumerate() {
            if k > 0 {
                out.push('\n');
            }
            if many {
                let _ = writeln!(out, "# {}", t.title);
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&t.headers).expect("in-memory write");
            for r in &t.rows {
                w.write_record(r).expect("in-memory write");
            }
            out.push_str(&String::from_utf8(w.into_inner().expect("flush")).expect("utf8"));
        }
        out
    }

    fn render_table(&self, color: bool) -> String {
        let mut out = String::new();
        for (k, t) in self.tables.iter().enumerate() {
            if k > 0 {
                out.push('\n');
            }
            if color {
                let _ = writeln!(out, "\x1b[1m{}\x1b[0m", t.title);
            } else {
                let _ = writeln!(out, "{}", t.title);
            }
            if t.rows.is_empty() {
                out.push_str("  (empty)\n");
                continue;
            }
            let widths: Vec<usize> = (0..t.headers.len())
                .map(|c| {
                    t.rows
                        .iter()
                        .map(|r| r[c].chars().count())
                        .chain([t.headers[c].chars().count()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                format!("  {}", padded.join("  ").trim_end())
            };
            let _ = writeln!(out, "{}", line(&t.headers));
            let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
            let _ = writeln!(out, "{}", line(&rule));
            for r in &t.rows {
                let mut l = line(r);
                if color {
                    l = l.replace("PASS", "\x1b[32mPASS\x1b[0m").replace("FAIL", "\x1b[31mFAIL\x1b[0m");
                }
                let _ = writeln!(out, "{l}");
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "{n}");
        }
        out
    }
}

fn color_enabled() -> bool {
    std::env::var_os("NO_COLOR").map_or(true, |v| v.is_empty()) && std::io::stdout().is_terminal()
}

pub fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

pub fn pass_fail(b: bool) -> String {
    if b { "PASS" } else { "FAIL" }.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo").param("q", 2);
        let mut t = Table::new("classes", &["index", "degree"]);
        t.row(vec!["y1c1".into(), "3".into()]);
        t.row(vec!["y2c2, odd".into(), "7".into()]);
        r.tables.push(t);
        r.results = serde_json::json!({"n": 2});
        r
    }

    #[test]
    fn csv_quotes_fields() {
        let csv = sample().render(Format::Csv);
        assert_eq!(csv, "index,degree\ny1c1,3\n\"y2c2, odd\",7\n");
    }

    #[test]
    fn plain_table_is_aligned() {
        let t = sample().render_table(false);
        assert_eq!(
            t,
            "classes\n  index      degree\n  ---------  ------\n  y1c1       3\n  y2c2, odd  7\n"
        );
    }

    #[test]
    fn json_envelope_fields() {
        let v: Value = serde_json::from_str(&sample().render(Format::Json)).unwrap();
        assert_eq!(v["schema"], SCHEMA_ID);
        assert_eq!(v["exact"], true);
        assert_eq!(v["parameters"]["q"], 2);
        assert!(v["toolVersion"].is_string());
    }
}
