//! Output documents and their json, tsv and md renderings.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1.0.0";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Md,
}

#[derive(Debug, Clone, Default)]
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
        self.rows.push(cells);
    }
}

/// A JSON document plus the tables shown in the text formats.
pub struct Document {
    pub json: Value,
    pub tables: Vec<Table>,
}

impl Document {
    pub fn new(kind: &str, group: &str, mut body: serde_json::Map<String, Value>, tables: Vec<Table>) -> Self {
        let mut json = serde_json::Map::new();
        json.insert("schema_version".into(), SCHEMA_VERSION.into());
        json.insert("kind".into(), kind.into());
        json.insert("group".into(), group.into());
        json.append(&mut body);
        Document {
            json: Value::Object(json),
            tables,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("documents serialize");
                s.push('\n');
                s
            }
            Format::Tsv => self.tables.iter().map(tsv).collect::<Vec<_>>().join("\n"),
            Format::Md => self.tables.iter().map(md).collect::<Vec<_>>().join("\n"),
        }
    }
}

fn tsv(t: &Table) -> String {
    let mut out = format!("# {}\n{}\n", t.title, t.headers.join("\t"));
    for row in &t.rows {
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|")
}

fn md(t: &Table) -> String {
    let line = |cells: &[String]| cells.iter().map(|c| md_cell(c)).collect::<Vec<_>>().join(" | ");
    let mut out = String::new();
    let _ = writeln!(out, "### {}\n", t.title);
    let _ = writeln!(out, "| {} |", line(&t.headers));
    let _ = writeln!(out, "|{}", "---|".repeat(t.headers.len()));
    for row in &t.rows {
        let _ = writeln!(out, "| {} |", line(row));
    }
    out
}

/// Rounds to 12 decimal digits, folding `-0` into `0`.
pub fn round12(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// `a`, `bi` or `a+bi` with six decimals, for text tables.
pub fn complex_text(re: f64, im: f64) -> String {
    let (re, im) = (round12(re), round12(im));
    let fmt = |x: f64| {
        let s = format!("{x:.6}");
        let s = s.trim_end_matches('0').trim_end_matches('.').to_string();
        if s == "-0" {
            "0".into()
        } else {
            s
        }
    };
    match (re.abs() < 1e-12, im.abs() < 1e-12) {
        (_, true) => fmt(re),
        (true, false) => format!("{}i", fmt(im)),
        _ if im < 0.0 => format!("{}-{}i", fmt(re), fmt(-im)),
        _ => format!("{}+{}i", fmt(re), fmt(im)),
    }
}
