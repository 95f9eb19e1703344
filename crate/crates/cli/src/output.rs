//! JSON and CSV rendering. Rationals never pass through floating point:
//! JSON carries `{"num", "den"}` strings and CSV cells carry `p/q` text.

use std::fmt::Write as _;

use hankelforge::Rational;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

pub fn rational_json(q: &Rational) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

/// One cell of a record.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Rat(Rational),
    Text(String),
    Bool(bool),
    Ints(Vec<i64>),
}

impl Cell {
    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Rat(q) => rational_json(q),
            Cell::Text(t) => json!(t),
            Cell::Bool(b) => json!(b),
            Cell::Ints(v) => json!(v),
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Rat(q) => q.to_string(),
            Cell::Text(t) => csv_escape(t),
            Cell::Bool(b) => b.to_string(),
            Cell::Ints(v) => v.iter().map(i64::to_string).collect::<Vec<_>>().join(";"),
        }
    }
}

fn csv_escape(t: &str) -> String {
    if t.contains([',', '"', '\n']) {
        format!("\"{}\"", t.replace('"', "\"\""))
    } else {
        t.to_string()
    }
}

pub type Record = Vec<(&'static str, Cell)>;

#[derive(Clone, Debug, PartialEq)]
pub enum Entries {
    Grid(Vec<Vec<Rational>>),
    Records(Vec<Record>),
}

/// A command result in the common `{"s", "kind", "entries"}` envelope.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub s: u32,
    pub kind: &'static str,
    pub entries: Entries,
}

impl Report {
    pub fn records(s: u32, kind: &'static str, records: Vec<Record>) -> Self {
        Self {
            s,
            kind,
            entries: Entries::Records(records),
        }
    }

    pub fn to_json(&self) -> Value {
        let entries = match &self.entries {
            Entries::Grid(rows) => Value::Array(
                rows.iter()
                    .map(|r| Value::Array(r.iter().map(rational_json).collect()))
                    .collect(),
            ),
            Entries::Records(recs) => Value::Array(recs.iter().map(record_json).collect()),
        };
        json!({ "s": self.s, "kind": self.kind, "entries": entries })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut out = serde_json::to_string_pretty(&self.to_json()).expect("json");
                out.push('\n');
                out
            }
            Format::Csv => self.to_csv(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match &self.entries {
            Entries::Grid(rows) => {
                for r in rows {
                    let cells: Vec<String> = r.iter().map(|q| q.to_string()).collect();
                    writeln!(out, "{}", cells.join(",")).unwrap();
                }
            }
            Entries::Records(recs) => {
                if let Some(first) = recs.first() {
                    let header: Vec<&str> = first.iter().map(|(k, _)| *k).collect();
                    writeln!(out, "{}", header.join(",")).unwrap();
                }
                for r in recs {
                    let cells: Vec<String> = r.iter().map(|(_, c)| c.csv()).collect();
                    writeln!(out, "{}", cells.join(",")).unwrap();
                }
            }
        }
        out
    }
}

pub fn record_json(r: &Record) -> Value {
    let mut m = Map::new();
    for (k, c) in r {
        m.insert((*k).to_string(), c.json());
    }
    Value::Object(m)
}

/// Reads back a CSV grid written by [`Report::to_csv`].
pub fn parse_csv_grid(text: &str) -> Result<Vec<Vec<Rational>>, String> {
    text.lines()
        .filter(|l| !l.is_empty())
        .map(|line| {
            line.split(',')
                .map(|cell| {
                    cell.trim()
                        .parse::<Rational>()
                        .map_err(|e| format!("`{cell}`: {e}"))
                })
                .collect()
        })
        .collect()
}
