use std::fmt;
use std::io::{self, Write};

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    /// One JSON object per line.
    #[value(alias = "json-lines")]
    Json,
    Csv,
}

// -0.0 prints as 0
fn unsigned_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    Text(String),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Num(x) => write!(f, "{:.16e}", unsigned_zero(*x)),
            Value::Int(n) => write!(f, "{n}"),
            Value::Text(s) => f.write_str(s),
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<usize> for Value {
    fn from(n: usize) -> Self {
        Value::Int(n as i64)
    }
}

impl From<u64> for Value {
    fn from(n: u64) -> Self {
        Value::Int(n as i64)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

/// A flat, ordered key-value result. The first field is always `record`,
/// naming the kind of row.
#[derive(Clone, Debug, PartialEq)]
pub struct Record {
    fields: Vec<(String, Value)>,
}

impl Record {
    pub fn new(kind: &str) -> Self {
        Record { fields: vec![("record".into(), Value::from(kind))] }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn kind(&self) -> &Value {
        &self.fields[0].1
    }

    fn keys(&self) -> Vec<&str> {
        self.fields.iter().map(|(k, _)| k.as_str()).collect()
    }
}

fn json_line(record: &Record) -> String {
    let body: Vec<String> = record
        .fields
        .iter()
        .map(|(k, v)| {
            let value = match v {
                Value::Num(x) if x.is_finite() => format!("{:.16e}", unsigned_zero(*x)),
                Value::Num(_) => "null".to_string(),
                Value::Int(n) => n.to_string(),
                Value::Text(s) => serde_json::to_string(s).expect("string serializes"),
            };
            format!("{}:{value}", serde_json::to_string(k).expect("string serializes"))
        })
        .collect();
    format!("{{{}}}", body.join(","))
}

/// Consecutive records with the same kind and keys form one block.
fn blocks(records: &[Record]) -> Vec<&[Record]> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=records.len() {
        if i == records.len()
            || records[i].kind() != records[start].kind()
            || records[i].keys() != records[start].keys()
        {
            out.push(&records[start..i]);
            start = i;
        }
    }
    out
}

fn table_block(block: &[Record], out: &mut impl Write) -> io::Result<()> {
    let keys: Vec<&str> = block[0].keys().into_iter().skip(1).collect();
    let cells: Vec<Vec<String>> =
        block.iter().map(|r| r.fields.iter().skip(1).map(|(_, v)| v.to_string()).collect()).collect();
    let widths: Vec<usize> = keys
        .iter()
        .enumerate()
        .map(|(j, k)| cells.iter().map(|row| row[j].chars().count()).chain([k.chars().count()]).max().unwrap())
        .collect();
    let line = |items: &[String]| -> String {
        items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(out, "# {}", block[0].kind())?;
    writeln!(out, "{}", line(&keys.iter().map(|k| k.to_string()).collect::<Vec<_>>()))?;
    for row in &cells {
        writeln!(out, "{}", line(row))?;
    }
    Ok(())
}

pub fn render(records: &[Record], format: Format, out: &mut impl Write) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                writeln!(out, "{}", json_line(r))?;
            }
        }
        Format::Table => {
            for (i, block) in blocks(records).into_iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                table_block(block, out)?;
            }
        }
        Format::Csv => {
            for (i, block) in blocks(records).into_iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(block[0].keys())?;
                for r in block {
                    w.write_record(r.fields.iter().map(|(_, v)| v.to_string()))?;
                }
                w.flush()?;
            }
        }
    }
    Ok(())
}
