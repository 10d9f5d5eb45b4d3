//! Output records and their JSON / aligned-text rendering.

use serde_json::{Map, Number, Value};
use std::io::{self, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Nums(Vec<f64>),
    Ints(Vec<i64>),
    Null,
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Num(v)
    }
}

impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Field::Int(v as i64)
    }
}

impl From<bool> for Field {
    fn from(v: bool) -> Self {
        Field::Bool(v)
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Text(v.to_owned())
    }
}

impl From<String> for Field {
    fn from(v: String) -> Self {
        Field::Text(v)
    }
}

impl From<Vec<f64>> for Field {
    fn from(v: Vec<f64>) -> Self {
        Field::Nums(v)
    }
}

impl From<&[f64]> for Field {
    fn from(v: &[f64]) -> Self {
        Field::Nums(v.to_vec())
    }
}

impl<T: Into<Field>> From<Option<T>> for Field {
    fn from(v: Option<T>) -> Self {
        v.map_or(Field::Null, Into::into)
    }
}

/// One line of output: a record kind plus ordered key/value fields.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub kind: &'static str,
    pub fields: Vec<(String, Field)>,
}

impl OutputRecord {
    pub fn new(kind: &'static str) -> Self {
        Self {
            kind,
            fields: Vec::new(),
        }
    }

    pub fn with(mut self, key: impl Into<String>, value: impl Into<Field>) -> Self {
        self.fields.push((key.into(), value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    /// First non-finite number, if any.
    pub fn non_finite(&self) -> Option<&str> {
        self.fields.iter().find_map(|(k, v)| {
            let bad = match v {
                Field::Num(x) => !x.is_finite(),
                Field::Nums(xs) => xs.iter().any(|x| !x.is_finite()),
                _ => false,
            };
            bad.then_some(k.as_str())
        })
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("record".into(), Value::String(self.kind.into()));
        for (k, v) in &self.fields {
            map.insert(k.clone(), field_json(v));
        }
        Value::Object(map)
    }
}

fn num(x: f64) -> Value {
    Number::from_f64(x).map_or(Value::Null, Value::Number)
}

fn field_json(f: &Field) -> Value {
    match f {
        Field::Num(x) => num(*x),
        Field::Int(i) => Value::from(*i),
        Field::Text(s) => Value::String(s.clone()),
        Field::Bool(b) => Value::Bool(*b),
        Field::Nums(xs) => Value::Array(xs.iter().map(|&x| num(x)).collect()),
        Field::Ints(xs) => Value::Array(xs.iter().map(|&x| Value::from(x)).collect()),
        Field::Null => Value::Null,
    }
}

fn field_text(f: &Field) -> String {
    match f {
        Field::Num(x) => format!("{x:.4}"),
        Field::Int(i) => i.to_string(),
        Field::Text(s) => s.clone(),
        Field::Bool(b) => b.to_string(),
        Field::Nums(xs) => {
            let parts: Vec<String> = xs.iter().map(|x| format!("{x:.4}")).collect();
            format!("({})", parts.join(", "))
        }
        Field::Ints(xs) if xs.is_empty() => "-".into(),
        Field::Ints(xs) => xs.iter().map(i64::to_string).collect::<Vec<_>>().join(","),
        Field::Null => "-".into(),
    }
}

pub fn write_json(out: &mut impl Write, records: &[OutputRecord]) -> io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut *out, &r.to_json())?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Consecutive records of the same kind and keys form one table.
pub fn write_text(out: &mut impl Write, records: &[OutputRecord]) -> io::Result<()> {
    let mut start = 0;
    while start < records.len() {
        let keys: Vec<&str> = records[start].fields.iter().map(|(k, _)| k.as_str()).collect();
        let mut end = start + 1;
        while end < records.len()
            && records[end].kind == records[start].kind
            && records[end].fields.iter().map(|(k, _)| k.as_str()).eq(keys.iter().copied())
        {
            end += 1;
        }
        if start > 0 {
            writeln!(out)?;
        }
        write_table(out, &records[start..end], &keys)?;
        start = end;
    }
    Ok(())
}

fn write_table(out: &mut impl Write, rows: &[OutputRecord], keys: &[&str]) -> io::Result<()> {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.fields.iter().map(|(_, v)| field_text(v)).collect())
        .collect();
    let widths: Vec<usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| cells.iter().map(|row| row[i].len()).chain([k.len()]).max().unwrap_or(0))
        .collect();
    writeln!(out, "# {}", rows[0].kind)?;
    let line = |row: Vec<&str>| {
        row.iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_owned()
    };
    writeln!(out, "{}", line(keys.to_vec()))?;
    for row in &cells {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

pub fn write_records(out: &mut impl Write, records: &[OutputRecord], format: Format) -> io::Result<()> {
    match format {
        Format::Json => write_json(out, records),
        Format::Text => write_text(out, records),
    }
}
