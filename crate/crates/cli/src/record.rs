//! Flat, ordered output records rendered as JSON lines or CSV.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Field order is insertion order, so a command always emits the same columns.
#[derive(Clone, Debug, Default)]
pub struct Record {
    fields: Vec<(String, Value)>,
}

impl Record {
    pub fn new(command: &str) -> Self {
        Record::default().with("command", command)
    }

    pub fn with(mut self, key: impl Into<String>, value: impl Into<Value>) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.fields.push((key.into(), value.into()));
    }

    fn to_json(&self) -> String {
        let body: Vec<String> = self
            .fields
            .iter()
            .map(|(k, v)| format!("{}:{}", Value::String(k.clone()), v))
            .collect();
        format!("{{{}}}", body.join(","))
    }

    fn csv_header(&self) -> String {
        self.fields.iter().map(|(k, _)| csv_escape(k)).collect::<Vec<_>>().join(",")
    }

    fn csv_row(&self) -> String {
        self.fields
            .iter()
            .map(|(_, v)| match v {
                Value::String(s) => csv_escape(s),
                Value::Null => String::new(),
                other => csv_escape(&other.to_string()),
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

/// Writes records, emitting a CSV header whenever the column set changes.
pub struct RecordWriter<W: Write> {
    out: W,
    format: Format,
    last_header: Option<String>,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(out: W, format: Format) -> Self {
        RecordWriter { out, format, last_header: None }
    }

    pub fn write(&mut self, record: &Record) -> io::Result<()> {
        match self.format {
            Format::Json => writeln!(self.out, "{}", record.to_json()),
            Format::Csv => {
                let header = record.csv_header();
                if self.last_header.as_deref() != Some(header.as_str()) {
                    writeln!(self.out, "{header}")?;
                    self.last_header = Some(header);
                }
                writeln!(self.out, "{}", record.csv_row())
            }
        }
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.out.flush()
    }
}

/// JSON number for finite values, `null` otherwise.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().copied().map(num).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(format: Format, records: &[Record]) -> String {
        let mut buf = Vec::new();
        let mut w = RecordWriter::new(&mut buf, format);
        for r in records {
            w.write(r).unwrap();
        }
        w.finish().unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn json_keeps_field_order() {
        let r = Record::new("x").with("b", 1).with("a", num(0.5)).with("s", "q\"");
        assert_eq!(render(Format::Json, &[r]), "{\"command\":\"x\",\"b\":1,\"a\":0.5,\"s\":\"q\\\"\"}\n");
    }

    #[test]
    fn csv_header_once_per_schema() {
        let a = Record::new("x").with("v", nums(&[1.0, 2.0]));
        let b = Record::new("x").with("v", Value::Null);
        let c = Record::new("x").with("w", "a,b");
        assert_eq!(
            render(Format::Csv, &[a, b, c]),
            "command,v\nx,\"[1.0,2.0]\"\nx,\ncommand,w\nx,\"a,b\"\n"
        );
    }

    #[test]
    fn non_finite_is_null() {
        assert_eq!(num(f64::INFINITY), Value::Null);
        assert_eq!(num(-0.25).to_string(), "-0.25");
    }
}
