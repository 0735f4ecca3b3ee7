use std::io::Write;

use fracbinom_core::figure::{format_float, round_significant};
use fracbinom_core::FigureData;
use serde_json::{Map, Number, Value};

pub type OutResult<T> = Result<T, Box<dyn std::error::Error>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self, digits: usize) -> String {
        match self {
            Cell::Num(v) if v.is_finite() => format_float(*v, digits),
            Cell::Num(v) => v.to_string(),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self, digits: usize) -> Value {
        match self {
            Cell::Num(v) => Number::from_f64(round_significant(*v, digits)).map_or(Value::Null, Value::Number),
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Empty => Value::Null,
        }
    }
}

pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, out: W, format: Format, digits: usize) -> OutResult<()> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(|c| c.csv(digits)))?;
                }
                w.flush()?;
            }
            Format::Json => {
                let records: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> = self
                            .header
                            .iter()
                            .zip(row)
                            .map(|(h, c)| (h.to_string(), c.json(digits)))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                write_json(out, &Value::Array(records))?;
            }
        }
        Ok(())
    }
}

pub fn write_figure<W: Write>(out: W, fig: &FigureData, format: Format, digits: usize) -> OutResult<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(fig.names())?;
            for i in 0..fig.rows() {
                w.write_record(fig.columns.iter().map(|c| format_float(c.values[i], digits)))?;
            }
            w.flush()?;
        }
        Format::Json => write_json(out, &serde_json::to_value(fig.rounded(digits))?)?,
    }
    Ok(())
}

pub fn write_json<W: Write>(mut out: W, v: &Value) -> OutResult<()> {
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}
