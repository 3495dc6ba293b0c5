use std::io::Write;

use serde_json::{Map, Number, Value as Json};

use super::config::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(u64),
    Text(String),
}

impl Value {
    /// 17 significant digits; non-finite values spelled `inf`, `-inf`, `nan`.
    pub fn to_csv(&self) -> String {
        match self {
            Value::Num(x) if x.is_nan() => "nan".into(),
            Value::Num(x) if x.is_infinite() => if *x > 0.0 { "inf" } else { "-inf" }.into(),
            Value::Num(x) => format!("{x:.16e}"),
            Value::Int(n) => n.to_string(),
            Value::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Json {
        match self {
            Value::Num(x) => Number::from_f64(*x).map(Json::Number).unwrap_or_else(|| Json::String(self.to_csv())),
            Value::Int(n) => Json::Number((*n).into()),
            Value::Text(s) => Json::String(s.clone()),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Num(x) => Some(*x),
            Value::Int(n) => Some(*n as f64),
            Value::Text(_) => None,
        }
    }
}

/// Header plus rows in grid order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn write<W: Write>(&self, out: &mut W, format: Format) -> std::io::Result<()> {
        match format {
            Format::Csv => {
                writeln!(out, "{}", self.header.join(","))?;
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Value::to_csv).collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
            }
            Format::Jsonl => {
                for row in &self.rows {
                    let obj: Map<String, Json> = self.header.iter().cloned().zip(row.iter().map(Value::to_json)).collect();
                    writeln!(out, "{}", Json::Object(obj))?;
                }
            }
        }
        Ok(())
    }
}
