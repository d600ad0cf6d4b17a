//! CSV and JSON encodings of an [`ArithFn`].
//!
//! CSV: header `n,value`, one row per `n = 1..=N` in order. JSON:
//! `{"bound": N, "backend": "rational" | "complex", "values": [...]}`.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::ArithFn;
use crate::error::{Error, Result};
use crate::numerics::{Backend, Coeff};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FnDocument {
    pub bound: usize,
    pub backend: String,
    pub values: Vec<serde_json::Value>,
}

fn io_error(e: impl std::fmt::Display) -> Error {
    Error::Format {
        line: 0,
        message: e.to_string(),
    }
}

pub fn write_csv<C: Coeff, W: Write>(a: &ArithFn<C>, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["n", "value"]).map_err(io_error)?;
    for (n, v) in a.iter() {
        w.write_record([n.to_string(), v.to_string()]).map_err(io_error)?;
    }
    w.flush().map_err(io_error)
}

pub fn read_csv<C: Coeff, R: Read>(reader: R) -> Result<ArithFn<C>> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let header = r.headers().map_err(io_error)?.clone();
    if header.len() != 2 || &header[0] != "n" || &header[1] != "value" {
        return Err(Error::Format {
            line: 1,
            message: "expected header `n,value`".into(),
        });
    }
    let mut values = Vec::new();
    for record in r.records() {
        let record = record.map_err(|e| Error::Format {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let fail = |message: String| Error::Format { line, message };
        let n: usize = record[0]
            .trim()
            .parse()
            .map_err(|_| fail(format!("bad index `{}`", &record[0])))?;
        let expected = values.len() + 1;
        if n < expected {
            return Err(fail(format!("duplicate n={n}")));
        }
        if n > expected {
            return Err(fail(format!("missing n={expected}")));
        }
        let v = C::parse_text(&record[1]).map_err(|e| fail(e.to_string()))?;
        values.push(v);
    }
    if values.is_empty() {
        return Err(Error::Format {
            line: 1,
            message: "no rows".into(),
        });
    }
    ArithFn::from_values(values)
}

impl<C: Coeff> ArithFn<C> {
    pub fn to_document(&self) -> FnDocument {
        FnDocument {
            bound: self.bound(),
            backend: C::BACKEND.name().to_string(),
            values: self.values().iter().map(Coeff::to_json).collect(),
        }
    }

    pub fn from_document(doc: &FnDocument) -> Result<Self> {
        let fail = |message: String| Error::Format { line: 0, message };
        match (doc.backend.as_str(), C::BACKEND) {
            ("rational", _) | ("complex", Backend::Complex) => {}
            ("complex", Backend::Rational) => {
                return Err(fail(
                    "complex values cannot be loaded into the rational backend".into(),
                ))
            }
            (other, _) => return Err(fail(format!("unknown backend `{other}`"))),
        }
        if doc.values.len() != doc.bound {
            return Err(fail(format!(
                "bound {} but {} values",
                doc.bound,
                doc.values.len()
            )));
        }
        let values = doc
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| C::from_json(v).map_err(|e| fail(format!("value for n={}: {e}", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        ArithFn::from_values(values)
    }
}

pub fn write_json<C: Coeff, W: Write>(a: &ArithFn<C>, writer: W) -> Result<()> {
    serde_json::to_writer(writer, &a.to_document()).map_err(io_error)
}

pub fn read_json<C: Coeff, R: Read>(reader: R) -> Result<ArithFn<C>> {
    let doc: FnDocument = serde_json::from_reader(reader).map_err(|e| Error::Format {
        line: e.line() as u64,
        message: e.to_string(),
    })?;
    ArithFn::from_document(&doc)
}
