//! JSON document shapes shared by the library and the command line.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactq::{format_rational, parse_rational, QMatrix, Rational};

/// A square matrix as `{"n": 2, "entries": [["1", "1/2"], ["0", "-3"]]}`.
///
/// Entries are rational strings; plain JSON integers are accepted on input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub n: usize,
    pub entries: Vec<Vec<Value>>,
}

fn entry_to_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(num) if num.is_i64() || num.is_u64() => parse_rational(&num.to_string()),
        other => Err(Error::InvalidRational(other.to_string())),
    }
}

impl MatrixDocument {
    pub fn from_matrix(m: &QMatrix) -> Self {
        Self {
            n: m.rows(),
            entries: (0..m.rows())
                .map(|r| {
                    m.row(r)
                        .iter()
                        .map(|e| Value::String(format_rational(e)))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<QMatrix> {
        if self.entries.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: self.entries.len(),
            });
        }
        let mut flat = Vec::with_capacity(self.n * self.n);
        for row in &self.entries {
            if row.len() != self.n {
                return Err(Error::NotSquare {
                    rows: self.n,
                    cols: row.len(),
                });
            }
            for e in row {
                flat.push(entry_to_rational(e)?);
            }
        }
        QMatrix::new(self.n, self.n, flat)
    }
}

/// Serializes a square matrix as a [`MatrixDocument`] value.
pub fn matrix_to_json(m: &QMatrix) -> Value {
    serde_json::to_value(MatrixDocument::from_matrix(m)).expect("matrix document serializes")
}

pub fn matrix_from_json(v: &Value) -> Result<QMatrix> {
    let doc: MatrixDocument = serde_json::from_value(v.clone())
        .map_err(|e| Error::InvalidArgument(format!("malformed matrix document: {e}")))?;
    doc.to_matrix()
}
