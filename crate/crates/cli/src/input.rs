use std::fs;
use std::io::Read;

use serde_json::Value;
use versal_core::document::matrix_from_json;
use versal_core::exactq::QMatrix;
use versal_core::jordan::{jordan_matrix, JordanType};

use crate::CliError;

/// A parsed input document: a matrix or a Jordan type.
#[derive(Debug, Clone)]
pub enum Input {
    Matrix(QMatrix),
    Jordan(JordanType),
}

pub struct Loaded {
    pub input: Input,
    pub bytes: Vec<u8>,
}

impl Input {
    /// The matrix itself, or the Jordan matrix of a concrete type.
    pub fn to_matrix(&self) -> Result<QMatrix, CliError> {
        match self {
            Input::Matrix(m) => Ok(m.clone()),
            Input::Jordan(jt) => jordan_matrix(jt).map_err(CliError::Domain),
        }
    }
}

fn read_source(path: &str) -> Result<Vec<u8>, CliError> {
    if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| CliError::Input(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read(path).map_err(|e| CliError::Input(format!("reading {path}: {e}")))
    }
}

/// Interprets a JSON value as a matrix or Jordan type document. Reports from
/// this tool are unwrapped through their `results` (and `jordan_type`) keys.
pub fn interpret(value: &Value) -> Result<Input, CliError> {
    let obj = value
        .as_object()
        .ok_or_else(|| CliError::Input("expected a JSON object".into()))?;
    if let Some(results) = obj.get("results") {
        return interpret(results);
    }
    if let Some(jt) = obj.get("jordan_type") {
        return interpret(jt);
    }
    if obj.contains_key("spectrum") {
        let jt: JordanType = serde_json::from_value(value.clone())
            .map_err(|e| CliError::Input(format!("malformed Jordan type document: {e}")))?;
        return Ok(Input::Jordan(jt));
    }
    if obj.contains_key("entries") {
        return matrix_from_json(value)
            .map(Input::Matrix)
            .map_err(|e| CliError::Input(e.to_string()));
    }
    Err(CliError::Input(
        "document is neither a matrix ({\"n\", \"entries\"}) nor a Jordan type ({\"n\", \"spectrum\"})".into(),
    ))
}

pub fn load(path: &str) -> Result<Loaded, CliError> {
    let bytes = read_source(path)?;
    let value: Value = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Input(format!("{path}: invalid JSON: {e}")))?;
    let input = interpret(&value).map_err(|e| match e {
        CliError::Input(msg) => CliError::Input(format!("{path}: {msg}")),
        other => other,
    })?;
    Ok(Loaded { input, bytes })
}
