use serde::Deserialize;
use serde_json::Value;
use sumcore::TriangularWitness;

use crate::error::{CliError, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Bare {
    b: Vec<usize>,
    c: Vec<usize>,
}

/// Reads a triangular witness from `{"b": [...], "c": [...]}` or from a
/// `witness`/`triangular` report, whose `certificate` has that shape.
pub fn parse_witness_json(text: &str) -> Result<TriangularWitness> {
    let err = |m: String| CliError::WitnessJson(m);
    let doc: Value = serde_json::from_str(text).map_err(|e| err(e.to_string()))?;
    let body = match doc.get("certificate") {
        Some(cert) if !cert.is_null() => cert.clone(),
        Some(_) => return Err(err("report carries no certificate".into())),
        None => doc,
    };
    let Bare { b, c } = serde_json::from_value(body).map_err(|e| err(e.to_string()))?;
    if b.is_empty() || b.len() != c.len() {
        return Err(err(format!("sequences must be non-empty and equally long, got {} and {}", b.len(), c.len())));
    }
    Ok(TriangularWitness { b, c })
}
