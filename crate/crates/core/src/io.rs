//! JSON file formats. All vertex numbers in files are 1-based.
//!
//! * hypergram: `{"version":1,"vertices":15,"hyperedges":[[1,2,3],...],"anticommutations":[[1,4],...]}`
//! * Pauli assignment: `{"version":1,"n":2,"labels":{"1":"IX",...}}`
//! * classical assignment: `{"values":{"1":1,"2":-1,...}}`
//! * sign vector (one entry per hyperedge, in file order): `{"signs":[1,-1,...]}`
//! * degree result: `{"value":3,"exact":true,"method":"Exhaustive","witness":{"values":{...}}}`

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::assign::{ClassicalAssignment, PauliAssignment, SignVector};
use crate::degree::DegreeResult;
use crate::geometry::LineConfiguration;
use crate::hypergram::{Hypergram, RawHypergram, ValidationReport};
use crate::pauli::{PauliError, PauliObservable, Sign};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format version {0}, expected {FORMAT_VERSION}")]
    Version(u64),
    #[error("{0}")]
    Format(String),
    #[error("invalid hypergram: {0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

impl IoError {
    /// Parse-level failures, as opposed to well-formed data that is not a hypergram.
    pub fn is_parse_error(&self) -> bool {
        !matches!(self, IoError::Invalid(_))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HypergramFile {
    version: u64,
    vertices: usize,
    hyperedges: Vec<Vec<usize>>,
    anticommutations: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    points: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AssignmentFile {
    version: u64,
    n: usize,
    labels: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassicalFile {
    values: BTreeMap<String, i8>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SignsFile {
    signs: Vec<i8>,
}

fn check_version(v: u64) -> Result<(), IoError> {
    if v == FORMAT_VERSION {
        Ok(())
    } else {
        Err(IoError::Version(v))
    }
}

/// Reads `{"1": x, "2": y, ...}` into a vector, requiring exactly the keys `1..=len`.
fn dense_from_map<T: Clone>(map: &BTreeMap<String, T>, what: &str) -> Result<Vec<T>, IoError> {
    let mut out: Vec<Option<T>> = vec![None; map.len()];
    for (key, value) in map {
        let index: usize = key
            .parse()
            .map_err(|_| IoError::Format(format!("{what} key {key:?} is not a vertex number")))?;
        if index == 0 || index > map.len() {
            return Err(IoError::Format(format!("{what} key {index} outside 1..={}", map.len())));
        }
        out[index - 1] = Some(value.clone());
    }
    // keys are distinct and in range, so every slot is filled
    Ok(out.into_iter().map(|v| v.expect("filled")).collect())
}

fn sparse_map<T>(values: impl IntoIterator<Item = T>) -> BTreeMap<String, T> {
    values
        .into_iter()
        .enumerate()
        .map(|(i, v)| ((i + 1).to_string(), v))
        .collect()
}

fn sign_from(v: i8, what: &str) -> Result<Sign, IoError> {
    Sign::from_i8(v).ok_or_else(|| IoError::Format(format!("{what} value {v} is not 1 or -1")))
}

/// Parses the hypergram format without validating the structure.
pub fn parse_raw_hypergram(text: &str) -> Result<RawHypergram, IoError> {
    let file: HypergramFile = serde_json::from_str(text)?;
    check_version(file.version)?;
    Ok(RawHypergram::new(file.vertices, file.hyperedges, file.anticommutations))
}

pub fn parse_hypergram(text: &str) -> Result<Hypergram, IoError> {
    parse_raw_hypergram(text)?.into_hypergram().map_err(IoError::Invalid)
}

pub fn raw_hypergram_to_json(raw: &RawHypergram) -> Value {
    let pairs: Vec<(usize, usize)> = raw
        .anticommutations
        .iter()
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .collect();
    json!({
        "version": FORMAT_VERSION,
        "vertices": raw.vertices,
        "hyperedges": raw.hyperedges,
        "anticommutations": pairs,
    })
}

pub fn hypergram_to_json(hg: &Hypergram) -> Value {
    raw_hypergram_to_json(&hg.to_raw())
}

/// Hypergram format plus the `"points"` list of observable words.
pub fn line_configuration_to_json(config: &LineConfiguration, hg: &Hypergram) -> Value {
    let mut value = hypergram_to_json(hg);
    value["points"] = json!(config.points.iter().map(|p| p.to_string()).collect::<Vec<_>>());
    value
}

pub fn parse_assignment(text: &str) -> Result<PauliAssignment, IoError> {
    let file: AssignmentFile = serde_json::from_str(text)?;
    check_version(file.version)?;
    let words = dense_from_map(&file.labels, "label")?;
    let labels = words
        .iter()
        .map(|w| w.parse::<PauliObservable>())
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(bad) = labels.iter().find(|l| l.qubits() != file.n) {
        return Err(IoError::Format(format!(
            "label {bad} has {} qubits, header says n = {}",
            bad.qubits(),
            file.n
        )));
    }
    Ok(PauliAssignment::new(labels)?)
}

pub fn assignment_to_json(alpha: &PauliAssignment) -> Value {
    json!({
        "version": FORMAT_VERSION,
        "n": alpha.qubits(),
        "labels": sparse_map(alpha.labels().iter().map(|l| l.to_string())),
    })
}

pub fn parse_classical(text: &str) -> Result<ClassicalAssignment, IoError> {
    let file: ClassicalFile = serde_json::from_str(text)?;
    let values = dense_from_map(&file.values, "value")?
        .into_iter()
        .map(|v| sign_from(v, "classical"))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ClassicalAssignment::new(values))
}

pub fn classical_to_json(a: &ClassicalAssignment) -> Value {
    json!({ "values": sparse_map(a.values().iter().map(|s| s.to_i8())) })
}

pub fn parse_signs(text: &str) -> Result<SignVector, IoError> {
    let file: SignsFile = serde_json::from_str(text)?;
    let signs = file
        .signs
        .into_iter()
        .map(|v| sign_from(v, "sign"))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SignVector::new(signs))
}

pub fn signs_to_json(signs: &SignVector) -> Value {
    json!({ "signs": signs.signs().iter().map(|s| s.to_i8()).collect::<Vec<_>>() })
}

pub fn degree_result_to_json(result: &DegreeResult) -> Value {
    json!({
        "value": result.value,
        "exact": result.exact,
        "method": result.method.as_str(),
        "witness": classical_to_json(&result.witness),
    })
}

/// 1-based hyperedge numbers, for echoing unsatisfied sets.
pub fn index_set_to_json<'a>(indices: impl IntoIterator<Item = &'a usize>) -> Value {
    json!(indices.into_iter().map(|i| i + 1).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::two_spread;

    #[test]
    fn hypergram_round_trip() {
        let (hg, alpha) = two_spread();
        let text = hypergram_to_json(&hg).to_string();
        assert_eq!(parse_hypergram(&text).unwrap(), hg);
        let text = assignment_to_json(&alpha).to_string();
        assert_eq!(parse_assignment(&text).unwrap(), alpha);
    }

    #[test]
    fn rejects() {
        assert!(parse_hypergram("{").unwrap_err().is_parse_error());
        let v2 = r#"{"version":2,"vertices":1,"hyperedges":[],"anticommutations":[]}"#;
        assert!(matches!(parse_hypergram(v2), Err(IoError::Version(2))));
        let looped = r#"{"version":1,"vertices":3,"hyperedges":[[1,2,3]],"anticommutations":[[3,3]]}"#;
        match parse_hypergram(looped) {
            Err(IoError::Invalid(r)) => assert!(r.has(crate::hypergram::ViolationCode::LoopEdge)),
            other => panic!("{other:?}"),
        }
        assert!(parse_classical(r#"{"values":{"1":1,"3":-1}}"#).is_err());
        assert!(parse_classical(r#"{"values":{"1":2}}"#).is_err());
        assert!(parse_assignment(r#"{"version":1,"n":2,"labels":{"1":"XYZ"}}"#).is_err());
    }

    #[test]
    fn classical_round_trip() {
        let a = ClassicalAssignment::new(vec![Sign::Plus, Sign::Minus, Sign::Minus]);
        let text = classical_to_json(&a).to_string();
        assert_eq!(text, r#"{"values":{"1":1,"2":-1,"3":-1}}"#);
        assert_eq!(parse_classical(&text).unwrap(), a);
    }
}
