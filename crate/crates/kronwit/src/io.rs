//! JSON shapes shared by the command line and by scripts consuming it.
//!
//! Complex numbers are `[re, im]` pairs, matrices are row-major:
//!
//! ```json
//! {"rows": 2, "cols": 2, "data": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]}
//! ```
//!
//! Projectors add `"lambda"` and `"rank"`; states are
//! `{"registers": [...], "amplitudes": [...]}`; subspaces are arrays of states.

use std::io::Read;
use std::path::Path;

use kronwit_core::entangled::{StateVector, Subspace};
use kronwit_core::verifier::TestReport;
use kronwit_core::wfs::{KrausElement, Projector};
use kronwit_core::{ComplexMatrix, Partition, C64};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

fn pairs(z: &[C64]) -> Vec<[f64; 2]> {
    z.iter().map(|c| [c.re, c.im]).collect()
}

fn complex(pairs: &[[f64; 2]]) -> Vec<C64> {
    pairs.iter().map(|p| C64::new(p[0], p[1])).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn new(m: &ComplexMatrix) -> Self {
        MatrixJson { rows: m.rows(), cols: m.cols(), data: pairs(m.data()) }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, CliError> {
        Ok(ComplexMatrix::from_vec(self.rows, self.cols, complex(&self.data))?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectorJson {
    pub lambda: String,
    pub rank: usize,
    #[serde(flatten)]
    pub matrix: MatrixJson,
}

impl ProjectorJson {
    pub fn new(lambda: &Partition, p: &Projector) -> Self {
        ProjectorJson { lambda: lambda.to_string(), rank: p.rank(), matrix: MatrixJson::new(p.matrix()) }
    }

    /// Kraus elements are not projectors; `rank` is the rank of `E^dagger E`.
    pub fn kraus(e: &KrausElement, rank: usize) -> Self {
        ProjectorJson { lambda: e.lambda().to_string(), rank, matrix: MatrixJson::new(e.matrix()) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    #[serde(default)]
    pub registers: Vec<usize>,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateJson {
    pub fn new(s: &StateVector) -> Self {
        StateJson { registers: s.registers().to_vec(), amplitudes: pairs(s.amplitudes()) }
    }

    /// Validated unit state. A missing register list means a single register.
    pub fn to_state(&self) -> Result<StateVector, CliError> {
        let amps = complex(&self.amplitudes);
        let registers = if self.registers.is_empty() { vec![amps.len()] } else { self.registers.clone() };
        Ok(StateVector::new(registers, amps)?)
    }
}

pub fn subspace_json(s: &Subspace) -> Vec<StateJson> {
    s.basis()
        .iter()
        .map(|b| StateJson { registers: vec![s.ambient_dim()], amplitudes: pairs(b) })
        .collect()
}

pub fn subspace_from_json(ambient_dim: usize, basis: &[StateJson]) -> Result<Subspace, CliError> {
    let vectors = basis.iter().map(|s| complex(&s.amplitudes)).collect();
    Ok(Subspace::from_orthonormal(ambient_dim, vectors)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub check: String,
    pub trial: usize,
    pub acceptance_probability: f64,
    pub epsilon: f64,
    pub distance_to_target: f64,
    pub bound: f64,
    pub bound_satisfied: bool,
}

impl From<&TestReport> for ReportJson {
    fn from(r: &TestReport) -> Self {
        ReportJson {
            check: r.check.name().to_string(),
            trial: r.trial,
            acceptance_probability: r.acceptance_probability,
            epsilon: r.epsilon,
            distance_to_target: r.distance_to_target,
            bound: r.bound,
            bound_satisfied: r.bound_satisfied,
        }
    }
}

/// Reads a state from a path, or from stdin when the path is `-`.
pub fn read_state(path: &Path) -> Result<StateVector, CliError> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?
    };
    let json: StateJson = serde_json::from_str(&text)?;
    json.to_state()
}

/// Rounds to 6 significant digits; only used for `--pretty` output.
pub fn round_sig6(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.5e}").parse().unwrap_or(x)
}

/// Copy of `v` with every float rounded by [`round_sig6`].
pub fn rounded(v: &Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            serde_json::Number::from_f64(round_sig6(n.as_f64().unwrap())).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(a) => Value::Array(a.iter().map(rounded).collect()),
        Value::Object(o) => Value::Object(o.iter().map(|(k, x)| (k.clone(), rounded(x))).collect()),
        other => other.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let m = ComplexMatrix::from_fn(2, 3, |i, j| C64::new(i as f64 + 0.1, -(j as f64) / 3.0));
        let text = serde_json::to_string(&MatrixJson::new(&m)).unwrap();
        assert!(text.starts_with(r#"{"rows":2,"cols":3,"data":[[0.1,-0.0]"#), "{text}");
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_matrix().unwrap(), m);
    }

    #[test]
    fn state_without_registers_is_one_register() {
        let json: StateJson = serde_json::from_str(r#"{"amplitudes": [[0.6, 0], [0, 0.8]]}"#).unwrap();
        let s = json.to_state().unwrap();
        assert_eq!(s.registers(), &[2]);
        let bad: StateJson = serde_json::from_str(r#"{"amplitudes": [[1, 0], [1, 0]]}"#).unwrap();
        assert!(bad.to_state().is_err());
    }

    #[test]
    fn rounding_keeps_six_digits() {
        assert_eq!(round_sig6(0.123456789), 0.123457);
        assert_eq!(round_sig6(-98765432.1), -98765400.0);
        assert_eq!(round_sig6(0.0), 0.0);
        let v = serde_json::json!({"a": [1.0000004, 2], "b": "x"});
        assert_eq!(rounded(&v), serde_json::json!({"a": [1.0, 2], "b": "x"}));
    }
}
