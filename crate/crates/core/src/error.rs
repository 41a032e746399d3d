use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Witness that an identity failed: where it was evaluated, what was expected
/// and what came out. All values are exact rational strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub inputs: BTreeMap<String, String>,
    pub expected: String,
    pub actual: String,
}

impl Counterexample {
    pub fn new(
        inputs: impl IntoIterator<Item = (&'static str, String)>,
        expected: impl ToString,
        actual: impl ToString,
    ) -> Self {
        Counterexample {
            inputs: inputs.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KrwError {
    #[error("{name} = {value} is outside 0..={max}")]
    OutOfRange {
        name: &'static str,
        value: i64,
        max: i64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("identity `{identity}` failed: expected {}, got {}", .witness.expected, .witness.actual)]
    Mismatch {
        identity: &'static str,
        witness: Box<Counterexample>,
    },

    #[error("matrix is not tridiagonal with nonzero superdiagonal")]
    NotTridiagonal,

    #[error("value is not an eigenvalue: last row residual {0}")]
    NotAnEigenvalue(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl KrwError {
    pub fn mismatch(identity: &'static str, witness: Counterexample) -> Self {
        KrwError::Mismatch {
            identity,
            witness: Box::new(witness),
        }
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            KrwError::Mismatch { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

pub type Result<T, E = KrwError> = std::result::Result<T, E>;

pub(crate) fn check_index(name: &'static str, value: usize, max: usize) -> Result<()> {
    if value > max {
        Err(KrwError::OutOfRange {
            name,
            value: value as i64,
            max: max as i64,
        })
    } else {
        Ok(())
    }
}

pub(crate) fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        Err(KrwError::InvalidParameter("N must be at least 1".into()))
    } else {
        Ok(())
    }
}
