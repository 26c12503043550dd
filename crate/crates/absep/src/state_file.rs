//! JSON state files.
//!
//! ```json
//! { "dA": 2, "dB": 2, "matrix": [[[0.25, 0.0], ...], ...], "label": "optional" }
//! ```
//!
//! Entries are `[re, im]` pairs. Floats are written in shortest round-trip
//! form, so writing and reading back reproduces every entry bit for bit.

use std::fs;
use std::path::Path;

use absep_core::{Complex64, ComplexMatrix, DensityMatrix};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    #[serde(rename = "dA")]
    pub d_a: usize,
    #[serde(rename = "dB")]
    pub d_b: usize,
    pub matrix: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl StateFile {
    pub fn from_state(rho: &DensityMatrix, label: Option<String>) -> Self {
        let m = rho.matrix();
        let matrix = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
            .collect();
        Self {
            d_a: 2,
            d_b: rho.d(),
            matrix,
            label,
        }
    }

    /// Rebuilds the matrix and checks the state invariants.
    pub fn to_state(&self) -> Result<DensityMatrix, CliError> {
        if self.d_a != 2 {
            return Err(CliError::Parse(format!("dA must be 2, got {}", self.d_a)));
        }
        let n = 2 * self.d_b;
        if self.matrix.len() != n || self.matrix.iter().any(|row| row.len() != n) {
            return Err(CliError::Parse(format!(
                "matrix must be {n}x{n} for dB = {}",
                self.d_b
            )));
        }
        let data = self
            .matrix
            .iter()
            .flatten()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        let m = ComplexMatrix::from_vec(n, n, data)?;
        Ok(DensityMatrix::new(m, self.d_b)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state files serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        fs::write(path, self.to_json() + "\n").map_err(|e| CliError::io(path, e))
    }
}
