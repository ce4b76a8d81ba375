//! JSON state files: `{"matrix": [[[re, im], ...4], ...4]}`, row-major.
//!
//! Numbers are written in shortest round-trip form, so a write followed by a
//! read returns bit-identical doubles. Extra top-level keys are ignored on
//! read; the counterpart writer uses this to store the unitary alongside.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ComplexMat4;
use num_complex::Complex;

type Rows = [[[f64; 2]; 4]; 4];

#[derive(Serialize, Deserialize)]
struct StateFile {
    matrix: Rows,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    unitary: Option<Rows>,
}

fn to_rows(m: &ComplexMat4<f64>) -> Rows {
    let mut rows = [[[0.0; 2]; 4]; 4];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, z) in row.iter_mut().enumerate() {
            *z = [m[(i, j)].re, m[(i, j)].im];
        }
    }
    rows
}

fn from_rows(rows: &Rows) -> ComplexMat4<f64> {
    ComplexMat4::from_fn(|i, j| Complex::new(rows[i][j][0], rows[i][j][1]))
}

/// Reads the `matrix` field. No physical validation happens here.
pub fn parse_matrix(text: &str) -> Result<ComplexMat4<f64>> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let m = from_rows(&file.matrix);
    if m.0.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Parse("non-finite matrix entry".into()));
    }
    Ok(m)
}

/// Reads the optional `unitary` field.
pub fn parse_unitary(text: &str) -> Result<Option<ComplexMat4<f64>>> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(file.unitary.as_ref().map(from_rows))
}

pub fn write_matrix(m: &ComplexMat4<f64>) -> String {
    write_state(m, None)
}

pub fn write_state(m: &ComplexMat4<f64>, unitary: Option<&ComplexMat4<f64>>) -> String {
    let file = StateFile { matrix: to_rows(m), unitary: unitary.map(to_rows) };
    let mut s = serde_json::to_string_pretty(&file).expect("plain arrays serialize");
    s.push('\n');
    s
}
