//! JSON vector files: `{"d": n, "re": [...], "im": [...], "label": ..., "provenance": ...}`.
//!
//! Floats are written in shortest round-trip form, so write-then-read is
//! bitwise lossless.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::weyl::StateVector;

/// Files whose norm is off by more than this are rejected.
pub const NORM_REJECT_TOL: f64 = 1e-3;
/// Deviations at or below this are rounding noise and left untouched.
pub const NORM_NOISE_TOL: f64 = 1e-13;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VectorFile {
    pub d: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VectorFileError {
    #[error("{path}: cannot read or write file: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{path}: parse error: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{path}: dimension mismatch: d = {d} but re has {re} entries and im has {im}")]
    DimensionMismatch {
        path: PathBuf,
        d: usize,
        re: usize,
        im: usize,
    },
    #[error("{path}: vector norm {norm} is too far from 1")]
    Norm { path: PathBuf, norm: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct LoadedVector {
    pub vector: StateVector,
    pub label: Option<String>,
    pub provenance: Option<String>,
    /// `‖ψ‖ − 1` of the stored amplitudes; nonzero entries above the noise
    /// level mean the vector was renormalized on load.
    pub norm_correction: f64,
    pub renormalized: bool,
}

impl VectorFile {
    pub fn from_state(
        psi: &StateVector,
        label: Option<String>,
        provenance: Option<String>,
    ) -> Self {
        VectorFile {
            d: psi.dim(),
            re: psi.as_slice().iter().map(|z| z.re).collect(),
            im: psi.as_slice().iter().map(|z| z.im).collect(),
            label,
            provenance,
        }
    }
}

pub fn read_vector(path: &Path) -> Result<LoadedVector, VectorFileError> {
    let text = fs::read_to_string(path).map_err(|e| VectorFileError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let file: VectorFile = serde_json::from_str(&text).map_err(|e| VectorFileError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    if file.re.len() != file.d || file.im.len() != file.d || file.d == 0 {
        return Err(VectorFileError::DimensionMismatch {
            path: path.to_path_buf(),
            d: file.d,
            re: file.re.len(),
            im: file.im.len(),
        });
    }
    let amps: Vec<Complex64> = file
        .re
        .iter()
        .zip(&file.im)
        .map(|(&re, &im)| Complex64::new(re, im))
        .collect();
    let psi = StateVector::from_vec(amps);
    let norm = psi.norm();
    let deviation = norm - 1.0;
    if !norm.is_finite() || deviation.abs() > NORM_REJECT_TOL {
        return Err(VectorFileError::Norm {
            path: path.to_path_buf(),
            norm,
        });
    }
    let renormalized = deviation.abs() > NORM_NOISE_TOL;
    Ok(LoadedVector {
        vector: if renormalized { psi.normalized() } else { psi },
        label: file.label,
        provenance: file.provenance,
        norm_correction: deviation,
        renormalized,
    })
}

pub fn write_vector(
    psi: &StateVector,
    path: &Path,
    label: Option<String>,
    provenance: Option<String>,
) -> Result<(), VectorFileError> {
    let file = VectorFile::from_state(psi, label, provenance);
    let text = serde_json::to_string_pretty(&file).expect("plain data serializes");
    fs::write(path, text + "\n").map_err(|e| VectorFileError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}
