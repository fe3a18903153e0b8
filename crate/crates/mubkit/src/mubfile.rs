//! The `mub/1` file schema: a JSON document carrying a MUB set with its
//! construction metadata.
//!
//! Complex entries are `[re, im]` double pairs, bases column-major (all d
//! entries of vector 0, then vector 1, ...). Serialization is byte-stable:
//! identical sets produce identical files.

use crate::cmatrix::CMatrix;
use crate::finite_field::{is_prime, FieldError, FpPoly};
use crate::mub_prime::{Method, MubSet};
use crate::spectral::Basis;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: &str = "mub/1";

#[derive(Debug, Error)]
pub enum MubFileError {
    #[error("invalid JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported schema version {0:?}, expected \"mub/1\"")]
    SchemaVersion(String),
    #[error("dim {dim} does not equal p^m = {p}^{m}")]
    DimMismatch { dim: usize, p: u64, m: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("basis {index} has {got} entries, expected dim^2 = {expected}")]
    BasisLength {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("unknown method {0:?}")]
    UnknownMethod(String),
    #[error("tolerance must be a positive finite number, got {0}")]
    BadTolerance(f64),
    #[error("entry is not finite at basis {basis}, offset {offset}")]
    NonFiniteEntry { basis: usize, offset: usize },
    #[error("modulus polynomial rejected: {0}")]
    Poly(#[from] FieldError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// On-disk form of a MUB set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MubFileV1 {
    pub schema_version: String,
    pub dim: usize,
    pub p: u64,
    pub m: usize,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus_poly: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub tol: f64,
    /// One flat column-major array of [re, im] pairs per basis.
    pub bases: Vec<Vec<[f64; 2]>>,
}

impl MubFileV1 {
    pub fn from_mub_set(set: &MubSet) -> Self {
        let d = set.dim;
        let bases = set
            .bases
            .iter()
            .map(|basis| {
                let mut flat = Vec::with_capacity(d * d);
                for col in 0..d {
                    for row in 0..d {
                        let e = basis.matrix().get(row, col);
                        flat.push([e.re, e.im]);
                    }
                }
                flat
            })
            .collect();
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            dim: d,
            p: set.p,
            m: set.m,
            method: set.method.as_str().to_string(),
            modulus_poly: set.modulus_poly.as_ref().map(|f| f.coeffs().to_vec()),
            seed: set.seed,
            tol: set.tol,
            bases,
        }
    }

    /// Validates the schema and rebuilds the in-memory set.
    pub fn to_mub_set(&self) -> Result<MubSet, MubFileError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(MubFileError::SchemaVersion(self.schema_version.clone()));
        }
        if !is_prime(self.p) {
            return Err(MubFileError::NotPrime(self.p));
        }
        let expected_dim = u32::try_from(self.m)
            .ok()
            .and_then(|e| (self.p as u128).checked_pow(e));
        if expected_dim != Some(self.dim as u128) {
            return Err(MubFileError::DimMismatch {
                dim: self.dim,
                p: self.p,
                m: self.m,
            });
        }
        let method = Method::parse(&self.method)
            .ok_or_else(|| MubFileError::UnknownMethod(self.method.clone()))?;
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(MubFileError::BadTolerance(self.tol));
        }
        let modulus_poly = self
            .modulus_poly
            .as_ref()
            .map(|coeffs| FpPoly::new(self.p, coeffs))
            .transpose()?;
        let d = self.dim;
        let mut bases = Vec::with_capacity(self.bases.len());
        for (index, flat) in self.bases.iter().enumerate() {
            if flat.len() != d * d {
                return Err(MubFileError::BasisLength {
                    index,
                    expected: d * d,
                    got: flat.len(),
                });
            }
            if let Some(offset) = flat
                .iter()
                .position(|e| !(e[0].is_finite() && e[1].is_finite()))
            {
                return Err(MubFileError::NonFiniteEntry {
                    basis: index,
                    offset,
                });
            }
            let mut mat = CMatrix::zeros(d);
            for col in 0..d {
                for row in 0..d {
                    let e = flat[col * d + row];
                    mat.set(row, col, Complex64::new(e[0], e[1]));
                }
            }
            bases.push(Basis::new(mat));
        }
        Ok(MubSet {
            dim: d,
            bases,
            method,
            p: self.p,
            m: self.m,
            modulus_poly,
            seed: self.seed,
            tol: self.tol,
        })
    }

    /// Compact single-line JSON plus trailing newline; byte-deterministic.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("schema serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, MubFileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &std::path::Path) -> Result<Self, MubFileError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}
