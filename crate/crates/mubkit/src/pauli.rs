//! Generalized Pauli operators on m qudits of prime dimension p.
//!
//! An operator X_p(alpha) Z_p(beta) is stored as its exponent vector
//! (alpha | beta) over F_p. The X part shifts each tensor factor, the Z part
//! applies phases; commutation reduces to vanishing of the symplectic form
//! alpha . beta' - alpha' . beta mod p.

use crate::cmatrix::CMatrix;
use crate::finite_field::{is_prime, mod_add, mod_mul, mod_sub, FieldError, FpMatrix};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use thiserror::Error;

/// Hard cap on matrix dimension p^m for explicit realizations.
pub const MAX_DIM: u64 = 1 << 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PauliError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("symplectic vectors have mismatched shape")]
    ShapeMismatch,
    #[error("dimension {p}^{m} exceeds the matrix storage bound 2^14")]
    DimensionTooLarge { p: u64, m: usize },
    #[error("class generator matrix is not symmetric")]
    NonSymmetricGenerator,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Exponent vector (alpha | beta) of X_p(alpha) Z_p(beta).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymplecticVector {
    pub alpha: Vec<u64>,
    pub beta: Vec<u64>,
    pub p: u64,
}

impl SymplecticVector {
    pub fn new(alpha: &[u64], beta: &[u64], p: u64) -> Result<Self, PauliError> {
        if !is_prime(p) {
            return Err(PauliError::NotPrime(p));
        }
        if alpha.len() != beta.len() {
            return Err(PauliError::ShapeMismatch);
        }
        Ok(Self {
            alpha: alpha.iter().map(|&v| v % p).collect(),
            beta: beta.iter().map(|&v| v % p).collect(),
            p,
        })
    }

    pub fn qudits(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_identity(&self) -> bool {
        self.alpha.iter().all(|&v| v == 0) && self.beta.iter().all(|&v| v == 0)
    }

    /// Symplectic form alpha . beta' - alpha' . beta mod p.
    pub fn symplectic_form(&self, other: &Self) -> Result<u64, PauliError> {
        if self.p != other.p || self.qudits() != other.qudits() {
            return Err(PauliError::ShapeMismatch);
        }
        let p = self.p;
        let mut acc = 0u64;
        for j in 0..self.qudits() {
            acc = mod_add(acc, mod_mul(self.alpha[j], other.beta[j], p), p);
            acc = mod_sub(acc, mod_mul(other.alpha[j], self.beta[j], p), p);
        }
        Ok(acc)
    }

    /// The represented operators commute iff the symplectic form vanishes.
    pub fn commutes(&self, other: &Self) -> Result<bool, PauliError> {
        Ok(self.symplectic_form(other)? == 0)
    }

    /// Explicit matrix of X_p(alpha) Z_p(beta) on (C^p)^{tensor m}.
    ///
    /// Column index encodes (a_1,...,a_m) with a_1 most significant; the
    /// entry in column a sits at row a + alpha with value omega^{a . beta}.
    pub fn to_matrix(&self) -> Result<CMatrix, PauliError> {
        PauliOp::from_vector(self.clone()).to_matrix()
    }
}

/// Overflow-safe p^m, capped at [`MAX_DIM`].
pub(crate) fn checked_dim(p: u64, m: usize) -> Result<u64, PauliError> {
    u32::try_from(m)
        .ok()
        .and_then(|e| (p as u128).checked_pow(e))
        .filter(|&d| d <= MAX_DIM as u128)
        .map(|d| d as u64)
        .ok_or(PauliError::DimensionTooLarge { p, m })
}

/// Decodes a basis index into qudit digits, most significant first.
pub fn index_to_digits(index: u64, p: u64, m: usize) -> Vec<u64> {
    let mut out = vec![0u64; m];
    let mut n = index;
    for slot in out.iter_mut().rev() {
        *slot = n % p;
        n /= p;
    }
    out
}

pub(crate) fn digits_to_index(digits: &[u64], p: u64) -> u64 {
    digits.iter().fold(0u64, |acc, &d| acc * p + d)
}

/// A Pauli operator omega^j X_p(alpha) Z_p(beta).
///
/// Constructions only use the phase-free subset (j = 0); the phase exponent
/// exists so products remain representable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliOp {
    pub vector: SymplecticVector,
    pub phase_exp: u64,
}

impl PauliOp {
    pub fn from_vector(vector: SymplecticVector) -> Self {
        Self {
            vector,
            phase_exp: 0,
        }
    }

    pub fn new(vector: SymplecticVector, phase_exp: u64) -> Self {
        let p = vector.p;
        Self {
            vector,
            phase_exp: phase_exp % p,
        }
    }

    /// Operator product. X/Z reordering contributes omega^{beta . alpha'}:
    /// Z_p(beta) X_p(alpha') = omega^{alpha' . beta} X_p(alpha') Z_p(beta).
    pub fn product(&self, other: &Self) -> Result<Self, PauliError> {
        let (u, v) = (&self.vector, &other.vector);
        if u.p != v.p || u.qudits() != v.qudits() {
            return Err(PauliError::ShapeMismatch);
        }
        let p = u.p;
        let mut cross = 0u64;
        for j in 0..u.qudits() {
            cross = mod_add(cross, mod_mul(u.beta[j], v.alpha[j], p), p);
        }
        let alpha: Vec<u64> = u
            .alpha
            .iter()
            .zip(&v.alpha)
            .map(|(&a, &b)| mod_add(a, b, p))
            .collect();
        let beta: Vec<u64> = u
            .beta
            .iter()
            .zip(&v.beta)
            .map(|(&a, &b)| mod_add(a, b, p))
            .collect();
        let phase = mod_add(mod_add(self.phase_exp, other.phase_exp, p), cross, p);
        Ok(Self {
            vector: SymplecticVector::new(&alpha, &beta, p)?,
            phase_exp: phase,
        })
    }

    pub fn to_matrix(&self) -> Result<CMatrix, PauliError> {
        let v = &self.vector;
        let (p, m) = (v.p, v.qudits());
        let d = checked_dim(p, m)?;
        let omega_step = TAU / p as f64;
        let mut mat = CMatrix::zeros(d as usize);
        for col in 0..d {
            let a = index_to_digits(col, p, m);
            let mut row_digits = vec![0u64; m];
            let mut phase = self.phase_exp;
            for j in 0..m {
                row_digits[j] = mod_add(a[j], v.alpha[j], p);
                phase = mod_add(phase, mod_mul(a[j], v.beta[j], p), p);
            }
            let row = digits_to_index(&row_digits, p);
            let value = Complex64::from_polar(1.0, omega_step * phase as f64);
            mat.set(row as usize, col as usize, value);
        }
        Ok(mat)
    }
}

/// A linear commuting class, named by its generator matrix: (0_m | I_m) for
/// the Z class, (I_m | A) with symmetric A for an X class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassSpec {
    ZClass { p: u64, m: usize },
    XClass(FpMatrix),
}

impl ClassSpec {
    pub fn p(&self) -> u64 {
        match self {
            ClassSpec::ZClass { p, .. } => *p,
            ClassSpec::XClass(a) => a.modulus(),
        }
    }

    pub fn m(&self) -> usize {
        match self {
            ClassSpec::ZClass { m, .. } => *m,
            ClassSpec::XClass(a) => a.dim(),
        }
    }
}

/// Enumerates the p^m exponent vectors of a linear class, ordered by x in
/// lexicographic order (identity first at x = 0).
///
/// Z class: {(0 | x)}. X class with symmetric A: {(x | xA)}.
pub fn enumerate_class(spec: &ClassSpec) -> Result<Vec<SymplecticVector>, PauliError> {
    let (p, m) = (spec.p(), spec.m());
    if !is_prime(p) {
        return Err(PauliError::NotPrime(p));
    }
    if let ClassSpec::XClass(a) = spec {
        if !a.is_symmetric() {
            return Err(PauliError::NonSymmetricGenerator);
        }
    }
    let count = checked_dim(p, m)?;
    let mut out = Vec::with_capacity(count as usize);
    for n in 0..count {
        let x = index_to_digits(n, p, m);
        let v = match spec {
            ClassSpec::ZClass { .. } => SymplecticVector::new(&vec![0; m], &x, p)?,
            ClassSpec::XClass(a) => {
                let xa = a.row_mul(&x)?;
                SymplecticVector::new(&x, &xa, p)?
            }
        };
        out.push(v);
    }
    Ok(out)
}
