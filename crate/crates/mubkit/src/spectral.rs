//! Common orthonormal eigenbases of commuting unitary families.
//!
//! A pairwise-commuting family of unitaries is simultaneously
//! diagonalizable. This module realizes the diagonalizing basis numerically:
//! draw a random Hermitian combination of the family, eigendecompose it, and
//! validate that every input is diagonal in the resulting basis, retrying
//! with fresh coefficients when a degenerate combination was drawn.

use crate::cmatrix::CMatrix;
use nalgebra::{Complex, DMatrix};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("joint_eigenbasis needs at least one operator")]
    EmptyInput,
    #[error("operator {index} has dimension {got}, expected {expected}")]
    DimMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("operator {index} is not unitary (deviation {deviation:.3e} > tol {tol:.3e})")]
    NotUnitary {
        index: usize,
        deviation: f64,
        tol: f64,
    },
    #[error("operators {i} and {j} do not commute (deviation {deviation:.3e} > tol {tol:.3e})")]
    NotCommuting {
        i: usize,
        j: usize,
        deviation: f64,
        tol: f64,
    },
    #[error(
        "no diagonalizing basis found after {attempts} attempts (seed {seed}); \
         worst off-diagonal {worst:.3e}"
    )]
    DiagonalizationFailed {
        attempts: u32,
        seed: u64,
        worst: f64,
    },
}

/// Settings for [`joint_eigenbasis`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralConfig {
    /// Absolute tolerance for unitarity, commutation and diagonality checks.
    pub tol: f64,
    /// Retries with fresh random coefficients before giving up.
    pub max_retries: u32,
    /// Seed for the coefficient stream; fixing it makes the output a pure
    /// function of the inputs.
    pub rng_seed: u64,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_retries: 8,
            rng_seed: 0,
        }
    }
}

/// An orthonormal basis of C^d, stored as the columns of a d x d matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    mat: CMatrix,
}

impl Basis {
    pub fn new(mat: CMatrix) -> Self {
        Self { mat }
    }

    pub fn standard(dim: usize) -> Self {
        Self {
            mat: CMatrix::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn column(&self, t: usize) -> Vec<Complex64> {
        self.mat.column(t)
    }

    /// Max-norm deviation of B^dagger B from the identity.
    pub fn orthonormality_error(&self) -> f64 {
        self.mat.unitarity_error()
    }

    /// Gram matrix B1^dagger B2 of two bases.
    pub fn gram(&self, other: &Basis) -> Result<CMatrix, crate::cmatrix::CMatrixError> {
        self.mat.dagger().mul(&other.mat)
    }

    /// Conjugation B^dagger U B, expressing U in this basis.
    pub fn conjugate(&self, u: &CMatrix) -> Result<CMatrix, crate::cmatrix::CMatrixError> {
        self.mat.dagger().mul(u)?.mul(&self.mat)
    }
}

/// True iff all off-diagonal entries of B^dagger U B have modulus <= tol.
///
/// A dimension mismatch trivially yields false.
pub fn is_diagonal_in(u: &CMatrix, basis: &Basis, tol: f64) -> bool {
    match basis.conjugate(u) {
        Ok(m) => m.max_off_diagonal() <= tol,
        Err(_) => false,
    }
}

fn to_nalgebra(m: &CMatrix) -> DMatrix<Complex<f64>> {
    let d = m.dim();
    DMatrix::from_fn(d, d, |r, c| m.get(r, c))
}

/// Sort key for a column: quantized eigenvalue angles across all ops, with
/// the position of the column's dominant entry as a tie-break.
fn column_key(col: &[Complex64], ops: &[CMatrix]) -> (Vec<i64>, usize) {
    let mut angles = Vec::with_capacity(ops.len());
    for op in ops {
        let image = op.apply(col).expect("validated dims");
        let lambda: Complex64 = col.iter().zip(&image).map(|(&v, &w)| v.conj() * w).sum();
        let angle = lambda.arg().rem_euclid(TAU);
        let key = ((angle / TAU * 1e9).round() as i64).rem_euclid(1_000_000_000);
        angles.push(key);
    }
    let max_norm = col.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let dominant = col
        .iter()
        .position(|v| v.norm() >= max_norm * (1.0 - 1e-6))
        .unwrap_or(0);
    (angles, dominant)
}

/// Fixes the global phase of a column: first structurally nonzero component
/// becomes real positive.
fn fix_phase(col: &mut [Complex64]) {
    let max_norm = col.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if max_norm == 0.0 {
        return;
    }
    let lead = col
        .iter()
        .find(|v| v.norm() >= max_norm * 1e-6)
        .copied()
        .expect("max-norm entry exists");
    let phase = lead / lead.norm();
    for v in col.iter_mut() {
        *v /= phase;
    }
}

type ColumnKey = (Vec<i64>, usize);

/// Orders the columns of a basis by eigenvalue angles under `ops` and fixes
/// per-column phases. Used both by the eigensolver path and by short-circuit
/// constructions that already know an eigenbasis.
pub(crate) fn canonicalize_columns(columns: &mut Vec<Vec<Complex64>>, ops: &[CMatrix]) {
    let mut keyed: Vec<(ColumnKey, Vec<Complex64>)> = columns
        .drain(..)
        .map(|col| (column_key(&col, ops), col))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    *columns = keyed
        .into_iter()
        .map(|(_, mut col)| {
            fix_phase(&mut col);
            col
        })
        .collect();
}

/// Computes an orthonormal basis in which every operator of a commuting
/// unitary family is diagonal.
///
/// Columns are normalized with their first nonzero component real positive
/// and sorted by the lexicographic order of their eigenvalue angle tuples.
/// With a fixed `rng_seed` the result is deterministic.
pub fn joint_eigenbasis(ops: &[CMatrix], cfg: &SpectralConfig) -> Result<Basis, SpectralError> {
    let first = ops.first().ok_or(SpectralError::EmptyInput)?;
    let d = first.dim();
    for (index, op) in ops.iter().enumerate() {
        if op.dim() != d {
            return Err(SpectralError::DimMismatch {
                index,
                expected: d,
                got: op.dim(),
            });
        }
        let deviation = op.unitarity_error();
        if deviation > cfg.tol {
            return Err(SpectralError::NotUnitary {
                index,
                deviation,
                tol: cfg.tol,
            });
        }
    }
    for i in 0..ops.len() {
        for j in (i + 1)..ops.len() {
            let ab = ops[i].mul(&ops[j]).expect("same dim");
            let ba = ops[j].mul(&ops[i]).expect("same dim");
            let deviation = ab.max_diff(&ba).expect("same dim");
            if deviation > cfg.tol {
                return Err(SpectralError::NotCommuting {
                    i,
                    j,
                    deviation,
                    tol: cfg.tol,
                });
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut worst_seen = f64::INFINITY;
    let attempts = cfg.max_retries.max(1);
    for _ in 0..attempts {
        // Random Hermitian combination: c (U+U^d)/2 + r (U-U^d)/(2i) per op.
        let mut h = CMatrix::zeros(d);
        for op in ops {
            let c: f64 = rng.gen_range(-1.0..1.0);
            let r: f64 = rng.gen_range(-1.0..1.0);
            let dag = op.dagger();
            let re_part = op
                .add(&dag)
                .expect("same dim")
                .scale(Complex64::new(c / 2.0, 0.0));
            let im_part = op
                .sub(&dag)
                .expect("same dim")
                .scale(Complex64::new(0.0, -r / 2.0));
            h = h
                .add(&re_part)
                .expect("same dim")
                .add(&im_part)
                .expect("same dim");
        }
        // Symmetrize to scrub rounding before handing to the eigensolver.
        let h = h
            .add(&h.dagger())
            .expect("same dim")
            .scale(Complex64::new(0.5, 0.0));

        let eig = to_nalgebra(&h).symmetric_eigen();
        let mut columns: Vec<Vec<Complex64>> = (0..d)
            .map(|k| eig.eigenvectors.column(k).iter().copied().collect())
            .collect();

        let basis_unitarity = CMatrix::from_columns(&columns)
            .expect("square")
            .unitarity_error();
        let mut worst = basis_unitarity;
        if basis_unitarity <= cfg.tol {
            let basis = Basis::new(CMatrix::from_columns(&columns).expect("square"));
            for op in ops {
                let off = basis.conjugate(op).expect("same dim").max_off_diagonal();
                worst = worst.max(off);
            }
            if worst <= cfg.tol {
                canonicalize_columns(&mut columns, ops);
                return Ok(Basis::new(CMatrix::from_columns(&columns).expect("square")));
            }
        }
        worst_seen = worst_seen.min(worst);
    }
    Err(SpectralError::DiagonalizationFailed {
        attempts,
        seed: cfg.rng_seed,
        worst: worst_seen,
    })
}
