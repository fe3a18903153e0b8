//! Dense complex matrices sized for desk-scale spectral work.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CMatrixError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
}

/// A d x d complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds from entries in row-major order.
    pub fn from_rows(dim: usize, data: Vec<Complex64>) -> Result<Self, CMatrixError> {
        if data.len() != dim * dim {
            return Err(CMatrixError::DimMismatch(dim * dim, data.len()));
        }
        Ok(Self { dim, data })
    }

    /// Builds from column vectors.
    pub fn from_columns(columns: &[Vec<Complex64>]) -> Result<Self, CMatrixError> {
        let dim = columns.len();
        let mut m = Self::zeros(dim);
        for (c, col) in columns.iter().enumerate() {
            if col.len() != dim {
                return Err(CMatrixError::DimMismatch(dim, col.len()));
            }
            for (r, &v) in col.iter().enumerate() {
                m.data[r * dim + c] = v;
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn column(&self, col: usize) -> Vec<Complex64> {
        (0..self.dim).map(|r| self.get(r, col)).collect()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.data[c * self.dim + r] = self.data[r * self.dim + c].conj();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CMatrixError> {
        if self.dim != other.dim {
            return Err(CMatrixError::DimMismatch(self.dim, other.dim));
        }
        let d = self.dim;
        let mut out = Self::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let a = self.data[r * d + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..d {
                    out.data[r * d + c] += a * other.data[k * d + c];
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>, CMatrixError> {
        if v.len() != self.dim {
            return Err(CMatrixError::DimMismatch(self.dim, v.len()));
        }
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for (r, slot) in out.iter_mut().enumerate() {
            for (c, &vc) in v.iter().enumerate() {
                *slot += self.data[r * d + c] * vc;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&v| v * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, CMatrixError> {
        if self.dim != other.dim {
            return Err(CMatrixError::DimMismatch(self.dim, other.dim));
        }
        Ok(Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CMatrixError> {
        if self.dim != other.dim {
            return Err(CMatrixError::DimMismatch(self.dim, other.dim));
        }
        Ok(Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        })
    }

    /// Max entry modulus of self - other.
    pub fn max_diff(&self, other: &Self) -> Result<f64, CMatrixError> {
        if self.dim != other.dim {
            return Err(CMatrixError::DimMismatch(self.dim, other.dim));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Max-norm deviation of conj-transpose(self) * self from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let g = self.dagger().mul(self).expect("same dim");
        let mut worst: f64 = 0.0;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let expect = if r == c {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                worst = worst.max((g.get(r, c) - expect).norm());
            }
        }
        worst
    }

    /// Max modulus among off-diagonal entries.
    pub fn max_off_diagonal(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.dim {
            for c in 0..self.dim {
                if r != c {
                    worst = worst.max(self.get(r, c).norm());
                }
            }
        }
        worst
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    /// Kronecker product, self on the left.
    pub fn kron(&self, other: &Self) -> Self {
        let (da, db) = (self.dim, other.dim);
        let d = da * db;
        let mut out = Self::zeros(d);
        for ra in 0..da {
            for ca in 0..da {
                let a = self.data[ra * da + ca];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for rb in 0..db {
                    for cb in 0..db {
                        out.data[(ra * db + rb) * d + (ca * db + cb)] =
                            a * other.data[rb * db + cb];
                    }
                }
            }
        }
        out
    }
}

/// Trace inner product Tr(conj-transpose(a) * b).
///
/// Satisfies trace_inner(u, u) = dim for unitary u.
pub fn trace_inner(a: &CMatrix, b: &CMatrix) -> Result<Complex64, CMatrixError> {
    if a.dim != b.dim {
        return Err(CMatrixError::DimMismatch(a.dim, b.dim));
    }
    // Tr(A^dagger B) = sum_ij conj(A_ij) B_ij.
    Ok(a.data
        .iter()
        .zip(&b.data)
        .map(|(&x, &y)| x.conj() * y)
        .sum())
}
