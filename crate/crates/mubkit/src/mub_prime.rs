//! Closed-form MUBs for prime dimension d: the standard basis together with
//! the eigenbases of X_d Z_d^k for k = 0..d-1.

use crate::cmatrix::CMatrix;
use crate::finite_field::{is_prime, FpPoly};
use crate::pauli::SymplecticVector;
use crate::spectral::Basis;
use num_complex::Complex64;
use std::f64::consts::TAU;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MubError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: u64, dim: u64 },
    #[error("dimension {0} exceeds the matrix storage bound 2^14")]
    DimensionTooLarge(u64),
}

/// Which construction produced a MUB set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Eigenvector formula for prime d.
    PrimeFormula,
    /// Quadratic-polynomial family for d = p^2.
    P2Quadratic,
    /// Structure-constant family for d = p^m.
    WoottersFields,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::PrimeFormula => "prime",
            Method::P2Quadratic => "p2",
            Method::WoottersFields => "wf",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "prime" => Some(Method::PrimeFormula),
            "p2" => Some(Method::P2Quadratic),
            "wf" => Some(Method::WoottersFields),
            _ => None,
        }
    }
}

/// An ordered list of bases over C^d plus construction metadata.
///
/// A verified set holds between 1 and d+1 bases; [`crate::verify::check_mub_set`]
/// enforces the bound structurally.
#[derive(Debug, Clone, PartialEq)]
pub struct MubSet {
    pub dim: usize,
    pub bases: Vec<Basis>,
    pub method: Method,
    pub p: u64,
    pub m: usize,
    pub modulus_poly: Option<FpPoly>,
    pub seed: Option<u64>,
    pub tol: f64,
}

/// Triangular tail sum j + (j+1) + ... + (d-1).
fn tail_sum(j: u64, d: u64) -> u64 {
    // d(d-1)/2 - j(j-1)/2; both products are even.
    d * (d - 1) / 2 - j * j.saturating_sub(1) / 2
}

/// The t-th eigenvector of X_d Z_d^k for prime d.
///
/// For odd d the component at position j is
/// omega^{t(d-j)} * omega^{-k s_j} / sqrt(d) with s_j = j + ... + (d-1) and
/// omega = exp(2 pi i / d); global phases are kept exactly as the formula
/// gives them. X_d Z_d^k then has eigenvalue omega^t on the result.
///
/// For d = 2, k = 1 that formula breaks down (the wraparound phase
/// omega^{k s_0} is -1, not 1), so the circular basis
/// (|0> + i(-1)^t |1>)/sqrt(2) is returned instead; the eigenvalue of XZ on
/// it is -i (-1)^t.
pub fn prime_eigenvector(d: u64, k: u64, t: u64) -> Result<Vec<Complex64>, MubError> {
    if !is_prime(d) {
        return Err(MubError::NotPrime(d));
    }
    if k >= d || t >= d {
        return Err(MubError::IndexOutOfRange {
            index: k.max(t),
            dim: d,
        });
    }
    let norm = 1.0 / (d as f64).sqrt();
    if d == 2 && k == 1 {
        let sign = if t == 0 { 1.0 } else { -1.0 };
        return Ok(vec![
            Complex64::new(norm, 0.0),
            Complex64::new(0.0, sign * norm),
        ]);
    }
    let mut out = Vec::with_capacity(d as usize);
    for j in 0..d {
        let e = (t * (d - j) + (d - 1) * k % d * tail_sum(j, d)) % d;
        // -k s_j realized as +(d-1) k s_j mod d.
        out.push(Complex64::from_polar(norm, TAU * e as f64 / d as f64));
    }
    Ok(out)
}

/// The d+1 mutually unbiased bases for prime d: the standard basis
/// (eigenvectors of Z_d), then the eigenbasis of X_d Z_d^k for each k.
pub fn prime_mub(d: u64) -> Result<MubSet, MubError> {
    if !is_prime(d) {
        return Err(MubError::NotPrime(d));
    }
    if d > crate::pauli::MAX_DIM {
        return Err(MubError::DimensionTooLarge(d));
    }
    let dim = d as usize;
    let mut bases = Vec::with_capacity(dim + 1);
    bases.push(Basis::standard(dim));
    for k in 0..d {
        let columns: Vec<Vec<Complex64>> = (0..d)
            .map(|t| prime_eigenvector(d, k, t))
            .collect::<Result<_, _>>()?;
        bases.push(Basis::new(
            CMatrix::from_columns(&columns).expect("square by construction"),
        ));
    }
    Ok(MubSet {
        dim,
        bases,
        method: Method::PrimeFormula,
        p: d,
        m: 1,
        modulus_poly: None,
        seed: None,
        tol: 1e-10,
    })
}

fn xz_power_matrix(d: u64, l: u64) -> CMatrix {
    SymplecticVector::new(&[1], &[l], d)
        .expect("prime checked by caller")
        .to_matrix()
        .expect("d within storage bound")
}

/// Worst deviation in the cyclic-shift relation
/// X_d Z_d^l |psi_t^k> = omega^{t+k-l} |psi_{t+k-l}^k> over all t.
pub fn shift_property_deviation(d: u64, k: u64, l: u64) -> Result<f64, MubError> {
    if !is_prime(d) {
        return Err(MubError::NotPrime(d));
    }
    if k >= d || l >= d {
        return Err(MubError::IndexOutOfRange {
            index: k.max(l),
            dim: d,
        });
    }
    let op = xz_power_matrix(d, l);
    let mut worst: f64 = 0.0;
    for t in 0..d {
        let v = prime_eigenvector(d, k, t)?;
        let image = op.apply(&v).expect("dims match");
        let shifted_t = (t + k + d - l) % d;
        let target = prime_eigenvector(d, k, shifted_t)?;
        let phase = Complex64::from_polar(1.0, TAU * ((t + k + d - l) % d) as f64 / d as f64);
        let dev = image
            .iter()
            .zip(&target)
            .map(|(&got, &want)| (got - phase * want).norm())
            .fold(0.0, f64::max);
        worst = worst.max(dev);
    }
    Ok(worst)
}

/// True iff the cyclic-shift relation holds for all t within 1e-10.
pub fn shift_property_check(d: u64, k: u64, l: u64) -> Result<bool, MubError> {
    Ok(shift_property_deviation(d, k, l)? <= 1e-10)
}
