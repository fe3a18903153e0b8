//! Method dispatch and dimension handling shared by the CLI and tests.
//!
//! A request names (p, m) directly or a dimension d to be factored. The
//! `auto` method picks the prime formula for m = 1, the quadratic family
//! for m = 2 and the structure-constant family otherwise. Output is
//! self-verified: a set that fails [`check_mub_set`] is never returned.

use crate::finite_field::FpPoly;
use crate::mub_prime::{prime_mub, Method, MubError, MubSet};
use crate::mub_primepower::{primepower_mub, PrimePowerError};
use crate::spectral::SpectralConfig;
use crate::verify::{check_mub_set, VerifyReport};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GenerateError {
    #[error("{0}")]
    NotPrimePower(String),
    #[error("method {method} cannot build dimension p^m with m = {m}")]
    MethodMismatch { method: &'static str, m: usize },
    #[error("--poly has no effect for the prime formula; omit it")]
    PolynomialUnusedByPrime,
    #[error(transparent)]
    Prime(#[from] MubError),
    #[error(transparent)]
    PrimePower(#[from] PrimePowerError),
    #[error(
        "self-verification failed after construction (worst deviation {worst:.3e}); \
         this is a bug, the set was not emitted"
    )]
    SelfVerification { worst: f64 },
}

impl GenerateError {
    /// True when the failure came from the spectral stage (exit code 3 in
    /// the CLI; everything else is malformed input, exit code 2).
    pub fn is_spectral(&self) -> bool {
        matches!(
            self,
            GenerateError::PrimePower(PrimePowerError::Spectral(_))
        )
    }
}

/// How the caller asked for the construction method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Auto,
    Prime,
    P2,
    Wf,
}

impl MethodChoice {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "auto" => Some(MethodChoice::Auto),
            "prime" => Some(MethodChoice::Prime),
            "p2" => Some(MethodChoice::P2),
            "wf" => Some(MethodChoice::Wf),
            _ => None,
        }
    }
}

/// A fully resolved generation request.
#[derive(Debug, Clone)]
pub struct GenerateParams {
    pub p: u64,
    pub m: usize,
    pub method: MethodChoice,
    pub poly: Option<FpPoly>,
    pub seed: u64,
    pub tol: f64,
}

/// Factorization summary of a requested dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimInfo {
    pub dim: u64,
    /// Prime factorization rendered like `2·3` or `3²`.
    pub factorization: String,
    /// Set when the dimension is a prime power p^m.
    pub prime_power: Option<(u64, usize)>,
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

/// Factors d by trial division and reports prime-power structure.
pub fn factor_dim(dim: u64) -> DimInfo {
    let mut factors: Vec<(u64, usize)> = Vec::new();
    let mut n = dim;
    let mut k = 2u64;
    while n > 1 && k <= n / k {
        if n.is_multiple_of(k) {
            let mut e = 0;
            while n.is_multiple_of(k) {
                n /= k;
                e += 1;
            }
            factors.push((k, e));
        }
        k += 1;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    let factorization = factors
        .iter()
        .map(|&(p, e)| {
            if e == 1 {
                p.to_string()
            } else {
                format!("{p}{}", superscript(e))
            }
        })
        .collect::<Vec<_>>()
        .join("·");
    let prime_power = match factors.as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    };
    DimInfo {
        dim,
        factorization: if factorization.is_empty() {
            dim.to_string()
        } else {
            factorization
        },
        prime_power,
    }
}

impl DimInfo {
    /// The exit-2 message for a non-prime-power request.
    pub fn not_prime_power_message(&self) -> String {
        format!("{} = {} is not a prime power", self.dim, self.factorization)
    }
}

/// Resolves (p, m) from a dimension, or explains why it cannot be done.
pub fn resolve_dim(dim: u64) -> Result<(u64, usize), GenerateError> {
    let info = factor_dim(dim);
    info.prime_power
        .ok_or_else(|| GenerateError::NotPrimePower(info.not_prime_power_message()))
}

/// Builds a MUB set per the request and certifies it before returning.
pub fn generate(params: &GenerateParams) -> Result<(MubSet, VerifyReport), GenerateError> {
    let method = match (params.method, params.m) {
        (MethodChoice::Auto, 1) | (MethodChoice::Prime, 1) => Method::PrimeFormula,
        (MethodChoice::Prime, m) => {
            return Err(GenerateError::MethodMismatch { method: "prime", m })
        }
        (MethodChoice::Auto, 2) | (MethodChoice::P2, _) => Method::P2Quadratic,
        (MethodChoice::Auto, _) | (MethodChoice::Wf, _) => Method::WoottersFields,
    };

    let mut set = match method {
        Method::PrimeFormula => {
            if params.poly.is_some() {
                return Err(GenerateError::PolynomialUnusedByPrime);
            }
            let mut s = prime_mub(params.p)?;
            s.tol = params.tol;
            s
        }
        Method::P2Quadratic | Method::WoottersFields => {
            let cfg = SpectralConfig {
                tol: params.tol,
                max_retries: 8,
                rng_seed: params.seed,
            };
            primepower_mub(params.p, params.m, method, params.poly.as_ref(), &cfg)?
        }
    };
    set.tol = params.tol;

    let report = check_mub_set(&set, params.tol);
    if !report.passed {
        return Err(GenerateError::SelfVerification {
            worst: report.worst(),
        });
    }
    Ok((set, report))
}
