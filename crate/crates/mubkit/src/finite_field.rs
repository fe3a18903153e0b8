//! Exact arithmetic in F_p and F_{p^m}.
//!
//! Provides prime-field elements, polynomials over F_p with irreducibility
//! testing, extension-field elements modulo an irreducible polynomial, small
//! matrices over F_p with exact determinants, and the structure-constant
//! matrices of extension-field multiplication in the power basis.

use thiserror::Error;

/// Largest prime modulus accepted by [`FieldElement::new`].
///
/// Primality is established by trial division, which is only sensible at
/// desk scale; anything larger is rejected outright.
pub const MAX_PRIME: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported bound 2^20")]
    PrimeTooLarge(u64),
    #[error("operands have different moduli ({0} vs {1})")]
    ModulusMismatch(u64, u64),
    #[error("division by zero in F_{0}")]
    DivisionByZero(u64),
    #[error("irreducible search requires degree >= 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("polynomial {0} is reducible over F_{1}")]
    ReduciblePolynomial(String, u64),
    #[error("expected {expected} coefficients, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("the zero polynomial cannot be used as a modulus")]
    ZeroModulus,
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut k = 3u64;
    while k <= n / k {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

fn check_prime(p: u64) -> Result<(), FieldError> {
    if p > MAX_PRIME {
        return Err(FieldError::PrimeTooLarge(p));
    }
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    Ok(())
}

// Raw mod-p helpers for internal use where the modulus is known to match.
pub(crate) fn mod_add(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

pub(crate) fn mod_sub(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b % p) % p
}

pub(crate) fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

/// Multiplicative inverse by the extended Euclidean algorithm.
pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero");
    let (mut r0, mut r1) = (p as i64, (a % p) as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "gcd(a, p) must be 1 for prime p");
    s0.rem_euclid(p as i64) as u64
}

/// A residue in the prime field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    modulus: u64,
}

impl FieldElement {
    /// Builds `value mod p`, checking that `p` is prime by trial division.
    pub fn new(value: u64, p: u64) -> Result<Self, FieldError> {
        check_prime(p)?;
        Ok(Self {
            value: value % p,
            modulus: p,
        })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check_same(&self, other: &Self) -> Result<(), FieldError> {
        if self.modulus != other.modulus {
            return Err(FieldError::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        Ok(Self {
            value: mod_add(self.value, other.value, self.modulus),
            modulus: self.modulus,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        Ok(Self {
            value: mod_sub(self.value, other.value, self.modulus),
            modulus: self.modulus,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        Ok(Self {
            value: mod_mul(self.value, other.value, self.modulus),
            modulus: self.modulus,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        if other.value == 0 {
            return Err(FieldError::DivisionByZero(self.modulus));
        }
        Ok(Self {
            value: mod_mul(self.value, mod_inv(other.value, self.modulus), self.modulus),
            modulus: self.modulus,
        })
    }

    pub fn inverse(&self) -> Result<Self, FieldError> {
        if self.value == 0 {
            return Err(FieldError::DivisionByZero(self.modulus));
        }
        Ok(Self {
            value: mod_inv(self.value, self.modulus),
            modulus: self.modulus,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            value: mod_sub(0, self.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

/// A polynomial over F_p, coefficients stored lowest degree first.
///
/// The zero polynomial has an empty coefficient vector; otherwise the
/// leading coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    /// Builds a polynomial from coefficients lowest degree first; values are
    /// reduced mod `p` and trailing zeros stripped.
    pub fn new(p: u64, coeffs: &[u64]) -> Result<Self, FieldError> {
        check_prime(p)?;
        let mut c: Vec<u64> = coeffs.iter().map(|&v| v % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        Ok(Self { p, coeffs: c })
    }

    pub fn zero(p: u64) -> Result<Self, FieldError> {
        Self::new(p, &[])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Coefficients lowest degree first, trailing zeros stripped.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Coefficient of x^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let x = x % self.p;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = mod_add(mod_mul(acc, x, self.p), c, self.p);
        }
        acc
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        if self.p != other.p {
            return Err(FieldError::ModulusMismatch(self.p, other.p));
        }
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = mod_add(out[i + j], mod_mul(a, b, self.p), self.p);
            }
        }
        Self::new(self.p, &out)
    }

    /// Remainder of `self` divided by `divisor`.
    pub fn rem(&self, divisor: &Self) -> Result<Self, FieldError> {
        if self.p != divisor.p {
            return Err(FieldError::ModulusMismatch(self.p, divisor.p));
        }
        let Some(dd) = divisor.degree() else {
            return Err(FieldError::ZeroModulus);
        };
        let mut rem = self.coeffs.clone();
        let lead_inv = mod_inv(*divisor.coeffs.last().unwrap(), self.p);
        while rem.len() > dd {
            let k = rem.len() - 1;
            let factor = mod_mul(rem[k], lead_inv, self.p);
            if factor != 0 {
                for (j, &dc) in divisor.coeffs.iter().enumerate() {
                    let idx = k - dd + j;
                    rem[idx] = mod_sub(rem[idx], mod_mul(factor, dc, self.p), self.p);
                }
            }
            rem.pop();
        }
        Self::new(self.p, &rem)
    }

    /// Exhaustive irreducibility test.
    ///
    /// Degree 0 polynomials and the zero polynomial are not irreducible;
    /// degree 1 always is. For degree >= 2 this trial-divides by every monic
    /// polynomial of degree up to half the degree (for degrees 2 and 3 this
    /// reduces to a root check).
    pub fn is_irreducible(&self) -> bool {
        let Some(deg) = self.degree() else {
            return false;
        };
        if deg == 0 {
            return false;
        }
        if deg == 1 {
            return true;
        }
        // Degree-1 factors: root check.
        for x in 0..self.p {
            if self.eval(x) == 0 {
                return false;
            }
        }
        // Higher-degree monic factors up to deg/2.
        for k in 2..=deg / 2 {
            let count = self.p.pow(k as u32);
            for n in 0..count {
                let mut c = digits_lsf(n, self.p, k);
                c.push(1);
                let g = Self::new(self.p, &c).expect("prime already checked");
                if self.rem(&g).expect("same modulus").is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Human-readable rendering, highest degree first, e.g. `x^2 + x + 2`.
    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (k, c) {
                (0, _) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, _) => format!("{c}x"),
                (_, 1) => format!("x^{k}"),
                (_, _) => format!("{c}x^{k}"),
            };
            terms.push(t);
        }
        terms.join(" + ")
    }
}

/// Digits of `n` in base `p`, least significant first, padded to `len`.
fn digits_lsf(n: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    let mut n = n;
    for _ in 0..len {
        out.push(n % p);
        n /= p;
    }
    out
}

/// Finds the first monic irreducible polynomial of the given degree over F_p.
///
/// Candidates x^degree + a_{d-1} x^{d-1} + ... + a_0 are scanned in
/// increasing order of the integer encoding a_0 + a_1 p + a_2 p^2 + ...,
/// so the result is deterministic: x^2+x+1 over F_2, x^2+1 over F_3,
/// x^3+x+1 over F_2.
pub fn find_irreducible(p: u64, degree: usize) -> Result<FpPoly, FieldError> {
    check_prime(p)?;
    if degree < 2 {
        return Err(FieldError::DegreeTooSmall(degree));
    }
    let count = p.pow(degree as u32);
    for n in 0..count {
        let mut c = digits_lsf(n, p, degree);
        c.push(1);
        let f = FpPoly::new(p, &c)?;
        if f.is_irreducible() {
            return Ok(f);
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

/// An element of F_{p^m} as a coefficient vector in the power basis
/// 1, gamma, ..., gamma^{m-1} of a root gamma of the modulus polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtFieldElement {
    coeffs: Vec<u64>,
    modulus_poly: FpPoly,
}

impl ExtFieldElement {
    /// Builds an element from `m` coefficients; the modulus polynomial must
    /// be irreducible of degree `m`.
    pub fn new(coeffs: &[u64], modulus_poly: &FpPoly) -> Result<Self, FieldError> {
        let p = modulus_poly.modulus();
        let Some(m) = modulus_poly.degree() else {
            return Err(FieldError::ZeroModulus);
        };
        if !modulus_poly.is_irreducible() {
            return Err(FieldError::ReduciblePolynomial(modulus_poly.display(), p));
        }
        if coeffs.len() != m {
            return Err(FieldError::LengthMismatch {
                expected: m,
                got: coeffs.len(),
            });
        }
        Ok(Self {
            coeffs: coeffs.iter().map(|&c| c % p).collect(),
            modulus_poly: modulus_poly.clone(),
        })
    }

    pub fn zero(modulus_poly: &FpPoly) -> Result<Self, FieldError> {
        let m = modulus_poly.degree().ok_or(FieldError::ZeroModulus)?;
        Self::new(&vec![0; m], modulus_poly)
    }

    pub fn one(modulus_poly: &FpPoly) -> Result<Self, FieldError> {
        let m = modulus_poly.degree().ok_or(FieldError::ZeroModulus)?;
        let mut c = vec![0; m];
        c[0] = 1;
        Self::new(&c, modulus_poly)
    }

    /// The root gamma itself (requires m >= 2).
    pub fn gamma(modulus_poly: &FpPoly) -> Result<Self, FieldError> {
        let m = modulus_poly.degree().ok_or(FieldError::ZeroModulus)?;
        if m < 2 {
            return Err(FieldError::DegreeTooSmall(m));
        }
        let mut c = vec![0; m];
        c[1] = 1;
        Self::new(&c, modulus_poly)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn modulus_poly(&self) -> &FpPoly {
        &self.modulus_poly
    }

    fn check_same(&self, other: &Self) -> Result<(), FieldError> {
        if self.modulus_poly != other.modulus_poly {
            return Err(FieldError::ModulusMismatch(
                self.modulus_poly.modulus(),
                other.modulus_poly.modulus(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        let p = self.modulus_poly.modulus();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| mod_add(a, b, p))
            .collect();
        Ok(Self {
            coeffs,
            modulus_poly: self.modulus_poly.clone(),
        })
    }

    /// Field product, reduced modulo the modulus polynomial.
    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        let p = self.modulus_poly.modulus();
        let m = self.coeffs.len();
        let a = FpPoly::new(p, &self.coeffs)?;
        let b = FpPoly::new(p, &other.coeffs)?;
        let prod = a.mul(&b)?.rem(&self.modulus_poly)?;
        let mut coeffs = vec![0u64; m];
        coeffs[..prod.coeffs().len()].copy_from_slice(prod.coeffs());
        Ok(Self {
            coeffs,
            modulus_poly: self.modulus_poly.clone(),
        })
    }
}

/// A square matrix over F_p, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u64,
    dim: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn new(p: u64, dim: usize, data: &[u64]) -> Result<Self, FieldError> {
        check_prime(p)?;
        if data.len() != dim * dim {
            return Err(FieldError::LengthMismatch {
                expected: dim * dim,
                got: data.len(),
            });
        }
        Ok(Self {
            p,
            dim,
            data: data.iter().map(|&v| v % p).collect(),
        })
    }

    pub fn zeros(p: u64, dim: usize) -> Result<Self, FieldError> {
        Self::new(p, dim, &vec![0; dim * dim])
    }

    pub fn identity(p: u64, dim: usize) -> Result<Self, FieldError> {
        let mut m = Self::zeros(p, dim)?;
        for i in 0..dim {
            m.data[i * dim + i] = 1 % p;
        }
        Ok(m)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: u64) {
        self.data[row * self.dim + col] = value % self.p;
    }

    /// Entries row-major.
    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        if self.p != other.p {
            return Err(FieldError::ModulusMismatch(self.p, other.p));
        }
        if self.dim != other.dim {
            return Err(FieldError::LengthMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let data: Vec<u64> = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| mod_sub(a, b, self.p))
            .collect();
        Self::new(self.p, self.dim, &data)
    }

    /// Row vector times matrix: returns x·A over F_p.
    pub fn row_mul(&self, x: &[u64]) -> Result<Vec<u64>, FieldError> {
        if x.len() != self.dim {
            return Err(FieldError::LengthMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        let mut out = vec![0u64; self.dim];
        for (j, slot) in out.iter_mut().enumerate() {
            let mut acc = 0u64;
            for (i, &xi) in x.iter().enumerate() {
                acc = mod_add(acc, mod_mul(xi % self.p, self.get(i, j), self.p), self.p);
            }
            *slot = acc;
        }
        Ok(out)
    }

    /// Determinant in F_p by fraction-free (Bareiss) elimination over the
    /// integer lift, reduced mod p at the end. Exact, no floats.
    pub fn det(&self) -> u64 {
        let n = self.dim;
        if n == 0 {
            return 1 % self.p;
        }
        let mut a: Vec<i128> = self.data.iter().map(|&v| v as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k * n + k] == 0 {
                let Some(pivot) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                    return 0;
                };
                for j in 0..n {
                    a.swap(k * n + j, pivot * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
                    debug_assert_eq!(num % prev, 0, "Bareiss division must be exact");
                    a[i * n + j] = num / prev;
                }
                a[i * n + k] = 0;
            }
            prev = a[k * n + k];
        }
        let det = sign * a[n * n - 1];
        det.rem_euclid(self.p as i128) as u64
    }

    /// Linear combination `sum_l coeffs[l] * mats[l]` over F_p.
    pub fn linear_combination(coeffs: &[u64], mats: &[FpMatrix]) -> Result<FpMatrix, FieldError> {
        let first = mats.first().ok_or(FieldError::LengthMismatch {
            expected: 1,
            got: 0,
        })?;
        if coeffs.len() != mats.len() {
            return Err(FieldError::LengthMismatch {
                expected: mats.len(),
                got: coeffs.len(),
            });
        }
        let (p, dim) = (first.p, first.dim);
        let mut out = FpMatrix::zeros(p, dim)?;
        for (&c, mat) in coeffs.iter().zip(mats) {
            if mat.p != p {
                return Err(FieldError::ModulusMismatch(p, mat.p));
            }
            if mat.dim != dim {
                return Err(FieldError::LengthMismatch {
                    expected: dim,
                    got: mat.dim,
                });
            }
            for (slot, &v) in out.data.iter_mut().zip(&mat.data) {
                *slot = mod_add(*slot, mod_mul(c % p, v, p), p);
            }
        }
        Ok(out)
    }
}

/// Structure-constant matrices of multiplication in F_{p^m} with respect to
/// the power basis of a root of `modulus_poly`.
///
/// The (i, j) entry of the l-th returned matrix is the coefficient of
/// gamma^l in gamma^i * gamma^j reduced modulo the modulus polynomial.
/// Each matrix is symmetric, and every nonzero F_p-linear combination of
/// them is nonsingular.
pub fn wf_structure_matrices(
    p: u64,
    m: usize,
    modulus_poly: &FpPoly,
) -> Result<Vec<FpMatrix>, FieldError> {
    check_prime(p)?;
    if modulus_poly.modulus() != p {
        return Err(FieldError::ModulusMismatch(p, modulus_poly.modulus()));
    }
    if modulus_poly.degree() != Some(m) {
        return Err(FieldError::LengthMismatch {
            expected: m,
            got: modulus_poly.degree().map_or(0, |d| d),
        });
    }
    if !modulus_poly.is_irreducible() {
        return Err(FieldError::ReduciblePolynomial(modulus_poly.display(), p));
    }
    // Reduce gamma^e for e = 0 .. 2m-2 once.
    let mut powers: Vec<Vec<u64>> = Vec::with_capacity(2 * m - 1);
    for e in 0..=(2 * m).saturating_sub(2) {
        let mut c = vec![0u64; e + 1];
        c[e] = 1;
        let reduced = FpPoly::new(p, &c)?.rem(modulus_poly)?;
        let mut padded = vec![0u64; m];
        padded[..reduced.coeffs().len()].copy_from_slice(reduced.coeffs());
        powers.push(padded);
    }
    (0..m)
        .map(|l| {
            let mut data = vec![0u64; m * m];
            for i in 0..m {
                for j in 0..m {
                    data[i * m + j] = powers[i + j][l];
                }
            }
            FpMatrix::new(p, m, &data)
        })
        .collect()
}
