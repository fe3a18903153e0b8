//! Construction and brute-force verification of complete sets of mutually
//! unbiased bases (MUBs) in prime-power dimensions.
//!
//! Two orthonormal bases of C^d are mutually unbiased when every cross inner
//! product has modulus 1/sqrt(d). For d = p^m this crate builds the full set
//! of d+1 such bases three ways:
//!
//! - `prime`: closed-form eigenvectors of the cyclic-shift operators
//!   Z_d, X_d, X_d Z_d, ..., X_d Z_d^{d-1} for prime d;
//! - `p2`: for d = p^2, commuting Pauli classes generated from a family of
//!   2x2 symmetric matrices built out of an irreducible quadratic;
//! - `wf`: for general d = p^m, classes generated from the structure
//!   constants of multiplication in F_{p^m}.
//!
//! Every construction is certified after the fact: orthonormality of each
//! basis, unbiasedness of each pair, the d+1 cardinality bound, and the
//! translation of a MUB set back into d^2 pairwise orthogonal unitaries.

pub mod cmatrix;
pub mod finite_field;
pub mod generate;
pub mod mub_prime;
pub mod mub_primepower;
pub mod mubfile;
pub mod pauli;
pub mod spectral;
pub mod verify;

pub use cmatrix::{trace_inner, CMatrix};
pub use finite_field::{
    find_irreducible, is_prime, wf_structure_matrices, ExtFieldElement, FieldElement, FpMatrix,
    FpPoly,
};
pub use generate::{factor_dim, generate, DimInfo, GenerateError, GenerateParams, MethodChoice};
pub use mub_prime::{
    prime_eigenvector, prime_mub, shift_property_check, shift_property_deviation, Method, MubSet,
};
pub use mub_primepower::{
    primepower_mub, symmetric_family_p2, symmetric_family_wf, validate_family, FamilyReport,
    SymmetricFamily,
};
pub use mubfile::{MubFileError, MubFileV1, SCHEMA_VERSION};
pub use pauli::{enumerate_class, index_to_digits, ClassSpec, PauliOp, SymplecticVector};
pub use spectral::{is_diagonal_in, joint_eigenbasis, Basis, SpectralConfig, SpectralError};
pub use verify::{
    check_mub_set, check_orthogonal_classes, check_orthonormal, check_unbiased_pair,
    mub_to_classes, CheckRecord, VerifyError, VerifyReport,
};
