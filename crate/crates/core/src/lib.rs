//! Inverse eigenvalue problem for symmetric anti-bidiagonal matrices.
//!
//! A real tuple `λ_1 > -λ_2 > λ_3 > ... > (-1)^(n-1) λ_n > 0` is the spectrum
//! of exactly one symmetric anti-bidiagonal matrix with positive entries
//! `a_1, ..., a_n`, and of exactly one tridiagonal matrix with diagonal
//! `(a_1, 0, ..., 0)` and codiagonal `(a_2, ..., a_n)`. [`inverse::solve`]
//! constructs those coefficients; the remaining modules provide the forward
//! maps and independent checks.
//!
//! Everything is generic over [`Scalar`], implemented for `f64` and for exact
//! [`Rational`] numbers.

pub mod error;
pub mod inverse;
pub mod matrix;
pub mod poly;
pub mod recurrence;
pub mod sampling;
pub mod scalar;
pub mod spectral;

pub use error::{Error, ErrorClass, Result};
pub use inverse::{
    check_sigma_inequality, jacobi_sqrt, solve, solve_roundtrip, validate_spectrum,
    CertificateMode, PositiveTuple, ReconstructionTrace, SolveOptions, Spectrum,
};
pub use matrix::{
    build_antibidiagonal, build_antidiagonal_unit, build_jacobi_special, sign_normalize,
    CoefficientVector, IndexSet, Structure, StructuredMatrix,
};
pub use poly::{elementary_symmetric, MonicPoly, Parity, RootList};
pub use recurrence::{forward_p, forward_q, CharPolySequence, SquaredCoefficients};
pub use scalar::{Backend, Rational, Scalar, TolerancePolicy};
pub use spectral::{
    cauchy_binet_check, check_class_plus, classify_sign_regular, eigensolve_tridiagonal,
    interlaces, signature_sequence, ReportMode, SignRegularityReport, SignatureSequence,
};
