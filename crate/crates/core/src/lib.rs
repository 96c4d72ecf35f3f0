//! Exact computation with artinian algebras `R/Ann(M)` presented by Macaulay
//! inverse systems `M ⊂ k[y_1..y_r]`.
//!
//! The crate computes Hilbert functions and socle vectors by exact linear
//! algebra over the rationals or a prime field, tests the Weak Lefschetz
//! Property through ranks of contraction maps, and builds explicit level
//! algebras with unexpected behaviour: type-two algebras in three variables
//! without the WLP, non-unimodal monomial level algebras in any codimension,
//! and the Hilbert-series identity behind the matching sets of points in
//! `P^3`.
//!
//! ```
//! use apolarity::{constructions, FieldSpec, RingContext};
//!
//! let ctx = RingContext::new(3, FieldSpec::default()).unwrap();
//! let m = constructions::specimen_module(10, ctx).unwrap();
//! assert_eq!(m.h_vector().entries(), &[1, 3, 5, 7, 9, 11, 12, 11, 8, 5, 2]);
//! assert_eq!(m.is_level(), (true, 2));
//! ```

pub mod constructions;
pub mod field;
pub mod lefschetz;
pub mod matrix;
pub mod monomial;
pub mod polynomial;
pub mod seed;
pub mod sequence;
pub mod system;

pub use field::{FieldSpec, Scalar, DEFAULT_PRIME};
pub use lefschetz::{certify_wlp_failure, multiplication_rank, wlp_probe, Verdict, WlpReport};
pub use matrix::Matrix;
pub use monomial::{lex_compare, monomials_of_degree, Monomial};
pub use polynomial::{contract, Polynomial, RingContext};
pub use sequence::{
    is_o_sequence, is_unimodal, macaulay_bound, o_sequence_violation, HVector, MacaulayViolation, SocleVector,
};
pub use system::InverseSystem;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    Dimension { left: usize, right: usize },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("prime {modulus} is too small for forms of degree {degree}; need p > {degree}")]
    UnsafeField { modulus: u64, degree: u32 },
    #[error("{what} = {value} is out of range, expected {expected}")]
    Range { what: &'static str, value: i64, expected: String },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid inverse system: {0}")]
    InvalidSystem(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Argument(String),
    #[error("no usable random draw after {attempts} attempts (seed {seed})")]
    DegenerateRandomness { attempts: usize, seed: u64 },
    #[error("Hilbert series identity fails at e = {e}: {detail}")]
    IdentityViolation { e: u32, detail: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
