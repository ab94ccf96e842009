//! Exact Dunkl-operator computations for the A, BC and D families.
//!
//! The polynomial, linear-algebra and moment code is generic over a
//! [`Scalar`]; the aliases below fix the exact-rational instantiation that
//! the rest of the crate and the CLI use.

pub mod asymptotics;
pub mod bessel;
pub mod dunkl;
pub mod error;
pub mod interp;
pub mod linalg;
pub mod noncross;
pub mod partitions;
pub mod polyops;
pub mod scalar;

pub use error::{DunklError, Result};
pub use scalar::Scalar;

/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
/// Parameter polynomial with rational coefficients.
pub type Coef = polyops::CoefPoly<Rational>;
/// Polynomial in `x_1..x_N` with rational parameter-polynomial coefficients.
pub type Poly = polyops::MultiPoly<Rational>;
/// Integer-coefficient polynomial used by the operator oracle.
pub type IntPoly = polyops::MultiPoly<num_bigint::BigInt>;
