//! Exact and numeric verification toolkit for determinantal identities
//! among contiguous minors of Toeplitz and accretive matrices.
//!
//! The algebra is generic over [`ring::Ring`]; the aliases below name the
//! concrete matrix types used by the verification layers.

pub mod cli;
pub mod detkit;
pub mod error;
pub mod identity;
pub mod matrix;
pub mod numaccretive;
pub mod report;
pub mod ring;
pub mod sample;
pub mod suite;

pub use error::{Error, Result};
pub use matrix::{Matrix, MinorIndex};
pub use ring::{Domain, Field, MultiPoly, Ring};

pub use num_bigint::BigInt;
pub use num_complex::Complex64;
pub use num_rational::BigRational;

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;
pub type PolyMatrix = Matrix<MultiPoly>;
pub type RealMatrix = Matrix<f64>;
pub type ComplexMatrix = Matrix<Complex64>;
