//! Scalar rings.
//!
//! Everything above this module is written against [`Ring`], [`Domain`] and
//! [`Field`]. Exact scalars (`BigInt`, `BigRational`, [`MultiPoly`]) report no
//! magnitude and are compared structurally; floating scalars (`f32`, `f64`,
//! `Complex64`) expose a magnitude so that pivot and residual checks can be
//! made relative.

mod poly;
mod scalars;

pub use poly::{Monomial, MultiPoly};

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// Commutative ring with identity.
pub trait Ring:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    /// Absolute value for floating scalars, `None` for exact ones.
    fn magnitude(&self) -> Option<f64> {
        None
    }

    fn is_exact() -> bool {
        Self::one().magnitude().is_none()
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self.clone() + rhs.clone()
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.clone() - rhs.clone()
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.mul_ref(self);
        }
        acc
    }
}

/// Integral domain with a divisibility-checked quotient.
pub trait Domain: Ring {
    /// `Some(q)` with `q * rhs == self` when `rhs` divides `self`.
    /// Floating scalars divide whenever `rhs` is nonzero.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;
}

pub trait Field: Domain + Div<Output = Self> {}

/// Tolerance-aware zero test. Exact scalars must be exactly zero; floating
/// scalars are zero when `|x| <= tol * scale`.
pub fn is_negligible<R: Ring>(x: &R, tol: f64, scale: f64) -> bool {
    match x.magnitude() {
        Some(m) => m <= tol * scale,
        None => x.is_zero(),
    }
}
