use num_bigint::BigInt;
use num_complex::{Complex32, Complex64};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Domain, Field, Ring};

impl Ring for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl Domain for BigInt {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }
}

impl Ring for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl Domain for BigRational {
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }
}

impl Field for BigRational {}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Ring for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn magnitude(&self) -> Option<f64> {
                Some(self.abs() as f64)
            }
        }

        impl Domain for $t {
            fn div_exact(&self, rhs: &Self) -> Option<Self> {
                (*rhs != 0.0).then(|| self / rhs)
            }
        }

        impl Field for $t {}
    };
}

float_scalar!(f32);
float_scalar!(f64);

macro_rules! complex_scalar {
    ($t:ty, $f:ty) => {
        impl Ring for $t {
            fn from_i64(v: i64) -> Self {
                <$t>::new(v as $f, 0.0)
            }

            fn magnitude(&self) -> Option<f64> {
                Some(self.norm() as f64)
            }
        }

        impl Domain for $t {
            fn div_exact(&self, rhs: &Self) -> Option<Self> {
                (!rhs.is_zero()).then(|| self / rhs)
            }
        }

        impl Field for $t {}
    };
}

complex_scalar!(Complex32, f32);
complex_scalar!(Complex64, f64);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::is_negligible;

    #[test]
    fn bigint_exact_division() {
        let a = BigInt::from(12);
        assert_eq!(a.div_exact(&BigInt::from(4)), Some(BigInt::from(3)));
        assert_eq!(a.div_exact(&BigInt::from(5)), None);
        assert_eq!(a.div_exact(&BigInt::from(0)), None);
    }

    #[test]
    fn rationals_reduce_with_positive_denominator() {
        let r = BigRational::new(BigInt::from(6), BigInt::from(-4));
        assert_eq!(*r.numer(), BigInt::from(-3));
        assert_eq!(*r.denom(), BigInt::from(2));
    }

    #[test]
    fn rational_matches_integer_arithmetic_on_unit_denominators() {
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                let (ra, rb) = (BigRational::from_i64(a), BigRational::from_i64(b));
                let prod = ra.mul_ref(&rb);
                assert!(prod.is_integer());
                assert_eq!(prod.to_integer(), BigInt::from(a * b));
                assert_eq!(ra.add_ref(&rb).to_integer(), BigInt::from(a + b));
            }
        }
    }

    #[test]
    fn exactness_flags() {
        assert!(BigInt::is_exact());
        assert!(BigRational::is_exact());
        assert!(!f64::is_exact());
        assert!(!Complex64::is_exact());
    }

    #[test]
    fn negligible_respects_exactness() {
        assert!(is_negligible(&1e-15f64, 1e-12, 1.0));
        assert!(!is_negligible(&1e-3f64, 1e-12, 1.0));
        assert!(!is_negligible(&BigInt::from(1), 1e9, 1e9));
        assert!(is_negligible(&BigInt::from(0), 0.0, 0.0));
    }

    #[test]
    fn complex_equality_is_componentwise() {
        assert_eq!(Complex64::new(1.0, 2.0), Complex64::new(1.0, 2.0));
        assert_ne!(Complex64::new(1.0, 2.0), Complex64::new(1.0, -2.0));
    }
}
