//! Exact scalars.
//!
//! Every scheme quantity (zonal spherical function values, eigenvalues, dual
//! distributions) is an exact rational. Design membership is decided by
//! comparing against zero, so nothing in this crate ever rounds.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Reduced fraction of arbitrary-precision integers with positive denominator.
pub type ExactScalar = BigRational;

pub fn int(v: i64) -> ExactScalar {
    ExactScalar::from_integer(BigInt::from(v))
}

pub fn big(v: impl Into<BigInt>) -> ExactScalar {
    ExactScalar::from_integer(v.into())
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> ExactScalar {
    ExactScalar::new(num.into(), den.into())
}

pub fn from_uint(v: &BigUint) -> ExactScalar {
    ExactScalar::from_integer(BigInt::from(v.clone()))
}

/// Integer value if the scalar is integral.
pub fn as_integer(x: &ExactScalar) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

/// Lossy conversion for human-facing output only.
pub fn approx(x: &ExactScalar) -> f64 {
    let n = x.numer().to_f64().unwrap_or(f64::NAN);
    let d = x.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

/// `(-1/2)^k`.
pub fn neg_half_pow(k: usize) -> ExactScalar {
    let mut v = ExactScalar::one();
    let half = ratio(-1, 2);
    for _ in 0..k {
        v *= &half;
    }
    v
}

pub fn is_nonnegative(x: &ExactScalar) -> bool {
    x.is_zero() || x.is_positive()
}
