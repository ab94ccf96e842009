//! Scalar abstraction shared by the polynomial, linear-algebra and moment code.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, NumAssign, Signed, ToPrimitive, Zero};

/// Coefficient scalar: any commutative numeric type from `num-traits`.
///
/// Exact work uses [`BigRational`]; integer-only work (operator
/// application) can use [`BigInt`]; `f64` is accepted for quick numerics.
pub trait Scalar:
    Num + NumAssign + Clone + Neg<Output = Self> + FromPrimitive + Debug + Display + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Num + NumAssign + Clone + Neg<Output = Self> + FromPrimitive + Debug + Display + Send + Sync + 'static
{
}

/// Builds a scalar from a small integer.
pub fn int<S: Scalar>(v: i64) -> S {
    S::from_i64(v).expect("integer fits scalar")
}

/// Builds a scalar from an arbitrary-precision integer.
pub fn from_bigint<S: Scalar>(v: &BigInt) -> S {
    match v.to_i64() {
        Some(small) => int(small),
        None => {
            // split into 2^32 limbs; exact for rationals and integers
            let base: S = int(1i64 << 32);
            let mut acc = S::zero();
            let (sign, digits) = v.to_u32_digits();
            for d in digits.iter().rev() {
                acc = acc * base.clone() + int(*d as i64);
            }
            if sign == num_bigint::Sign::Minus {
                -acc
            } else {
                acc
            }
        }
    }
}

/// Converts an exact rational into another scalar type.
pub fn from_rational<S: Scalar>(v: &BigRational) -> S {
    from_bigint::<S>(v.numer()) / from_bigint::<S>(v.denom())
}

/// Parses `"p/q"`, `"p"` or a decimal-free integer into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let t = s.trim();
    if t.is_empty() {
        return None;
    }
    let r: BigRational = t.parse().ok()?;
    Some(r)
}

/// Canonical `"p/q"` string (`"p"` for integers).
pub fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `true` when `r` is an integer `<= 0`.
pub fn is_nonpositive_integer(r: &BigRational) -> bool {
    r.is_integer() && !r.is_positive()
}

/// Binomial coefficient `C(n, k)` extended by zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `n!`
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, i| acc * BigInt::from(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        let r = parse_rational("-3/6").unwrap();
        assert_eq!(fmt_rational(&r), "-1/2");
        assert_eq!(fmt_rational(&parse_rational("4").unwrap()), "4");
        assert!(parse_rational("").is_none());
        assert!(parse_rational("1/0x").is_none());
    }

    #[test]
    fn big_conversion() {
        let big = factorial(30);
        let r: BigRational = from_bigint(&big);
        assert_eq!(r.numer(), &big);
        let f: f64 = from_bigint(&BigInt::from(-7));
        assert_eq!(f, -7.0);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(-1, 0), BigInt::zero());
    }
}
