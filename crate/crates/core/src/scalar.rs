//! Scalar abstraction shared by polynomials, jets and matrices.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num};

/// Coefficient ring for jets and matrices.
///
/// The geometry is linear in the coefficients, so anything with ring
/// operations works for evaluation; exact decisions (rank, kernels) are
/// only made over [`Rational`].
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync {
    fn from_int(v: i64) -> Self;
}

impl Scalar for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Scalar for BigInt {
    fn from_int(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl Scalar for i64 {
    fn from_int(v: i64) -> Self {
        v
    }
}

impl Scalar for f64 {
    fn from_int(v: i64) -> Self {
        f64::from_i64(v).unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    fn from_int(v: i64) -> Self {
        v as f32
    }
}

/// Exact arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn q(v: i64) -> Rational {
    Rational::from_int(v)
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, d)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(p, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Formats as `"p/q"`, always with an explicit denominator.
pub fn format_rational(v: &Rational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn canonical_form() {
        let a = parse_rational("6/-4").unwrap();
        assert_eq!(format_rational(&a), "-3/2");
        let z = parse_rational("0/7").unwrap();
        assert!(z.is_zero());
        assert_eq!(format_rational(&z), "0/1");
        assert_eq!(parse_rational("5").unwrap(), q(5));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }
}
