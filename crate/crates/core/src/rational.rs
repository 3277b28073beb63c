//! Exact arbitrary-precision rational numbers.
//!
//! `Rational` is the only scalar the engine computes with: every bound,
//! every interval endpoint and every certificate entry is one of these.
//! The representation is always canonical (reduced, positive denominator),
//! so equality is structural and comparisons are cheap.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Rounding direction for [`Rational::round_dyadic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoundDir {
    Down,
    Up,
}

/// An exact rational number `p/q` with `q > 0` and `gcd(|p|, q) = 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den` in canonical form. Fails when `den = 0`.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, Error> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Exact division that reports division by zero instead of panicking.
    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational, Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational, Error> {
        Rational::one().checked_div(self)
    }

    /// `self^i` with the convention `q^0 = 1` for every `q`, including `0^0 = 1`
    /// (forced by the interval power case for exponent zero).
    pub fn pow_nat(&self, i: u32) -> Rational {
        if i == 0 {
            return Rational::one();
        }
        // numerator and denominator are already coprime, so the powers are too
        Rational(BigRational::new_raw(
            self.numer().pow(i),
            self.denom().pow(i),
        ))
    }

    /// Greatest integer `<= self`.
    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Nearest fraction with denominator `2^bits` on the requested side of
    /// `self`. Returns `self` unchanged when it is already representable.
    pub fn round_dyadic(&self, bits: u32, dir: RoundDir) -> Rational {
        let scale = BigInt::one() << bits;
        let scaled_num = self.numer() * &scale;
        let q = match dir {
            RoundDir::Down => scaled_num.div_floor(self.denom()),
            RoundDir::Up => scaled_num.div_ceil(self.denom()),
        };
        Rational(BigRational::new(q, scale))
    }

    pub fn min(self, other: Rational) -> Rational {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Rational) -> Rational {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Total order comparison; `Rational` also implements `Ord`.
    pub fn compare(&self, other: &Rational) -> Ordering {
        self.0.cmp(&other.0)
    }

    /// Approximate `f64` value, for display purposes only.
    pub fn to_f64_lossy(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.0).unwrap_or(f64::NAN)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses an integer literal or a `p/q` fraction.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let invalid = || Error::parse(0, format!("invalid rational literal `{s}`"));
        match s.split_once('/') {
            None => {
                let n = BigInt::from_str(s).map_err(|_| invalid())?;
                Ok(Rational::from_int(n))
            }
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| invalid())?;
                let q = BigInt::from_str(q.trim()).map_err(|_| invalid())?;
                Rational::new(p, q)
            }
        }
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand used pervasively in tests.
#[cfg(test)]
pub(crate) fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num, den).expect("nonzero denominator")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        rat(n, d)
    }

    #[test]
    fn make_reduces_to_canonical_form() {
        assert_eq!(r(4, 8), r(1, 2));
        assert_eq!(r(3, -6), r(-1, 2));
        assert_eq!(r(3, -6).denom(), r(1, 2).denom());
        assert!(r(3, -6).numer().is_negative());
        assert_eq!(r(0, 5), Rational::zero());
        assert_eq!(r(0, 5).denom(), &BigInt::from(1));
        assert_eq!(Rational::new(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn field_ops() {
        assert_eq!(r(1, 3) + r(1, 6), r(1, 2));
        assert_eq!(r(2, 3) * r(-3, 4), r(-1, 2));
        assert_eq!(r(1, 3).compare(&r(2, 7)), Ordering::Greater);
        assert_eq!(r(1, 2) - r(1, 2), Rational::zero());
        assert_eq!(r(-7, 2).abs(), r(7, 2));
        assert_eq!(r(1, 2).checked_div(&r(1, 4)).unwrap(), r(2, 1));
        assert_eq!(
            r(1, 2).checked_div(&Rational::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn pow_nat_examples() {
        assert_eq!(r(1, 2).pow_nat(3), r(1, 8));
        assert_eq!(Rational::zero().pow_nat(0), Rational::one());
        assert_eq!(r(-2, 3).pow_nat(2), r(4, 9));
        assert_eq!(r(-2, 3).pow_nat(3), r(-8, 27));
    }

    #[test]
    fn floor_examples() {
        assert_eq!(r(-3, 2).floor_int(), BigInt::from(-2));
        assert_eq!(r(7, 2).floor_int(), BigInt::from(3));
        assert_eq!(r(-5, 1).floor_int(), BigInt::from(-5));
    }

    #[test]
    fn round_dyadic_examples() {
        assert_eq!(r(1, 3).round_dyadic(2, RoundDir::Down), r(1, 4));
        assert_eq!(r(1, 3).round_dyadic(2, RoundDir::Up), r(1, 2));
        assert_eq!(r(3, 4).round_dyadic(2, RoundDir::Down), r(3, 4));
        assert_eq!(r(3, 4).round_dyadic(2, RoundDir::Up), r(3, 4));
        assert_eq!(r(-1, 3).round_dyadic(2, RoundDir::Down), r(-1, 2));
        assert_eq!(r(-1, 3).round_dyadic(2, RoundDir::Up), r(-1, 4));
    }

    #[test]
    fn parse_display_round_trip() {
        for s in ["0", "-7", "1/2", "-355/113"] {
            let q: Rational = s.parse().unwrap();
            assert_eq!(q.to_string(), s);
        }
        assert_eq!("4/8".parse::<Rational>().unwrap(), r(1, 2));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn canonical_after_ops(a in arb_rational(), b in arb_rational()) {
            for q in [&a + &b, &a - &b, &a * &b] {
                let renorm = Rational::new(q.numer().clone(), q.denom().clone()).unwrap();
                prop_assert_eq!(&renorm, &q);
                prop_assert!(q.denom().is_positive());
                prop_assert!(q.numer().gcd(q.denom()).is_one());
            }
        }

        #[test]
        fn field_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &(-&a), Rational::zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.recip().unwrap(), Rational::one());
            }
        }

        #[test]
        fn round_dyadic_brackets(a in arb_rational(), bits in 1u32..20) {
            let lo = a.round_dyadic(bits, RoundDir::Down);
            let hi = a.round_dyadic(bits, RoundDir::Up);
            let gap = Rational::new(1, BigInt::one() << bits).unwrap();
            prop_assert!(lo <= a && a <= hi);
            prop_assert!(&a - &lo < gap);
            prop_assert!(&hi - &a < gap);
        }
    }
}
