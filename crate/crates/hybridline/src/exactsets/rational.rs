//! Arbitrary-precision rationals in lowest terms.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// A rational number, always reduced, denominator positive.
///
/// Wraps [`BigRational`], which maintains the canonical form; this newtype
/// pins the textual format used across the crate (`p/q`, or `p` when the
/// denominator is 1) and keeps arithmetic by reference cheap to write.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn int(n: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    /// `2^-k`.
    pub fn dyadic(k: u64) -> Rat {
        Rat(BigRational::new(
            BigInt::one(),
            BigInt::from(BigUint::one() << k),
        ))
    }

    /// `2^e` for any integer exponent.
    pub fn pow2(e: i64) -> Rat {
        let shifted = BigInt::from(BigUint::one() << e.unsigned_abs());
        if e >= 0 {
            Rat(BigRational::from_integer(shifted))
        } else {
            Rat(BigRational::new(BigInt::one(), shifted))
        }
    }

    pub fn from_big(r: BigRational) -> Rat {
        Rat(r)
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

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rat(self.0.recip())
    }

    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil_int(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn min(self, other: Rat) -> Rat {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Rat) -> Rat {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Integer power with exact rational result.
    pub fn pow(&self, e: u64) -> Rat {
        let mut acc = Rat::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Compares `self` with `2^e` without materializing huge powers.
    pub fn cmp_pow2(&self, e: i64) -> Ordering {
        if !self.is_positive() {
            return Ordering::Less;
        }
        // self ? 2^e  ⟺  num ? den·2^e  ⟺  num·2^-e ? den (e < 0)
        if e >= 0 {
            self.numer().cmp(&(self.denom() << e as u64))
        } else {
            (self.numer() << (-e) as u64).cmp(self.denom())
        }
    }

    /// Largest `e` with `2^e ≤ self`. Requires `self > 0`.
    pub fn floor_log2(&self) -> i64 {
        assert!(self.is_positive(), "floor_log2 of non-positive rational");
        let mut e = self.numer().bits() as i64 - self.denom().bits() as i64;
        while self.cmp_pow2(e) == Ordering::Less {
            e -= 1;
        }
        while self.cmp_pow2(e + 1) != Ordering::Less {
            e += 1;
        }
        e
    }

    /// Smallest `n ≥ 0` with `2^-n < self`. Requires `self > 0`.
    pub fn dyadic_below(&self) -> u64 {
        let e = self.floor_log2(); // 2^e ≤ self
        let mut n = if e > 0 { 0 } else { (-e) as u64 };
        while self.cmp_pow2(-(n as i64)) != Ordering::Greater {
            n += 1;
        }
        n
    }

    /// Midpoint of two rationals.
    pub fn mid(a: &Rat, b: &Rat) -> Rat {
        Rat((a.0.clone() + b.0.clone()) / BigRational::from_integer(BigInt::from(2)))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl $trait for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Rat {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Rat, ExactError> {
        let s = s.trim();
        let err = |msg: &str| ExactError::Parse {
            at: 0,
            msg: format!("{msg}: {s:?}"),
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let n: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
        let d: BigInt = match den {
            Some(d) => d.parse().map_err(|_| err("bad denominator"))?,
            None => BigInt::one(),
        };
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        Ok(Rat(BigRational::new(n, d)))
    }
}

impl serde::Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Rat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_and_display() {
        assert_eq!(Rat::new(2, 4), Rat::new(1, 2));
        assert_eq!(Rat::new(1, -2), Rat::new(-1, 2));
        assert_eq!(Rat::new(-6, -4).to_string(), "3/2");
        assert_eq!(Rat::int(-7).to_string(), "-7");
        assert_eq!(Rat::new(0, 5), Rat::zero());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-3", "1/2", "-17/23", "355/113"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!("2/4".parse::<Rat>().unwrap().to_string(), "1/2");
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
    }

    #[test]
    fn dyadic_helpers() {
        assert_eq!(Rat::dyadic(0), Rat::one());
        assert_eq!(Rat::dyadic(3), Rat::new(1, 8));
        assert_eq!(Rat::pow2(5), Rat::int(32));
        assert_eq!(Rat::pow2(-5), Rat::new(1, 32));
        assert_eq!(Rat::new(5, 1).floor_log2(), 2);
        assert_eq!(Rat::new(1, 5).floor_log2(), -3);
        assert_eq!(Rat::new(1, 4).floor_log2(), -2);
        // smallest n with 2^-n < x
        assert_eq!(Rat::new(1, 4).dyadic_below(), 3);
        assert_eq!(Rat::new(3, 8).dyadic_below(), 2);
        assert_eq!(Rat::int(2).dyadic_below(), 0);
    }

    #[test]
    fn pow_exact() {
        assert_eq!(Rat::new(1, 2).pow(10), Rat::new(1, 1024));
        assert_eq!(Rat::new(2, 3).pow(3), Rat::new(8, 27));
        assert_eq!(Rat::new(-1, 2).pow(0), Rat::one());
    }
}
