use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Field;

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Option<Self> {
        let den = den.into();
        if den.is_zero() {
            return None;
        }
        Some(Rational(BigRational::new(num.into(), den)))
    }

    pub fn integer(v: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn pow(&self, e: i32) -> Option<Self> {
        if e < 0 && self.0.is_zero() {
            return None;
        }
        Some(Rational(num_traits::Pow::pow(&self.0, e)))
    }

    /// Residue modulo an odd prime, `None` if the denominator is divisible by it.
    pub fn residue(&self, p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let n = self.numer().mod_floor(&pb).to_u64()?;
        let d = self.denom().mod_floor(&pb).to_u64()?;
        if d == 0 {
            return None;
        }
        let dinv = super::prime::inv_mod(d, p)?;
        Some(((n as u128 * dinv as u128) % p as u128) as u64)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn from_int(v: i64) -> Self {
        Rational::integer(v)
    }
    fn from_rational(v: &Rational) -> Self {
        v.clone()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }
    fn mod_p(&self, p: u64, _q_image: u64) -> Option<u64> {
        self.residue(p)
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn sign_split(&self) -> (bool, Self) {
        if self.0.is_negative() {
            (true, self.neg())
        } else {
            (false, self.clone())
        }
    }
    fn is_compound(&self) -> bool {
        !self.0.is_integer()
    }
    fn field_name() -> &'static str {
        "Q"
    }
}
