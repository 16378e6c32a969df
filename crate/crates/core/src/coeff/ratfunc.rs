use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{DensePoly, Field, Rational};

/// A rational function in the single parameter `q` over the rationals.
///
/// Canonical form: numerator and denominator have integer coefficients, are
/// coprime in `Q[q]`, share no common integer content, and the denominator
/// has positive leading coefficient. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: DensePoly<Rational>,
    den: DensePoly<Rational>,
}

impl RatFunc {
    /// `None` when the denominator is zero.
    pub fn new(num: DensePoly<Rational>, den: DensePoly<Rational>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::canonical(num, den))
    }

    pub fn from_poly(p: DensePoly<Rational>) -> Self {
        Self::canonical(p, DensePoly::constant(Rational::one()))
    }

    /// The parameter `q` itself.
    pub fn q() -> Self {
        Self::from_poly(DensePoly::monomial(Rational::one(), 1))
    }

    pub fn numer(&self) -> &DensePoly<Rational> {
        &self.num
    }

    pub fn denom(&self) -> &DensePoly<Rational> {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn pow(&self, e: i32) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }

    /// Evaluates at `q = value`; `None` at a pole.
    pub fn eval(&self, value: &Rational) -> Option<Rational> {
        let d = self.den.eval(value);
        if d.is_zero() {
            return None;
        }
        self.num.eval(value).div(&d)
    }

    fn canonical(num: DensePoly<Rational>, den: DensePoly<Rational>) -> Self {
        if num.is_zero() {
            return RatFunc {
                num: DensePoly::zero(),
                den: DensePoly::constant(Rational::one()),
            };
        }
        let (mut num, mut den) = (num, den);
        if !den.is_constant() && !num.is_constant() {
            let g = num.gcd(&den);
            if !g.is_constant() {
                num = num.div_rem(&g).expect("gcd nonzero").0;
                den = den.div_rem(&g).expect("gcd nonzero").0;
            }
        }
        // clear denominators, then strip the joint integer content
        let mut l = BigInt::one();
        for c in num.coeffs().iter().chain(den.coeffs()) {
            l = l.lcm(c.denom());
        }
        let lr = Rational::integer(l);
        num = num.scale(&lr);
        den = den.scale(&lr);
        let mut g = BigInt::zero();
        for c in num.coeffs().iter().chain(den.coeffs()) {
            g = g.gcd(c.numer());
        }
        let mut s = Rational::integer(g).inv().expect("nonzero content");
        if den.leading().is_some_and(|c| c.is_negative()) {
            s = s.neg();
        }
        RatFunc {
            num: num.scale(&s),
            den: den.scale(&s),
        }
    }
}

fn poly_mod_p(p: &DensePoly<Rational>, modulus: u64, x: u64) -> Option<u64> {
    let mut acc: u128 = 0;
    for c in p.coeffs().iter().rev() {
        let r = c.residue(modulus)? as u128;
        acc = (acc * x as u128 + r) % modulus as u128;
    }
    Some(acc as u64)
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc {
            num: DensePoly::zero(),
            den: DensePoly::constant(Rational::one()),
        }
    }
    fn one() -> Self {
        Self::from_int(1)
    }
    fn from_int(v: i64) -> Self {
        Self::from_rational(&Rational::integer(v))
    }
    fn from_rational(v: &Rational) -> Self {
        Self::canonical(
            DensePoly::constant(v.clone()),
            DensePoly::constant(Rational::one()),
        )
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::canonical(self.num.add(&rhs.num), self.den.clone());
        }
        let n = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Self::canonical(n, self.den.mul(&rhs.den))
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::canonical(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::canonical(self.den.clone(), self.num.clone()))
        }
    }
    fn mod_p(&self, p: u64, q_image: u64) -> Option<u64> {
        let n = poly_mod_p(&self.num, p, q_image)?;
        let d = poly_mod_p(&self.den, p, q_image)?;
        let dinv = super::prime::inv_mod(d, p)?;
        Some(((n as u128 * dinv as u128) % p as u128) as u64)
    }
    fn to_rational(&self) -> Option<Rational> {
        if self.is_constant() {
            self.eval(&Rational::zero())
        } else {
            None
        }
    }
    fn sign_split(&self) -> (bool, Self) {
        if self.num.leading().is_some_and(|c| c.is_negative()) {
            (true, self.neg())
        } else {
            (false, self.clone())
        }
    }
    fn is_compound(&self) -> bool {
        self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1
            || !self.den.is_one_poly()
            || self.num.leading().is_some_and(|c| !c.is_integer())
    }
    fn field_name() -> &'static str {
        "Q(q)"
    }
}

impl DensePoly<Rational> {
    fn is_one_poly(&self) -> bool {
        self.coeffs().len() == 1 && self.coeffs()[0].is_one()
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num.display_with("q");
        if self.den.is_one_poly() {
            return f.write_str(&n);
        }
        let d = self.den.display_with("q");
        let n_simple =
            self.num.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1 && !n.starts_with('-');
        let d_simple = self.den.is_constant()
            || (self.den.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 && !d.contains('*'));
        let n = if n_simple { n } else { format!("({n})") };
        let d = if d_simple { d } else { format!("({d})") };
        write!(f, "{n}/{d}")
    }
}
