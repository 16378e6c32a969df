use std::fmt;

use super::{is_odd_prime, CoeffError, Field, PrimeScalar, RatFunc, Rational};

/// A coefficient value tagged with the field it lives in.
///
/// Arithmetic never promotes silently: combining the two variants is an
/// error, see [`CoeffError::MixedVariant`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(Rational),
    RationalFunction(RatFunc),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
}

impl Scalar {
    pub fn int(v: i64) -> Self {
        Scalar::Rational(Rational::integer(v))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::RationalFunction(f) => f.is_zero(),
        }
    }

    /// Embeds into `Q(q)`.
    pub fn promote(&self) -> RatFunc {
        match self {
            Scalar::Rational(r) => RatFunc::from_rational(r),
            Scalar::RationalFunction(f) => f.clone(),
        }
    }

    fn binary(
        &self,
        rhs: &Scalar,
        on_q: impl Fn(&Rational, &Rational) -> Rational,
        on_f: impl Fn(&RatFunc, &RatFunc) -> RatFunc,
    ) -> Result<Scalar, CoeffError> {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(on_q(a, b))),
            (Scalar::RationalFunction(a), Scalar::RationalFunction(b)) => {
                Ok(Scalar::RationalFunction(on_f(a, b)))
            }
            _ => Err(CoeffError::MixedVariant),
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar, CoeffError> {
        self.binary(rhs, Field::add, Field::add)
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar, CoeffError> {
        self.binary(rhs, Field::mul, Field::mul)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.neg()),
            Scalar::RationalFunction(f) => Scalar::RationalFunction(f.neg()),
        }
    }

    pub fn checked_inv(&self) -> Result<Scalar, CoeffError> {
        match self {
            Scalar::Rational(r) => r.inv().map(Scalar::Rational),
            Scalar::RationalFunction(f) => f.inv().map(Scalar::RationalFunction),
        }
        .ok_or(CoeffError::DivisionByZero)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::RationalFunction(g) => write!(f, "{g}"),
        }
    }
}

/// Applies one field operation; `b` is required for the binary ones.
pub fn scalar_arith(op: ArithOp, a: &Scalar, b: Option<&Scalar>) -> Result<Scalar, CoeffError> {
    match op {
        ArithOp::Add => a.checked_add(b.ok_or(CoeffError::MixedVariant)?),
        ArithOp::Mul => a.checked_mul(b.ok_or(CoeffError::MixedVariant)?),
        ArithOp::Neg => Ok(a.neg()),
        ArithOp::Inv => a.checked_inv(),
    }
}

/// Evaluates the parameter `q` at a rational value.
pub fn specialize(a: &Scalar, q_value: &Rational) -> Result<Scalar, CoeffError> {
    match a {
        Scalar::Rational(r) => Ok(Scalar::Rational(r.clone())),
        Scalar::RationalFunction(f) => f
            .eval(q_value)
            .map(Scalar::Rational)
            .ok_or_else(|| CoeffError::PoleAtValue(q_value.to_string())),
    }
}

pub fn reduce_mod_p(a: &Scalar, p: u64) -> Result<PrimeScalar, CoeffError> {
    if !is_odd_prime(p) {
        return Err(CoeffError::BadPrime(p));
    }
    let r = match a {
        Scalar::Rational(r) => r.clone(),
        Scalar::RationalFunction(f) => f.to_rational().ok_or(CoeffError::MixedVariant)?,
    };
    r.residue(p)
        .map(|v| PrimeScalar::from_residue(v, p))
        .ok_or(CoeffError::DenominatorVanishes(p))
}
