//! Exact coefficient fields.
//!
//! Everything downstream is generic over [`Field`]. Two exact fields are
//! provided: [`Rational`] and [`RatFunc`] (rational functions in a single
//! parameter `q`). [`PrimeScalar`] is a separate, runtime-modulus type used
//! only for witness probing, and [`Scalar`] is the tagged value type that
//! manifests and reports carry around.

mod prime;
mod ratfunc;
mod rational;
mod scalar;
mod upoly;

use std::fmt;
use std::hash::Hash;

pub(crate) use prime::inv_mod;
pub use prime::{is_odd_prime, rational_reconstruct, PrimeScalar};
pub use ratfunc::RatFunc;
pub use rational::Rational;
pub use scalar::{reduce_mod_p, scalar_arith, specialize, ArithOp, Scalar};
pub use upoly::DensePoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed coefficient variants (rational vs rational function); promote first")]
    MixedVariant,
    #[error("denominator vanishes at q = {0}")]
    PoleAtValue(String),
    #[error("{0} is not an odd prime")]
    BadPrime(u64),
    #[error("denominator vanishes modulo {0}")]
    DenominatorVanishes(u64),
}

/// A commutative field with exact, canonical elements.
///
/// Equality must be representation equality: two equal values have
/// identical internal form.
pub trait Field: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    fn from_rational(v: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` exactly when `self` is zero.
    fn inv(&self) -> Option<Self>;
    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
    /// Image in `F_p` with the parameter `q` sent to `q_image`; `None` when a
    /// denominator vanishes there.
    fn mod_p(&self, p: u64, q_image: u64) -> Option<u64>;
    /// The value as a rational number, when it is a constant.
    fn to_rational(&self) -> Option<Rational>;
    /// Splits off a sign for display: `(true, -self)` when the value reads as
    /// negative.
    fn sign_split(&self) -> (bool, Self);
    /// Whether the display form needs parentheses when used as a factor.
    fn is_compound(&self) -> bool;
    /// Short name of the field, as used in manifests.
    fn field_name() -> &'static str;
}
