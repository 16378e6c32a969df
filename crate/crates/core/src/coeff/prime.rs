use std::fmt;

use super::CoeffError;

/// An element of the prime field `F_p` for an odd prime `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeScalar {
    value: u64,
    modulus: u64,
}

pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

/// Recovers `n/d` with `|n|, d <= sqrt(p/2)` from its residue, if such a
/// fraction exists.
pub fn rational_reconstruct(a: u64, p: u64) -> Option<(i64, i64)> {
    let bound = ((p / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    Some((n as i64, d as i64))
}

impl PrimeScalar {
    pub fn new(value: i64, modulus: u64) -> Result<Self, CoeffError> {
        if !is_odd_prime(modulus) {
            return Err(CoeffError::BadPrime(modulus));
        }
        Ok(PrimeScalar {
            value: value.rem_euclid(modulus as i64) as u64,
            modulus,
        })
    }

    pub(crate) fn from_residue(value: u64, modulus: u64) -> Self {
        PrimeScalar {
            value: value % modulus,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Self::from_residue(self.value + rhs.value, self.modulus)
    }

    pub fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let v = (self.value as u128 * rhs.value as u128) % self.modulus as u128;
        Self::from_residue(v as u64, self.modulus)
    }

    pub fn neg(self) -> Self {
        Self::from_residue(self.modulus - self.value, self.modulus)
    }

    pub fn inv(self) -> Result<Self, CoeffError> {
        inv_mod(self.value, self.modulus)
            .map(|v| Self::from_residue(v, self.modulus))
            .ok_or(CoeffError::DivisionByZero)
    }
}

impl fmt::Debug for PrimeScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for PrimeScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
