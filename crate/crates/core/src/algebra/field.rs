//! Scalar fields.
//!
//! Matrices and binary forms are generic over a [`Field`] context. The
//! context owns whatever runtime data the arithmetic needs (the modulus for
//! [`PrimeField`]); elements are plain values. Any exact `num_traits` number
//! type becomes a field through [`NumField`], which is how the rational
//! oracle ([`RationalField`]) is obtained.

use std::fmt;
use std::marker::PhantomData;
use std::ops::Neg;

use num_rational::BigRational;
use num_traits::{FromPrimitive, Num};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default characteristic used throughout the toolkit.
pub const DEFAULT_PRIME: u32 = 32003;

/// Arithmetic context for a field whose elements are `Self::Elem`.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

/// The prime field `Z/pZ`, elements stored as canonical residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Validates that `p` is a prime larger than 5 and below 2^31.
    pub fn new(p: u32) -> Result<Self> {
        if p <= 5 {
            return Err(Error::InvalidPrime { p, reason: "must exceed 5" });
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidPrime { p, reason: "must be below 2^31" });
        }
        if !is_prime(p as u64) {
            return Err(Error::InvalidPrime { p, reason: "not prime" });
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Checks the characteristic constraints needed by curves of degree up to `d`:
    /// `p > 5d` and `p` does not divide `d`.
    pub fn check_degree(&self, d: usize) -> Result<()> {
        let p = self.p as u64;
        if p <= 5 * d as u64 || (d as u64) % p == 0 {
            return Err(Error::CharacteristicTooSmall { p: self.p, d });
        }
        Ok(())
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a as u64;
        let mut acc = 1u64;
        let p = self.p as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u32
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

impl Field for PrimeField {
    type Elem = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a + *b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if *a >= *b {
            *a - *b
        } else {
            *a + self.p - *b
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero in Z/{}", self.p);
        self.pow(*a, self.p as u64 - 2)
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

/// Field context for any exact `num_traits` number type.
pub struct NumField<T>(PhantomData<fn() -> T>);

impl<T> NumField<T> {
    pub const fn new() -> Self {
        NumField(PhantomData)
    }
}

impl<T> Default for NumField<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for NumField<T> {
    fn clone(&self) -> Self {
        Self::new()
    }
}

impl<T> Copy for NumField<T> {}

impl<T> fmt::Debug for NumField<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumField<{}>", std::any::type_name::<T>())
    }
}

impl<T> Field for NumField<T>
where
    T: Num + Neg<Output = T> + Clone + PartialEq + fmt::Debug + Send + Sync + FromPrimitive,
{
    type Elem = T;

    fn zero(&self) -> T {
        T::zero()
    }
    fn one(&self) -> T {
        T::one()
    }
    fn is_zero(&self, a: &T) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }
    fn sub(&self, a: &T, b: &T) -> T {
        a.clone() - b.clone()
    }
    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }
    fn neg(&self, a: &T) -> T {
        -a.clone()
    }
    fn inv(&self, a: &T) -> T {
        assert!(!a.is_zero(), "inverse of zero");
        T::one() / a.clone()
    }
    fn from_i64(&self, v: i64) -> T {
        T::from_i64(v).expect("integer embeds in an exact field")
    }
}

/// Exact rationals, used as a cross-check for modular computations.
pub type RationalField = NumField<BigRational>;

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|q| q * q <= n).all(|q| n % q != 0)
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000u64 {
            assert_eq!(is_prime(n), trial_division(n), "n = {n}");
        }
        assert!(is_prime(32003));
        assert!(is_prime(2_147_483_629));
    }

    #[test]
    fn prime_field_validation() {
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(5).is_err());
        assert!(PrimeField::new(32001).is_err());
        assert!(PrimeField::new(7).is_ok());
        let f = PrimeField::new(101).unwrap();
        assert!(f.check_degree(20).is_ok());
        assert!(f.check_degree(21).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let f = PrimeField::default();
        for a in [1u32, 2, 3, 17, 32002, 12345] {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.from_i64(-1), 32002);
    }

    #[test]
    fn rational_field_ops() {
        let q = RationalField::new();
        let two = q.from_i64(2);
        let half = q.inv(&two);
        assert_eq!(q.mul(&two, &half), q.one());
    }
}
