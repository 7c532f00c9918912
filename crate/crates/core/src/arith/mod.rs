//! Exact scalar fields and dense matrices over them.
//!
//! Everything above this module is generic over [`Field`]. Two fields are
//! provided: [`PrimeField`] (the workhorse, default characteristic 32003) and
//! [`Rationals`], a slow exact fallback for small instances.

mod elim;
mod matrix;

pub use matrix::Matrix;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Characteristic of the base field: 0 for the rationals, otherwise an odd prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDesc {
    pub characteristic: u64,
}

impl FieldDesc {
    pub const DEFAULT_PRIME: u64 = 32003;

    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic != 0 {
            PrimeField::new(characteristic)?;
        }
        Ok(Self { characteristic })
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }
}

impl Default for FieldDesc {
    fn default() -> Self {
        Self {
            characteristic: Self::DEFAULT_PRIME,
        }
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.characteristic == 0 {
            write!(f, "QQ")
        } else {
            write!(f, "F_{}", self.characteristic)
        }
    }
}

/// A field with exact arithmetic.
///
/// Elements carry no reference to their field, so every operation goes
/// through the field value. Implementations are cheap to clone.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + fmt::Display + PartialEq + Send + Sync;

    fn desc(&self) -> FieldDesc;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Integer representative used for serialization. Prime fields return the
    /// canonical residue in `[0, p)`; rationals return `None` unless integral
    /// and within `i64`.
    fn to_i64(&self, a: &Self::Elem) -> Option<i64>;
    /// A sample for "generic" data. Uniform over a prime field; bounded
    /// integers over the rationals.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Row-reduce `m` in place and return the pivot columns.
    ///
    /// On return rows `0..rank` hold the pivot rows (pivot entry 1) and all
    /// other rows are zero. With `reduced` the pivot columns are also cleared
    /// above each pivot. Pivot selection is deterministic.
    fn echelonize(&self, m: &mut Matrix<Self>, reduced: bool) -> Vec<usize>
    where
        Self: Sized,
    {
        elim::echelon_generic(m, reduced)
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// The prime field F_p for an odd prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(3..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!(
                "characteristic {p} is not an odd prime below 2^31"
            )));
        }
        Ok(Self { p: p as u32 })
    }

    pub fn default_prime() -> Self {
        Self {
            p: FieldDesc::DEFAULT_PRIME as u32,
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn pow(&self, base: u32, mut exp: u64) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u64;
        let mut b = base as u64 % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            exp >>= 1;
        }
        acc as u32
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn desc(&self) -> FieldDesc {
        FieldDesc {
            characteristic: self.p as u64,
        }
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + self.p as u64 - *b as u64;
        (s % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (*a as u64 * *b as u64 % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if (*a).is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(*a, self.p as u64 - 2))
        }
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn to_i64(&self, a: &u32) -> Option<i64> {
        Some(*a as i64)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }
    fn echelonize(&self, m: &mut Matrix<Self>, reduced: bool) -> Vec<usize> {
        let (rows, cols) = (m.rows(), m.cols());
        elim::echelon_prime(self.p, rows, cols, m.data_mut(), reduced)
    }
}

/// The rational numbers, with arbitrary-precision entries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Rationals {
    /// Random elements are integers in `[-RANDOM_BOUND, RANDOM_BOUND]`.
    pub const RANDOM_BOUND: i64 = 1000;
}

impl Field for Rationals {
    type Elem = BigRational;

    fn desc(&self) -> FieldDesc {
        FieldDesc { characteristic: 0 }
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_i64(&self, a: &BigRational) -> Option<i64> {
        if a.is_integer() {
            a.to_integer().to_i64()
        } else {
            None
        }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let v = rng.gen_range(-Self::RANDOM_BOUND..=Self::RANDOM_BOUND);
        self.from_i64(v)
    }
}

/// Scale a rational vector by a positive integer so every entry is integral.
///
/// Kernel bases over the rationals are rescaled this way before they become
/// form coefficients, which keeps serialized presentations integral.
pub fn clear_denominators(v: &mut [BigRational]) {
    let mut lcm = BigInt::one();
    for x in v.iter() {
        let d = x.denom().abs();
        lcm = lcm_int(&lcm, &d);
    }
    if lcm.is_one() {
        return;
    }
    let scale = BigRational::from_integer(lcm);
    for x in v.iter_mut() {
        *x = &*x * &scale;
    }
}

fn lcm_int(a: &BigInt, b: &BigInt) -> BigInt {
    let g = gcd(a.clone(), b.clone());
    if g.is_zero() {
        return BigInt::zero();
    }
    (a / &g) * b
}

fn gcd(mut a: BigInt, mut b: BigInt) -> BigInt {
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a.abs()
}
