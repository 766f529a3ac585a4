//! Coefficient domains: the rationals or a prime field `F_p`, the latter
//! represented by integer rationals in `0..p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    Rationals,
    Prime(u64),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Smallest prime strictly greater than `p`.
pub fn next_prime(p: u64) -> u64 {
    let mut c = p + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::input(format!("{p} is not a prime")));
        }
        if p > u32::MAX as u64 {
            return Err(Error::input(format!("prime {p} is too large for point counting")));
        }
        Ok(Field::Prime(p))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(*p),
        }
    }

    /// Image of a rational in this field.
    pub fn reduce(&self, v: &Q) -> Result<Q> {
        match self {
            Field::Rationals => Ok(v.clone()),
            Field::Prime(p) => Ok(Q::from_integer(BigInt::from(reduce_mod(v, *p)?))),
        }
    }

    pub fn add(&self, a: &Q, b: &Q) -> Q {
        self.norm(a + b)
    }

    pub fn sub(&self, a: &Q, b: &Q) -> Q {
        self.norm(a - b)
    }

    pub fn mul(&self, a: &Q, b: &Q) -> Q {
        self.norm(a * b)
    }

    pub fn neg(&self, a: &Q) -> Q {
        self.norm(-a)
    }

    pub fn inv(&self, a: &Q) -> Option<Q> {
        if a.is_zero() {
            return None;
        }
        match self {
            Field::Rationals => Some(a.recip()),
            Field::Prime(p) => {
                let r = reduce_mod(a, *p).ok()?;
                inv_mod(r, *p).map(|v| Q::from_integer(BigInt::from(v)))
            }
        }
    }

    /// Normalizes an integer-valued result of ring operations on
    /// already-reduced elements.
    fn norm(&self, v: Q) -> Q {
        match self {
            Field::Rationals => v,
            Field::Prime(p) => {
                debug_assert!(v.is_integer());
                let m = BigInt::from(*p);
                Q::from_integer(v.to_integer().mod_floor(&m))
            }
        }
    }
}

/// `a/b mod p` for a rational with denominator prime to `p`.
pub fn reduce_mod(v: &Q, p: u64) -> Result<u64> {
    let m = BigInt::from(p);
    let num = v.numer().mod_floor(&m).to_u64().expect("residue fits");
    let den = v.denom().mod_floor(&m).to_u64().expect("residue fits");
    let inv = inv_mod(den, p)
        .ok_or_else(|| Error::input(format!("coefficient {v} has a denominator divisible by {p}")))?;
    Ok(((num as u128 * inv as u128) % p as u128) as u64)
}

/// Integer representative in `(-p/2, p/2]` of a residue.
pub fn balanced(v: u64, p: u64) -> i64 {
    if v > p / 2 {
        v as i64 - p as i64
    } else {
        v as i64
    }
}
