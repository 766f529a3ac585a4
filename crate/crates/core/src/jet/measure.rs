//! Dimensions of jet-level sets from point counts at several primes.
//!
//! The count at the largest prime `P` is expanded in balanced base `P`,
//! which recovers a count polynomial with coefficients in `(-P/2, P/2]`.
//! The candidate is accepted only if it reproduces the counts at every
//! other prime; its degree is the dimension.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::count::{count_jet_points, ContactQuery};
use super::field::{is_prime, Field};
use super::poly::Poly;
use super::system::{jet_equations, JetSystem};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub prime: u64,
    pub level: usize,
    pub count: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmpiricalDim {
    pub dim: u64,
    /// `(m+1)·d − dim`.
    pub codim: u64,
    /// Coefficients of the count polynomial, constant term first.
    pub count_polynomial: Vec<i64>,
    pub counts: Vec<CountRecord>,
}

fn balanced_digits(n: &BigInt, p: u64) -> Vec<i64> {
    let base = BigInt::from(p);
    let half = BigInt::from(p / 2);
    let mut digits = Vec::new();
    let mut r = n.clone();
    while !r.is_zero() {
        let mut dgt = &r % &base;
        if dgt.is_negative() {
            dgt += &base;
        }
        if dgt > half {
            dgt -= &base;
        }
        r = (&r - &dgt) / &base;
        digits.push(i64::try_from(dgt).expect("digit below p"));
    }
    digits
}

fn eval_poly(coeffs: &[i64], x: u64) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, &c| acc * BigInt::from(x) + BigInt::from(c))
}

/// Polynomial through the `(prime, count)` pairs, recovered as above.
pub(crate) fn interpolate_counts(counts: &[(u64, u128)], max_degree: usize) -> Result<Vec<i64>> {
    let &(pmax, nmax) = counts
        .iter()
        .max_by_key(|(p, _)| *p)
        .ok_or_else(|| Error::input("no counts to interpolate"))?;
    let coeffs = balanced_digits(&BigInt::from(nmax), pmax);
    if coeffs.len() > max_degree + 1 {
        return Err(Error::NotPolynomialCount(format!(
            "count {nmax} at p={pmax} needs degree {} > {max_degree}",
            coeffs.len() - 1
        )));
    }
    if coeffs.last().is_some_and(|&c| c < 0) {
        return Err(Error::NotPolynomialCount(format!(
            "count {nmax} at p={pmax} expands with a negative leading coefficient"
        )));
    }
    for &(p, n) in counts {
        if eval_poly(&coeffs, p) != BigInt::from(n) {
            return Err(Error::NotPolynomialCount(format!(
                "candidate {coeffs:?} from p={pmax} predicts {} at p={p}, counted {n}",
                eval_poly(&coeffs, p)
            )));
        }
    }
    Ok(coeffs)
}

fn measure(
    sys: &JetSystem,
    primes: &[u64],
    query: &ContactQuery,
    budget: u64,
) -> Result<EmpiricalDim> {
    let mut ps = primes.to_vec();
    ps.sort_unstable();
    ps.dedup();
    if ps.len() < 3 {
        return Err(Error::input("dimension measurement needs at least three distinct primes"));
    }
    if let Some(p) = ps.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::input(format!("{p} is not a prime")));
    }
    let (d, m) = (sys.d(), sys.m());
    let mut counts = Vec::with_capacity(ps.len());
    for &p in &ps {
        let count = count_jet_points(sys, p, query, budget)?;
        counts.push(CountRecord { prime: p, level: m, count });
    }
    let ambient = d * (m + 1);
    let pairs: Vec<(u64, u128)> = counts.iter().map(|c| (c.prime, c.count)).collect();
    let coeffs = interpolate_counts(&pairs, ambient)?;
    let dim = coeffs.len().saturating_sub(1) as u64;
    Ok(EmpiricalDim {
        dim,
        codim: ambient as u64 - dim,
        count_polynomial: coeffs,
        counts,
    })
}

/// Dimension and codimension (in the level-`m` ambient jet space) of the
/// query locus inside the jet scheme of `f = 0`.
pub fn empirical_codim(
    f: &Poly,
    m: usize,
    primes: &[u64],
    query: &ContactQuery,
    budget: u64,
) -> Result<EmpiricalDim> {
    if f.field() != Field::Rationals {
        return Err(Error::input("measure a polynomial over the rationals; it is reduced per prime"));
    }
    measure(&jet_equations(f, m)?, primes, query, budget)
}

/// Same measurement on the jets of affine `d`-space.
pub fn empirical_codim_ambient(
    d: usize,
    m: usize,
    primes: &[u64],
    query: &ContactQuery,
    budget: u64,
) -> Result<EmpiricalDim> {
    measure(&JetSystem::ambient(d, m, Field::Rationals)?, primes, query, budget)
}
