//! Terminal / canonical / log canonical classification of an isolated
//! hypersurface singularity at the origin, either from the Newton
//! polyhedron or from jet point counts over the origin.

use serde::{Deserialize, Serialize};

use super::count::{ContactQuery, DEFAULT_EVAL_BUDGET};
use super::field::{next_prime, Field};
use super::measure::{empirical_codim, CountRecord};
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::extended::ExtendedRational;
use crate::monomial::{nondegenerate_hypersurface_mld, CenterSpec, NewtonHypersurface};
use crate::rational::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SingularityClass {
    Terminal,
    CanonicalNotTerminal,
    LcNotCanonical,
    NotLc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassifyMethod {
    Newton,
    Jets,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub method: ClassifyMethod,
    /// Highest jet level inspected.
    pub jet_bound: usize,
    /// Smallest of the three primes used for counting.
    pub prime: u64,
    pub budget: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { method: ClassifyMethod::Newton, jet_bound: 3, prime: 3, budget: DEFAULT_EVAL_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JetLevelReport {
    pub m: usize,
    /// Dimension of the jets over the origin.
    pub fiber_dim: u64,
    pub dim_dm: u64,
    /// `dim_dm - fiber_dim`.
    pub sing_codim: u64,
    /// `fiber_dim ≤ (m+1)(d-1)`.
    pub pure: bool,
    pub counts: Vec<CountRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub class: SingularityClass,
    pub method: ClassifyMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mld: Option<ExtendedRational>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub jet_levels: Vec<JetLevelReport>,
    /// Levels whose counts did not fit a polynomial.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub skipped_levels: Vec<usize>,
}

fn class_from_mld(mld: &ExtendedRational) -> SingularityClass {
    let at_least = |v: i64| *mld >= ExtendedRational::Finite(Q::from_integer(v.into()));
    if at_least(2) {
        SingularityClass::Terminal
    } else if at_least(1) {
        SingularityClass::CanonicalNotTerminal
    } else if at_least(0) {
        SingularityClass::LcNotCanonical
    } else {
        SingularityClass::NotLc
    }
}

fn class_from_codim(codim: u64) -> SingularityClass {
    match codim {
        0 => SingularityClass::LcNotCanonical,
        1 => SingularityClass::CanonicalNotTerminal,
        _ => SingularityClass::Terminal,
    }
}

fn jet_reports(f: &Poly, opts: &ClassifyOptions) -> Result<(Vec<JetLevelReport>, Vec<usize>)> {
    let p1 = next_prime(opts.prime);
    let primes = [opts.prime, p1, next_prime(p1)];
    let d = f.nvars() as u64;
    let query = ContactQuery::at(CenterSpec::Origin);
    let mut levels = Vec::new();
    let mut skipped = Vec::new();
    for m in 1..=opts.jet_bound {
        let r = match empirical_codim(f, m, &primes, &query, opts.budget) {
            Ok(r) => r,
            Err(Error::NotPolynomialCount(_)) => {
                skipped.push(m);
                continue;
            }
            Err(e) => return Err(e),
        };
        let smooth_dim = (m as u64 + 1) * (d - 1);
        let dim_dm = smooth_dim.max(r.dim);
        levels.push(JetLevelReport {
            m,
            fiber_dim: r.dim,
            dim_dm,
            sing_codim: dim_dm - r.dim,
            pure: r.dim <= smooth_dim,
            counts: r.counts,
        });
    }
    Ok((levels, skipped))
}

fn class_from_levels(levels: &[JetLevelReport]) -> Result<SingularityClass> {
    if levels.iter().any(|l| !l.pure) {
        return Ok(SingularityClass::NotLc);
    }
    levels
        .iter()
        .map(|l| l.sing_codim)
        .min()
        .map(class_from_codim)
        .ok_or_else(|| Error::NotPolynomialCount("no jet level produced a polynomial count".into()))
}

/// Classifies `f = 0` where `h` records the support of `f`.
pub fn classify_polynomial(h: &NewtonHypersurface, f: &Poly, opts: &ClassifyOptions) -> Result<Classification> {
    h.validate()?;
    if f.nvars() != h.d {
        return Err(Error::input(format!("polynomial in {} variables, support in {}", f.nvars(), h.d)));
    }
    if f.field() != Field::Rationals {
        return Err(Error::input("classification expects a polynomial over the rationals"));
    }
    let mut support = h.support.clone();
    support.sort();
    support.dedup();
    if f.support() != support {
        return Err(Error::input("polynomial support differs from the recorded support"));
    }
    if !h.singular_locus_is_origin_asserted {
        return Err(Error::precondition("the singular locus must be asserted to be the origin"));
    }
    let newton = match opts.method {
        ClassifyMethod::Jets => None,
        _ => Some(nondegenerate_hypersurface_mld(h, &Q::from_integer(1.into()))?.value),
    };
    let (levels, skipped) = match opts.method {
        ClassifyMethod::Newton => (Vec::new(), Vec::new()),
        _ => jet_reports(f, opts)?,
    };
    let class = match (&newton, opts.method) {
        (Some(mld), ClassifyMethod::Newton) => class_from_mld(mld),
        (None, _) => class_from_levels(&levels)?,
        (Some(mld), _) => {
            let a = class_from_mld(mld);
            let b = class_from_levels(&levels)?;
            if a != b {
                return Err(Error::InvariantViolation(format!(
                    "Newton polyhedron gives {a:?} (mld {mld}), jet counts give {b:?}"
                )));
            }
            a
        }
    };
    Ok(Classification { class, method: opts.method, mld: newton, jet_levels: levels, skipped_levels: skipped })
}

/// Classifies the hypersurface with unit coefficients on the support of `h`.
pub fn classify_hypersurface(h: &NewtonHypersurface, opts: &ClassifyOptions) -> Result<Classification> {
    h.validate()?;
    let f = Poly::from_support(h.d, Field::Rationals, &h.support)?;
    classify_polynomial(h, &f, opts)
}
