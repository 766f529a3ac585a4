//! Numerical data of a log resolution and the formulas evaluated on it.
//!
//! Divisors are indexed `0..s`. For every divisor `D_j` the data records
//! the coefficient `k_j` of the relative canonical divisor, the orders
//! `y[i][j]` of the pulled-back subschemes `Y_i`, the order `z[j]` of the
//! pulled-back Jacobian-type subscheme `Z`, and where `π(D_j)` sits
//! relative to the closed set `W`.

mod bound_check;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub use bound_check::{mld_bound_check, BoundCheck};

use crate::error::{Error, Result};
use crate::extended::ExtendedRational;
use crate::lattice_opt::{minimize_lattice, LatticeProgram, Row, SupportFamily};
use crate::rational::{serde_q_vec, Q};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionData {
    pub ambient_dim: usize,
    /// Gorenstein index: `r·K_X` is Cartier.
    pub r: u64,
    pub s: usize,
    #[serde(with = "serde_q_vec")]
    pub k: Vec<Q>,
    /// One row per subscheme `Y_i`, each of length `s`.
    #[serde(default)]
    pub y: Vec<Vec<u64>>,
    pub z: Vec<u64>,
    pub in_w: Vec<bool>,
    pub eq_w: Vec<bool>,
    /// Faces of the intersection nerve; the downward closure is taken.
    pub nerve: Vec<Vec<usize>>,
    pub meets_w: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairCoefficients {
    #[serde(with = "serde_q_vec")]
    pub q: Vec<Q>,
    pub w_is_proper: bool,
}

impl PairCoefficients {
    pub fn new(q: Vec<Q>, w_is_proper: bool) -> Self {
        PairCoefficients { q, w_is_proper }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MldWitness {
    Divisor(usize),
    Weights(Vec<u64>),
    /// Value fixed by definition (the generic point of `X` itself).
    Convention,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MldResult {
    pub value: ExtendedRational,
    pub witness: Option<MldWitness>,
}

impl ResolutionData {
    /// Single-divisor model: `k_1 = k`, no auxiliary subschemes, `z = 0`,
    /// the divisor lies over `W` with center equal to `W`.
    pub fn single_divisor(ambient_dim: usize, k: Q) -> Self {
        ResolutionData {
            ambient_dim,
            r: 1,
            s: 1,
            k: vec![k],
            y: Vec::new(),
            z: vec![0],
            in_w: vec![true],
            eq_w: vec![true],
            nerve: vec![vec![0]],
            meets_w: vec![true],
        }
    }

    pub fn k_ideals(&self) -> usize {
        self.y.len()
    }

    pub fn validate(&self) -> Result<()> {
        let s = self.s;
        if self.ambient_dim == 0 {
            return Err(Error::input("ambient dimension must be positive"));
        }
        if self.r == 0 {
            return Err(Error::input("Gorenstein index r must be positive"));
        }
        if s == 0 || s > 24 {
            return Err(Error::input(format!("number of divisors must be in 1..=24, got {s}")));
        }
        let lens = [
            ("k", self.k.len()),
            ("z", self.z.len()),
            ("in_w", self.in_w.len()),
            ("eq_w", self.eq_w.len()),
            ("meets_w", self.meets_w.len()),
        ];
        for (name, len) in lens {
            if len != s {
                return Err(Error::input(format!("{name} has length {len}, expected {s}")));
            }
        }
        for (i, row) in self.y.iter().enumerate() {
            if row.len() != s {
                return Err(Error::input(format!("y row {i} has length {}, expected {s}", row.len())));
            }
        }
        let r = Q::from_integer(BigInt::from(self.r));
        for (j, kj) in self.k.iter().enumerate() {
            if !(kj * &r).is_integer() {
                return Err(Error::input(format!("r·k_{j} = {} is not integral", kj * &r)));
            }
        }
        for j in 0..s {
            if self.eq_w[j] && !self.in_w[j] {
                return Err(Error::input(format!("divisor {j}: center equals W but is not inside W")));
            }
            if self.in_w[j] && !self.meets_w[j] {
                return Err(Error::input(format!("divisor {j}: center inside W but marked as missing W")));
            }
        }
        let fam = self.nerve_family()?;
        for j in 0..s {
            if !fam.contains(&[j]) {
                return Err(Error::input(format!("nerve lacks the singleton {{{j}}}")));
            }
        }
        Ok(())
    }

    pub fn nerve_family(&self) -> Result<SupportFamily> {
        SupportFamily::from_faces(self.s, &self.nerve)
    }

    fn check_q(&self, q: &PairCoefficients) -> Result<()> {
        if q.q.len() != self.k_ideals() {
            return Err(Error::input(format!(
                "{} coefficients supplied for {} subschemes",
                q.q.len(),
                self.k_ideals()
            )));
        }
        Ok(())
    }

    fn check_meets_w(&self) -> Result<()> {
        if let Some(j) = self.meets_w.iter().position(|&b| !b) {
            return Err(Error::input(format!(
                "divisor {j} is marked as not meeting W; restrict the model to a neighbourhood of W"
            )));
        }
        Ok(())
    }

    fn hit_set(&self, w_proper: bool) -> Vec<usize> {
        if w_proper {
            (0..self.s).filter(|&j| self.in_w[j]).collect()
        } else {
            Vec::new()
        }
    }
}

/// `a_j = k_j + 1 − Σ_i q_i·y_{i,j}`.
pub fn log_discrepancy_coeffs(data: &ResolutionData, q: &PairCoefficients) -> Result<Vec<Q>> {
    data.validate()?;
    data.check_q(q)?;
    Ok((0..data.s)
        .map(|j| {
            let boundary = data
                .y
                .iter()
                .zip(&q.q)
                .fold(Q::zero(), |acc, (row, qi)| acc + qi * Q::from_integer(row[j].into()));
            &data.k[j] + Q::from_integer(1.into()) - boundary
        })
        .collect())
}

pub fn is_log_canonical(data: &ResolutionData, q: &PairCoefficients) -> Result<bool> {
    Ok(log_discrepancy_coeffs(data, q)?.iter().all(|a| !a.is_negative()))
}

fn argmin(values: &[Q], filter: impl Fn(usize) -> bool) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (j, v) in values.iter().enumerate() {
        if filter(j) && best.is_none_or(|b| *v < values[b]) {
            best = Some(j);
        }
    }
    best
}

/// Minimal log discrepancy on the closed set `W`.
pub fn mld_on_w(data: &ResolutionData, q: &PairCoefficients) -> Result<MldResult> {
    let a = log_discrepancy_coeffs(data, q)?;
    data.check_meets_w()?;
    let Some(best) = argmin(&a, |j| data.in_w[j]) else {
        return Err(Error::input("W-data empty: no divisor has center inside W"));
    };
    if let Some(neg) = a.iter().position(|v| v.is_negative()) {
        if data.ambient_dim >= 2 {
            return Ok(MldResult {
                value: ExtendedRational::NegInf,
                witness: Some(MldWitness::Divisor(neg)),
            });
        }
    }
    Ok(MldResult {
        value: ExtendedRational::Finite(a[best].clone()),
        witness: Some(MldWitness::Divisor(best)),
    })
}

/// Minimal log discrepancy at the generic point of `W`; requires a log
/// canonical pair.
pub fn mld_at_generic_point(data: &ResolutionData, q: &PairCoefficients) -> Result<MldResult> {
    let a = log_discrepancy_coeffs(data, q)?;
    if !q.w_is_proper {
        return Ok(MldResult {
            value: ExtendedRational::Finite(Q::zero()),
            witness: Some(MldWitness::Convention),
        });
    }
    if a.iter().any(|v| v.is_negative()) {
        return Err(Error::precondition(
            "pair is not log canonical on this model; use mld_on_w instead",
        ));
    }
    match argmin(&a, |j| data.eq_w[j]) {
        Some(j) => Ok(MldResult {
            value: ExtendedRational::Finite(a[j].clone()),
            witness: Some(MldWitness::Divisor(j)),
        }),
        None => Err(Error::input(
            "no divisor computes the generic point of W on this model (no eq_w divisor)",
        )),
    }
}

fn order_rows(data: &ResolutionData, m: &[u64], e: u64) -> Result<Vec<Row>> {
    if m.len() != data.k_ideals() {
        return Err(Error::input(format!(
            "order vector has length {}, expected {}",
            m.len(),
            data.k_ideals()
        )));
    }
    let to_i = |v: u64| i64::try_from(v).map_err(|_| Error::input("order too large"));
    let mut rows = Vec::with_capacity(m.len() + 1);
    for (row, &mi) in data.y.iter().zip(m) {
        rows.push(Row::new(row.iter().map(|&v| to_i(v)).collect::<Result<_>>()?, to_i(mi)?));
    }
    rows.push(Row::new(
        data.z.iter().map(|&v| to_i(v)).collect::<Result<_>>()?,
        to_i(e)?,
    ));
    Ok(rows)
}

fn r_q(data: &ResolutionData) -> Q {
    Q::from_integer(BigInt::from(data.r))
}

/// Codimension of `⋂ F_{Y_i}^{-1}(m_i) ∩ F_Z^{-1}(e) ∩ ψ_0^{-1}(W)`.
pub fn contact_codim_exact(
    data: &ResolutionData,
    m: &[u64],
    e: u64,
    w_proper: bool,
) -> Result<ExtendedRational> {
    data.validate()?;
    let program = LatticeProgram {
        objective: data.k.iter().map(|k| k + Q::from_integer(1.into())).collect(),
        eq_rows: order_rows(data, m, e)?,
        ge_rows: Vec::new(),
        admissible_supports: data.nerve_family()?,
        required_hit: data.hit_set(w_proper),
    };
    let sol = minimize_lattice(&program)?;
    Ok(sol.value.add_q(&(Q::from_integer(e.into()) / r_q(data))))
}

/// Codimension of the contact locus with `≥` order conditions.
pub fn contact_codim_ge(
    data: &ResolutionData,
    m: &[u64],
    e: u64,
    w_proper: bool,
) -> Result<ExtendedRational> {
    data.validate()?;
    let r = r_q(data);
    let program = LatticeProgram {
        objective: data
            .k
            .iter()
            .zip(&data.z)
            .map(|(k, &z)| Q::from_integer(z.into()) / &r + k + Q::from_integer(1.into()))
            .collect(),
        eq_rows: Vec::new(),
        ge_rows: order_rows(data, m, e)?,
        admissible_supports: data.nerve_family()?,
        required_hit: data.hit_set(w_proper),
    };
    Ok(minimize_lattice(&program)?.value)
}

/// Codimension of `F_T^{-1}(e) ∩ ψ_0^{-1}(W)` in the classical setting,
/// with `z` holding the orders of `T` and no auxiliary subschemes.
pub fn classical_pair_codim(data: &ResolutionData, e: u64, w_proper: bool) -> Result<ExtendedRational> {
    if !data.y.is_empty() {
        return Err(Error::input("classical pairs carry no auxiliary subschemes (y must be empty)"));
    }
    contact_codim_exact(data, &[], e, w_proper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    /// Blow-up of the origin in the plane with `Y_1` the origin.
    pub(crate) fn blowup() -> ResolutionData {
        ResolutionData {
            ambient_dim: 2,
            r: 1,
            s: 1,
            k: vec![q(1)],
            y: vec![vec![1]],
            z: vec![0],
            in_w: vec![true],
            eq_w: vec![true],
            nerve: vec![vec![0]],
            meets_w: vec![true],
        }
    }

    fn coeffs(v: Q) -> PairCoefficients {
        PairCoefficients::new(vec![v], true)
    }

    #[test]
    fn discrepancy_coefficients() {
        let d = blowup();
        assert_eq!(log_discrepancy_coeffs(&d, &coeffs(qf(1, 2))).unwrap(), vec![qf(3, 2)]);
        assert_eq!(log_discrepancy_coeffs(&d, &coeffs(q(0))).unwrap(), vec![q(2)]);
        assert_eq!(log_discrepancy_coeffs(&d, &coeffs(q(3))).unwrap(), vec![q(-1)]);
        assert!(matches!(
            log_discrepancy_coeffs(&d, &PairCoefficients::new(vec![], true)),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn log_canonicity() {
        let d = blowup();
        assert!(is_log_canonical(&d, &coeffs(qf(1, 2))).unwrap());
        assert!(!is_log_canonical(&d, &coeffs(q(3))).unwrap());
        assert!(is_log_canonical(&d, &coeffs(q(2))).unwrap());
    }

    #[test]
    fn mld_on_w_values() {
        let d = blowup();
        assert_eq!(mld_on_w(&d, &coeffs(qf(1, 2))).unwrap().value, ExtendedRational::Finite(qf(3, 2)));
        assert_eq!(mld_on_w(&d, &coeffs(q(0))).unwrap().value, ExtendedRational::Finite(q(2)));
        assert_eq!(mld_on_w(&d, &coeffs(q(3))).unwrap().value, ExtendedRational::NegInf);
    }

    #[test]
    fn curve_ambient_keeps_raw_minimum() {
        let mut d = blowup();
        d.ambient_dim = 1;
        d.k = vec![q(0)];
        let res = mld_on_w(&d, &coeffs(q(2))).unwrap();
        assert_eq!(res.value, ExtendedRational::Finite(q(-1)));
    }

    #[test]
    fn mld_on_w_needs_w_divisors() {
        let mut d = blowup();
        d.in_w = vec![false];
        d.eq_w = vec![false];
        let err = mld_on_w(&d, &coeffs(q(0))).unwrap_err();
        assert!(err.to_string().contains("W-data empty"));
        let mut d = blowup();
        d.meets_w = vec![false];
        assert!(mld_on_w(&d, &coeffs(q(0))).is_err());
    }

    #[test]
    fn generic_point() {
        let d = blowup();
        assert_eq!(
            mld_at_generic_point(&d, &coeffs(qf(1, 2))).unwrap().value,
            ExtendedRational::Finite(qf(3, 2))
        );
        let whole = PairCoefficients::new(vec![qf(1, 2)], false);
        let res = mld_at_generic_point(&d, &whole).unwrap();
        assert_eq!(res.value, ExtendedRational::Finite(q(0)));
        assert_eq!(res.witness, Some(MldWitness::Convention));

        let two = ResolutionData {
            ambient_dim: 2,
            r: 4,
            s: 2,
            k: vec![q(1), qf(1, 4)],
            y: vec![],
            z: vec![0, 0],
            in_w: vec![true, true],
            eq_w: vec![false, true],
            nerve: vec![vec![0, 1]],
            meets_w: vec![true, true],
        };
        let res = mld_at_generic_point(&two, &PairCoefficients::new(vec![], true)).unwrap();
        assert_eq!(res.value, ExtendedRational::Finite(qf(5, 4)));
        assert!(mld_at_generic_point(&d, &coeffs(q(3))).is_err());
    }

    #[test]
    fn exact_contact_codim() {
        let d = blowup();
        assert_eq!(contact_codim_exact(&d, &[2], 0, true).unwrap(), ExtendedRational::Finite(q(4)));
        assert_eq!(contact_codim_exact(&d, &[0], 0, false).unwrap(), ExtendedRational::Finite(q(0)));
        assert_eq!(contact_codim_exact(&d, &[3], 1, true).unwrap(), ExtendedRational::PosInf);
    }

    #[test]
    fn covering_contact_codim() {
        let d = blowup();
        assert_eq!(contact_codim_ge(&d, &[2], 0, true).unwrap(), ExtendedRational::Finite(q(4)));
        assert_eq!(contact_codim_ge(&d, &[0], 0, false).unwrap(), ExtendedRational::Finite(q(0)));
        let chain = ResolutionData {
            ambient_dim: 2,
            r: 1,
            s: 2,
            k: vec![q(1), q(2)],
            y: vec![vec![1, 2]],
            z: vec![0, 0],
            in_w: vec![true, true],
            eq_w: vec![false, false],
            nerve: vec![vec![0, 1]],
            meets_w: vec![true, true],
        };
        assert_eq!(contact_codim_ge(&chain, &[2], 0, false).unwrap(), ExtendedRational::Finite(q(3)));
    }

    #[test]
    fn classical_pairs() {
        let mut d = blowup();
        d.y = vec![];
        d.z = vec![2];
        // e/r + min (k+1)ν with 2ν = 2
        assert_eq!(classical_pair_codim(&d, 2, true).unwrap(), ExtendedRational::Finite(q(4)));
        assert_eq!(classical_pair_codim(&d, 1, true).unwrap(), ExtendedRational::PosInf);
        assert_eq!(classical_pair_codim(&d, 0, false).unwrap(), ExtendedRational::Finite(q(0)));
        assert!(classical_pair_codim(&blowup(), 0, false).is_err());
    }

    #[test]
    fn validation_rejects_bad_data() {
        let mut d = blowup();
        d.r = 2;
        d.k = vec![qf(1, 3)];
        assert!(d.validate().is_err());
        let mut d = blowup();
        d.eq_w = vec![true];
        d.in_w = vec![false];
        assert!(d.validate().is_err());
        let mut d = blowup();
        d.nerve = vec![];
        assert!(d.validate().is_err());
    }
}
