//! Contact loci and minimal log discrepancies for monomial data on affine
//! space, by minimizing over toric weight vectors `w ∈ ℕ^d`.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extended::ExtendedRational;
use crate::lattice_opt::{
    minimize_piecewise, DescentCertificate, MinTerm, OrderRow, PiecewiseProgram,
};
use crate::rational::{serde_q_vec, Q};

/// A monomial ideal, stored by its minimal generators. The single zero
/// exponent vector marks the unit ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u64>>", into = "Vec<Vec<u64>>")]
pub struct MonomialIdeal {
    d: usize,
    generators: Vec<Vec<u64>>,
}

fn dominates(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

impl MonomialIdeal {
    pub fn new(d: usize, generators: Vec<Vec<u64>>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::input("monomial ideal needs at least one generator"));
        }
        if let Some(g) = generators.iter().find(|g| g.len() != d) {
            return Err(Error::input(format!(
                "generator {g:?} has length {}, expected {d}",
                g.len()
            )));
        }
        let mut gens = generators;
        gens.sort();
        gens.dedup();
        let minimal: Vec<Vec<u64>> = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && dominates(g, h)))
            .cloned()
            .collect();
        Ok(MonomialIdeal { d, generators: minimal })
    }

    /// The maximal ideal of the origin.
    pub fn maximal(d: usize) -> Self {
        let gens = (0..d)
            .map(|j| {
                let mut e = vec![0; d];
                e[j] = 1;
                e
            })
            .collect();
        MonomialIdeal::new(d, gens).expect("coordinate generators are valid")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.iter().all(|&e| e == 0))
    }

    /// Whether the monomial `x^u` lies in the ideal.
    pub fn contains_monomial(&self, u: &[u64]) -> bool {
        self.generators.iter().any(|g| dominates(u, g))
    }
}

impl TryFrom<Vec<Vec<u64>>> for MonomialIdeal {
    type Error = Error;

    fn try_from(gens: Vec<Vec<u64>>) -> Result<Self> {
        let d = gens.first().map(|g| g.len()).unwrap_or(0);
        MonomialIdeal::new(d, gens)
    }
}

impl From<MonomialIdeal> for Vec<Vec<u64>> {
    fn from(i: MonomialIdeal) -> Self {
        i.generators
    }
}

/// Divisorial order of the ideal along the toric valuation `w`.
pub fn ord_w(ideal: &MonomialIdeal, w: &[u64]) -> Result<u64> {
    if w.len() != ideal.d {
        return Err(Error::input(format!(
            "weight has length {}, ideal lives in dimension {}",
            w.len(),
            ideal.d
        )));
    }
    Ok(ideal
        .generators
        .iter()
        .map(|g| g.iter().zip(w).map(|(a, b)| a * b).sum::<u64>())
        .min()
        .expect("ideal has generators"))
}

/// Coordinate centers `V(x_j : j ∈ S)` in affine `d`-space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CenterSpec {
    WholeSpace,
    Origin,
    /// 0-based coordinate indices, sorted and nonempty.
    Subspace(Vec<usize>),
}

impl CenterSpec {
    pub fn subspace(mut coords: Vec<usize>) -> Result<Self> {
        coords.sort_unstable();
        coords.dedup();
        if coords.is_empty() {
            return Err(Error::input("a coordinate subspace needs at least one coordinate"));
        }
        Ok(CenterSpec::Subspace(coords))
    }

    /// Coordinates cut out by the center, or `None` for the whole space.
    pub fn support(&self, d: usize) -> Result<Option<Vec<usize>>> {
        match self {
            CenterSpec::WholeSpace => Ok(None),
            CenterSpec::Origin => Ok(Some((0..d).collect())),
            CenterSpec::Subspace(s) => {
                if let Some(&j) = s.iter().find(|&&j| j >= d) {
                    return Err(Error::input(format!("center coordinate {j} out of range 0..{d}")));
                }
                if s.is_empty() {
                    return Err(Error::input("empty coordinate subspace"));
                }
                Ok(Some(s.clone()))
            }
        }
    }

    /// Codimension of the center in affine `d`-space.
    pub fn codim(&self, d: usize) -> Result<usize> {
        Ok(self.support(d)?.map_or(0, |s| s.len()))
    }
}

impl fmt::Display for CenterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterSpec::WholeSpace => f.write_str("all"),
            CenterSpec::Origin => f.write_str("origin"),
            CenterSpec::Subspace(s) => {
                let parts: Vec<String> = s.iter().map(|j| j.to_string()).collect();
                write!(f, "subspace:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for CenterSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text.trim() {
            "all" => Ok(CenterSpec::WholeSpace),
            "origin" => Ok(CenterSpec::Origin),
            other => {
                let Some(list) = other.strip_prefix("subspace:") else {
                    return Err(Error::input(format!(
                        "unknown center '{other}' (expected origin, all or subspace:j1,j2,...)"
                    )));
                };
                let coords = list
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::input(format!("bad coordinate index '{t}'")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                CenterSpec::subspace(coords)
            }
        }
    }
}

impl Serialize for CenterSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CenterSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Affine `d`-space with the boundary `Σ q_i · V(a_i)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialPair {
    pub d: usize,
    #[serde(default)]
    pub ideals: Vec<MonomialIdeal>,
    #[serde(with = "serde_q_vec", default)]
    pub q: Vec<Q>,
}

impl MonomialPair {
    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::input("ambient dimension must be positive"));
        }
        check_ideals(self.d, &self.ideals)?;
        if self.q.len() != self.ideals.len() {
            return Err(Error::input(format!(
                "{} coefficients for {} ideals",
                self.q.len(),
                self.ideals.len()
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NewtonHypersurface {
    pub d: usize,
    pub support: Vec<Vec<u64>>,
    #[serde(default)]
    pub nondegenerate_asserted: bool,
    #[serde(default)]
    pub singular_locus_is_origin_asserted: bool,
}

impl NewtonHypersurface {
    pub fn new(d: usize, support: Vec<Vec<u64>>) -> Self {
        NewtonHypersurface {
            d,
            support,
            nondegenerate_asserted: true,
            singular_locus_is_origin_asserted: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::input("ambient dimension must be positive"));
        }
        if self.support.is_empty() {
            return Err(Error::input("hypersurface support is empty"));
        }
        for u in &self.support {
            if u.len() != self.d {
                return Err(Error::input(format!("exponent {u:?} has wrong length")));
            }
            if u.iter().all(|&e| e == 0) {
                return Err(Error::input("support contains a constant term; f(0) must vanish"));
            }
        }
        Ok(())
    }

    /// The monomial ideal generated by the support.
    pub fn support_ideal(&self) -> Result<MonomialIdeal> {
        self.validate()?;
        MonomialIdeal::new(self.d, self.support.clone())
    }
}

/// Outcome of a weight minimization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightResult {
    pub value: ExtendedRational,
    /// Minimizing weight vector when the value is finite.
    pub witness: Option<Vec<u64>>,
    /// Objective at the witness, or at the descent point when the
    /// minimization is unbounded.
    pub raw_value: Option<ExtendedRational>,
    pub descent: Option<DescentCertificate>,
}

fn check_ideals(d: usize, ideals: &[MonomialIdeal]) -> Result<()> {
    if let Some(i) = ideals.iter().position(|a| a.d != d) {
        return Err(Error::input(format!(
            "ideal {i} lives in dimension {}, expected {d}",
            ideals[i].d
        )));
    }
    Ok(())
}

fn ambient_dim(ideals: &[MonomialIdeal], center: &CenterSpec, d: Option<usize>) -> Result<usize> {
    let d = match (d, ideals.first()) {
        (Some(d), _) => d,
        (None, Some(a)) => a.d,
        (None, None) => match center {
            CenterSpec::Subspace(s) => s.iter().max().map_or(1, |m| m + 1),
            _ => return Err(Error::input("ambient dimension unknown: no ideals given")),
        },
    };
    check_ideals(d, ideals)?;
    if d == 0 {
        return Err(Error::input("ambient dimension must be positive"));
    }
    Ok(d)
}

fn finish(p: &PiecewiseProgram) -> Result<WeightResult> {
    let sol = minimize_piecewise(p)?;
    let raw_value = match (&sol.witness, &sol.descent) {
        (Some(w), _) => Some(ExtendedRational::Finite(p.evaluate(w))),
        (None, Some(c)) => Some(ExtendedRational::Finite(p.evaluate(&c.point))),
        _ => None,
    };
    Ok(WeightResult {
        value: sol.value,
        witness: sol.witness,
        raw_value,
        descent: sol.descent,
    })
}

/// Codimension of the contact locus `{ord a_i ≥ m_i} ∩ ψ_0^{-1}(W)`.
pub fn contact_codim_monomial(
    ideals: &[MonomialIdeal],
    m: &[u64],
    center: &CenterSpec,
) -> Result<WeightResult> {
    contact_codim_monomial_in(None, ideals, m, center)
}

/// As [`contact_codim_monomial`] with an explicit ambient dimension.
pub fn contact_codim_monomial_in(
    d: Option<usize>,
    ideals: &[MonomialIdeal],
    m: &[u64],
    center: &CenterSpec,
) -> Result<WeightResult> {
    let d = ambient_dim(ideals, center, d)?;
    if m.len() != ideals.len() {
        return Err(Error::input(format!(
            "{} orders for {} ideals",
            m.len(),
            ideals.len()
        )));
    }
    let mut p = PiecewiseProgram::new(d, vec![Q::from_integer(1.into()); d]);
    p.strict_positive = center.support(d)?.unwrap_or_default();
    p.ge_order_rows = ideals
        .iter()
        .zip(m)
        .map(|(a, &mi)| OrderRow { forms: a.generators.clone(), rhs: mi })
        .collect();
    finish(&p)
}

fn mld_program(d: usize, ideals: &[MonomialIdeal], q: &[Q]) -> Result<PiecewiseProgram> {
    if q.len() != ideals.len() {
        return Err(Error::input(format!("{} coefficients for {} ideals", q.len(), ideals.len())));
    }
    if let Some(i) = q.iter().position(|v| v.is_negative()) {
        return Err(Error::input(format!("coefficient q_{i} is negative")));
    }
    let mut p = PiecewiseProgram::new(d, vec![Q::from_integer(1.into()); d]);
    p.min_terms = ideals
        .iter()
        .zip(q)
        .filter(|(_, qi)| !qi.is_zero())
        .map(|(a, qi)| MinTerm { coefficient: qi.clone(), forms: a.generators.clone() })
        .collect();
    Ok(p)
}

fn apply_negativity_rule(d: usize, mut res: WeightResult) -> WeightResult {
    if d >= 2 {
        if let ExtendedRational::Finite(v) = &res.value {
            if v.is_negative() {
                res.value = ExtendedRational::NegInf;
            }
        }
    }
    res
}

/// Minimal log discrepancy of `(A^d, Σ q_i V(a_i))` on a coordinate center.
pub fn mld_monomial(ideals: &[MonomialIdeal], q: &[Q], center: &CenterSpec) -> Result<WeightResult> {
    mld_monomial_in(None, ideals, q, center)
}

pub fn mld_monomial_in(
    d: Option<usize>,
    ideals: &[MonomialIdeal],
    q: &[Q],
    center: &CenterSpec,
) -> Result<WeightResult> {
    let d = ambient_dim(ideals, center, d)?;
    let Some(support) = center.support(d)? else {
        return Err(Error::input("mld on a closed subset needs a proper center, not the whole space"));
    };
    let mut p = mld_program(d, ideals, q)?;
    if d == 1 {
        // On a curve the point itself is the only divisor over it.
        let w = vec![1];
        let v = p.evaluate(&w);
        return Ok(WeightResult {
            value: ExtendedRational::Finite(v.clone()),
            witness: Some(w),
            raw_value: Some(ExtendedRational::Finite(v)),
            descent: None,
        });
    }
    p.strict_positive = support;
    Ok(apply_negativity_rule(d, finish(&p)?))
}

/// Minimal log discrepancy at the generic point of a coordinate center:
/// weights are supported exactly on the cut-out coordinates.
pub fn mld_monomial_generic(
    d: usize,
    ideals: &[MonomialIdeal],
    q: &[Q],
    center: &CenterSpec,
) -> Result<WeightResult> {
    let d = ambient_dim(ideals, center, Some(d))?;
    let Some(support) = center.support(d)? else {
        return Ok(WeightResult {
            value: ExtendedRational::Finite(Q::zero()),
            witness: None,
            raw_value: None,
            descent: None,
        });
    };
    let mut p = mld_program(d, ideals, q)?;
    if support.len() == 1 {
        // Only the coordinate hyperplane itself has this center.
        let mut w = vec![0; d];
        w[support[0]] = 1;
        let v = p.evaluate(&w);
        return Ok(WeightResult {
            value: ExtendedRational::Finite(v.clone()),
            witness: Some(w),
            raw_value: Some(ExtendedRational::Finite(v)),
            descent: None,
        });
    }
    p.fixed_zero = (0..d).filter(|j| !support.contains(j)).collect();
    p.strict_positive = support;
    Ok(apply_negativity_rule(d, finish(&p)?))
}

/// `inf_w (Σ w_j − q · min_{u ∈ supp f} u·w)` over `w ≥ 1`, for a
/// hypersurface that is nondegenerate for its Newton polyhedron.
pub fn nondegenerate_hypersurface_mld(h: &NewtonHypersurface, q: &Q) -> Result<WeightResult> {
    h.validate()?;
    if !h.nondegenerate_asserted {
        return Err(Error::precondition(
            "weight minimization computes the mld only for Newton-nondegenerate f; set nondegenerate_asserted",
        ));
    }
    let ideal = h.support_ideal()?;
    mld_monomial_in(Some(h.d), &[ideal], std::slice::from_ref(q), &CenterSpec::Origin)
}
