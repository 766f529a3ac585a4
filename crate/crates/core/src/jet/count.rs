//! Exhaustive point counts of jet schemes and contact loci over `F_p`.
//!
//! Base points are enumerated outright. Over a smooth base point of a
//! hypersurface with no contact conditions the fiber has `p^{(d-1)m}`
//! points (the level-`l` equation is linear in the level-`l` variables with
//! the gradient as coefficients). Every other base point is handled by a
//! depth-first search over the remaining jet variables in level order;
//! each condition is evaluated once its last variable is assigned, and
//! variables that occur in no condition contribute a factor `p`.

use std::sync::atomic::{AtomicU64, Ordering};

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::field::{pow_mod, Field};
use super::poly::Poly;
use super::system::{jet_coefficients, JetSystem};
use crate::error::{Error, Result};
use crate::monomial::{CenterSpec, MonomialIdeal};

pub const DEFAULT_EVAL_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContactRelation {
    Exact,
    AtLeast,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContactTarget {
    Monomial(MonomialIdeal),
    /// Principal ideal of a polynomial.
    Poly(Poly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactConstraint {
    pub target: ContactTarget,
    pub relation: ContactRelation,
    pub order: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ContactQuery {
    pub constraints: Vec<ContactConstraint>,
    /// Restricts the base point `γ(0)` to a coordinate center.
    pub base_point: Option<CenterSpec>,
}

impl ContactQuery {
    pub fn none() -> Self {
        ContactQuery::default()
    }

    pub fn at(center: CenterSpec) -> Self {
        ContactQuery { constraints: Vec::new(), base_point: Some(center) }
    }

    pub fn with(mut self, target: ContactTarget, relation: ContactRelation, order: usize) -> Self {
        self.constraints.push(ContactConstraint { target, relation, order });
        self
    }
}

/// Polynomial over `F_p` in sparse form for fast evaluation.
#[derive(Clone, Debug)]
struct ModPoly {
    terms: Vec<(u64, Vec<(usize, u32)>)>,
}

impl ModPoly {
    fn from_poly(p: &Poly, modulus: u64) -> Result<Self> {
        let f = p.to_field(Field::Prime(modulus))?;
        let terms = f
            .terms()
            .iter()
            .map(|(e, c)| {
                let c = c.to_integer().to_u64().expect("reduced residue");
                let vars = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(v, &k)| (v, k))
                    .collect();
                (c, vars)
            })
            .collect();
        Ok(ModPoly { terms })
    }

    fn eval(&self, values: &[u64], p: u64) -> u64 {
        let mut acc = 0u64;
        for (c, vars) in &self.terms {
            let mut t = *c;
            for &(v, k) in vars {
                t = t * pow_mod(values[v], k as u64, p) % p;
            }
            acc = (acc + t) % p;
        }
        acc
    }

    /// Substitutes the variables below `cut`.
    fn specialize(&self, values: &[u64], cut: usize, p: u64) -> ModPoly {
        let mut merged: std::collections::BTreeMap<Vec<(usize, u32)>, u64> = Default::default();
        for (c, vars) in &self.terms {
            let mut t = *c;
            let mut rest = Vec::new();
            for &(v, k) in vars {
                if v < cut {
                    t = t * pow_mod(values[v], k as u64, p) % p;
                } else {
                    rest.push((v, k));
                }
            }
            if t != 0 {
                let slot = merged.entry(rest).or_insert(0);
                *slot = (*slot + t) % p;
            }
        }
        ModPoly {
            terms: merged.into_iter().filter(|(_, c)| *c != 0).map(|(v, c)| (c, v)).collect(),
        }
    }

    fn constant(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(c, vars)] if vars.is_empty() => Some(*c),
            _ => None,
        }
    }

    fn max_var(&self) -> Option<usize> {
        self.terms.iter().flat_map(|(_, v)| v.iter().map(|&(x, _)| x)).max()
    }
}

#[derive(Clone, Debug)]
enum Check {
    Zero(ModPoly),
    /// At least one member is nonzero.
    AnyNonzero(Vec<ModPoly>),
}

impl Check {
    fn holds(&self, values: &[u64], p: u64) -> bool {
        match self {
            Check::Zero(f) => f.eval(values, p) == 0,
            Check::AnyNonzero(g) => g.iter().any(|f| f.eval(values, p) != 0),
        }
    }

    fn max_var(&self) -> Option<usize> {
        match self {
            Check::Zero(f) => f.max_var(),
            Check::AnyNonzero(g) => g.iter().filter_map(|f| f.max_var()).max(),
        }
    }

    fn cost(&self) -> u64 {
        match self {
            Check::Zero(_) => 1,
            Check::AnyNonzero(g) => g.len() as u64,
        }
    }
}

enum Specialized {
    Empty,
    Checks(Vec<Check>),
}

fn specialize_checks(checks: &[Check], base: &[u64], d: usize, p: u64) -> Specialized {
    let mut out = Vec::with_capacity(checks.len());
    for c in checks {
        match c {
            Check::Zero(f) => {
                let s = f.specialize(base, d, p);
                match s.constant() {
                    Some(0) => {}
                    Some(_) => return Specialized::Empty,
                    None => out.push(Check::Zero(s)),
                }
            }
            Check::AnyNonzero(g) => {
                let mut members = Vec::new();
                let mut satisfied = false;
                for f in g {
                    let s = f.specialize(base, d, p);
                    match s.constant() {
                        Some(0) => {}
                        Some(_) => {
                            satisfied = true;
                            break;
                        }
                        None => members.push(s),
                    }
                }
                if satisfied {
                    continue;
                }
                if members.is_empty() {
                    return Specialized::Empty;
                }
                out.push(Check::AnyNonzero(members));
            }
        }
    }
    Specialized::Checks(out)
}

fn generators(target: &ContactTarget, d: usize) -> Result<Vec<Poly>> {
    match target {
        ContactTarget::Monomial(a) => {
            if a.d() != d {
                return Err(Error::input(format!(
                    "contact ideal lives in dimension {}, jets in dimension {d}",
                    a.d()
                )));
            }
            a.generators()
                .iter()
                .map(|u| Poly::from_support(d, Field::Rationals, std::slice::from_ref(u)))
                .collect()
        }
        ContactTarget::Poly(g) => {
            if g.nvars() != d {
                return Err(Error::input(format!(
                    "contact polynomial in {} variables, jets in dimension {d}",
                    g.nvars()
                )));
            }
            Ok(vec![g.clone()])
        }
    }
}

fn constraint_checks(c: &ContactConstraint, d: usize, m: usize, p: u64) -> Result<Vec<Check>> {
    let k = c.order;
    let levels_needed = match c.relation {
        ContactRelation::AtLeast => k,
        ContactRelation::Exact => k + 1,
    };
    if levels_needed > m + 1 {
        return Err(Error::input(format!(
            "contact order {k} cannot be decided on jets of level {m}"
        )));
    }
    let mut checks = Vec::new();
    let mut top = Vec::new();
    for g in generators(&c.target, d)? {
        let g = g.to_field(Field::Prime(p))?;
        let coeffs = jet_coefficients(&g, levels_needed, m + 1)?;
        for (l, h) in coeffs.iter().enumerate() {
            let mp = ModPoly::from_poly(h, p)?;
            if l < k {
                checks.push(Check::Zero(mp));
            } else {
                top.push(mp);
            }
        }
    }
    if c.relation == ContactRelation::Exact {
        checks.push(Check::AnyNonzero(top));
    }
    Ok(checks)
}

struct Budget<'a> {
    used: &'a AtomicU64,
    limit: u64,
}

impl Budget<'_> {
    fn spend(&self, n: u64) -> bool {
        self.used.fetch_add(n, Ordering::Relaxed) + n <= self.limit
    }
}

fn count_dfs(
    order: &[usize],
    at: &[Vec<Check>],
    k: usize,
    values: &mut [u64],
    p: u64,
    budget: &Budget<'_>,
) -> Option<u128> {
    if k == order.len() {
        return Some(1);
    }
    let v = order[k];
    let mut total = 0u128;
    for x in 0..p {
        values[v] = x;
        let cost = 1 + at[k].iter().map(Check::cost).sum::<u64>();
        if !budget.spend(cost) {
            return None;
        }
        if at[k].iter().all(|c| c.holds(values, p)) {
            total += count_dfs(order, at, k + 1, values, p, budget)?;
        }
    }
    values[v] = 0;
    Some(total)
}

fn budget_error(p: u64, d: usize, m: usize, budget: u64) -> Error {
    let naive = (p as f64).powi((d * (m + 1)) as i32);
    Error::Budget {
        what: format!("jet point count at level {m} over F_{p}"),
        required: format!("up to p^(d(m+1)) = {p}^{} ≈ {naive:.3e} evaluations", d * (m + 1)),
        budget,
    }
}

/// Number of `F_p`-points of the jet scheme satisfying the query.
pub fn count_jet_points(sys: &JetSystem, p: u64, query: &ContactQuery, budget: u64) -> Result<u128> {
    Field::prime(p)?;
    let d = sys.d();
    let m = sys.m();
    let nv = sys.nvars();

    let mut checks = Vec::new();
    for eq in sys.equations() {
        checks.push(Check::Zero(ModPoly::from_poly(eq, p)?));
    }
    for c in &query.constraints {
        checks.extend(constraint_checks(c, d, m, p)?);
    }
    let base_zero: Vec<usize> = match &query.base_point {
        None => Vec::new(),
        Some(c) => c.support(d)?.unwrap_or_default(),
    };
    let hensel = sys.is_hypersurface() && query.constraints.is_empty();
    let gradient: Vec<ModPoly> = if hensel {
        let f0 = &sys.equations()[0];
        (0..d)
            .map(|j| ModPoly::from_poly(&f0.derivative(j), p))
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    let f0 = sys.equations().first().map(|f| ModPoly::from_poly(f, p)).transpose()?;
    let smooth_fiber = (p as u128).pow(((d - 1) * m) as u32);

    let free_coords: Vec<usize> = (0..d).filter(|j| !base_zero.contains(j)).collect();
    let n_base = (p as u128).pow(free_coords.len() as u32);
    let n_base = u64::try_from(n_base).map_err(|_| budget_error(p, d, m, budget))?;
    if n_base > budget {
        return Err(budget_error(p, d, m, budget));
    }
    let used = AtomicU64::new(0);
    let bud = Budget { used: &used, limit: budget };

    let per_base = |idx: u64| -> Option<u128> {
        let mut values = vec![0u64; nv];
        let mut r = idx;
        for &j in &free_coords {
            values[j] = r % p;
            r /= p;
        }
        if hensel {
            if !bud.spend(1 + d as u64) {
                return None;
            }
            if f0.as_ref().expect("hypersurface").eval(&values, p) != 0 {
                return Some(0);
            }
            if gradient.iter().any(|g| g.eval(&values, p) != 0) {
                return Some(smooth_fiber);
            }
        }
        let spec = match specialize_checks(&checks, &values, d, p) {
            Specialized::Empty => return Some(0),
            Specialized::Checks(c) => c,
        };
        let mut used_vars: Vec<usize> = Vec::new();
        for c in &spec {
            let vars: Vec<usize> = match c {
                Check::Zero(f) => f.terms.iter().flat_map(|(_, v)| v.iter().map(|&(x, _)| x)).collect(),
                Check::AnyNonzero(g) => g
                    .iter()
                    .flat_map(|f| f.terms.iter().flat_map(|(_, v)| v.iter().map(|&(x, _)| x)))
                    .collect(),
            };
            used_vars.extend(vars);
        }
        used_vars.sort_unstable();
        used_vars.dedup();
        let free = (nv - d - used_vars.len()) as u32;
        let mut at: Vec<Vec<Check>> = vec![Vec::new(); used_vars.len()];
        for c in spec {
            let mv = c.max_var().expect("nonconstant check");
            let pos = used_vars.binary_search(&mv).expect("variable recorded");
            at[pos].push(c);
        }
        let leaves = count_dfs(&used_vars, &at, 0, &mut values, p, &bud)?;
        Some(leaves * (p as u128).pow(free))
    };

    let total: Option<u128> = (0..n_base)
        .into_par_iter()
        .map(per_base)
        .try_reduce(|| 0, |a, b| Some(a + b));
    total.ok_or_else(|| budget_error(p, d, m, budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::system::jet_equations;

    fn quadric(d: usize) -> Poly {
        (0..d).fold(Poly::zero(d, Field::Rationals), |acc, j| {
            acc.add(&Poly::var(d, Field::Rationals, j).pow(2))
        })
    }

    #[test]
    fn quadric_cone_first_jets() {
        let sys = jet_equations(&quadric(3), 1).unwrap();
        assert_eq!(count_jet_points(&sys, 3, &ContactQuery::none(), DEFAULT_EVAL_BUDGET).unwrap(), 99);
    }

    #[test]
    fn linear_hypersurface() {
        let x = Poly::var(3, Field::Rationals, 0);
        let sys = jet_equations(&x, 1).unwrap();
        assert_eq!(count_jet_points(&sys, 3, &ContactQuery::none(), DEFAULT_EVAL_BUDGET).unwrap(), 81);
    }

    #[test]
    fn origin_fiber() {
        let sys = jet_equations(&quadric(3), 0).unwrap();
        let q = ContactQuery::at(CenterSpec::Origin);
        assert_eq!(count_jet_points(&sys, 3, &q, DEFAULT_EVAL_BUDGET).unwrap(), 1);
    }

    #[test]
    fn ambient_contact_orders() {
        let sys = JetSystem::ambient(3, 2, Field::Rationals).unwrap();
        let q = ContactQuery::none().with(
            ContactTarget::Monomial(MonomialIdeal::maximal(3)),
            ContactRelation::AtLeast,
            2,
        );
        assert_eq!(count_jet_points(&sys, 3, &q, DEFAULT_EVAL_BUDGET).unwrap(), 27);
        let exact = ContactQuery::none().with(
            ContactTarget::Monomial(MonomialIdeal::maximal(3)),
            ContactRelation::Exact,
            1,
        );
        // x_0 = 0, level-one part nonzero, level two free
        assert_eq!(count_jet_points(&sys, 3, &exact, DEFAULT_EVAL_BUDGET).unwrap(), 26 * 27);
    }

    #[test]
    fn budget_is_enforced() {
        let sys = jet_equations(&quadric(3), 2).unwrap();
        let q = ContactQuery::at(CenterSpec::Origin);
        let err = count_jet_points(&sys, 3, &q, 10).unwrap_err();
        assert!(matches!(err, Error::Budget { .. }));
        assert!(err.to_string().contains("3^9"));
    }
}
