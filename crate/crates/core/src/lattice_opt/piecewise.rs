//! Minimization of `L·w − Σ_t c_t · min_{u ∈ F_t} u·w` over `w ∈ ℕ^d`.
//!
//! The domain is split into the cones on which a fixed choice of minimizing
//! form is made for every min-term. On each cone the objective is linear:
//! `-inf` is decided exactly by a recession-cone LP, and finite minima by
//! branch-and-bound. All constraints are homogeneous apart from `w_j ≥ 1`
//! bounds and covering rows with natural data, so a rational feasible point
//! scales to a lattice point and LP feasibility equals lattice feasibility.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ilp::{IlpOutcome, IntProgram, DEFAULT_NODE_BUDGET};
use super::simplex::{solve_lp, Cmp, LinRow, LpOutcome};
use crate::error::{Error, Result};
use crate::extended::ExtendedRational;
use crate::rational::{serde_q, serde_q_vec, Q};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinTerm {
    #[serde(with = "serde_q")]
    pub coefficient: Q,
    pub forms: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderRow {
    pub forms: Vec<Vec<u64>>,
    pub rhs: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PiecewiseProgram {
    pub d: usize,
    #[serde(with = "serde_q_vec")]
    pub linear_part: Vec<Q>,
    #[serde(default)]
    pub min_terms: Vec<MinTerm>,
    /// Coordinates (0-based) required to be at least 1.
    #[serde(default)]
    pub strict_positive: Vec<usize>,
    /// Coordinates (0-based) forced to 0.
    #[serde(default)]
    pub fixed_zero: Vec<usize>,
    #[serde(default)]
    pub ge_order_rows: Vec<OrderRow>,
}

/// A feasible lattice point plus an integral ray along which the objective
/// decreases without bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentCertificate {
    pub point: Vec<u64>,
    pub ray: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseSolution {
    pub value: ExtendedRational,
    pub witness: Option<Vec<u64>>,
    pub descent: Option<DescentCertificate>,
}

fn qi(v: u64) -> Q {
    Q::from_integer(v.into())
}

fn dot(u: &[u64], w: &[u64]) -> u64 {
    u.iter().zip(w).map(|(a, b)| a * b).sum()
}

impl PiecewiseProgram {
    pub fn new(d: usize, linear_part: Vec<Q>) -> Self {
        PiecewiseProgram {
            d,
            linear_part,
            min_terms: Vec::new(),
            strict_positive: Vec::new(),
            fixed_zero: Vec::new(),
            ge_order_rows: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.linear_part.len() != self.d {
            return Err(Error::input("linear part length differs from d"));
        }
        for t in &self.min_terms {
            if t.forms.is_empty() {
                return Err(Error::input("min-term with no forms"));
            }
            if t.forms.iter().any(|f| f.len() != self.d) {
                return Err(Error::input("min-term form has wrong length"));
            }
        }
        for r in &self.ge_order_rows {
            if r.forms.is_empty() {
                return Err(Error::input("order row with no forms"));
            }
            if r.forms.iter().any(|f| f.len() != self.d) {
                return Err(Error::input("order row form has wrong length"));
            }
        }
        for &j in self.strict_positive.iter().chain(&self.fixed_zero) {
            if j >= self.d {
                return Err(Error::input(format!("coordinate {j} out of range 0..{}", self.d)));
            }
        }
        if self.strict_positive.iter().any(|j| self.fixed_zero.contains(j)) {
            return Err(Error::input("coordinate both strictly positive and fixed to zero"));
        }
        Ok(())
    }

    /// Objective value at a lattice point.
    pub fn evaluate(&self, w: &[u64]) -> Q {
        let mut v = self
            .linear_part
            .iter()
            .zip(w)
            .fold(Q::zero(), |acc, (c, &x)| acc + c * qi(x));
        for t in &self.min_terms {
            let m = t.forms.iter().map(|u| dot(u, w)).min().unwrap_or(0);
            v -= &t.coefficient * qi(m);
        }
        v
    }

    pub fn is_feasible(&self, w: &[u64]) -> bool {
        w.len() == self.d
            && self.strict_positive.iter().all(|&j| w[j] >= 1)
            && self.fixed_zero.iter().all(|&j| w[j] == 0)
            && self
                .ge_order_rows
                .iter()
                .all(|r| r.forms.iter().map(|u| dot(u, w)).min().unwrap_or(0) >= r.rhs)
    }

    fn lower_bounds(&self) -> Vec<i64> {
        let mut lb = vec![0i64; self.d];
        for &j in &self.strict_positive {
            lb[j] = 1;
        }
        lb
    }

    fn unit(&self, j: usize) -> Vec<Q> {
        let mut c = vec![Q::zero(); self.d];
        c[j] = qi(1);
        c
    }

    /// Rows describing the cone where `selection[t]` attains the min of
    /// term `t`, plus the covering rows and the fixed zeros.
    fn cone_rows(&self, selection: &[usize], homogeneous: bool) -> Vec<LinRow> {
        let mut rows = Vec::new();
        for (t, &s) in self.min_terms.iter().zip(selection) {
            let chosen = &t.forms[s];
            for (k, other) in t.forms.iter().enumerate() {
                if k == s || other == chosen {
                    continue;
                }
                let coeffs = other
                    .iter()
                    .zip(chosen)
                    .map(|(&a, &b)| qi(a) - qi(b))
                    .collect();
                rows.push(LinRow::new(coeffs, Cmp::Ge, Q::zero()));
            }
        }
        for r in &self.ge_order_rows {
            for u in &r.forms {
                let rhs = if homogeneous { Q::zero() } else { qi(r.rhs) };
                rows.push(LinRow::new(u.iter().map(|&a| qi(a)).collect(), Cmp::Ge, rhs));
            }
        }
        for &j in &self.fixed_zero {
            rows.push(LinRow::new(self.unit(j), Cmp::Eq, Q::zero()));
        }
        rows
    }

    fn cone_objective(&self, selection: &[usize]) -> Vec<Q> {
        let mut c = self.linear_part.clone();
        for (t, &s) in self.min_terms.iter().zip(selection) {
            for (cj, &u) in c.iter_mut().zip(&t.forms[s]) {
                *cj -= &t.coefficient * qi(u);
            }
        }
        c
    }

    fn selections(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for t in &self.min_terms {
            let mut next = Vec::with_capacity(out.len() * t.forms.len());
            for prefix in &out {
                for k in 0..t.forms.len() {
                    let mut p = prefix.clone();
                    p.push(k);
                    next.push(p);
                }
            }
            out = next;
        }
        out
    }
}

fn to_u64(p: &[i64]) -> Vec<u64> {
    p.iter().map(|&v| v as u64).collect()
}

/// Smallest positive integral multiple of a rational vector.
fn integral_ray(r: &[Q]) -> Vec<u64> {
    use num_integer::Integer;
    let l = r
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, v| acc.lcm(v.denom()));
    let lq = Q::from_integer(l);
    r.iter()
        .map(|v| {
            let x = (v * &lq).to_integer();
            u64::try_from(x).expect("recession ray entries are nonnegative and small")
        })
        .collect()
}

pub fn minimize_piecewise(p: &PiecewiseProgram) -> Result<PiecewiseSolution> {
    minimize_piecewise_with_budget(p, DEFAULT_NODE_BUDGET)
}

pub fn minimize_piecewise_with_budget(
    p: &PiecewiseProgram,
    node_budget: usize,
) -> Result<PiecewiseSolution> {
    p.validate()?;
    let d = p.d;
    let lower = p.lower_bounds();

    // (value, selection) for every feasible cone
    let mut cone_values: Vec<(Q, Vec<usize>)> = Vec::new();
    for sel in p.selections() {
        let rows = p.cone_rows(&sel, false);
        let objective = p.cone_objective(&sel);
        let prog = IntProgram {
            objective: objective.clone(),
            rows: rows.clone(),
            lower: lower.clone(),
        };

        // Feasibility first (zero objective).
        let feas = IntProgram {
            objective: vec![Q::zero(); d],
            ..prog.clone()
        };
        let feasible_point = match feas.solve(node_budget)? {
            IlpOutcome::Optimal { point, .. } => point,
            IlpOutcome::Infeasible => continue,
            IlpOutcome::Unbounded => unreachable!("zero objective is bounded"),
        };

        // Recession cone: homogeneous rows, r ≥ 0, Σr ≤ 1.
        let mut ray_rows = p.cone_rows(&sel, true);
        ray_rows.push(LinRow::new(vec![qi(1); d], Cmp::Le, qi(1)));
        if let LpOutcome::Optimal { value, point } = solve_lp(d, &objective, &ray_rows) {
            if value.is_negative() {
                let base = IntProgram {
                    objective: vec![qi(1); d],
                    ..prog.clone()
                };
                let cap = base
                    .objective
                    .iter()
                    .zip(&feasible_point)
                    .fold(Q::zero(), |acc, (c, &x)| acc + c * Q::from_integer(x.into()));
                let start = base
                    .lexmin_with_cap(&cap, node_budget)?
                    .unwrap_or(feasible_point);
                return Ok(PiecewiseSolution {
                    value: ExtendedRational::NegInf,
                    witness: None,
                    descent: Some(DescentCertificate {
                        point: to_u64(&start),
                        ray: integral_ray(&point),
                    }),
                });
            }
        }

        match prog.solve(node_budget)? {
            IlpOutcome::Optimal { value, .. } => cone_values.push((value, sel)),
            IlpOutcome::Infeasible => {}
            IlpOutcome::Unbounded => {
                return Err(Error::InvariantViolation(
                    "cone objective unbounded although no descending ray exists".into(),
                ))
            }
        }
    }

    let Some(best) = cone_values.iter().map(|(v, _)| v.clone()).min() else {
        return Ok(PiecewiseSolution {
            value: ExtendedRational::PosInf,
            witness: None,
            descent: None,
        });
    };

    let mut witness: Option<Vec<u64>> = None;
    for (v, sel) in &cone_values {
        if *v != best {
            continue;
        }
        let prog = IntProgram {
            objective: p.cone_objective(sel),
            rows: p.cone_rows(sel, false),
            lower: lower.clone(),
        };
        if let Some(pt) = prog.lexmin_with_cap(&best, node_budget)? {
            let pt = to_u64(&pt);
            if witness.as_ref().is_none_or(|w| pt < *w) {
                witness = Some(pt);
            }
        }
    }
    let witness = witness.ok_or_else(|| {
        Error::InvariantViolation("optimal cone lost its lattice point".into())
    })?;
    assert!(p.is_feasible(&witness), "piecewise witness infeasible");
    assert_eq!(p.evaluate(&witness), best, "piecewise witness misses value");
    Ok(PiecewiseSolution {
        value: ExtendedRational::Finite(best),
        witness: Some(witness),
        descent: None,
    })
}
