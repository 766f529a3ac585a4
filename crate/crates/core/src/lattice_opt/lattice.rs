//! Exact minimization of a linear objective over `ν ∈ ℕ^s` with natural
//! equality / covering rows and a subset-closed family of admissible
//! supports.
//!
//! Every admissible support `T` is solved separately with `ν_j ≥ 1` on `T`
//! and `ν_j = 0` off it. On a fixed support each coordinate has a proven
//! upper bound: columns met by an equality row are capped by that row, and
//! the remaining ("free") columns never need to exceed the largest covering
//! requirement they can satisfy alone. A free column with negative cost is
//! a recession ray, which is the only source of `-inf`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extended::ExtendedRational;
use crate::rational::{serde_q_vec, Q};

/// One constraint row `Σ coeffs_j ν_j (= or ≥) rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Row {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
}

impl Row {
    pub fn new(coeffs: Vec<i64>, rhs: i64) -> Self {
        Row { coeffs, rhs }
    }

    fn eval(&self, nu: &[u64]) -> i128 {
        self.coeffs
            .iter()
            .zip(nu)
            .map(|(&a, &v)| a as i128 * v as i128)
            .sum()
    }
}

/// Subset-closed family of index sets over `0..s`, stored as bit masks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportFamily {
    s: usize,
    members: BTreeSet<u64>,
}

impl SupportFamily {
    /// Every subset of `0..s`.
    pub fn full(s: usize) -> Self {
        assert!(s < 20, "full support family only for small s");
        SupportFamily {
            s,
            members: (0..(1u64 << s)).collect(),
        }
    }

    /// Downward closure of the given faces.
    pub fn from_faces(s: usize, faces: &[Vec<usize>]) -> Result<Self> {
        let mut members = BTreeSet::new();
        members.insert(0);
        for face in faces {
            let mask = to_mask(s, face)?;
            let mut sub = mask;
            loop {
                members.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & mask;
            }
        }
        Ok(SupportFamily { s, members })
    }

    /// Exactly the given sets; they must already be closed under subsets.
    pub fn from_members(s: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let members = sets
            .iter()
            .map(|f| to_mask(s, f))
            .collect::<Result<BTreeSet<u64>>>()?;
        let fam = SupportFamily { s, members };
        for &m in &fam.members {
            for j in 0..s {
                if m & (1 << j) != 0 && !fam.members.contains(&(m & !(1 << j))) {
                    return Err(Error::input(format!(
                        "support family is not closed under subsets: {:?} lacks {:?}",
                        mask_to_vec(m),
                        mask_to_vec(m & !(1 << j))
                    )));
                }
            }
        }
        Ok(fam)
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn contains(&self, set: &[usize]) -> bool {
        to_mask(self.s, set).is_ok_and(|m| self.members.contains(&m))
    }

    pub fn contains_mask(&self, mask: u64) -> bool {
        self.members.contains(&mask)
    }

    pub fn masks(&self) -> impl Iterator<Item = u64> + '_ {
        self.members.iter().copied()
    }

    pub fn sets(&self) -> Vec<Vec<usize>> {
        self.members.iter().map(|&m| mask_to_vec(m)).collect()
    }

    /// Inclusion-maximal members.
    pub fn maximal(&self) -> Vec<u64> {
        self.members
            .iter()
            .copied()
            .filter(|&m| !self.members.iter().any(|&o| o != m && o & m == m))
            .collect()
    }
}

pub(crate) fn to_mask(s: usize, set: &[usize]) -> Result<u64> {
    let mut m = 0u64;
    for &j in set {
        if j >= s || j >= 63 {
            return Err(Error::input(format!("support index {j} out of range 0..{s}")));
        }
        m |= 1 << j;
    }
    Ok(m)
}

pub(crate) fn mask_to_vec(m: u64) -> Vec<usize> {
    (0..64).filter(|j| m & (1u64 << j) != 0).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeProgram {
    pub objective: Vec<Q>,
    pub eq_rows: Vec<Row>,
    pub ge_rows: Vec<Row>,
    pub admissible_supports: SupportFamily,
    /// Empty means no hit condition.
    pub required_hit: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSolution {
    pub value: ExtendedRational,
    pub witness: Option<Vec<u64>>,
}

/// Serializable mirror of [`LatticeProgram`] used by the bindings.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeProgramSpec {
    pub s: usize,
    #[serde(with = "serde_q_vec")]
    pub objective: Vec<Q>,
    #[serde(default)]
    pub eq_rows: Vec<Row>,
    #[serde(default)]
    pub ge_rows: Vec<Row>,
    /// `None` means every subset is admissible.
    #[serde(default)]
    pub admissible_supports: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub required_hit: Vec<usize>,
}

impl TryFrom<LatticeProgramSpec> for LatticeProgram {
    type Error = Error;

    fn try_from(spec: LatticeProgramSpec) -> Result<Self> {
        let admissible_supports = match &spec.admissible_supports {
            None => SupportFamily::full(spec.s),
            Some(sets) => SupportFamily::from_faces(spec.s, sets)?,
        };
        Ok(LatticeProgram {
            objective: spec.objective,
            eq_rows: spec.eq_rows,
            ge_rows: spec.ge_rows,
            admissible_supports,
            required_hit: spec.required_hit,
        })
    }
}

impl LatticeProgram {
    pub fn s(&self) -> usize {
        self.objective.len()
    }

    pub fn validate(&self) -> Result<()> {
        let s = self.s();
        if self.admissible_supports.s() != s {
            return Err(Error::input("support family size does not match objective length"));
        }
        for (kind, rows) in [("equality", &self.eq_rows), ("covering", &self.ge_rows)] {
            for row in rows {
                if row.coeffs.len() != s {
                    return Err(Error::input(format!("{kind} row has wrong length")));
                }
                if row.rhs < 0 || row.coeffs.iter().any(|&a| a < 0) {
                    return Err(Error::input(format!(
                        "{kind} row has negative entries: {:?} / {}",
                        row.coeffs, row.rhs
                    )));
                }
            }
        }
        to_mask(s, &self.required_hit)?;
        Ok(())
    }

    pub fn objective_at(&self, nu: &[u64]) -> Q {
        self.objective
            .iter()
            .zip(nu)
            .fold(Q::zero(), |acc, (c, &v)| acc + c * Q::from_integer(v.into()))
    }

    pub fn is_feasible(&self, nu: &[u64]) -> bool {
        if nu.len() != self.s() {
            return false;
        }
        let support: u64 = nu
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .fold(0, |m, (j, _)| m | (1 << j));
        let hit = to_mask(self.s(), &self.required_hit).unwrap_or(0);
        self.eq_rows.iter().all(|r| r.eval(nu) == r.rhs as i128)
            && self.ge_rows.iter().all(|r| r.eval(nu) >= r.rhs as i128)
            && self.admissible_supports.contains_mask(support)
            && (hit == 0 || support & hit != 0)
    }
}

struct SupportSearch<'a> {
    vars: Vec<usize>,
    cost: Vec<i128>,
    ub: Vec<u64>,
    eq: &'a [Row],
    ge: &'a [Row],
    // suffix sums over remaining variables, per row
    eq_rem_min: Vec<Vec<i128>>,
    eq_rem_max: Vec<Vec<i128>>,
    ge_rem_max: Vec<Vec<i128>>,
    cost_rem_min: Vec<i128>,
    best: Option<(i128, Vec<u64>)>,
    current: Vec<u64>,
}

impl SupportSearch<'_> {
    fn dfs(&mut self, k: usize, eq_acc: &mut [i128], ge_acc: &mut [i128], cost_acc: i128) {
        if let Some((b, _)) = &self.best {
            if cost_acc + self.cost_rem_min[k] >= *b {
                return;
            }
        }
        for (i, r) in self.eq.iter().enumerate() {
            let need = r.rhs as i128 - eq_acc[i];
            if need < self.eq_rem_min[k][i] || need > self.eq_rem_max[k][i] {
                return;
            }
        }
        for (i, r) in self.ge.iter().enumerate() {
            if ge_acc[i] + self.ge_rem_max[k][i] < r.rhs as i128 {
                return;
            }
        }
        if k == self.vars.len() {
            self.best = Some((cost_acc, self.current.clone()));
            return;
        }
        let j = self.vars[k];
        for v in 1..=self.ub[k] {
            let vi = v as i128;
            for (i, r) in self.eq.iter().enumerate() {
                eq_acc[i] += r.coeffs[j] as i128 * vi;
            }
            for (i, r) in self.ge.iter().enumerate() {
                ge_acc[i] += r.coeffs[j] as i128 * vi;
            }
            self.current[j] = v;
            self.dfs(k + 1, eq_acc, ge_acc, cost_acc + self.cost[k] * vi);
            self.current[j] = 0;
            for (i, r) in self.eq.iter().enumerate() {
                eq_acc[i] -= r.coeffs[j] as i128 * vi;
            }
            for (i, r) in self.ge.iter().enumerate() {
                ge_acc[i] -= r.coeffs[j] as i128 * vi;
            }
        }
    }
}

fn lex_better(a: &(Q, Vec<u64>), b: &(Q, Vec<u64>)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 < b.1)
}

/// Minimizes `objective · ν` over the feasible lattice points of `p`.
pub fn minimize_lattice(p: &LatticeProgram) -> Result<LatticeSolution> {
    p.validate()?;
    let s = p.s();
    let scale: BigInt = p
        .objective
        .iter()
        .fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    let scale_q = Q::from_integer(scale.clone());
    let scaled: Vec<i128> = p
        .objective
        .iter()
        .map(|c| {
            (c * &scale_q)
                .to_integer()
                .to_i128()
                .ok_or_else(|| Error::input("objective coefficient too large"))
        })
        .collect::<Result<_>>()?;
    let hit = to_mask(s, &p.required_hit)?;

    let mut best: Option<(Q, Vec<u64>)> = None;
    for support in p.admissible_supports.masks() {
        if hit != 0 && support & hit == 0 {
            continue;
        }
        let vars = mask_to_vec(support);
        let mut ub = Vec::with_capacity(vars.len());
        let mut negative_ray = false;
        let mut infeasible = false;
        for &j in &vars {
            let eq_caps: Vec<u64> = p
                .eq_rows
                .iter()
                .filter(|r| r.coeffs[j] > 0)
                .map(|r| (r.rhs / r.coeffs[j]) as u64)
                .collect();
            let cap = if let Some(&c) = eq_caps.iter().min() {
                c
            } else {
                if scaled[j] < 0 {
                    negative_ray = true;
                }
                p.ge_rows
                    .iter()
                    .filter(|r| r.coeffs[j] > 0)
                    .map(|r| Integer::div_ceil(&r.rhs, &r.coeffs[j]) as u64)
                    .max()
                    .unwrap_or(1)
                    .max(1)
            };
            if cap < 1 {
                infeasible = true;
            }
            ub.push(cap);
        }
        if infeasible {
            continue;
        }
        let cost: Vec<i128> = vars.iter().map(|&j| scaled[j]).collect();
        let n = vars.len();
        let mut eq_rem_min = vec![vec![0i128; p.eq_rows.len()]; n + 1];
        let mut eq_rem_max = vec![vec![0i128; p.eq_rows.len()]; n + 1];
        let mut ge_rem_max = vec![vec![0i128; p.ge_rows.len()]; n + 1];
        let mut cost_rem_min = vec![0i128; n + 1];
        for k in (0..n).rev() {
            let j = vars[k];
            for (i, r) in p.eq_rows.iter().enumerate() {
                let a = r.coeffs[j] as i128;
                eq_rem_min[k][i] = eq_rem_min[k + 1][i] + a;
                eq_rem_max[k][i] = eq_rem_max[k + 1][i] + a * ub[k] as i128;
            }
            for (i, r) in p.ge_rows.iter().enumerate() {
                ge_rem_max[k][i] = ge_rem_max[k + 1][i] + r.coeffs[j] as i128 * ub[k] as i128;
            }
            let c = cost[k];
            cost_rem_min[k] = cost_rem_min[k + 1] + if c >= 0 { c } else { c * ub[k] as i128 };
        }
        let mut search = SupportSearch {
            vars,
            cost,
            ub,
            eq: &p.eq_rows,
            ge: &p.ge_rows,
            eq_rem_min,
            eq_rem_max,
            ge_rem_max,
            cost_rem_min,
            best: None,
            current: vec![0; s],
        };
        let mut eq_acc = vec![0i128; p.eq_rows.len()];
        let mut ge_acc = vec![0i128; p.ge_rows.len()];
        search.dfs(0, &mut eq_acc, &mut ge_acc, 0);
        let Some((v, w)) = search.best else { continue };
        if negative_ray {
            return Ok(LatticeSolution {
                value: ExtendedRational::NegInf,
                witness: None,
            });
        }
        let cand = (Q::new(v.into(), scale.clone()), w);
        if best.as_ref().is_none_or(|b| lex_better(&cand, b)) {
            best = Some(cand);
        }
    }

    Ok(match best {
        None => LatticeSolution {
            value: ExtendedRational::PosInf,
            witness: None,
        },
        Some((value, witness)) => {
            assert!(p.is_feasible(&witness), "lattice witness violates constraints");
            assert_eq!(p.objective_at(&witness), value, "lattice witness misses value");
            LatticeSolution {
                value: ExtendedRational::Finite(value),
                witness: Some(witness),
            }
        }
    })
}
