//! Depth-first branch-and-bound over exact LP relaxations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::simplex::{solve_lp, Cmp, LinRow, LpOutcome};
use crate::error::{Error, Result};
use crate::rational::Q;

pub const DEFAULT_NODE_BUDGET: usize = 200_000;

/// Minimize `objective · x` over integer `x ≥ lower` subject to `rows`.
#[derive(Clone, Debug)]
pub struct IntProgram {
    pub objective: Vec<Q>,
    pub rows: Vec<LinRow>,
    pub lower: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum IlpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Q, point: Vec<i64> },
}

#[derive(Clone)]
struct Node {
    lo: Vec<i64>,
    hi: Vec<Option<i64>>,
}

impl IntProgram {
    pub fn n(&self) -> usize {
        self.objective.len()
    }

    fn relax(&self, node: &Node, objective: &[Q]) -> LpOutcome {
        let n = self.n();
        let mut rows = Vec::with_capacity(self.rows.len() + n);
        for r in &self.rows {
            let shift = r
                .coeffs
                .iter()
                .zip(&node.lo)
                .fold(Q::zero(), |acc, (a, &l)| acc + a * Q::from_integer(l.into()));
            rows.push(LinRow::new(r.coeffs.clone(), r.cmp, &r.rhs - shift));
        }
        for (j, hi) in node.hi.iter().enumerate() {
            if let Some(h) = hi {
                let mut c = vec![Q::zero(); n];
                c[j] = Q::from_integer(1.into());
                rows.push(LinRow::new(c, Cmp::Le, Q::from_integer((h - node.lo[j]).into())));
            }
        }
        match solve_lp(n, objective, &rows) {
            LpOutcome::Optimal { value, point } => {
                let base = objective
                    .iter()
                    .zip(&node.lo)
                    .fold(Q::zero(), |acc, (c, &l)| acc + c * Q::from_integer(l.into()));
                let point = point
                    .into_iter()
                    .zip(&node.lo)
                    .map(|(y, &l)| y + Q::from_integer(l.into()))
                    .collect();
                LpOutcome::Optimal {
                    value: value + base,
                    point,
                }
            }
            other => other,
        }
    }

    /// Plain branch-and-bound for the optimal value; the first optimum
    /// found is returned.
    pub fn solve(&self, node_budget: usize) -> Result<IlpOutcome> {
        self.solve_with(&self.objective, node_budget)
    }

    fn solve_with(&self, objective: &[Q], node_budget: usize) -> Result<IlpOutcome> {
        let n = self.n();
        let root = Node {
            lo: self.lower.clone(),
            hi: vec![None; n],
        };
        // The objective is integral on lattice points once scaled by this.
        let scale: BigInt = objective
            .iter()
            .fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let mut best: Option<(Q, Vec<i64>)> = None;
        let mut stack = vec![root];
        let mut visited = 0usize;
        let mut first = true;
        while let Some(node) = stack.pop() {
            visited += 1;
            if visited > node_budget {
                return Err(Error::Budget {
                    what: "branch-and-bound".into(),
                    required: format!("more than {node_budget} nodes"),
                    budget: node_budget as u64,
                });
            }
            let (value, point) = match self.relax(&node, objective) {
                LpOutcome::Infeasible => {
                    first = false;
                    continue;
                }
                LpOutcome::Unbounded => {
                    if first {
                        return Ok(IlpOutcome::Unbounded);
                    }
                    return Err(Error::InvariantViolation(
                        "LP relaxation became unbounded below a bounded root".into(),
                    ));
                }
                LpOutcome::Optimal { value, point } => (value, point),
            };
            first = false;
            if let Some((b, _)) = &best {
                // Only strictly better lattice values survive: they are at
                // least 1/scale below the incumbent.
                let scaled_bound = (&value * Q::from_integer(scale.clone())).ceil();
                let scaled_best = b * Q::from_integer(scale.clone());
                if scaled_bound >= scaled_best {
                    continue;
                }
            }
            match point.iter().position(|x| !x.is_integer()) {
                None => {
                    let ip: Vec<i64> = point
                        .iter()
                        .map(|x| x.to_integer().to_i64().expect("lattice point fits in i64"))
                        .collect();
                    best = Some((value, ip));
                }
                Some(j) => {
                    let f = point[j].floor().to_integer().to_i64().ok_or_else(|| {
                        Error::input("branch-and-bound coordinate out of range")
                    })?;
                    let mut up = node.clone();
                    up.lo[j] = f + 1;
                    let mut down = node;
                    if f >= down.lo[j] {
                        down.hi[j] = Some(down.hi[j].map_or(f, |h| h.min(f)));
                        stack.push(up);
                        stack.push(down);
                    } else {
                        stack.push(up);
                    }
                }
            }
        }
        Ok(match best {
            None => IlpOutcome::Infeasible,
            Some((value, point)) => IlpOutcome::Optimal { value, point },
        })
    }

    /// Lexicographically smallest lattice point with objective at most `cap`.
    pub fn lexmin_with_cap(&self, cap: &Q, node_budget: usize) -> Result<Option<Vec<i64>>> {
        let n = self.n();
        let mut prog = self.clone();
        prog.rows
            .push(LinRow::new(self.objective.clone(), Cmp::Le, cap.clone()));
        let mut fixed = Vec::with_capacity(n);
        for k in 0..n {
            let mut unit = vec![Q::zero(); n];
            unit[k] = Q::from_integer(1.into());
            match prog.solve_with(&unit, node_budget)? {
                IlpOutcome::Optimal { point, .. } => {
                    fixed.push(point[k]);
                    prog.rows
                        .push(LinRow::new(unit, Cmp::Eq, Q::from_integer(point[k].into())));
                }
                IlpOutcome::Infeasible => return Ok(None),
                IlpOutcome::Unbounded => {
                    return Err(Error::InvariantViolation(
                        "coordinate minimization unbounded over a region bounded below".into(),
                    ))
                }
            }
        }
        Ok(Some(fixed))
    }
}

pub fn to_q_point(p: &[i64]) -> Vec<Q> {
    p.iter().map(|&v| Q::from_integer(v.into())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn row(c: &[i64], cmp: Cmp, rhs: i64) -> LinRow {
        LinRow::new(c.iter().map(|&v| q(v)).collect(), cmp, q(rhs))
    }

    fn brute(prog: &IntProgram, box_hi: i64) -> Option<(Q, Vec<i64>)> {
        let n = prog.n();
        let mut best: Option<(Q, Vec<i64>)> = None;
        let mut x = prog.lower.clone();
        loop {
            let xq = to_q_point(&x);
            if prog.rows.iter().all(|r| r.holds(&xq)) {
                let v = prog
                    .objective
                    .iter()
                    .zip(&xq)
                    .fold(Q::zero(), |a, (c, v)| a + c * v);
                if best.as_ref().is_none_or(|(b, _)| v < *b) {
                    best = Some((v, x.clone()));
                }
            }
            let mut k = 0;
            loop {
                if k == n {
                    return best;
                }
                x[k] += 1;
                if x[k] <= box_hi {
                    break;
                }
                x[k] = prog.lower[k];
                k += 1;
            }
        }
    }

    #[test]
    fn knapsack_like() {
        // min -5x - 4y  s.t. 6x + 4y <= 24, x + 2y <= 6
        let prog = IntProgram {
            objective: vec![q(-5), q(-4)],
            rows: vec![row(&[6, 4], Cmp::Le, 24), row(&[1, 2], Cmp::Le, 6)],
            lower: vec![0, 0],
        };
        let got = prog.solve(1000).unwrap();
        let (bv, _) = brute(&prog, 10).unwrap();
        match got {
            IlpOutcome::Optimal { value, .. } => assert_eq!(value, bv),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fractional_objective_and_lexmin() {
        // min x/2 + y/3 s.t. x + y >= 3 ; optimum 1 at (0,3); lexmin of optimum is (0,3)
        let prog = IntProgram {
            objective: vec![qf(1, 2), qf(1, 3)],
            rows: vec![row(&[1, 1], Cmp::Ge, 3)],
            lower: vec![0, 0],
        };
        match prog.solve(1000).unwrap() {
            IlpOutcome::Optimal { value, .. } => {
                assert_eq!(value, q(1));
                assert_eq!(prog.lexmin_with_cap(&value, 1000).unwrap(), Some(vec![0, 3]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unbounded_root() {
        let prog = IntProgram {
            objective: vec![q(-1)],
            rows: vec![],
            lower: vec![0],
        };
        assert_eq!(prog.solve(10).unwrap(), IlpOutcome::Unbounded);
    }

    #[test]
    fn parity_infeasible() {
        // 2x = 3 has no integer solution; the LP branches once and closes.
        let prog = IntProgram {
            objective: vec![q(1)],
            rows: vec![row(&[2], Cmp::Eq, 3)],
            lower: vec![0],
        };
        assert_eq!(prog.solve(10).unwrap(), IlpOutcome::Infeasible);
    }
}
