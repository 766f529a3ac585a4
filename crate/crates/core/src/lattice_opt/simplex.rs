//! Dense two-phase simplex over exact rationals (Bland's rule).
//!
//! Problems here have a handful of variables and rows, so the tableau is
//! rebuilt for every solve and reduced costs are recomputed per pivot.

use num_traits::{Signed, Zero};

use crate::rational::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct LinRow {
    pub coeffs: Vec<Q>,
    pub cmp: Cmp,
    pub rhs: Q,
}

impl LinRow {
    pub fn new(coeffs: Vec<Q>, cmp: Cmp, rhs: Q) -> Self {
        LinRow { coeffs, cmp, rhs }
    }

    pub fn holds(&self, x: &[Q]) -> bool {
        let lhs = self
            .coeffs
            .iter()
            .zip(x)
            .fold(Q::zero(), |acc, (a, v)| acc + a * v);
        match self.cmp {
            Cmp::Le => lhs <= self.rhs,
            Cmp::Ge => lhs >= self.rhs,
            Cmp::Eq => lhs == self.rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Q, point: Vec<Q> },
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Q {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = &*v / &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = &*v - &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations for `cost` restricted to `allowed` columns.
    /// Returns `false` when the objective is unbounded below.
    fn optimize(&mut self, cost: &[Q], allowed: &[bool]) -> bool {
        loop {
            let mut entering = None;
            for j in 0..self.width {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut reduced = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        reduced -= &cost[b] * &self.rows[i][j];
                    }
                }
                if reduced.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return true };

            let mut leave: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }

    fn objective(&self, cost: &[Q]) -> Q {
        self.basis
            .iter()
            .enumerate()
            .fold(Q::zero(), |acc, (i, &b)| acc + &cost[b] * self.rhs(i))
    }
}

/// Minimizes `objective · x` over `x ≥ 0` subject to `rows`.
pub fn solve_lp(n: usize, objective: &[Q], rows: &[LinRow]) -> LpOutcome {
    assert_eq!(objective.len(), n);
    let m = rows.len();
    let slack_count = rows.iter().filter(|r| r.cmp != Cmp::Eq).count();
    let art0 = n + slack_count;
    let width = art0 + m;

    let mut tab_rows = Vec::with_capacity(m);
    let mut slack = n;
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row.coeffs.len(), n);
        let mut r = vec![Q::zero(); width + 1];
        r[..n].clone_from_slice(&row.coeffs);
        match row.cmp {
            Cmp::Le => {
                r[slack] = Q::from_integer(1.into());
                slack += 1;
            }
            Cmp::Ge => {
                r[slack] = Q::from_integer((-1).into());
                slack += 1;
            }
            Cmp::Eq => {}
        }
        r[width] = row.rhs.clone();
        if r[width].is_negative() {
            for v in r.iter_mut() {
                *v = -&*v;
            }
        }
        r[art0 + i] = Q::from_integer(1.into());
        tab_rows.push(r);
    }
    let mut tab = Tableau {
        rows: tab_rows,
        basis: (art0..art0 + m).collect(),
        width,
    };

    let phase1_cost: Vec<Q> = (0..width)
        .map(|j| {
            if j >= art0 {
                Q::from_integer(1.into())
            } else {
                Q::zero()
            }
        })
        .collect();
    let all = vec![true; width];
    tab.optimize(&phase1_cost, &all);
    if tab.objective(&phase1_cost).is_positive() {
        return LpOutcome::Infeasible;
    }

    // Drive remaining artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] >= art0 {
            match (0..art0).find(|&j| !tab.rows[i][j].is_zero()) {
                Some(j) => {
                    tab.pivot(i, j);
                    i += 1;
                }
                None => {
                    tab.rows.remove(i);
                    tab.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }

    let mut cost = vec![Q::zero(); width];
    cost[..n].clone_from_slice(objective);
    let allowed: Vec<bool> = (0..width).map(|j| j < art0).collect();
    if !tab.optimize(&cost, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut point = vec![Q::zero(); n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            point[b] = tab.rhs(i).clone();
        }
    }
    let value = objective
        .iter()
        .zip(&point)
        .fold(Q::zero(), |acc, (c, x)| acc + c * x);
    LpOutcome::Optimal { value, point }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn row(c: &[i64], cmp: Cmp, rhs: i64) -> LinRow {
        LinRow::new(c.iter().map(|&v| q(v)).collect(), cmp, q(rhs))
    }

    #[test]
    fn small_optimum() {
        // min -x - y  s.t. x + 2y <= 4, 3x + y <= 6
        let rows = [row(&[1, 2], Cmp::Le, 4), row(&[3, 1], Cmp::Le, 6)];
        match solve_lp(2, &[q(-1), q(-1)], &rows) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, qf(-14, 5));
                assert_eq!(point, vec![qf(8, 5), qf(6, 5)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let rows = [row(&[1, 1], Cmp::Le, 1), row(&[1, 1], Cmp::Ge, 3)];
        assert_eq!(solve_lp(2, &[q(0), q(0)], &rows), LpOutcome::Infeasible);
        let rows = [row(&[1, -1], Cmp::Eq, 0)];
        assert_eq!(solve_lp(2, &[q(-1), q(0)], &rows), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_equalities() {
        let rows = [row(&[1, 1], Cmp::Eq, 2), row(&[2, 2], Cmp::Eq, 4)];
        match solve_lp(2, &[q(1), q(3)], &rows) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_rhs_rows() {
        // min y - x  s.t. x - y >= -2, x <= 3: optimum at (3, 0)
        let rows = [row(&[1, -1], Cmp::Ge, -2), row(&[1, 0], Cmp::Le, 3)];
        match solve_lp(2, &[q(-1), q(1)], &rows) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(-3)),
            other => panic!("{other:?}"),
        }
    }
}
