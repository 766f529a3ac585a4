//! Finite verification of `mld ≥ τ` through contact-locus codimensions.
//!
//! Both the exact-order and the covering-order codimensions are needed on
//! every grid point `(m, e)` of a box, so they are computed for the whole
//! box at once by an unbounded-knapsack recursion: one pass per maximal
//! nerve face, two layers for whether a divisor over `W` has been used.
//! Costs are `r·(k_j + 1)` (exact) and `z_j + r·(k_j + 1)` (covering), both
//! integers by validation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{PairCoefficients, ResolutionData};
use crate::error::{Error, Result};
use crate::lattice_opt::mask_to_vec;
use crate::rational::Q;

pub const DEFAULT_GRID_BUDGET: u64 = 4_000_000;

const POS: i128 = i128::MAX;
const NEG: i128 = i128::MIN;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub verdict: bool,
    pub exact_orders_pass: bool,
    pub covering_orders_pass: bool,
    /// Upper corner `(M, E)` of the checked box.
    pub box_m: Vec<u64>,
    pub box_e: u64,
    /// First violating `(m, e)` in row-major order, exact-order check first.
    pub counterexample: Option<(Vec<u64>, u64)>,
}

fn to_i128(v: &BigInt, what: &str) -> Result<i128> {
    v.to_i128()
        .ok_or_else(|| Error::input(format!("{what} does not fit the grid arithmetic")))
}

fn add(a: i128, c: i128) -> i128 {
    match a {
        POS => POS,
        NEG => NEG,
        _ => a.checked_add(c).expect("grid cost overflow"),
    }
}

fn relax(slot: &mut i128, v: i128) {
    if v < *slot {
        *slot = v;
    }
}

struct Grid {
    dims: Vec<u64>,
    strides: Vec<usize>,
    len: usize,
}

impl Grid {
    fn new(dims: Vec<u64>, budget: u64) -> Result<Self> {
        let mut len: u64 = 1;
        for &d in &dims {
            len = len.checked_mul(d + 1).filter(|&l| l <= budget).ok_or_else(|| Error::Budget {
                what: "bound-check grid".into(),
                required: format!(
                    "{} states",
                    dims.iter().map(|d| (d + 1).to_string()).collect::<Vec<_>>().join("×")
                ),
                budget,
            })?;
        }
        let mut strides = vec![1usize; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * (dims[i + 1] as usize + 1);
        }
        Ok(Grid { dims, strides, len: len as usize })
    }

    fn coords(&self, mut idx: usize) -> Vec<u64> {
        self.strides
            .iter()
            .map(|&st| {
                let c = idx / st;
                idx %= st;
                c as u64
            })
            .collect()
    }

    /// Index of `s − col`, or `None` when a coordinate would go negative.
    fn minus(&self, s: &[u64], col: &[u64]) -> Option<usize> {
        let mut idx = 0;
        for ((&a, &b), &st) in s.iter().zip(col).zip(&self.strides) {
            if b > a {
                return None;
            }
            idx += (a - b) as usize * st;
        }
        Some(idx)
    }

    fn minus_clamped(&self, s: &[u64], col: &[u64]) -> usize {
        s.iter()
            .zip(col)
            .zip(&self.strides)
            .map(|((&a, &b), &st)| a.saturating_sub(b) as usize * st)
            .sum()
    }
}

struct Item {
    col: Vec<u64>,
    cost: i128,
    in_w: bool,
}

/// Minimum cost with `Σ ν_j col_j = s` for every `s`, per hit flag.
fn exact_pass(grid: &Grid, items: &[Item]) -> Vec<[i128; 2]> {
    let mut f = vec![[POS, POS]; grid.len];
    f[0][0] = 0;
    let moving: Vec<&Item> = items.iter().filter(|it| it.col.iter().any(|&c| c > 0)).collect();
    for idx in 1..grid.len {
        let s = grid.coords(idx);
        let mut cur = [POS, POS];
        for it in &moving {
            let Some(p) = grid.minus(&s, &it.col) else { continue };
            for h in 0..2 {
                if f[p][h] == POS {
                    continue;
                }
                let nh = if it.in_w { 1 } else { h };
                relax(&mut cur[nh], add(f[p][h], it.cost));
            }
        }
        f[idx] = cur;
    }
    for it in items.iter().filter(|it| it.col.iter().all(|&c| c == 0)) {
        for v in f.iter_mut() {
            for h in 0..2 {
                if v[h] == POS {
                    continue;
                }
                let nh = if it.in_w { 1 } else { h };
                let via = if it.cost < 0 { NEG } else { add(v[h], it.cost) };
                relax(&mut v[nh], via);
            }
        }
    }
    f
}

/// Minimum cost with `Σ ν_j col_j ≥ s` for every `s`, per hit flag.
fn covering_pass(grid: &Grid, items: &[Item]) -> Vec<[i128; 2]> {
    let mut g = vec![[POS, POS]; grid.len];
    for idx in 0..grid.len {
        let s = grid.coords(idx);
        let mut cur = if idx == 0 { [0, POS] } else { [POS, POS] };
        let mut self_loops = Vec::new();
        for it in items {
            let p = grid.minus_clamped(&s, &it.col);
            if p == idx {
                self_loops.push(it);
                continue;
            }
            for h in 0..2 {
                if g[p][h] == POS {
                    continue;
                }
                let nh = if it.in_w { 1 } else { h };
                relax(&mut cur[nh], add(g[p][h], it.cost));
            }
        }
        for it in self_loops {
            if it.in_w && cur[0] != POS {
                let via = add(cur[0], it.cost.max(0));
                relax(&mut cur[1], via);
            }
        }
        g[idx] = cur;
    }
    for it in items.iter().filter(|it| it.cost < 0) {
        for v in g.iter_mut() {
            for h in 0..2 {
                if v[h] != POS {
                    v[if it.in_w { 1 } else { h }] = NEG;
                }
            }
        }
    }
    g
}

/// Checks both order conditions on the explicit box and reports whether
/// `mld_on_w(data, q) ≥ τ`.
pub fn mld_bound_check(data: &ResolutionData, q: &PairCoefficients, tau: &Q) -> Result<BoundCheck> {
    mld_bound_check_with_budget(data, q, tau, DEFAULT_GRID_BUDGET)
}

pub fn mld_bound_check_with_budget(
    data: &ResolutionData,
    q: &PairCoefficients,
    tau: &Q,
    grid_budget: u64,
) -> Result<BoundCheck> {
    data.validate()?;
    data.check_q(q)?;
    data.check_meets_w()?;
    if !q.w_is_proper {
        return Err(Error::precondition("the bound check needs a proper closed subset W"));
    }
    if let Some(i) = q.q.iter().position(|v| v.is_negative()) {
        return Err(Error::input(format!("coefficient q_{i} is negative; the covering check needs q ≥ 0")));
    }
    if tau.is_negative() {
        return Err(Error::input("τ must be nonnegative"));
    }
    if !data.in_w.iter().any(|&b| b) {
        return Err(Error::input("W-data empty: no divisor has center inside W"));
    }
    let nerve = data.nerve_family()?;
    let faces = nerve.maximal();
    for j in (0..data.s).filter(|&j| !data.in_w[j]) {
        let adjacent = faces
            .iter()
            .any(|&f| f >> j & 1 == 1 && (0..data.s).any(|i| data.in_w[i] && f >> i & 1 == 1));
        if !adjacent {
            return Err(Error::input(format!(
                "divisor {j} shares no nerve face with a divisor over W"
            )));
        }
    }

    // Scale L turns every threshold into an integer.
    let r_big = BigInt::from(data.r);
    let l = q
        .q
        .iter()
        .chain(std::iter::once(tau))
        .fold(r_big.clone(), |acc, v| acc.lcm(v.denom()));
    let lq = Q::from_integer(l.clone());
    let one = Q::from_integer(1.into());

    let alpha = {
        let worst = (0..data.s)
            .map(|j| {
                let qy = data
                    .y
                    .iter()
                    .zip(&q.q)
                    .fold(Q::zero(), |acc, (row, qi)| acc + qi * Q::from_integer(row[j].into()));
                (&data.k[j] + &one).abs() + qy + tau.abs()
            })
            .max()
            .unwrap_or_else(Q::zero);
        to_i128(&(worst * &lq).ceil().to_integer(), "box size")? + 1
    };
    let alpha = u64::try_from(alpha).map_err(|_| Error::input("box size overflow"))?;
    let span = |row: &[u64]| -> Result<u64> {
        let mx = row.iter().copied().max().unwrap_or(0);
        mx.checked_mul(alpha)
            .and_then(|v| v.checked_add(mx))
            .ok_or_else(|| Error::input("box size overflow"))
    };
    let box_m: Vec<u64> = data.y.iter().map(|row| span(row)).collect::<Result<_>>()?;
    let box_e = span(&data.z)?;
    let mut dims = box_m.clone();
    dims.push(box_e);
    let grid = Grid::new(dims, grid_budget)?;

    let exact_cost = |j: usize| -> Result<i128> {
        to_i128(&((&data.k[j] + &one) * Q::from_integer(r_big.clone())).to_integer(), "cost")
    };
    let mut exact = vec![POS; grid.len];
    let mut cover = vec![POS; grid.len];
    for face in &faces {
        let members = mask_to_vec(*face);
        let mut ex_items = Vec::with_capacity(members.len());
        let mut cov_items = Vec::with_capacity(members.len());
        for &j in &members {
            let mut col: Vec<u64> = data.y.iter().map(|row| row[j]).collect();
            col.push(data.z[j]);
            let c = exact_cost(j)?;
            cov_items.push(Item { col: col.clone(), cost: c + data.z[j] as i128, in_w: data.in_w[j] });
            ex_items.push(Item { col, cost: c, in_w: data.in_w[j] });
        }
        for (idx, v) in exact_pass(&grid, &ex_items).into_iter().enumerate() {
            relax(&mut exact[idx], v[1]);
        }
        for (idx, v) in covering_pass(&grid, &cov_items).into_iter().enumerate() {
            relax(&mut cover[idx], v[1]);
        }
    }

    // value/r ≥ [e/r] + Σ q_i m_i + τ, multiplied through by L.
    let per_r = to_i128(&(&l / &r_big), "scale")?;
    let lq_i: Vec<i128> = q
        .q
        .iter()
        .map(|v| to_i128(&(v * &lq).to_integer(), "coefficient"))
        .collect::<Result<_>>()?;
    let l_tau = to_i128(&(tau * &lq).to_integer(), "τ")?;
    let threshold = |s: &[u64]| -> i128 {
        let k = lq_i.len();
        lq_i.iter().zip(&s[..k]).map(|(a, &m)| a * m as i128).sum::<i128>() + l_tau
    };
    let holds = |value: i128, rhs: i128| match value {
        POS => true,
        NEG => false,
        v => v * per_r >= rhs,
    };

    let mut first_exact = None;
    let mut first_cover = None;
    for idx in 0..grid.len {
        if first_exact.is_some() && first_cover.is_some() {
            break;
        }
        let s = grid.coords(idx);
        let base = threshold(&s);
        let e = *s.last().expect("grid has the e axis") as i128;
        if first_exact.is_none() && !holds(exact[idx], base) {
            first_exact = Some(idx);
        }
        if first_cover.is_none() && !holds(cover[idx], base + e * per_r) {
            first_cover = Some(idx);
        }
    }
    let counterexample = first_exact.or(first_cover).map(|idx| {
        let mut s = grid.coords(idx);
        let e = s.pop().expect("grid has the e axis");
        (s, e)
    });
    debug_assert_eq!(grid.dims.len(), data.k_ideals() + 1);
    Ok(BoundCheck {
        verdict: first_exact.is_none() && first_cover.is_none(),
        exact_orders_pass: first_exact.is_none(),
        covering_orders_pass: first_cover.is_none(),
        box_m,
        box_e,
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};
    use crate::resolution::mld_on_w;
    use crate::extended::ExtendedRational;

    fn blowup() -> ResolutionData {
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

    fn pc(v: Q) -> PairCoefficients {
        PairCoefficients::new(vec![v], true)
    }

    #[test]
    fn blowup_thresholds() {
        let d = blowup();
        assert!(mld_bound_check(&d, &pc(qf(1, 2)), &qf(3, 2)).unwrap().verdict);
        let res = mld_bound_check(&d, &pc(qf(1, 2)), &q(2)).unwrap();
        assert!(!res.verdict);
        assert_eq!(res.counterexample, Some((vec![1], 0)));
        assert!(mld_bound_check(&d, &pc(q(0)), &q(2)).unwrap().verdict);
        assert!(!mld_bound_check(&d, &pc(q(0)), &qf(5, 2)).unwrap().verdict);
    }

    #[test]
    fn negative_discrepancy_off_w_is_caught() {
        // Divisor 1 lies off W with a = -1; the pair {0,1} meets.
        let d = ResolutionData {
            ambient_dim: 2,
            r: 1,
            s: 2,
            k: vec![q(1), q(0)],
            y: vec![vec![0, 2]],
            z: vec![0, 0],
            in_w: vec![true, false],
            eq_w: vec![true, false],
            nerve: vec![vec![0, 1]],
            meets_w: vec![true, true],
        };
        let qq = pc(q(1));
        assert_eq!(mld_on_w(&d, &qq).unwrap().value, ExtendedRational::NegInf);
        let res = mld_bound_check(&d, &qq, &q(0)).unwrap();
        assert!(!res.verdict);
    }

    #[test]
    fn rejects_bad_inputs() {
        let d = blowup();
        assert!(matches!(mld_bound_check(&d, &pc(q(-1)), &q(0)), Err(Error::Input(_))));
        assert!(matches!(mld_bound_check(&d, &pc(q(0)), &q(-1)), Err(Error::Input(_))));
        assert!(matches!(
            mld_bound_check_with_budget(&d, &pc(qf(1, 7)), &q(1), 5),
            Err(Error::Budget { .. })
        ));
    }
}
