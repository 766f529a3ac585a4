//! Newton lifting of truncated arcs on a hypersurface, and the fiber
//! stability check for jets of fixed Jacobian order.

use num_traits::Zero;

use super::arc::{series_ord, TruncatedArc};
use super::field::Field;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::rational::Q;

fn describe_ord(o: Option<usize>) -> String {
    o.map_or_else(|| "infinite".to_string(), |v| v.to_string())
}

/// Extends `γ` (order `m`) to an arc of order `target` with
/// `f ≡ 0 mod t^{target+1}`, assuming `ord f(γ̃) ≥ m+e+1` for the zero
/// extension `γ̃` and Jacobian order exactly `e`.
///
/// At order `o` the residual coefficient `r_o` is cancelled by adding
/// `-r_o / J_e[i] · t^{o-e}` to coordinate `i`, the first one whose
/// gradient has a nonzero `t^e` coefficient.
pub fn newton_lift(f: &Poly, gamma: &TruncatedArc, e: usize, target: usize) -> Result<TruncatedArc> {
    let d = gamma.d();
    let m = gamma.order();
    if f.nvars() != d {
        return Err(Error::input(format!(
            "polynomial in {} variables, arc with {d} coordinates",
            f.nvars()
        )));
    }
    if f.is_zero() {
        return Err(Error::input("the zero polynomial defines no hypersurface"));
    }
    if e > m {
        return Err(Error::precondition(format!("Jacobian order e = {e} exceeds the jet level m = {m}")));
    }
    if target < m {
        return Err(Error::input(format!("target order {target} is below the arc order {m}")));
    }
    let field = gamma.field();
    let fk = f.to_field(field)?;
    let work = target.max(m + e);
    let mut arc = gamma.zero_extend(work);

    let residual = arc.apply(&fk)?;
    let ord_f = series_ord(&residual);
    if ord_f.is_some_and(|o| o < m + e + 1) {
        return Err(Error::precondition(format!(
            "ord f(γ) = {} < m+e+1 = {}",
            describe_ord(ord_f),
            m + e + 1
        )));
    }
    let grad = arc.gradient(&fk)?;
    let ord_j = grad.iter().filter_map(|s| series_ord(s)).min();
    if ord_j != Some(e) {
        if let Field::Prime(p) = field {
            let lifted = TruncatedArc::new(Field::Rationals, work, arc.series().to_vec())?;
            if f.field() == Field::Rationals && lifted.jacobian_order(f)? == Some(e) {
                return Err(Error::LiftingObstruction(format!(
                    "the t^{e} coefficients of the gradient vanish modulo {p}"
                )));
            }
        }
        return Err(Error::precondition(format!(
            "ord of the Jacobian along γ is {}, expected e = {e}",
            describe_ord(ord_j)
        )));
    }
    let (i, lead) = grad
        .iter()
        .enumerate()
        .find_map(|(i, s)| (!s[e].is_zero()).then(|| (i, s[e].clone())))
        .expect("Jacobian order e has a nonzero t^e coefficient");
    let inv = field.inv(&lead).ok_or_else(|| {
        Error::LiftingObstruction("leading Jacobian coefficient is not invertible".into())
    })?;

    for o in (m + e + 1)..=target {
        let r = arc.apply(&fk)?[o].clone();
        if r.is_zero() {
            continue;
        }
        let delta = field.neg(&field.mul(&r, &inv));
        let cur = arc.coefficient(i, o - e).clone();
        arc.set_coefficient(i, o - e, field.add(&cur, &delta));
    }
    let out = arc.truncate(target);
    let check = out.apply(&fk)?;
    assert!(check.iter().all(|c| c.is_zero()), "lifted arc must solve f modulo t^(M+1)");
    assert!(out.agrees_with(gamma, m), "lifted arc must extend the input jet");
    Ok(out)
}

fn for_each_tuple(len: usize, p: u64, mut visit: impl FnMut(&[u64]) -> bool) -> bool {
    let mut digits = vec![0u64; len];
    loop {
        if !visit(&digits) {
            return false;
        }
        let mut k = 0;
        loop {
            if k == len {
                return true;
            }
            digits[k] += 1;
            if digits[k] < p {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

fn jet_from_digits(field: Field, d: usize, order: usize, levels: &[u64]) -> Result<TruncatedArc> {
    let series = (0..d)
        .map(|j| {
            (0..=order)
                .map(|l| Q::from_integer(levels.get(l * d + j).copied().unwrap_or(0).into()))
                .collect()
        })
        .collect();
    TruncatedArc::new(field, order, series)
}

/// Over `F_p`: (a) any two level-`(m+e)` jets with equal level-`m` part,
/// one of them on the hypersurface with Jacobian order `e`, are both on
/// it; (b) each such jet lifts to order `m+2e+1`.
pub fn check_fiber_stability(f: &Poly, m: usize, e: usize, p: u64, budget: u64) -> Result<bool> {
    let field = Field::prime(p)?;
    if e > m {
        return Err(Error::precondition(format!("e = {e} exceeds m = {m}")));
    }
    let d = f.nvars();
    let total = (p as u128).checked_pow((d * (m + e + 1)) as u32);
    if total.is_none_or(|t| t > budget as u128) {
        return Err(Error::Budget {
            what: format!("fiber stability at level {} over F_{p}", m + e),
            required: format!("p^(d(m+e+1)) = {p}^{} evaluations", d * (m + e + 1)),
            budget,
        });
    }
    let fk = f.to_field(field)?;
    let top = m + e;
    let mut failure: Option<Error> = None;
    let ok = for_each_tuple(d * (m + 1), p, |low| {
        let run = || -> Result<bool> {
            let v = jet_from_digits(field, d, m, low)?;
            if v.jacobian_order(&fk)? != Some(e) {
                return Ok(true);
            }
            let mut good = 0u64;
            let mut seen = 0u64;
            for_each_tuple(d * e, p, |high| {
                let mut all = low.to_vec();
                all.extend_from_slice(high);
                let w = jet_from_digits(field, d, top, &all).expect("reduced digits");
                seen += 1;
                if w.apply(&fk).expect("same field").iter().all(|c| c.is_zero()) {
                    good += 1;
                }
                true
            });
            if good == 0 {
                return Ok(true);
            }
            if good != seen {
                return Ok(false);
            }
            match newton_lift(&fk, &v, e, m + 2 * e + 1) {
                Ok(_) => Ok(true),
                Err(Error::Precondition(_)) | Err(Error::LiftingObstruction(_)) => Ok(false),
                Err(other) => Err(other),
            }
        };
        match run() {
            Ok(b) => b,
            Err(err) => {
                failure = Some(err);
                false
            }
        }
    });
    match failure {
        Some(err) => Err(err),
        None => Ok(ok),
    }
}
