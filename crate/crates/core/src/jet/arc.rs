//! Tuples of power series truncated at a fixed order.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::field::Field;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::rational::{format_q, parse_q, Q};

/// `d` power series with coefficients of `t^0..=t^order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ArcRepr", into = "ArcRepr")]
pub struct TruncatedArc {
    field: Field,
    order: usize,
    series: Vec<Vec<Q>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArcRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    prime: Option<u64>,
    order: usize,
    series: Vec<Vec<String>>,
}

impl TryFrom<ArcRepr> for TruncatedArc {
    type Error = Error;

    fn try_from(r: ArcRepr) -> Result<Self> {
        let field = match r.prime {
            None => Field::Rationals,
            Some(p) => Field::prime(p)?,
        };
        let series = r
            .series
            .iter()
            .map(|s| s.iter().map(|c| parse_q(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        TruncatedArc::new(field, r.order, series)
    }
}

impl From<TruncatedArc> for ArcRepr {
    fn from(a: TruncatedArc) -> Self {
        ArcRepr {
            prime: a.field.modulus(),
            order: a.order,
            series: a
                .series
                .iter()
                .map(|s| s.iter().map(format_q).collect())
                .collect(),
        }
    }
}

/// Truncated product of two series of equal length.
pub fn series_mul(field: Field, a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len();
    let mut out = vec![Q::zero(); n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if !y.is_zero() {
                out[i + j] = field.add(&out[i + j], &field.mul(x, y));
            }
        }
    }
    out
}

/// Index of the first nonzero coefficient, `None` for the zero series.
pub fn series_ord(s: &[Q]) -> Option<usize> {
    s.iter().position(|c| !c.is_zero())
}

impl TruncatedArc {
    /// Series shorter than `order + 1` are padded with zeros.
    pub fn new(field: Field, order: usize, series: Vec<Vec<Q>>) -> Result<Self> {
        if series.is_empty() {
            return Err(Error::input("an arc needs at least one coordinate"));
        }
        let mut out = Vec::with_capacity(series.len());
        for (j, s) in series.into_iter().enumerate() {
            if s.len() > order + 1 {
                return Err(Error::input(format!(
                    "coordinate {j} has {} coefficients, more than order {order} allows",
                    s.len()
                )));
            }
            let mut r = s.iter().map(|c| field.reduce(c)).collect::<Result<Vec<_>>>()?;
            r.resize(order + 1, Q::zero());
            out.push(r);
        }
        Ok(TruncatedArc { field, order, series: out })
    }

    pub fn d(&self) -> usize {
        self.series.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn series(&self) -> &[Vec<Q>] {
        &self.series
    }

    pub fn coefficient(&self, j: usize, l: usize) -> &Q {
        &self.series[j][l]
    }

    pub(crate) fn set_coefficient(&mut self, j: usize, l: usize, v: Q) {
        self.series[j][l] = v;
    }

    /// Same arc padded with zero coefficients up to `order`.
    pub fn zero_extend(&self, order: usize) -> TruncatedArc {
        let mut series = self.series.clone();
        for s in &mut series {
            s.resize(order + 1, Q::zero());
        }
        TruncatedArc { field: self.field, order, series }
    }

    pub fn truncate(&self, order: usize) -> TruncatedArc {
        let series = self
            .series
            .iter()
            .map(|s| s.iter().take(order + 1).cloned().collect())
            .collect();
        TruncatedArc { field: self.field, order: order.min(self.order), series }
    }

    /// Whether the two arcs agree modulo `t^{level+1}`.
    pub fn agrees_with(&self, other: &TruncatedArc, level: usize) -> bool {
        self.d() == other.d()
            && self.series.iter().zip(&other.series).all(|(a, b)| {
                (0..=level).all(|l| {
                    a.get(l).cloned().unwrap_or_else(Q::zero) == b.get(l).cloned().unwrap_or_else(Q::zero)
                })
            })
    }

    /// The series `f(γ)` modulo `t^{order+1}`.
    pub fn apply(&self, f: &Poly) -> Result<Vec<Q>> {
        if f.nvars() != self.d() {
            return Err(Error::input(format!(
                "polynomial in {} variables applied to an arc with {} coordinates",
                f.nvars(),
                self.d()
            )));
        }
        let f = f.to_field(self.field)?;
        let n = self.order + 1;
        let mut one = vec![Q::zero(); n];
        one[0] = Q::from_integer(1.into());
        let powers: Vec<Vec<Vec<Q>>> = (0..self.d())
            .map(|j| {
                let mut v = vec![one.clone()];
                for k in 0..f.degree_in(j) as usize {
                    let next = series_mul(self.field, &v[k], &self.series[j]);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = vec![Q::zero(); n];
        for (e, c) in f.terms() {
            let mut t = one.clone();
            for (j, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = series_mul(self.field, &t, &powers[j][k as usize]);
                }
            }
            for (a, x) in acc.iter_mut().zip(&t) {
                *a = self.field.add(a, &self.field.mul(c, x));
            }
        }
        Ok(acc)
    }

    /// Series of the partial derivatives `∂f/∂x_j (γ)`.
    pub fn gradient(&self, f: &Poly) -> Result<Vec<Vec<Q>>> {
        let f = f.to_field(self.field)?;
        (0..self.d()).map(|j| self.apply(&f.derivative(j))).collect()
    }

    /// Minimum order over the gradient coordinates, `None` if all vanish.
    pub fn jacobian_order(&self, f: &Poly) -> Result<Option<usize>> {
        Ok(self.gradient(f)?.iter().filter_map(|s| series_ord(s)).min())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn apply_polynomial() {
        let f = Field::Rationals;
        let xy = Poly::var(2, f, 0).mul(&Poly::var(2, f, 1));
        let arc = TruncatedArc::new(f, 3, vec![vec![q(0), q(1)], vec![q(0), q(1), q(1)]]).unwrap();
        assert_eq!(arc.apply(&xy).unwrap(), vec![q(0), q(0), q(1), q(1)]);
        assert_eq!(arc.jacobian_order(&xy).unwrap(), Some(1));
    }

    #[test]
    fn serde_round_trip() {
        let arc = TruncatedArc::new(Field::Prime(5), 2, vec![vec![q(7), q(-1)]]).unwrap();
        assert_eq!(arc.coefficient(0, 0), &q(2));
        let text = serde_json::to_string(&arc).unwrap();
        let back: TruncatedArc = serde_json::from_str(&text).unwrap();
        assert_eq!(arc, back);
    }
}
