//! Jet equations: the coefficients of `f(Σ_l x^{(l)} t^l)` up to `t^m`.
//!
//! Jet variables are numbered level-major: `x_j^{(l)}` has index `l·d + j`.

use super::field::Field;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Index of `x_j^{(l)}` among jet variables of `d` coordinates.
pub fn jet_var(d: usize, j: usize, l: usize) -> usize {
    l * d + j
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetSystem {
    d: usize,
    m: usize,
    field: Field,
    /// `f^{(0)}, …, f^{(m)}`; empty for the ambient jet space.
    equations: Vec<Poly>,
}

impl JetSystem {
    /// Jets of affine `d`-space at level `m`, no equations.
    pub fn ambient(d: usize, m: usize, field: Field) -> Result<Self> {
        if d == 0 {
            return Err(Error::input("ambient dimension must be positive"));
        }
        Ok(JetSystem { d, m, field, equations: Vec::new() })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn equations(&self) -> &[Poly] {
        &self.equations
    }

    pub fn nvars(&self) -> usize {
        self.d * (self.m + 1)
    }

    pub fn is_hypersurface(&self) -> bool {
        !self.equations.is_empty()
    }

    /// Names `x1_0, x1_1, …` built from coordinate names.
    pub fn variable_names(&self, coords: &[String]) -> Vec<String> {
        (0..=self.m)
            .flat_map(|l| coords.iter().map(move |c| format!("{c}_{l}")))
            .collect()
    }
}

fn series_mul(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let n = a.len();
    let mut out: Vec<Poly> = a.iter().map(|p| Poly::zero(p.nvars(), p.field())).collect();
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out
}

/// Coefficients of `t^0..t^{levels-1}` of `g(Σ_l x^{(l)} t^l)`, as
/// polynomials in the jet variables of `ring_levels` levels.
pub fn jet_coefficients(g: &Poly, levels: usize, ring_levels: usize) -> Result<Vec<Poly>> {
    if levels > ring_levels {
        return Err(Error::input(format!(
            "{levels} coefficient levels requested in a ring with {ring_levels} levels"
        )));
    }
    let d = g.nvars();
    let field = g.field();
    let nv = d * ring_levels;
    let zero = Poly::zero(nv, field);
    let one = Poly::constant(nv, field, &num_traits::One::one())?;
    let coords: Vec<Vec<Poly>> = (0..d)
        .map(|j| (0..levels).map(|l| Poly::var(nv, field, jet_var(d, j, l))).collect())
        .collect();
    let mut unit = vec![zero.clone(); levels];
    if levels > 0 {
        unit[0] = one;
    }
    let powers: Vec<Vec<Vec<Poly>>> = coords
        .iter()
        .enumerate()
        .map(|(j, x)| {
            let mut v = vec![unit.clone()];
            for k in 0..g.degree_in(j) as usize {
                let next = series_mul(&v[k], x);
                v.push(next);
            }
            v
        })
        .collect();
    let mut acc = vec![zero; levels];
    for (e, c) in g.terms() {
        let mut t = unit.clone();
        for (j, &k) in e.iter().enumerate() {
            if k > 0 {
                t = series_mul(&t, &powers[j][k as usize]);
            }
        }
        for (a, x) in acc.iter_mut().zip(&t) {
            if !x.is_zero() {
                *a = a.add(&x.scale(c));
            }
        }
    }
    Ok(acc)
}

/// Truncated jet equations `f^{(0)}, …, f^{(m)}`.
pub fn jet_equations(f: &Poly, m: usize) -> Result<JetSystem> {
    if f.is_zero() {
        return Err(Error::input("the zero polynomial defines no hypersurface"));
    }
    if f.nvars() == 0 {
        return Err(Error::input("polynomial has no variables"));
    }
    let equations = jet_coefficients(f, m + 1, m + 1)?;
    Ok(JetSystem { d: f.nvars(), m, field: f.field(), equations })
}

/// Weighted degree of a jet monomial, `x_j^{(l)}` having weight `l`.
pub fn weighted_degree(d: usize, exponent: &[u32]) -> usize {
    exponent
        .iter()
        .enumerate()
        .map(|(v, &k)| (v / d) * k as usize)
        .sum()
}
