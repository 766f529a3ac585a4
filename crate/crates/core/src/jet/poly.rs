//! Sparse multivariate polynomials over the rationals or a prime field.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::field::Field;
use crate::error::{Error, Result};
use crate::rational::{format_q, Q};

/// Exponent vector of length `nvars`.
pub type Exponent = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    field: Field,
    terms: BTreeMap<Exponent, Q>,
}

impl Poly {
    pub fn zero(nvars: usize, field: Field) -> Self {
        Poly { nvars, field, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, field: Field, c: &Q) -> Result<Self> {
        Poly::from_terms(nvars, field, [(vec![0; nvars], c.clone())])
    }

    pub fn var(nvars: usize, field: Field, j: usize) -> Self {
        assert!(j < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[j] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, Q::one());
        Poly { nvars, field, terms }
    }

    /// Builds a polynomial, merging repeated exponents and dropping zeros.
    pub fn from_terms(
        nvars: usize,
        field: Field,
        terms: impl IntoIterator<Item = (Exponent, Q)>,
    ) -> Result<Self> {
        let mut p = Poly::zero(nvars, field);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::input(format!(
                    "exponent vector of length {}, expected {nvars}",
                    e.len()
                )));
            }
            let c = field.reduce(&c)?;
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Sum of the monomials `x^u`, unit coefficients.
    pub fn from_support(nvars: usize, field: Field, support: &[Vec<u64>]) -> Result<Self> {
        let terms = support
            .iter()
            .map(|u| {
                u.iter()
                    .map(|&x| u32::try_from(x).map_err(|_| Error::input("exponent too large")))
                    .collect::<Result<Exponent>>()
                    .map(|e| (e, Q::one()))
            })
            .collect::<Result<Vec<_>>>()?;
        Poly::from_terms(nvars, field, terms)
    }

    fn add_term(&mut self, e: Exponent, c: Q) {
        if c.is_zero() {
            return;
        }
        let field = self.field;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = field.add(o.get(), &c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[u32]) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, j: usize) -> u32 {
        self.terms.keys().map(|e| e[j]).max().unwrap_or(0)
    }

    /// Exponent vectors of the nonzero terms.
    pub fn support(&self) -> Vec<Vec<u64>> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u64).collect())
            .collect()
    }

    /// Indices of variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&j| self.terms.keys().any(|e| e[j] > 0))
            .collect()
    }

    fn check_compatible(&self, other: &Poly) {
        assert_eq!(self.nvars, other.nvars, "polynomials in different rings");
        assert_eq!(self.field, other.field, "polynomials over different fields");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check_compatible(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Poly {
        let c = self.field.reduce(c).expect("scalar reducible in the field");
        let mut out = Poly::zero(self.nvars, self.field);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), self.field.mul(v, &c));
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check_compatible(other);
        let mut acc: BTreeMap<Exponent, Q> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let slot = acc.entry(e).or_insert_with(Q::zero);
                *slot = self.field.add(slot, &self.field.mul(ca, cb));
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Poly { nvars: self.nvars, field: self.field, terms: acc }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::constant(self.nvars, self.field, &Q::one()).expect("unit");
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, j: usize) -> Poly {
        let mut out = Poly::zero(self.nvars, self.field);
        for (e, c) in &self.terms {
            if e[j] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[j] -= 1;
            let factor = self.field.reduce(&Q::from_integer(e[j].into())).expect("integer");
            out.add_term(f, self.field.mul(c, &factor));
        }
        out
    }

    /// Image of the polynomial in another field (rationals to `F_p`).
    pub fn to_field(&self, field: Field) -> Result<Poly> {
        if self.field == field {
            return Ok(self.clone());
        }
        if let Field::Prime(_) = self.field {
            return Err(Error::input("cannot lift a polynomial from F_p to another field"));
        }
        Poly::from_terms(self.nvars, field, self.terms.iter().map(|(e, c)| (e.clone(), c.clone())))
    }

    pub fn evaluate(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.nvars);
        let f = self.field;
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = f.mul(&t, x);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Substitutes `x_j ↦ images[j]` (all images in a common ring).
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(0, |p| p.nvars);
        let mut acc = Poly::zero(target, self.field);
        let max_deg: Vec<u32> = (0..self.nvars).map(|j| self.degree_in(j)).collect();
        let powers: Vec<Vec<Poly>> = images
            .iter()
            .zip(&max_deg)
            .map(|(img, &k)| {
                let mut v = vec![Poly::constant(target, self.field, &Q::one()).expect("unit")];
                for i in 0..k as usize {
                    let next = v[i].mul(img);
                    v.push(next);
                }
                v
            })
            .collect();
        for (e, c) in &self.terms {
            let mut t = Poly::constant(target, self.field, c).expect("reduced coefficient");
            for (j, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&powers[j][k as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Text form over the given variable names, e.g. `x^2 - 3/2*x*y + 1`.
    pub fn to_text(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            let is_const = e.iter().all(|&k| k == 0);
            if !mag.is_one() || is_const {
                factors.push(format_q(&mag));
            }
            for (name, &k) in names.iter().zip(e) {
                match k {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}
