//! Exact rationals extended by `-inf` and `+inf`.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::rational::{format_q, parse_q, Q};

/// Codomain of every codimension and mld computation. The derived order
/// is the intended total order: `NegInf < Finite(_) < PosInf`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedRational {
    NegInf,
    Finite(Q),
    PosInf,
}

impl ExtendedRational {
    pub fn finite(v: Q) -> Self {
        ExtendedRational::Finite(v)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedRational::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Q> {
        match self {
            ExtendedRational::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn ge_q(&self, v: &Q) -> bool {
        *self >= ExtendedRational::Finite(v.clone())
    }

    /// Adds a finite rational; infinities absorb it.
    pub fn add_q(&self, v: &Q) -> Self {
        match self {
            ExtendedRational::Finite(x) => ExtendedRational::Finite(x + v),
            other => other.clone(),
        }
    }
}

impl From<Q> for ExtendedRational {
    fn from(v: Q) -> Self {
        ExtendedRational::Finite(v)
    }
}

/// `-inf + +inf` has no value; it is reported as `None`.
impl Add for &ExtendedRational {
    type Output = Option<ExtendedRational>;

    fn add(self, rhs: Self) -> Option<ExtendedRational> {
        use ExtendedRational::*;
        match (self, rhs) {
            (Finite(a), Finite(b)) => Some(Finite(a + b)),
            (NegInf, PosInf) | (PosInf, NegInf) => None,
            (NegInf, _) | (_, NegInf) => Some(NegInf),
            (PosInf, _) | (_, PosInf) => Some(PosInf),
        }
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::NegInf => f.write_str("-inf"),
            ExtendedRational::PosInf => f.write_str("+inf"),
            ExtendedRational::Finite(v) => f.write_str(&format_q(v)),
        }
    }
}

impl std::str::FromStr for ExtendedRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "-inf" => Ok(ExtendedRational::NegInf),
            "+inf" | "inf" => Ok(ExtendedRational::PosInf),
            t => parse_q(t).map(ExtendedRational::Finite),
        }
    }
}

impl Serialize for ExtendedRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtendedRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(i) => Ok(ExtendedRational::Finite(crate::rational::q(i))),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}
