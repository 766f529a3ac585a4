//! JSON input documents. Each file holds a single externally tagged
//! object such as `{"monomial_pair": {...}}`; unknown keys are rejected.

use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::parse::parse_polynomial;
use crate::error::{Error, Result};
use crate::jet::{Poly, TruncatedArc};
use crate::monomial::{MonomialPair, NewtonHypersurface};
use crate::rational::{serde_q_vec, Q};
use crate::resolution::{PairCoefficients, ResolutionData};
use crate::theorem_lab::{AdjunctionCase, SemicontinuityCase};

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionInput {
    pub data: ResolutionData,
    /// Coefficients of the `Y_i`; zeros when omitted.
    #[serde(with = "serde_q_vec", default)]
    pub q: Vec<Q>,
    #[serde(default = "yes")]
    pub w_is_proper: bool,
}

impl ResolutionInput {
    pub fn coefficients(&self) -> PairCoefficients {
        let q = if self.q.is_empty() { vec![Q::zero(); self.data.k_ideals()] } else { self.q.clone() };
        PairCoefficients::new(q, self.w_is_proper)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypersurfaceInput {
    pub variables: Vec<String>,
    pub polynomial: String,
    #[serde(default)]
    pub nondegenerate_asserted: bool,
    #[serde(default)]
    pub singular_locus_is_origin_asserted: bool,
}

impl HypersurfaceInput {
    pub fn polynomial(&self) -> Result<Poly> {
        parse_polynomial(&self.polynomial, &self.variables)
    }

    /// The parsed polynomial and its Newton data.
    pub fn parse(&self) -> Result<(Poly, NewtonHypersurface)> {
        let f = self.polynomial()?;
        if f.is_zero() {
            return Err(Error::input("the polynomial is zero"));
        }
        let h = NewtonHypersurface {
            d: self.variables.len(),
            support: f.support(),
            nondegenerate_asserted: self.nondegenerate_asserted,
            singular_locus_is_origin_asserted: self.singular_locus_is_origin_asserted,
        };
        h.validate()?;
        Ok((f, h))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftCase {
    pub variables: Vec<String>,
    pub polynomial: String,
    /// Jet to lift; its order is the level `m`.
    pub arc: TruncatedArc,
    /// Jacobian order along the jet.
    pub e: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum InputDocument {
    ResolutionData(ResolutionInput),
    MonomialPair(MonomialPair),
    Hypersurface(HypersurfaceInput),
    AdjunctionCase(AdjunctionCase),
    SemicontinuityCase(SemicontinuityCase),
    LiftCase(LiftCase),
}

impl InputDocument {
    pub fn kind(&self) -> &'static str {
        match self {
            InputDocument::ResolutionData(_) => "resolution_data",
            InputDocument::MonomialPair(_) => "monomial_pair",
            InputDocument::Hypersurface(_) => "hypersurface",
            InputDocument::AdjunctionCase(_) => "adjunction_case",
            InputDocument::SemicontinuityCase(_) => "semicontinuity_case",
            InputDocument::LiftCase(_) => "lift_case",
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: InputDocument =
            serde_json::from_str(text).map_err(|e| Error::input(format!("invalid input document: {e}")))?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Schema checks that do not need any computation.
    pub fn validate(&self) -> Result<()> {
        match self {
            InputDocument::ResolutionData(r) => {
                r.data.validate()?;
                let q = r.coefficients();
                if q.q.len() != r.data.k_ideals() {
                    return Err(Error::input(format!(
                        "{} coefficients for {} subschemes",
                        q.q.len(),
                        r.data.k_ideals()
                    )));
                }
                Ok(())
            }
            InputDocument::MonomialPair(p) => p.validate(),
            InputDocument::Hypersurface(h) => h.parse().map(|_| ()),
            InputDocument::AdjunctionCase(c) => c.validate(),
            InputDocument::SemicontinuityCase(c) => c.validate(),
            InputDocument::LiftCase(c) => {
                let f = parse_polynomial(&c.polynomial, &c.variables)?;
                if c.arc.d() != f.nvars() {
                    return Err(Error::input(format!(
                        "arc has {} coordinates for {} variables",
                        c.arc.d(),
                        f.nvars()
                    )));
                }
                Ok(())
            }
        }
    }
}
