//! Checks of inversion of adjunction and of the semicontinuity inequality
//! on explicit monomial and Newton-nondegenerate instances.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extended::ExtendedRational;
use crate::monomial::{mld_monomial_generic, mld_monomial_in, CenterSpec, MonomialIdeal, MonomialPair, NewtonHypersurface};
use crate::rational::Q;
use crate::resolution::{mld_on_w, PairCoefficients, ResolutionData};

/// How the minimal log discrepancy of `(D, Y|_D)` is obtained.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum DivisorSide {
    Resolution { data: ResolutionData, coefficients: PairCoefficients },
    Expected { mld: ExtendedRational },
}

/// `X = A^d` with boundary `Y` from `ambient`, the divisor `D = V(f)` given
/// by the support of a nondegenerate `f`, and a center `W ⊂ D`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdjunctionCase {
    pub ambient: MonomialPair,
    pub divisor: NewtonHypersurface,
    pub center: CenterSpec,
    pub divisor_side: Option<DivisorSide>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjunctionReport {
    pub lhs: ExtendedRational,
    pub rhs: ExtendedRational,
    pub equal: bool,
    /// Whether both sides are `≥ 0` or both are `< 0`.
    pub lc_agrees: bool,
}

fn divides_all(ideal: &MonomialIdeal, j: usize) -> bool {
    ideal.generators().iter().all(|g| g[j] > 0)
}

impl AdjunctionCase {
    pub fn validate(&self) -> Result<()> {
        self.ambient.validate()?;
        self.divisor.validate()?;
        let d = self.ambient.d;
        if self.divisor.d != d {
            return Err(Error::input(format!("divisor in {} variables, ambient dimension {d}", self.divisor.d)));
        }
        if self.center.support(d)?.is_none() {
            return Err(Error::input("the center must be a proper closed subset of D"));
        }
        // A non-monomial f vanishes somewhere on the torus, so only a
        // monomial f can put D inside a union of coordinate subspaces.
        if let [u] = self.divisor.support.as_slice() {
            for (i, ideal) in self.ambient.ideals.iter().enumerate() {
                if (0..d).filter(|&j| u[j] > 0).all(|j| divides_all(ideal, j)) {
                    return Err(Error::input(format!("the divisor is contained in the support of Y_{i}")));
                }
            }
        }
        Ok(())
    }

    /// `mld(W; X, D + Y)` with `D` weighted by 1.
    pub fn ambient_mld(&self) -> Result<ExtendedRational> {
        self.validate()?;
        let mut ideals = self.ambient.ideals.clone();
        ideals.push(self.divisor.support_ideal()?);
        let mut q = self.ambient.q.clone();
        q.push(Q::from_integer(1.into()));
        Ok(mld_monomial_in(Some(self.ambient.d), &ideals, &q, &self.center)?.value)
    }

    /// `mld(W; D, Y|_D)` from the divisor-side data.
    pub fn divisor_mld(&self) -> Result<ExtendedRational> {
        match &self.divisor_side {
            None => Err(Error::input("no divisor-side data: give resolution data or an expected value")),
            Some(DivisorSide::Expected { mld }) => Ok(mld.clone()),
            Some(DivisorSide::Resolution { data, coefficients }) => {
                data.validate()?;
                if data.ambient_dim + 1 != self.ambient.d {
                    return Err(Error::input(format!(
                        "divisor-side data has dimension {}, expected {}",
                        data.ambient_dim,
                        self.ambient.d - 1
                    )));
                }
                Ok(mld_on_w(data, coefficients)?.value)
            }
        }
    }
}

pub fn check_inversion_of_adjunction(case: &AdjunctionCase) -> Result<AdjunctionReport> {
    let lhs = case.ambient_mld()?;
    let rhs = case.divisor_mld()?;
    let zero = Q::zero();
    Ok(AdjunctionReport {
        equal: lhs == rhs,
        lc_agrees: lhs.ge_q(&zero) == rhs.ge_q(&zero),
        lhs,
        rhs,
    })
}

/// `(X, D + Y)` is lc near `D` iff `(D, Y|_D)` is lc, compared on the sign
/// of the two mlds at the case's center.
pub fn check_lc_adjunction(case: &AdjunctionCase) -> Result<bool> {
    Ok(check_inversion_of_adjunction(case)?.lc_agrees)
}

/// Centers `V ⊂ W` in `A^d` given as coordinate subspaces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemicontinuityCase {
    pub pair: MonomialPair,
    pub v: CenterSpec,
    pub w: CenterSpec,
    pub codim_vw: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemicontinuityReport {
    pub v: CenterSpec,
    pub w: CenterSpec,
    pub codim_vw: usize,
    pub mld_v: ExtendedRational,
    pub mld_w: ExtendedRational,
    pub holds: bool,
}

fn cut_out(center: &CenterSpec, d: usize) -> Result<Vec<usize>> {
    Ok(center.support(d)?.unwrap_or_default())
}

impl SemicontinuityCase {
    pub fn validate(&self) -> Result<()> {
        self.pair.validate()?;
        let d = self.pair.d;
        let sv = cut_out(&self.v, d)?;
        let sw = cut_out(&self.w, d)?;
        if !sw.iter().all(|j| sv.contains(j)) {
            return Err(Error::input(format!("V = {} is not contained in W = {}", self.v, self.w)));
        }
        if self.codim_vw != sv.len() - sw.len() {
            return Err(Error::input(format!(
                "codim_vw = {} but the centers differ in codimension by {}",
                self.codim_vw,
                sv.len() - sw.len()
            )));
        }
        Ok(())
    }
}

/// `mld(η_V) ≤ mld(η_W) + codim(V, W)` at generic points.
pub fn check_semicontinuity(case: &SemicontinuityCase) -> Result<SemicontinuityReport> {
    case.validate()?;
    let p = &case.pair;
    let mld_v = mld_monomial_generic(p.d, &p.ideals, &p.q, &case.v)?.value;
    let mld_w = mld_monomial_generic(p.d, &p.ideals, &p.q, &case.w)?.value;
    let bound = mld_w.add_q(&Q::from_integer((case.codim_vw as i64).into()));
    Ok(SemicontinuityReport {
        v: case.v.clone(),
        w: case.w.clone(),
        codim_vw: case.codim_vw,
        holds: mld_v <= bound,
        mld_v,
        mld_w,
    })
}

fn center_of(mask: u32, d: usize) -> Result<CenterSpec> {
    if mask == 0 {
        return Ok(CenterSpec::WholeSpace);
    }
    CenterSpec::subspace((0..d).filter(|j| mask >> j & 1 == 1).collect())
}

/// Every chain `V ⊊ W` of coordinate subspaces, `W` possibly all of `A^d`.
pub fn semicontinuity_chains(pair: &MonomialPair) -> Result<Vec<SemicontinuityReport>> {
    pair.validate()?;
    let d = pair.d;
    if d > 16 {
        return Err(Error::input("chain enumeration is limited to d ≤ 16"));
    }
    let mut out = Vec::new();
    for sv in 1u32..(1 << d) {
        // proper submasks of sv, the empty one being W = X
        let mut sw = (sv - 1) & sv;
        loop {
            let case = SemicontinuityCase {
                pair: pair.clone(),
                v: center_of(sv, d)?,
                w: center_of(sw, d)?,
                codim_vw: (sv.count_ones() - sw.count_ones()) as usize,
            };
            out.push(check_semicontinuity(&case)?);
            if sw == 0 {
                break;
            }
            sw = (sw - 1) & sv;
        }
    }
    Ok(out)
}

fn diagonal(d: usize, k: u64) -> Vec<Vec<u64>> {
    (0..d).map(|j| (0..d).map(|i| if i == j { k } else { 0 }).collect()).collect()
}

fn q_int(v: i64) -> Q {
    Q::from_integer(v.into())
}

fn empty_pair(d: usize) -> MonomialPair {
    MonomialPair { d, ideals: Vec::new(), q: Vec::new() }
}

fn resolution_side(dim: usize, k: i64) -> Option<DivisorSide> {
    Some(DivisorSide::Resolution {
        data: ResolutionData::single_divisor(dim, q_int(k)),
        coefficients: PairCoefficients::new(Vec::new(), true),
    })
}

/// Named inversion-of-adjunction instances with independently known
/// divisor sides.
pub fn curated_adjunction_cases() -> Vec<(&'static str, AdjunctionCase)> {
    vec![
        (
            // minimal resolution of the A1 point: one (-2)-curve, k = 0
            "a1_surface_point",
            AdjunctionCase {
                ambient: empty_pair(3),
                divisor: NewtonHypersurface::new(3, diagonal(3, 2)),
                center: CenterSpec::Origin,
                divisor_side: resolution_side(2, 0),
            },
        ),
        (
            // blow-up of the threefold node: exceptional quadric, k = 1
            "ordinary_double_point_threefold",
            AdjunctionCase {
                ambient: empty_pair(4),
                divisor: NewtonHypersurface::new(4, diagonal(4, 2)),
                center: CenterSpec::Origin,
                divisor_side: resolution_side(3, 1),
            },
        ),
        (
            // a point on a smooth curve: the point itself, k = 0
            "smooth_divisor_point",
            AdjunctionCase {
                ambient: empty_pair(2),
                divisor: NewtonHypersurface::new(2, vec![vec![1, 0]]),
                center: CenterSpec::Origin,
                divisor_side: resolution_side(1, 0),
            },
        ),
    ]
}

/// Copy of `case` with every divisor-side `k_j` raised by 1.
pub fn corrupted(case: &AdjunctionCase) -> AdjunctionCase {
    let mut out = case.clone();
    if let Some(DivisorSide::Resolution { data, .. }) = &mut out.divisor_side {
        for k in &mut data.k {
            *k += q_int(1);
        }
    }
    out
}

/// Instances for the log canonical form of adjunction.
pub fn curated_lc_cases() -> Vec<(&'static str, AdjunctionCase)> {
    let mut cases = curated_adjunction_cases();
    cases.truncate(1);
    cases.push((
        // cone over a plane cubic: one elliptic exceptional curve, k = -1
        "cubic_cone",
        AdjunctionCase {
            ambient: empty_pair(3),
            divisor: NewtonHypersurface::new(3, diagonal(3, 3)),
            center: CenterSpec::Origin,
            divisor_side: resolution_side(2, -1),
        },
    ));
    cases.push((
        "quartic_tacnode_curve",
        AdjunctionCase {
            ambient: empty_pair(2),
            divisor: NewtonHypersurface::new(2, diagonal(2, 4)),
            center: CenterSpec::Origin,
            divisor_side: Some(DivisorSide::Expected { mld: ExtendedRational::NegInf }),
        },
    ));
    cases
}

fn ideal(d: usize, gens: Vec<Vec<u64>>) -> MonomialIdeal {
    MonomialIdeal::new(d, gens).expect("curated generators are valid")
}

/// Monomial pairs with `d ≤ 4` for the semicontinuity sweep.
pub fn curated_monomial_pairs() -> Vec<(&'static str, MonomialPair)> {
    let half = Q::new(1.into(), 2.into());
    vec![
        ("plane", empty_pair(2)),
        ("plane_xy", MonomialPair { d: 2, ideals: vec![ideal(2, vec![vec![1, 1]])], q: vec![q_int(1)] }),
        ("plane_double_line", MonomialPair { d: 2, ideals: vec![ideal(2, vec![vec![1, 0]])], q: vec![q_int(2)] }),
        ("plane_max_ideal_q2", MonomialPair { d: 2, ideals: vec![MonomialIdeal::maximal(2)], q: vec![q_int(2)] }),
        ("space_diagonal_squares", MonomialPair { d: 3, ideals: vec![ideal(3, diagonal(3, 2))], q: vec![q_int(1)] }),
        (
            "space_two_ideals",
            MonomialPair {
                d: 3,
                ideals: vec![ideal(3, vec![vec![1, 1, 0], vec![0, 0, 1]]), ideal(3, vec![vec![0, 2, 1]])],
                q: vec![half, q_int(1)],
            },
        ),
        ("space_cubes_q3", MonomialPair { d: 3, ideals: vec![ideal(3, diagonal(3, 3))], q: vec![q_int(3)] }),
        ("fourfold_quadric", MonomialPair { d: 4, ideals: vec![ideal(4, diagonal(4, 2))], q: vec![q_int(1)] }),
        ("fourfold_normal_crossing", MonomialPair { d: 4, ideals: vec![ideal(4, vec![vec![1, 1, 1, 1]])], q: vec![q_int(1)] }),
        ("fourfold", empty_pair(4)),
    ]
}
