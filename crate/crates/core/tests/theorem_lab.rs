mod common;

use arcmld::monomial::{CenterSpec, MonomialPair, NewtonHypersurface};
use arcmld::theorem_lab::{
    check_inversion_of_adjunction, check_lc_adjunction, check_semicontinuity, corrupted, curated_adjunction_cases,
    curated_lc_cases, curated_monomial_pairs, semicontinuity_chains, AdjunctionCase, DivisorSide,
    SemicontinuityCase,
};
use arcmld::{ExtendedRational, Q};
use common::q;

fn fin(v: i64) -> ExtendedRational {
    ExtendedRational::Finite(q(v))
}

/// `min Σw − ord_w f` over the box `{1..8}^d`, negative meaning not lc.
fn box_mld_with_divisor(h: &NewtonHypersurface) -> ExtendedRational {
    let d = h.d;
    let mut best: Option<i64> = None;
    let mut w = vec![1u64; d];
    loop {
        let ord = h.support.iter().map(|u| u.iter().zip(&w).map(|(a, b)| a * b).sum::<u64>()).min().unwrap();
        let v = w.iter().sum::<u64>() as i64 - ord as i64;
        best = Some(best.map_or(v, |b| b.min(v)));
        let Some(i) = w.iter().position(|&x| x < 8) else { break };
        w[i] += 1;
        for x in &mut w[..i] {
            *x = 1;
        }
    }
    match best.unwrap() {
        b if b < 0 => ExtendedRational::NegInf,
        b => fin(b),
    }
}

#[test]
fn curated_cases_satisfy_adjunction() {
    let expected = [("a1_surface_point", 1), ("ordinary_double_point_threefold", 2), ("smooth_divisor_point", 1)];
    let cases = curated_adjunction_cases();
    assert_eq!(cases.len(), expected.len());
    for ((name, case), (want_name, want)) in cases.iter().zip(expected) {
        assert_eq!(*name, want_name);
        let report = check_inversion_of_adjunction(case).unwrap();
        assert_eq!(report.lhs, box_mld_with_divisor(&case.divisor), "{name}");
        assert_eq!(report.lhs, fin(want), "{name}");
        assert!(report.equal && report.lc_agrees, "{name}: {report:?}");
    }
}

#[test]
fn corrupted_divisor_side_is_detected() {
    for (name, case) in curated_adjunction_cases() {
        let report = check_inversion_of_adjunction(&corrupted(&case)).unwrap();
        assert!(!report.equal, "{name}");
        assert_eq!(report.rhs, report.lhs.add_q(&q(1)), "{name}");
    }
}

#[test]
fn log_canonical_adjunction() {
    let cases = curated_lc_cases();
    let names: Vec<&str> = cases.iter().map(|(n, _)| *n).collect();
    assert_eq!(names, ["a1_surface_point", "cubic_cone", "quartic_tacnode_curve"]);
    let lhs = [fin(1), fin(0), ExtendedRational::NegInf];
    for ((name, case), want) in cases.iter().zip(lhs) {
        assert!(check_lc_adjunction(case).unwrap(), "{name}");
        let report = check_inversion_of_adjunction(case).unwrap();
        assert_eq!(report.lhs, want, "{name}");
        assert_eq!(report.lhs, box_mld_with_divisor(&case.divisor), "{name}");
    }
}

#[test]
fn adjunction_inputs_are_validated() {
    let (_, base) = curated_adjunction_cases().remove(2);
    let mut no_side = base.clone();
    no_side.divisor_side = None;
    assert!(check_inversion_of_adjunction(&no_side).is_err());

    let mut whole = base.clone();
    whole.center = CenterSpec::WholeSpace;
    assert!(check_inversion_of_adjunction(&whole).is_err());

    // D = V(x) lies inside the support of Y = V(x)
    let mut inside = base.clone();
    inside.ambient = serde_json::from_str(r#"{"d": 2, "ideals": [[[1, 0]]], "q": ["1"]}"#).unwrap();
    assert!(inside.validate().is_err());

    let mut wrong_dim = base;
    wrong_dim.divisor_side = Some(DivisorSide::Resolution {
        data: arcmld::resolution::ResolutionData::single_divisor(2, q(0)),
        coefficients: arcmld::resolution::PairCoefficients::new(vec![], true),
    });
    assert!(check_inversion_of_adjunction(&wrong_dim).is_err());
}

#[test]
fn adjunction_case_round_trips_through_json() {
    for (name, case) in curated_lc_cases() {
        let text = serde_json::to_string(&case).unwrap();
        let back: AdjunctionCase = serde_json::from_str(&text).unwrap();
        assert_eq!(back, case, "{name}");
    }
}

#[test]
fn semicontinuity_example() {
    let pair: MonomialPair = serde_json::from_str(r#"{"d": 2, "ideals": [[[1, 1]]], "q": ["1"]}"#).unwrap();
    let case = SemicontinuityCase {
        pair,
        v: CenterSpec::Origin,
        w: CenterSpec::subspace(vec![0]).unwrap(),
        codim_vw: 1,
    };
    let r = check_semicontinuity(&case).unwrap();
    assert_eq!((r.mld_v.clone(), r.mld_w.clone()), (fin(0), fin(0)));
    assert!(r.holds);

    let mut wrong = case.clone();
    wrong.codim_vw = 2;
    assert!(check_semicontinuity(&wrong).is_err());
    let mut swapped = case;
    std::mem::swap(&mut swapped.v, &mut swapped.w);
    assert!(check_semicontinuity(&swapped).is_err());
}

#[test]
fn every_chain_of_curated_pairs() {
    let pairs = curated_monomial_pairs();
    assert_eq!(pairs.len(), 10);
    for (name, pair) in pairs {
        let reports = semicontinuity_chains(&pair).unwrap();
        let d = pair.d as u32;
        assert_eq!(reports.len(), 3usize.pow(d) - 2usize.pow(d), "{name}");
        for r in &reports {
            let bound = r.mld_w.add_q(&Q::from_integer((r.codim_vw as i64).into()));
            assert_eq!(r.holds, r.mld_v <= bound, "{name}");
            assert!(r.holds, "{name}: {r:?}");
        }
    }
}
