//! End-to-end acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::time::Instant;

use arcmld::jet::{
    check_fiber_stability, classify_hypersurface, empirical_codim_ambient, newton_lift, series_mul, ClassifyMethod,
    ClassifyOptions, ContactQuery, ContactRelation, ContactTarget, Field, Poly, SingularityClass, TruncatedArc,
    DEFAULT_EVAL_BUDGET,
};
use arcmld::lattice_opt::{minimize_lattice, LatticeProgram, Row, SupportFamily};
use arcmld::monomial::{contact_codim_monomial, CenterSpec, MonomialIdeal, NewtonHypersurface};
use arcmld::resolution::{contact_codim_exact, contact_codim_ge, mld_bound_check, mld_on_w, PairCoefficients, ResolutionData};
use arcmld::theorem_lab::{
    check_inversion_of_adjunction, corrupted, curated_adjunction_cases, curated_monomial_pairs, semicontinuity_chains,
};
use arcmld::{ExtendedRational, Q};
use common::{blowup, q, qf, random_model};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn diagonal(d: usize, k: u64) -> Vec<Vec<u64>> {
    (0..d).map(|j| (0..d).map(|i| if i == j { k } else { 0 }).collect()).collect()
}

fn contact_codims_agree() -> Outcome {
    let start = Instant::now();
    // blow-up of the origin of A^3: k = 2, and (x^2, y^2, z^2) has order 2 along it
    let space_blowup = ResolutionData { ambient_dim: 3, k: vec![q(2)], y: vec![vec![2]], ..blowup() };
    let cases = [
        (MonomialIdeal::maximal(2), blowup(), vec![1u64, 2, 3]),
        (MonomialIdeal::new(3, diagonal(3, 2)).unwrap(), space_blowup, vec![1, 2]),
    ];
    let mut checked = 0;
    for (ideal, data, levels) in cases {
        let d = ideal.d();
        for m in levels {
            let mono = contact_codim_monomial(std::slice::from_ref(&ideal), &[m], &CenterSpec::Origin).map_err(|e| e.to_string())?;
            let model = contact_codim_ge(&data, &[m], 0, true).map_err(|e| e.to_string())?;
            let query = ContactQuery::at(CenterSpec::Origin).with(
                ContactTarget::Monomial(ideal.clone()),
                ContactRelation::AtLeast,
                m as usize,
            );
            let measured = empirical_codim_ambient(d, m as usize - 1, &[3, 5, 7], &query, DEFAULT_EVAL_BUDGET)
                .map_err(|e| e.to_string())?;
            let measured = ExtendedRational::Finite(q(measured.codim as i64));
            ensure(mono.value == model && model == measured, || {
                format!("d={d} m={m}: monomial {} resolution {model} jets {measured}", mono.value)
            })?;
            checked += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 120.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{checked} contact loci agree across three methods in {secs:.1}s"))
}

fn bound_check_decides_mld() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let taus = [q(0), qf(1, 2), q(1), q(2)];
    let n = 64;
    for i in 0..n {
        let (data, coeffs) = random_model(&mut rng);
        let mld = mld_on_w(&data, &coeffs).map_err(|e| e.to_string())?.value;
        for tau in &taus {
            let check = mld_bound_check(&data, &coeffs, tau).map_err(|e| e.to_string())?;
            ensure(check.verdict == mld.ge_q(tau), || format!("instance {i}: tau {tau}, mld {mld}"))?;
        }
    }
    Ok(format!("{n} random models, 4 thresholds each"))
}

fn inversion_of_adjunction() -> Outcome {
    let cases = curated_adjunction_cases();
    for (name, case) in &cases {
        let r = check_inversion_of_adjunction(case).map_err(|e| e.to_string())?;
        ensure(r.equal, || format!("{name}: {} vs {}", r.lhs, r.rhs))?;
        let bad = check_inversion_of_adjunction(&corrupted(case)).map_err(|e| e.to_string())?;
        ensure(!bad.equal, || format!("{name}: corrupted control not detected"))?;
    }
    Ok(format!("{} curated cases equal, corrupted controls rejected", cases.len()))
}

fn classification() -> Outcome {
    let cases = [
        ("x^2+y^2+z^2", 3, 2, SingularityClass::CanonicalNotTerminal),
        ("x^2+y^2+z^2+w^2", 4, 2, SingularityClass::Terminal),
        ("x^3+y^3+z^3", 3, 3, SingularityClass::LcNotCanonical),
        ("x^4+y^4", 2, 4, SingularityClass::NotLc),
    ];
    for (name, d, k, want) in cases {
        let h = NewtonHypersurface::new(d, diagonal(d, k));
        for method in [ClassifyMethod::Newton, ClassifyMethod::Jets] {
            let opts = ClassifyOptions { method, jet_bound: 3, prime: 3, budget: DEFAULT_EVAL_BUDGET };
            let got = classify_hypersurface(&h, &opts).map_err(|e| format!("{name} {method:?}: {e}"))?.class;
            ensure(got == want, || format!("{name} {method:?}: {got:?}, expected {want:?}"))?;
        }
    }
    Ok("4 hypersurfaces, Newton and jet methods agree".into())
}

fn random_series(rng: &mut ChaCha8Rng, order: usize) -> Vec<Q> {
    (0..=order).map(|l| if l == 0 { q(0) } else { q(rng.gen_range(-3..=3)) }).collect()
}

/// An exact solution on one of three hypersurfaces, built from two random series.
fn random_solution(rng: &mut ChaCha8Rng, field: Field) -> (Poly, TruncatedArc) {
    let order = 8;
    let (s, u) = (random_series(rng, order), random_series(rng, order));
    let mul = |a: &[Q], b: &[Q]| series_mul(field, a, b);
    let lin = |a: &[Q], ca: i64, b: &[Q], cb: i64| -> Vec<Q> {
        a.iter().zip(b).map(|(x, y)| x * q(ca) + y * q(cb)).collect()
    };
    let x: Vec<Poly> = (0..3).map(|j| Poly::var(3, Field::Rationals, j)).collect();
    let (s2, u2, su) = (mul(&s, &s), mul(&u, &u), mul(&s, &u));
    let (f, series) = match rng.gen_range(0..3) {
        0 => (x[0].mul(&x[1]).add(&x[2].pow(2)), vec![s2, u2.iter().map(|c| -c).collect(), su]),
        1 => (
            x[0].pow(2).add(&x[1].pow(2)).sub(&x[2].pow(2)),
            vec![lin(&s2, 1, &u2, -1), lin(&su, 2, &su, 0), lin(&s2, 1, &u2, 1)],
        ),
        _ => {
            let y: Vec<Poly> = (0..2).map(|j| Poly::var(2, Field::Rationals, j)).collect();
            (y[0].mul(&y[1]), vec![vec![q(0); order + 1], u])
        }
    };
    (f, TruncatedArc::new(field, order, series).expect("reduced coefficients"))
}

fn newton_lifting() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x11f7);
    let mut lifted = 0;
    let mut attempts = 0;
    while lifted < 100 {
        attempts += 1;
        ensure(attempts < 10_000, || "too few usable random jets".into())?;
        let field = if rng.gen_bool(0.5) { Field::Rationals } else { Field::prime(5).unwrap() };
        let (f, gamma) = random_solution(&mut rng, field);
        let m = rng.gen_range(1..=4usize);
        let jet = gamma.truncate(m);
        let Some(e) = jet.jacobian_order(&f).map_err(|e| e.to_string())? else { continue };
        if e > m {
            continue;
        }
        let target = rng.gen_range(m + 1..=m + 4);
        let out = newton_lift(&f, &jet, e, target).map_err(|err| format!("m={m} e={e}: {err}"))?;
        let residual = out.apply(&f).map_err(|e| e.to_string())?;
        ensure(out.agrees_with(&jet, m) && residual.iter().all(|c| *c == q(0)), || {
            format!("lift of level {m} to {target} is not a solution")
        })?;
        lifted += 1;
    }
    let x: Vec<Poly> = (0..3).map(|j| Poly::var(3, Field::Rationals, j)).collect();
    let quadric = x[0].pow(2).add(&x[1].pow(2)).add(&x[2].pow(2));
    let xy = Poly::var(2, Field::Rationals, 0).mul(&Poly::var(2, Field::Rationals, 1));
    for (name, f, m, e) in [("quadric", &quadric, 1, 1), ("xy", &xy, 2, 1)] {
        let stable = check_fiber_stability(f, m, e, 3, DEFAULT_EVAL_BUDGET).map_err(|e| e.to_string())?;
        ensure(stable, || format!("fiber of {name} at m={m}, e={e} not stable"))?;
    }
    Ok(format!("{lifted} random lifts over Q and F_5, 2 fiber-stability checks"))
}

fn semicontinuity() -> Outcome {
    let mut chains = 0;
    for (name, pair) in curated_monomial_pairs() {
        for r in semicontinuity_chains(&pair).map_err(|e| e.to_string())? {
            ensure(r.holds, || format!("{name}: {} ⊂ {} gives {} vs {}", r.v, r.w, r.mld_v, r.mld_w))?;
            chains += 1;
        }
    }
    Ok(format!("{chains} chains over 10 pairs"))
}

fn infinite_values() -> Outcome {
    let infeasible = LatticeProgram {
        objective: vec![q(1)],
        eq_rows: vec![Row::new(vec![2], 3)],
        ge_rows: vec![],
        admissible_supports: SupportFamily::full(1),
        required_hit: vec![],
    };
    let v = minimize_lattice(&infeasible).map_err(|e| e.to_string())?.value;
    ensure(v == ExtendedRational::PosInf, || format!("infeasible program gave {v}"))?;
    let exact = contact_codim_exact(&blowup(), &[3], 1, true).map_err(|e| e.to_string())?;
    ensure(exact == ExtendedRational::PosInf, || format!("empty contact locus gave {exact}"))?;
    let mld = mld_on_w(&blowup(), &PairCoefficients::new(vec![q(3)], true)).map_err(|e| e.to_string())?.value;
    ensure(mld == ExtendedRational::NegInf, || format!("blow-up with q=3 gave {mld}"))?;
    Ok("+inf for empty loci, -inf for the non-lc blow-up".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("contact codimensions", contact_codims_agree),
        ("bound check", bound_check_decides_mld),
        ("inversion of adjunction", inversion_of_adjunction),
        ("classification", classification),
        ("newton lifting", newton_lifting),
        ("semicontinuity", semicontinuity),
        ("infinite values", infinite_values),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
