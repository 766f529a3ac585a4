#![allow(dead_code)]

use arcmld::resolution::{PairCoefficients, ResolutionData};
use arcmld::Q;
use rand::Rng;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Blow-up of the origin in the plane, `Y_1` the origin.
pub fn blowup() -> ResolutionData {
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

/// Small random model: `s ≤ 3`, entries `≤ 4`, one auxiliary subscheme,
/// `q ∈ {0, 1/2, 1, 2}`, every divisor off `W` meeting a divisor over `W`.
pub fn random_model(rng: &mut impl Rng) -> (ResolutionData, PairCoefficients) {
    let s = rng.gen_range(1..=3usize);
    let r = rng.gen_range(1..=2u64);
    let ri = r as i64;
    let k = (0..s).map(|_| qf(rng.gen_range(-ri..=4 * ri), ri)).collect();
    let y = vec![(0..s).map(|_| rng.gen_range(0..=4u64)).collect()];
    let z = (0..s).map(|_| rng.gen_range(0..=2u64)).collect();
    let mut in_w: Vec<bool> = (0..s).map(|_| rng.gen_bool(0.5)).collect();
    let anchor = rng.gen_range(0..s);
    in_w[anchor] = true;
    let eq_w = in_w.iter().map(|&b| b && rng.gen_bool(0.5)).collect();
    let mut nerve: Vec<Vec<usize>> = (0..s).map(|j| vec![j]).collect();
    for j in 0..s {
        if !in_w[j] {
            nerve.push(vec![j.min(anchor), j.max(anchor)]);
        }
    }
    if s >= 2 && rng.gen_bool(0.5) {
        nerve.push((0..s).collect());
    }
    let data = ResolutionData {
        ambient_dim: rng.gen_range(2..=3),
        r,
        s,
        k,
        y,
        z,
        in_w,
        eq_w,
        nerve,
        meets_w: vec![true; s],
    };
    let choices = [q(0), qf(1, 2), q(1), q(2)];
    let coeffs = PairCoefficients::new(vec![choices[rng.gen_range(0..4)].clone()], true);
    (data, coeffs)
}
