use arcmld_py::{
    check_inversion_of_adjunction, check_semicontinuity, classify, contact_codim, count_jets, log_discrepancies, mld,
    mld_bound_check, mld_on_w, newton_lift, run_cli, Hypersurface, MonomialPair, ResolutionData, TruncatedArc,
};

const BLOWUP: &str = r#"{"ambient_dim": 2, "r": 1, "s": 1, "k": ["1"], "y": [[1]], "z": [0],
    "in_w": [true], "eq_w": [true], "nerve": [[0]], "meets_w": [true]}"#;

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

#[test]
fn monomial_pair_values() {
    let pair = MonomialPair::new(2, vec![vec![vec![1, 0], vec![0, 1]]], strings(&["2"])).unwrap();
    assert_eq!(mld(&pair, "origin").unwrap(), "0");
    assert_eq!(contact_codim(&pair, vec![3], "origin").unwrap(), "6");
    let heavy = MonomialPair::new(2, vec![vec![vec![1, 0], vec![0, 1]]], strings(&["5/2"])).unwrap();
    assert_eq!(mld(&heavy, "origin").unwrap(), "-inf");
    assert!(MonomialPair::new(2, vec![vec![vec![1]]], vec![]).is_err());
    let back = MonomialPair::from_json(&pair.to_json()).unwrap();
    assert_eq!(back.to_json(), pair.to_json());
}

#[test]
fn resolution_values() {
    let data = ResolutionData::from_json(BLOWUP).unwrap();
    assert_eq!((data.ambient_dim(), data.num_divisors()), (2, 1));
    assert_eq!(log_discrepancies(&data, strings(&["1/2"]), true).unwrap(), ["3/2"]);
    assert_eq!(mld_on_w(&data, strings(&["1/2"]), true).unwrap(), "3/2");
    assert_eq!(mld_on_w(&data, strings(&["3"]), true).unwrap(), "-inf");
    assert!(mld_bound_check(&data, strings(&["1/2"]), "3/2", true).unwrap());
    assert!(!mld_bound_check(&data, strings(&["1/2"]), "2", true).unwrap());
    assert!(ResolutionData::from_json(r#"{"ambient_dim": 2}"#).is_err());
}

#[test]
fn hypersurface_operations() {
    let vars = strings(&["x", "y", "z", "w"]);
    let h = Hypersurface::new(vars, "x^2 + y^2 + z^2 + w^2".into(), true, true).unwrap();
    assert_eq!(classify(&h, "both", 3, 3, 100_000_000).unwrap(), "TERMINAL");
    assert!(classify(&h, "guess", 3, 3, 100_000_000).is_err());

    let quad = Hypersurface::new(strings(&["x", "y", "z"]), "x^2 + y^2 + z^2".into(), false, false).unwrap();
    assert_eq!(count_jets(&quad, 1, 3, None, 100_000_000).unwrap(), 99);
    assert_eq!(count_jets(&quad, 0, 3, Some("origin"), 100_000_000).unwrap(), 1);
    assert!(count_jets(&quad, 1, 3, None, 10).is_err());
    assert!(Hypersurface::new(strings(&["x"]), "x^-1".into(), false, false).is_err());
}

#[test]
fn lifting() {
    let h = Hypersurface::new(strings(&["x", "y", "z"]), "x*y + z^2".into(), false, false).unwrap();
    let arc = TruncatedArc::new(vec![strings(&["0", "1"]), strings(&["0", "-1"]), strings(&["0", "1"])], None).unwrap();
    let out = newton_lift(&h, &arc, 1, 4).unwrap();
    assert_eq!(out.order(), 4);
    assert_eq!(out.series()[1], ["0", "-1", "0", "0", "0"]);
    let low = TruncatedArc::new(vec![strings(&["0", "1"]), strings(&["0", "1"]), strings(&["0", "0"])], None).unwrap();
    assert!(newton_lift(&h, &low, 1, 4).is_err());
    let modular = TruncatedArc::new(vec![strings(&["0", "6"])], Some(5)).unwrap();
    assert_eq!(modular.series()[0], ["0", "1"]);
}

#[test]
fn theorem_checks_and_cli() {
    let case = r#"{"ambient": {"d": 2}, "divisor": {"d": 2, "support": [[1, 0]]}, "center": "origin",
        "divisor_side": {"expected": {"mld": "1"}}}"#;
    let report: serde_json::Value = serde_json::from_str(&check_inversion_of_adjunction(case).unwrap()).unwrap();
    assert_eq!(report["equal"], true);
    let semi = r#"{"pair": {"d": 2, "ideals": [[[1, 1]]], "q": ["1"]}, "v": "origin", "w": "subspace:0", "codim_vw": 1}"#;
    let report: serde_json::Value = serde_json::from_str(&check_semicontinuity(semi).unwrap()).unwrap();
    assert_eq!(report["holds"], true);

    let (code, out, _) = run_cli(strings(&["--help"]));
    assert_eq!(code, 0);
    assert!(out.contains("classify"));
    assert_eq!(run_cli(strings(&["mld", "/nonexistent.json"])).0, 2);
}
