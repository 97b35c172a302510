use akzeta::identities::suites::{poset_numeric_checks, poset_word_checks};
use akzeta::index::Index;
use akzeta::numerics::{ConstTag, Constant, Evaluator};
use akzeta::poset::{
    chain_from_index, i_one, i_z, limit_word_identity, quadrature_oracle, v_poset, xi_poset, PosetError, TwoPoset,
};
use akzeta::words::{Letter, WordSum};
use num_bigint::BigInt;
use num_rational::BigRational;

fn ix(s: &str) -> Index {
    s.parse().unwrap()
}

#[test]
fn word_level_checks_pass() {
    for c in poset_word_checks() {
        assert!(c.pass, "{c}");
    }
}

#[test]
fn numeric_checks_pass() {
    let ev = Evaluator::new(128);
    for c in poset_numeric_checks(&ev) {
        assert!(c.pass, "{c}");
    }
}

#[test]
fn json_round_trip_and_errors() {
    let x = xi_poset(&ix("(1,2)"), 2).unwrap();
    let back = TwoPoset::from_json_str(&x.to_json().to_string()).unwrap();
    assert_eq!(back.w_map(), x.w_map());
    assert!(TwoPoset::from_json_str(r#"{"labels":[1,0],"covers":[[0,1],[1,0]]}"#).is_err());
    assert!(TwoPoset::from_json_str(r#"{"labels":[1],"covers":[[0,3]]}"#).is_err());
}

#[test]
fn limit_identity_and_v_posets() {
    for l in ["(2)", "(3)", "(1,2)"] {
        for a in 0..=3 {
            let (lhs, rhs) = limit_word_identity(&ix(l), a).unwrap();
            assert_eq!(lhs, rhs, "{l} a={a}");
        }
    }
    assert!(limit_word_identity(&ix("(2,1)"), 1).is_err());
    assert_eq!(v_poset(&ix("(2)"), 0, 0).w_map(), chain_from_index(&ix("(2)")).w_map());
}

#[test]
fn xi_poset_integral_matches_constant() {
    let ev = Evaluator::new(128);
    for (k, m) in [("(1)", 1), ("(2)", 1), ("(1,2)", 2), ("(3)", 3)] {
        let a = i_one(&xi_poset(&ix(k), m).unwrap(), &ev).unwrap();
        let b = ev.constant(&Constant::with_arg(ConstTag::Xi, ix(k), m)).unwrap();
        assert!(a.overlaps(&b), "{k} m={m}");
    }
}

#[test]
fn integrals_against_quadrature() {
    let ev = Evaluator::new(96);
    let vee = TwoPoset::new(vec![Letter::E1, Letter::E1, Letter::E0], &[(0, 2), (1, 2)]).unwrap();
    for z in [3, 5, 7] {
        let zq = BigRational::new(BigInt::from(z), BigInt::from(10));
        let ball = i_z(&vee, &zq, &ev).unwrap();
        let est = quadrature_oracle(&vee, z as f64 / 10.0, 1e-10).unwrap();
        assert!((ball.to_f64() - est.value).abs() <= est.error + 1e-12, "z={z}");
    }
    let not_semi = TwoPoset::new(vec![Letter::E0], &[]).unwrap();
    assert!(matches!(quadrature_oracle(&not_semi, 0.5, 1e-9), Err(PosetError::NotAdmissible(_))));
    assert!(i_z(&not_semi, &BigRational::new(1.into(), 2.into()), &ev).is_err());
}

#[test]
fn disjoint_union_is_shuffle() {
    let x = chain_from_index(&ix("(1,2)"));
    let y = xi_poset(&ix("(1)"), 1).unwrap();
    let u = x.disjoint_union(&y).unwrap();
    assert_eq!(u.w_map(), x.w_map().shuffle(&y.w_map()));
    assert_eq!(TwoPoset::empty().w_map(), WordSum::word(akzeta::words::Word::empty()));
}
