use akzeta::identities::suites::{single_block_symbolic_check, xu_cases};
use akzeta::identities::*;
use akzeta::index::Index;
use akzeta::numerics::elementary::pi;
use akzeta::numerics::{Evaluator, Level, RealBall, XiRoute};
use num_bigint::BigInt;
use num_rational::BigRational;

fn ix(s: &str) -> Index {
    s.parse().unwrap()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn grid() -> VerifyOptions {
    VerifyOptions::new(vec![q(3, 10), q(1, 2), q(7, 10)], 1e-20)
}

fn sides(id: &Identity, ev: &Evaluator) -> (RealBall, RealBall) {
    (id.lhs.evaluate(ev, None).unwrap(), id.rhs.evaluate(ev, None).unwrap())
}

fn assert_close(a: &RealBall, b: &RealBall, tol: f64) {
    let d = a.sub_ball(b).abs_upper().to_f64();
    assert!(d <= tol, "{a} vs {b}: {d:e}");
}

#[test]
fn depth_two_functional_equation_passes_and_detects_perturbation() {
    let ev = Evaluator::new(128);
    let id = thm_main2(Level::One, &ix("(2)")).unwrap();
    let r = verify(&id, &ev, &grid()).unwrap();
    assert!(r.pass, "{}", r.summary());
    assert_eq!(r.points.len(), 3);

    let mut bad = id.clone();
    bad.rhs.push(Term::new(q(1, 10_000_000_000), vec![], vec![]));
    let r = verify(&bad, &ev, &grid()).unwrap();
    assert!(!r.pass);
    assert!(r.points.iter().all(|p| !p.pass && p.dev > 9e-11 && p.dev < 1.1e-10));
}

#[test]
fn k_one_reduces_to_minus_log() {
    let id = thm_main2(Level::One, &ix("(1)")).unwrap();
    assert_eq!(id.rhs.canonical().len(), 1);
    let ev = Evaluator::new(128);
    assert!(verify(&id, &ev, &grid()).unwrap().pass);
}

#[test]
fn duality_relation_for_k_two() {
    let ev = Evaluator::new(128);
    let id = cor_main(Level::One, &ix("(2)"), 1).unwrap();
    let r = verify(&id, &ev, &VerifyOptions::for_level(Level::One)).unwrap();
    assert!(r.pass);
    assert_eq!(r.points.len(), 1);
    let (lhs, rhs) = sides(&id, &ev);
    let p = pi(ev.working_prec());
    let target = p.sqr().sqr().div_u64(36);
    assert_close(&lhs, &target, 1e-30);
    assert_close(&rhs, &target, 1e-30);
    assert!(r.points[0].lhs.starts_with("2.705808084277845"));
}

#[test]
fn k_one_duality_is_trivial() {
    let ev = Evaluator::new(128);
    let id = cor_main(Level::One, &ix("(1)"), 1).unwrap();
    let (lhs, rhs) = sides(&id, &ev);
    assert!(lhs.contains_zero() && rhs.contains_zero());
}

#[test]
fn xi_expansion_small_cases() {
    let ev = Evaluator::new(128);
    for m in 1..=4 {
        let id = thm_main1(Level::One, &ix("(1)"), m).unwrap();
        assert!(verify(&id, &ev, &VerifyOptions::for_level(Level::One)).unwrap().pass);
    }
    let (lhs, rhs) = sides(&thm_main1(Level::One, &ix("(2)"), 1).unwrap(), &ev);
    let target = pi(ev.working_prec()).sqr().sqr().div_u64(72);
    assert_close(&lhs, &target, 1e-30);
    assert_close(&rhs, &target, 1e-30);
    let id = thm_main1(Level::One, &ix("(1,2)"), 1).unwrap();
    assert!(verify(&id, &ev, &VerifyOptions::for_level(Level::One)).unwrap().pass);
}

#[test]
fn earlier_results_small_cases() {
    let ev = Evaluator::new(128);
    let (lhs, rhs) = sides(&ak_thm8(1, 1, 1).unwrap(), &ev);
    let target = pi(ev.working_prec()).sqr().sqr().div_u64(72);
    assert_close(&lhs, &target, 1e-30);
    assert_close(&rhs, &target, 1e-30);
    let dep = ak_dep1(2).unwrap();
    assert!(verify(&dep, &ev, &grid()).unwrap().pass);
    let main = thm_main2(Level::One, &ix("(1,2)")).unwrap();
    let xu = xu_2_8(2, 1).unwrap();
    assert_eq!(main.rhs.canonical(), xu.rhs.reflect().canonical());
    assert!(single_block_symbolic_check(3).pass);
}

#[test]
fn duality_relation_specializes_to_single_block_result() {
    let ev = Evaluator::new(128);
    for a in 1..=3u32 {
        for b in 0..=3u32 {
            for m in 1..=3u32 {
                let k = Index::ones(a as usize - 1).push(b + 1);
                let cor = cor_main(Level::One, &k, m).unwrap();
                let ak = ak_thm9_2(a, b, m).unwrap();
                let (cl, cr) = sides(&cor, &ev);
                let (al, ar) = sides(&ak, &ev);
                assert_close(&cl, &al, 1e-20);
                assert_close(&cr, &ar, 1e-20);
            }
        }
    }
}

#[test]
fn xi_routes_agree_on_the_duality_relation() {
    let expansion = Evaluator::new(128);
    let poset = Evaluator::new(128).with_xi_route(XiRoute::Poset);
    for k in ["(2)", "(1,2)", "(2,1)", "(1,1,2)"] {
        for m in 1..=2 {
            let id = cor_main(Level::One, &ix(k), m).unwrap();
            let diff = |ev: &Evaluator| id.lhs.evaluate(ev, None).unwrap().sub_ball(&id.rhs.evaluate(ev, None).unwrap());
            assert!(diff(&expansion).overlaps(&diff(&poset)), "{k} m={m}");
        }
    }
}

#[test]
fn level_two_small_cases() {
    let ev = Evaluator::new(128);
    let opts = VerifyOptions::for_level(Level::Two);
    let id = thm_main2(Level::Two, &ix("(1)")).unwrap();
    assert_eq!(id.lhs.canonical(), id.rhs.canonical());
    for m in 1..=3 {
        assert!(verify(&thm_main1(Level::Two, &ix("(1)"), m).unwrap(), &ev, &opts).unwrap().pass);
    }
    let (lhs, rhs) = sides(&cor_main(Level::Two, &ix("(2)"), 1).unwrap(), &ev);
    let quarter = pi(ev.working_prec()).sqr().div_u64(4).sqr();
    assert_close(&lhs, &quarter, 1e-25);
    assert_close(&rhs, &quarter, 1e-25);
}

#[test]
fn multi_block_relation_reading() {
    let ev = Evaluator::new(128);
    let opts = VerifyOptions::for_level(Level::One);
    let passing: Vec<XuReading> = XuReading::ALL
        .into_iter()
        .filter(|&r| {
            xu_cases().iter().all(|(a, m, ks)| verify(&xu_thm3_3(*a, *m, ks, r).unwrap(), &ev, &opts).unwrap().pass)
        })
        .collect();
    assert_eq!(passing, vec![XuReading::SwappedSecondProduct]);
}

#[test]
fn builders_reject_bad_parameters() {
    assert!(thm_main2(Level::One, &Index::empty()).is_err());
    assert!(ak_dep1(1).is_err());
    assert!(xu_thm3_3(1, 1, &ix("(1,2)"), XuReading::AsPrinted).is_err());
    let ev = Evaluator::new(128);
    let id = thm_main2(Level::One, &ix("(2)")).unwrap();
    assert!(verify(&id, &ev, &VerifyOptions::new(vec![q(99, 100)], 1e-20)).is_err());
    assert!(verify(&id, &ev, &VerifyOptions::new(vec![q(1, 2)], 0.0)).is_err());
}

#[test]
fn family_names_round_trip() {
    for f in Family::ALL {
        assert_eq!(f.name().parse::<Family>().unwrap(), f);
    }
    let params = |n: &str| match n {
        "k" => Some("(1,2)".to_string()),
        "m" => Some("2".to_string()),
        _ => None,
    };
    let id = Family::CorMain.build(&params).unwrap();
    assert_eq!(id, cor_main(Level::One, &ix("(1,2)"), 2).unwrap());
    assert!(Family::AkThm8.build(&params).is_err());
}

#[test]
fn report_json_round_trip() {
    let ev = Evaluator::new(128);
    let r = verify(&thm_main2(Level::One, &ix("(1,2)")).unwrap(), &ev, &grid()).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    let back: VerificationReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
}
