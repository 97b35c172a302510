use akzeta::identities::{thm_main2, Expr};
use akzeta::identities::suites::random_posets;
use akzeta::index::Index;
use akzeta::numerics::{Evaluator, Level, RealBall};
use akzeta::poset::{rewrite_check, RewriteVariant};
use akzeta::words::{index_to_word, shuffle, word_to_index, Letter, Word, WordSum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn index(max_len: usize, max_entry: u32) -> impl Strategy<Value = Index> {
    prop::collection::vec(1..=max_entry, 0..=max_len).prop_map(|v| Index::new(v).unwrap())
}

fn nonempty_index(max_len: usize, max_entry: u32) -> impl Strategy<Value = Index> {
    prop::collection::vec(1..=max_entry, 1..=max_len).prop_map(|v| Index::new(v).unwrap())
}

fn admissible(max_len: usize, max_entry: u32) -> impl Strategy<Value = Index> {
    (prop::collection::vec(1..=max_entry, 0..max_len), 2..=max_entry).prop_map(|(mut v, last)| {
        v.push(last);
        Index::new(v).unwrap()
    })
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(any::<bool>(), 0..=max_len)
        .prop_map(|v| Word(v.into_iter().map(|b| if b { Letter::E1 } else { Letter::E0 }).collect()))
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-10_000i64..10_000, 1i64..5000).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dual_is_a_weight_preserving_involution(k in admissible(6, 5)) {
        let d = k.dual().unwrap();
        prop_assert!(d.is_admissible());
        prop_assert_eq!(d.weight(), k.weight());
        prop_assert_eq!(d.dual().unwrap(), k);
    }

    #[test]
    fn hoffman_dual_relation(k in nonempty_index(6, 5)) {
        let h = k.hoffman_dual();
        prop_assert_eq!(h.hoffman_dual(), k.clone());
        prop_assert_eq!(h.weight(), k.weight());
        prop_assert_eq!(h.depth() as u32, k.weight() - k.depth() as u32 + 1);
        let other = k.k_plus().unwrap().dual().unwrap().k_minus().unwrap().reverse_blocks();
        prop_assert_eq!(other, h);
    }

    #[test]
    fn blocks_round_trip(k in index(8, 4)) {
        prop_assert_eq!(Index::from_blocks(&k.to_blocks()), k.clone());
        let text = k.to_string();
        prop_assert_eq!(text.parse::<Index>().unwrap(), k);
    }

    #[test]
    fn word_dual_matches_index_dual(k in admissible(5, 5)) {
        let w = index_to_word(&k);
        prop_assert_eq!(word_to_index(&w.dual().unwrap()).unwrap(), k.dual().unwrap());
    }

    #[test]
    fn shuffle_is_commutative_with_binomial_mass(u in word(5), v in word(5)) {
        let uv = shuffle(&u, &v);
        prop_assert_eq!(&uv, &shuffle(&v, &u));
        let mass = akzeta::index::binomial((u.len() + v.len()) as u64, u.len() as u64);
        prop_assert_eq!(uv.l1_norm(), BigRational::from_integer(BigInt::from(mass)));
        prop_assert!(uv.iter().all(|(_, c)| c.is_integer()));
        if u.in_h1() && v.in_h1() {
            prop_assert!(uv.iter().all(|(w, _)| w.in_h1()));
        }
    }

    #[test]
    fn shuffle_is_associative(u in word(3), v in word(3), w in word(3)) {
        let left = shuffle(&u, &v).shuffle(&WordSum::word(w.clone()));
        let right = WordSum::word(u).shuffle(&shuffle(&v, &w));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn word_map_equals_extension_sum(seed in any::<u64>()) {
        for p in random_posets(seed, 4, 7) {
            prop_assert_eq!(p.w_map(), p.w_map_by_extensions());
        }
    }

    #[test]
    fn rewrite_identities_hold(k in nonempty_index(3, 3), l in nonempty_index(3, 3), param in 0usize..=2, bullets in any::<bool>()) {
        prop_assume!(k.weight() <= 3 && l.weight() <= 3);
        let variant = if bullets { RewriteVariant::Bullets } else { RewriteVariant::Circles };
        prop_assert!(rewrite_check(&k, &l, param, variant).unwrap());
    }

    #[test]
    fn ball_arithmetic_encloses_exact_results(a in rational(), b in rational(), prec in 64u32..200) {
        let x = RealBall::from_rational(&a, prec);
        let y = RealBall::from_rational(&b, prec);
        prop_assert!(x.contains_rational(&a));
        prop_assert!(x.add_ball(&y).contains_rational(&(&a + &b)));
        prop_assert!(x.sub_ball(&y).contains_rational(&(&a - &b)));
        prop_assert!(x.mul_ball(&y).contains_rational(&(&a * &b)));
        if !b.is_zero() {
            prop_assert!(x.div_ball(&y).unwrap().contains_rational(&(&a / &b)));
        }
        prop_assert!(x.sqr().contains_rational(&(&a * &a)));
    }

    #[test]
    fn canonical_form_ignores_term_order(k in nonempty_index(3, 3), perm in Just((0..64usize).collect::<Vec<_>>()).prop_shuffle()) {
        let id = thm_main2(Level::One, &k).unwrap();
        let mut order: Vec<usize> = perm.into_iter().filter(|&i| i < id.rhs.len()).collect();
        order.extend(id.rhs.len().min(64)..id.rhs.len());
        let shuffled = Expr { terms: order.iter().map(|&i| id.rhs.terms[i].clone()).collect() };
        prop_assert_eq!(shuffled.canonical(), id.rhs.canonical());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn evaluation_is_order_independent(k in nonempty_index(3, 3), reversed in any::<bool>(), zn in 1i64..10) {
        let ev = Evaluator::new(128);
        let z = BigRational::new(BigInt::from(zn), BigInt::from(10));
        let id = thm_main2(Level::One, &k).unwrap();
        let mut terms = id.rhs.terms.clone();
        if reversed {
            terms.reverse();
        } else {
            let half = terms.len() / 2;
            terms.rotate_left(half);
        }
        let a = id.rhs.evaluate(&ev, Some(&z)).unwrap();
        let b = Expr { terms }.evaluate(&ev, Some(&z)).unwrap();
        prop_assert!(a.overlaps(&b));
        let again = id.rhs.evaluate(&ev, Some(&z)).unwrap();
        prop_assert_eq!(a.mid_parts(), again.mid_parts());
    }
}
