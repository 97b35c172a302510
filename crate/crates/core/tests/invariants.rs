use std::fs;

use akzeta::identities::suites::combinatorics_checks;
use akzeta::index::{admissible_of_weight, all_of_weight, binomial, compositions, Index};
use akzeta::numerics::evaluator::{a_ones_frac, arg_value, li_ones};
use akzeta::numerics::series::polylog;
use akzeta::numerics::{Arg, Constant, Evaluator, FunFactor, Level, RealBall};
use akzeta::words::{index_to_word, shuffle, word_to_index, Letter, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn index_involutions_exhaustive_to_weight_ten() {
    for w in 1..=10 {
        for k in all_of_weight(w) {
            let h = k.hoffman_dual();
            assert_eq!(h.hoffman_dual(), k);
            assert_eq!(h.weight(), w);
            assert_eq!(h.depth() as u32, w - k.depth() as u32 + 1);
            let other = k.k_plus().unwrap().dual().unwrap().k_minus().unwrap().reverse_blocks();
            assert_eq!(other, h, "{k}");
            if k.is_admissible() {
                let d = k.dual().unwrap();
                assert_eq!(d.weight(), w);
                assert_eq!(d.dual().unwrap(), k);
            } else {
                assert!(k.dual().is_err());
            }
        }
    }
    assert!(combinatorics_checks(10).iter().all(|c| c.pass));
}

#[test]
fn block_form_round_trip_to_weight_twelve() {
    let mut count = 0;
    for w in 0..=12 {
        for k in all_of_weight(w) {
            assert_eq!(Index::from_blocks(&k.to_blocks()), k);
            count += 1;
        }
    }
    assert_eq!(count, 1 << 12);
}

#[test]
fn composition_counts_and_order() {
    for w in 0..=8u32 {
        for d in 1..=6usize {
            let c = compositions(w, d);
            assert_eq!(c.len() as u128, binomial((w as usize + d - 1) as u64, (d - 1) as u64));
            assert!(c.iter().all(|e| e.weight() == w && e.depth() == d));
            let keys: Vec<Vec<u32>> = c.iter().map(|e| e.0.iter().rev().copied().collect()).collect();
            assert!(keys.windows(2).all(|p| p[0] < p[1]), "colexicographic order for ({w},{d})");
        }
    }
}

#[test]
fn word_dual_agrees_with_index_dual() {
    for w in 2..=9 {
        for k in admissible_of_weight(w) {
            let word = index_to_word(&k);
            assert_eq!(word_to_index(&word.dual().unwrap()).unwrap(), k.dual().unwrap());
        }
    }
}

#[test]
fn shuffle_mass_exhaustive() {
    let words: Vec<Word> = (0..=5usize)
        .flat_map(|n| {
            (0..1u32 << n)
                .map(move |b| Word((0..n).map(|i| if b >> i & 1 == 1 { Letter::E1 } else { Letter::E0 }).collect()))
        })
        .collect();
    for u in &words {
        for v in &words {
            let s = shuffle(u, v);
            assert!(s.iter().all(|(_, c)| c.is_integer()));
            let mass = binomial((u.len() + v.len()) as u64, u.len() as u64);
            assert_eq!(s.l1_norm(), BigRational::from_integer(BigInt::from(mass)));
        }
    }
}

#[test]
fn shuffle_product_of_polylogarithms() {
    let ev = Evaluator::new(128);
    let ks: Vec<Index> = (1..=4).flat_map(all_of_weight).collect();
    let tol = RealBall::from_rational(&q(1, 1), 0).mul_2exp(-66);
    for z in [q(3, 10), q(1, 2), q(7, 10)] {
        for k in &ks {
            for l in &ks {
                let s = shuffle(&index_to_word(k), &index_to_word(l));
                let mut sum = RealBall::zero(ev.working_prec());
                for (w, c) in s.iter() {
                    assert!(w.in_h1());
                    let idx = word_to_index(w).unwrap();
                    sum = sum.add_ball(&ev.function(&FunFactor::li(idx, Arg::Z), &z).unwrap().mul_rational(c));
                }
                let prod = ev
                    .function(&FunFactor::li(k.clone(), Arg::Z), &z)
                    .unwrap()
                    .mul_ball(&ev.function(&FunFactor::li(l.clone(), Arg::Z), &z).unwrap());
                let dev = sum.sub_ball(&prod).abs_upper();
                assert!(dev.le(tol.abs_upper()), "{k} x {l} at {z}: {}", dev.to_f64());
            }
        }
    }
}

#[test]
fn closed_forms_agree_with_series_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let wp = 160;
    for _ in 0..20 {
        let d = rng.random_range(1..=4u32);
        let z = q(rng.random_range(5..=90), 100);
        let closed = li_ones(d, &z, wp).unwrap();
        let series = polylog(Level::One, &Index::ones(d as usize), &RealBall::from_rational(&z, wp), wp).unwrap();
        assert!(closed.overlaps(&series), "Li d={d} z={z}");
        let frac = arg_value(Arg::Level2Frac, &z);
        let closed = a_ones_frac(d, &z, wp).unwrap();
        let series = polylog(Level::Two, &Index::ones(d as usize), &RealBall::from_rational(&frac, wp), wp).unwrap();
        assert!(closed.overlaps(&series), "A d={d} z={z}");
    }
}

#[test]
fn radii_shrink_with_precision() {
    let low = Evaluator::new(128);
    let high = Evaluator::new(256);
    for w in 2..=5 {
        for k in admissible_of_weight(w) {
            for c in [Constant::mzv(k.clone()), Constant::mtv(k.clone())] {
                let a = low.constant(&c).unwrap();
                let b = high.constant(&c).unwrap();
                assert!(b.rad().le(a.rad()), "{c}");
                assert!(a.overlaps(&b), "{c}");
            }
        }
    }
}

#[test]
fn disk_cache_round_trip_and_damage() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.txt");
    let consts: Vec<Constant> = ["(2)", "(1,2)", "(3)"].iter().map(|s| Constant::mzv(s.parse().unwrap())).collect();
    let first = Evaluator::new(128).with_disk_cache(&path);
    let values: Vec<RealBall> = consts.iter().map(|c| first.constant(c).unwrap()).collect();
    first.flush().unwrap();
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("MZVCACHE v1\n"));

    let warm = Evaluator::new(128).with_disk_cache(&path);
    for (c, v) in consts.iter().zip(&values) {
        let again = warm.constant(c).unwrap();
        assert_eq!(again.mid_parts(), v.mid_parts());
        assert_eq!(again.rad(), v.rad());
    }
    assert_eq!(warm.stats().computed, 0);
    assert!(warm.stats().disk_hits >= 3);

    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let last = lines.len() - 1;
    lines[last] = lines[last].replacen('|', "|9", 1);
    fs::write(&path, lines.join("\n") + "\n").unwrap();
    let damaged = Evaluator::new(128).with_disk_cache(&path);
    assert!(!damaged.cache_warnings().is_empty());
    for (c, v) in consts.iter().zip(&values) {
        assert!(damaged.constant(c).unwrap().overlaps(v));
    }
    assert!(damaged.stats().computed >= 1);
}
