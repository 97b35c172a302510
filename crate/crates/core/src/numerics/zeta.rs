//! Multiple zeta and multiple t-values by splitting the defining iterated
//! integral at the fixed point of an involution of `(0, 1)`.
//!
//! For an admissible word `w` of length `n` and the involution `t ↦ 1 - t`
//! (fixed point `1/2`) one has
//! `ζ(w) = Σ_i I(0; w_1…w_i; ½) · I(0; dual(w_{i+1}…w_n); ½)`,
//! and the dual of a suffix is a prefix of `dual(w)`. At level two the
//! involution `t ↦ (1-t)/(1+t)` with fixed point `√2 - 1` exchanges the two
//! level-two forms in the same way.

use num_rational::BigRational;

use super::ball::RealBall;
use super::elementary::sqrt2_minus_one;
use super::series::{prefix_series, Level};
use super::NumericsError;
use crate::index::{binom_weight, compositions, Index};
use crate::words::{index_to_word, word_to_index};

fn split_point(level: Level, wp: u32) -> RealBall {
    match level {
        Level::One => RealBall::from_rational(&BigRational::new(1.into(), 2.into()), wp),
        Level::Two => sqrt2_minus_one(wp),
    }
}

/// `ζ(k)` (level one) or `T(k)` (level two) for an admissible index.
pub fn multiple_value(level: Level, k: &Index, wp: u32) -> Result<RealBall, NumericsError> {
    k.require_admissible()?;
    if k.is_empty() {
        return Ok(RealBall::one(wp));
    }
    let w = index_to_word(k);
    let dual = word_to_index(&w.dual().expect("admissible words are convergent")).expect("starts with e1");
    let z = split_point(level, wp);
    let p = prefix_series(level, k, &z, wp)?;
    let q = prefix_series(level, &dual, &z, wp)?;
    let n = w.len();
    let mut sum = RealBall::zero(wp);
    for i in 0..=n {
        sum = sum.add_ball(&p[i].mul_ball(&q[n - i]));
    }
    Ok(sum)
}

pub fn mzv(k: &Index, wp: u32) -> Result<RealBall, NumericsError> {
    multiple_value(Level::One, k, wp)
}

pub fn mtv(k: &Index, wp: u32) -> Result<RealBall, NumericsError> {
    multiple_value(Level::Two, k, wp)
}

/// Summands of `Σ_{wt j = m-1, dep j = dep κ} b(κ; j) · V(κ + j)` with
/// `κ = (k_+)^†`, as `(multiplicity, index)` pairs.
pub fn xi_expansion(k: &Index, m: u32) -> Result<Vec<(u128, Index)>, NumericsError> {
    if m == 0 {
        return Err(NumericsError::Domain("xi requires m >= 1".into()));
    }
    let kappa = k.k_plus()?.dual()?;
    let mut out = Vec::new();
    for j in compositions(m - 1, kappa.depth()) {
        let c = binom_weight(&kappa, &j)?;
        out.push((c, kappa.add(&j)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ix(s: &str) -> Index {
        s.parse().unwrap()
    }

    #[test]
    fn zeta_two_and_three() {
        let z2 = mzv(&ix("(2)"), 160).unwrap();
        assert!(z2.mid_decimal().starts_with("1.6449340668482264364724151666460251892189"));
        let z3 = mzv(&ix("(3)"), 160).unwrap();
        assert!(z3.mid_decimal().starts_with("1.2020569031595942853997381615114499907649"));
        assert!(z3.overlaps(&mzv(&ix("(1,2)"), 160).unwrap()));
        assert!(z3.meets_precision(128));
    }

    #[test]
    fn t_two_is_pi_squared_over_four() {
        let t2 = mtv(&ix("(2)"), 160).unwrap();
        let p = super::super::elementary::pi(160);
        assert!(t2.overlaps(&p.sqr().div_u64(4)));
    }

    #[test]
    fn xi_terms() {
        let e = xi_expansion(&ix("(1)"), 2).unwrap();
        assert_eq!(e, vec![(2, ix("(3)"))]);
        assert!(mzv(&ix("(2,1)"), 64).is_err());
    }
}
