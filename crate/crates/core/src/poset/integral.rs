//! Values of the iterated integrals attached to 2-posets.

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{PosetError, TwoPoset};
use crate::numerics::{Arg, Constant, Evaluator, FunFactor, NumericsError, RealBall};
use crate::words::{word_to_index, Letter, Word};

fn domain(e: PosetError) -> NumericsError {
    NumericsError::Domain(e.to_string())
}

/// `Li(W(X); z)` for a semi-admissible 2-poset.
pub fn i_z(x: &TwoPoset, z: &BigRational, ev: &Evaluator) -> Result<RealBall, NumericsError> {
    if !x.is_semi_admissible() {
        return Err(domain(PosetError::NotAdmissible("semi-admissible")));
    }
    let mut sum = RealBall::zero(ev.working_prec());
    for (w, c) in x.w_map().iter() {
        let k = word_to_index(w).map_err(|e| NumericsError::Domain(e.to_string()))?;
        sum = sum.add_ball(&ev.function(&FunFactor::li(k, Arg::Z), z)?.mul_rational(c));
    }
    Ok(sum)
}

/// `ζ(W(X))` for an admissible 2-poset.
pub fn i_one(x: &TwoPoset, ev: &Evaluator) -> Result<RealBall, NumericsError> {
    if !x.is_admissible() {
        return Err(domain(PosetError::NotAdmissible("admissible")));
    }
    let mut sum = RealBall::zero(ev.working_prec());
    for (w, c) in x.w_map().iter() {
        let k = word_to_index(w).map_err(|e| NumericsError::Domain(e.to_string()))?;
        sum = sum.add_ball(&ev.constant(&Constant::mzv(k))?.mul_rational(c));
    }
    Ok(sum)
}

/// A low-precision value with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureEstimate {
    pub value: f64,
    pub error: f64,
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// `∫_{0 < t_1 < … < t_n < t} ∏ ω_{w_i}(t_i)` with `ω_1 = dt/(1-t)` and
/// `ω_0 = dt/t`, by nested Gauss–Legendre quadrature.
fn iterated(w: &[Letter], t: f64, rule: &[(f64, f64)]) -> f64 {
    let Some((&last, rest)) = w.split_last() else {
        return 1.0;
    };
    let half = 0.5 * t;
    rule.iter()
        .map(|&(x, wt)| {
            let u = half * (x + 1.0);
            let form = match last {
                Letter::E1 => 1.0 / (1.0 - u),
                Letter::E0 => 1.0 / u,
            };
            wt * half * form * iterated(rest, u, rule)
        })
        .sum()
}

fn word_integral(w: &Word, z: f64, n: usize) -> f64 {
    iterated(w.letters(), z, &gauss_legendre(n))
}

/// Direct numerical integration over the order polytope of `X`, split into
/// the simplices of its linear extensions. Limited to four elements.
pub fn quadrature_oracle(x: &TwoPoset, z: f64, target_error: f64) -> Result<QuadratureEstimate, PosetError> {
    if x.len() > 4 {
        return Err(PosetError::TooLarge);
    }
    if !x.is_semi_admissible() {
        return Err(PosetError::NotAdmissible("semi-admissible"));
    }
    if !(z > 0.0 && z <= 0.9) {
        return Err(PosetError::Parse(format!("quadrature needs 0 < z <= 0.9, got {z}")));
    }
    let words = x.w_map_by_extensions();
    let eval = |n: usize| -> f64 {
        words.iter().map(|(w, c)| c.to_f64().unwrap_or(f64::NAN) * word_integral(w, z, n)).sum()
    };
    let mut n = 8;
    let mut coarse = eval(n);
    loop {
        let fine = eval(2 * n);
        let error = (fine - coarse).abs() + 1e-14 * fine.abs().max(1.0);
        if error <= target_error || n >= 32 {
            return Ok(QuadratureEstimate { value: fine, error });
        }
        n *= 2;
        coarse = fine;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::chain_from_index;

    #[test]
    fn depth_one_and_antichain() {
        let two = chain_from_index(&"(2)".parse().unwrap());
        let q = quadrature_oracle(&two, 0.5, 1e-9).unwrap();
        assert!((q.value - 0.5822405264650125).abs() < 1e-9, "{q:?}");
        let anti = TwoPoset::new(vec![Letter::E1, Letter::E1], &[]).unwrap();
        let q = quadrature_oracle(&anti, 0.5, 1e-9).unwrap();
        assert!((q.value - std::f64::consts::LN_2.powi(2)).abs() < 1e-9, "{q:?}");
        let five = chain_from_index(&"(1,1,1,2)".parse().unwrap());
        assert_eq!(quadrature_oracle(&five, 0.5, 1e-6), Err(PosetError::TooLarge));
    }

    #[test]
    fn ball_values() {
        let ev = Evaluator::new(96);
        let half = BigRational::new(1.into(), 2.into());
        assert!(i_z(&TwoPoset::empty(), &half, &ev).unwrap().contains_rational(&BigRational::from_integer(1.into())));
        let xi = crate::poset::xi_poset(&"(1)".parse().unwrap(), 2).unwrap();
        let v = i_one(&xi, &ev).unwrap();
        assert!((v.to_f64() - 2.4041138063191885).abs() < 1e-15);
    }
}
