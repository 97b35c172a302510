//! Logarithms, `π` and `√2 - 1` as balls.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ball::{Mag, RealBall};
use super::NumericsError;

/// Alternating or positive power series `Σ_{n≥0} y^{2n+1}/(2n+1)` (`atanh`)
/// or `Σ (-1)^n y^{2n+1}/(2n+1)` (`atan`) for a rational `|y| <= 1/2`.
fn odd_series(y: &BigRational, alternating: bool, wp: u32) -> RealBall {
    let yb = RealBall::from_rational(y, wp);
    let y2 = yb.sqr();
    let ymag = yb.abs_upper();
    let y2mag = ymag.mul(ymag);
    let one_minus = Mag::from_u64(1).sub_down(y2mag);
    let target = Mag::pow2(-(wp as i64) - 8);
    let mut power = yb.clone();
    let mut sum = yb;
    let mut pmag = ymag;
    let mut n: u64 = 0;
    loop {
        n += 1;
        power = power.mul_ball(&y2);
        pmag = pmag.mul(y2mag);
        let term = power.div_u64(2 * n + 1);
        sum = if alternating && n % 2 == 1 { sum.sub_ball(&term) } else { sum.add_ball(&term) };
        let tail = pmag.mul(y2mag).div_up(Mag::from_u64_down(2 * n + 3)).div_up(one_minus);
        if tail.le(target) {
            return sum.add_error(tail);
        }
    }
}

/// `atanh(y)` for rational `|y| <= 1/2`.
pub fn atanh_rational(y: &BigRational, wp: u32) -> RealBall {
    assert!(y.abs() <= BigRational::new(1.into(), 2.into()), "atanh argument too large");
    odd_series(y, false, wp)
}

/// `log 2 = 2 atanh(1/3)`.
pub fn ln2(wp: u32) -> RealBall {
    atanh_rational(&BigRational::new(1.into(), 3.into()), wp + 4).mul_2exp(1).with_prec(wp)
}

/// Natural logarithm of a positive rational.
pub fn log_rational(x: &BigRational, wp: u32) -> Result<RealBall, NumericsError> {
    if !x.is_positive() {
        return Err(NumericsError::Domain(format!("log of non-positive number {x}")));
    }
    if x.is_one() {
        return Ok(RealBall::zero(wp));
    }
    let guard = wp + 8;
    let approx = x.numer().bits() as i64 - x.denom().bits() as i64;
    let mut j = approx;
    let scale = |j: i64| -> BigRational {
        if j >= 0 {
            x / BigRational::from_integer(BigInt::one() << j as u64)
        } else {
            x * BigRational::from_integer(BigInt::one() << (-j) as u64)
        }
    };
    let mut xr = scale(j);
    let lo = BigRational::new(2.into(), 3.into());
    let hi = BigRational::new(4.into(), 3.into());
    while xr < lo {
        j -= 1;
        xr = scale(j);
    }
    while xr > hi {
        j += 1;
        xr = scale(j);
    }
    let y = (&xr - BigRational::one()) / (&xr + BigRational::one());
    let mut r = if y.is_zero() { RealBall::zero(guard) } else { atanh_rational(&y, guard).mul_2exp(1) };
    if j != 0 {
        r = r.add_ball(&ln2(guard).mul_i64(j));
    }
    Ok(r.with_prec(wp))
}

/// `π` by Machin's formula.
pub fn pi(wp: u32) -> RealBall {
    let g = wp + 8;
    let a = odd_series(&BigRational::new(1.into(), 5.into()), true, g);
    let b = odd_series(&BigRational::new(1.into(), 239.into()), true, g);
    a.mul_i64(16).sub_ball(&b.mul_i64(4)).with_prec(wp)
}

/// The fixed point `√2 - 1` of `t ↦ (1-t)/(1+t)` on `(0, 1)`.
pub fn sqrt2_minus_one(wp: u32) -> RealBall {
    RealBall::sqrt_rational(&BigRational::from_integer(2.into()), wp + 4)
        .sub_ball(&RealBall::one(wp + 4))
        .with_prec(wp)
}

/// A `f64` upper bound of a ball's absolute value (for step selection).
pub fn upper_f64(b: &RealBall) -> f64 {
    let m = b.abs_upper();
    m.to_f64() * (1.0 + 1e-12)
}

/// Rational to `f64` (nearest, for diagnostics).
pub fn rational_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        let p = pi(200);
        assert!(p.mid_decimal().starts_with("3.14159265358979323846264338327950288419716939937510"));
        assert!(p.meets_precision(195));
    }

    #[test]
    fn logs() {
        let l2 = ln2(128);
        assert!(l2.mid_decimal().starts_with("0.69314718055994530941723212145817656807"));
        let l = log_rational(&BigRational::new(1.into(), 10.into()), 128).unwrap();
        assert!(l.to_f64() + 2.302585092994046 < 1e-14);
        let back = log_rational(&BigRational::from_integer(8.into()), 128).unwrap();
        assert!(back.overlaps(&l2.mul_i64(3)));
        assert!(log_rational(&BigRational::zero(), 64).is_err());
    }

    #[test]
    fn sqrt2m1_is_fixed_point() {
        let p = sqrt2_minus_one(128);
        let one = RealBall::one(128);
        let img = one.sub_ball(&p).div_ball(&one.add_ball(&p)).unwrap();
        assert!(img.overlaps(&p));
    }
}
