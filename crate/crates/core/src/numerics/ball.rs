//! Midpoint–radius real intervals with a binary arbitrary-precision midpoint.
//!
//! Every operation returns a ball guaranteed to contain the exact result of
//! applying the operation to any points of the input balls.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A non-negative upper (or, for the `_down` constructors, lower) bound
/// `man * 2^exp` with a 32-bit mantissa.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mag {
    man: u64,
    exp: i64,
}

const MAG_BITS: u32 = 32;

impl Mag {
    pub const ZERO: Mag = Mag { man: 0, exp: 0 };

    fn norm(man: u128, exp: i64, up: bool) -> Mag {
        if man == 0 {
            return Mag::ZERO;
        }
        let bits = 128 - man.leading_zeros();
        if bits > MAG_BITS {
            let shift = bits - MAG_BITS;
            let mut m = man >> shift;
            let mut e = exp + shift as i64;
            if up && (m << shift) != man {
                m += 1;
                if m >> MAG_BITS != 0 {
                    m >>= 1;
                    e += 1;
                }
            }
            Mag { man: m as u64, exp: e }
        } else {
            let shift = MAG_BITS - bits;
            Mag { man: (man << shift) as u64, exp: exp - shift as i64 }
        }
    }

    pub fn from_u64(x: u64) -> Mag {
        Mag::norm(x as u128, 0, true)
    }

    pub fn from_u64_down(x: u64) -> Mag {
        Mag::norm(x as u128, 0, false)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Mag {
        Mag { man: 1 << (MAG_BITS - 1), exp: e - (MAG_BITS as i64 - 1) }
    }

    fn from_biguint(m: &BigUint, exp: i64, up: bool) -> Mag {
        let bits = m.bits();
        if bits <= 64 {
            return Mag::norm(m.to_u64().unwrap() as u128, exp, up);
        }
        let shift = bits - 64;
        let top = (m >> shift).to_u64().unwrap();
        let inexact = m.trailing_zeros().unwrap_or(0) < shift;
        let base = Mag::norm(top as u128, exp + shift as i64, up);
        if up && inexact {
            base.add(Mag { man: 1, exp: exp + shift as i64 })
        } else {
            base
        }
    }

    pub fn from_biguint_up(m: &BigUint, exp: i64) -> Mag {
        Mag::from_biguint(m, exp, true)
    }

    pub fn from_biguint_down(m: &BigUint, exp: i64) -> Mag {
        Mag::from_biguint(m, exp, false)
    }

    /// Upper bound for a non-negative f64.
    pub fn from_f64_up(x: f64) -> Mag {
        assert!(x >= 0.0 && x.is_finite(), "magnitude must be finite and non-negative");
        if x == 0.0 {
            return Mag::ZERO;
        }
        let r = BigRational::from_float(x).expect("finite");
        let e = x.log2().floor() as i64 - 40;
        let scaled = if e >= 0 {
            r / BigRational::from_integer(BigInt::one() << e as u64)
        } else {
            r * BigRational::from_integer(BigInt::one() << (-e) as u64)
        };
        let m = scaled.ceil().to_integer();
        Mag::from_biguint_up(m.magnitude(), e)
    }

    pub fn is_zero(self) -> bool {
        self.man == 0
    }

    pub fn add(self, o: Mag) -> Mag {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let (hi, lo) = if self.exp >= o.exp { (self, o) } else { (o, self) };
        let d = hi.exp - lo.exp;
        if d >= 64 {
            Mag::norm(hi.man as u128 + 1, hi.exp, true)
        } else {
            Mag::norm(((hi.man as u128) << d) + lo.man as u128, lo.exp, true)
        }
    }

    /// Lower bound for `self - o`, clamped at zero.
    pub fn sub_down(self, o: Mag) -> Mag {
        if o.is_zero() {
            return self;
        }
        if self.le(o) {
            return Mag::ZERO;
        }
        let d = self.exp - o.exp;
        if d >= 64 {
            Mag::norm(self.man as u128 - 1, self.exp, false)
        } else if d >= 0 {
            Mag::norm(((self.man as u128) << d) - o.man as u128, o.exp, false)
        } else {
            Mag::norm(self.man as u128 - ((o.man as u128) << (-d)), self.exp, false)
        }
    }

    pub fn mul(self, o: Mag) -> Mag {
        if self.is_zero() || o.is_zero() {
            return Mag::ZERO;
        }
        Mag::norm(self.man as u128 * o.man as u128, self.exp + o.exp, true)
    }

    /// Upper bound for `self / den`, where `den` is a positive lower bound.
    pub fn div_up(self, den: Mag) -> Mag {
        assert!(!den.is_zero(), "division by a zero magnitude");
        if self.is_zero() {
            return Mag::ZERO;
        }
        let num = (self.man as u128) << 64;
        let q = num / den.man as u128;
        let q = if num % den.man as u128 != 0 { q + 1 } else { q };
        Mag::norm(q, self.exp - den.exp - 64, true)
    }

    pub fn mul_2exp(self, e: i64) -> Mag {
        if self.is_zero() {
            self
        } else {
            Mag { man: self.man, exp: self.exp + e }
        }
    }

    pub fn le(self, o: Mag) -> bool {
        self.cmp_mag(o) != Ordering::Greater
    }

    pub fn cmp_mag(self, o: Mag) -> Ordering {
        match (self.is_zero(), o.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self.exp.cmp(&o.exp).then(self.man.cmp(&o.man)),
        }
    }

    pub fn max(self, o: Mag) -> Mag {
        if self.le(o) {
            o
        } else {
            self
        }
    }

    /// `log2` of the value (approximate, for diagnostics and step selection).
    pub fn log2(self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            (self.man as f64).log2() + self.exp as f64
        }
    }

    /// Approximate `f64` value; may underflow to zero.
    pub fn to_f64(self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            (self.man as f64) * 2f64.powi(self.exp.clamp(-1100, 1100) as i32)
        }
    }

    pub fn to_rational(self) -> BigRational {
        dyadic_to_rational(&BigInt::from(self.man), self.exp)
    }

    pub fn parts(self) -> (u64, i64) {
        (self.man, self.exp)
    }

    pub fn from_parts(man: u64, exp: i64) -> Mag {
        Mag::norm(man as u128, exp, true)
    }
}

pub fn dyadic_to_rational(m: &BigInt, exp: i64) -> BigRational {
    if exp >= 0 {
        BigRational::from_integer(m << exp as u64)
    } else {
        BigRational::new(m.clone(), BigInt::one() << (-exp) as u64)
    }
}

/// A real ball `mid * 2^exp ± rad`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealBall {
    mid: BigInt,
    exp: i64,
    rad: Mag,
    prec: u32,
}

fn round_mid(mid: BigInt, exp: i64, prec: u32) -> (BigInt, i64, Mag) {
    let Some(tz) = mid.trailing_zeros() else {
        return (mid, 0, Mag::ZERO);
    };
    let bits = mid.bits();
    if bits <= prec as u64 + tz {
        return (mid >> tz, exp + tz as i64, Mag::ZERO);
    }
    let shift = bits - prec as u64;
    let m = &mid >> shift;
    let e = exp + shift as i64;
    let (m, e) = match m.trailing_zeros() {
        Some(t) if t > 0 => (m >> t, e + t as i64),
        _ => (m, e),
    };
    (m, e, Mag::pow2(exp + shift as i64))
}

impl RealBall {
    pub fn zero(prec: u32) -> Self {
        RealBall { mid: BigInt::zero(), exp: 0, rad: Mag::ZERO, prec }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(x: i64, prec: u32) -> Self {
        let (mid, exp, rad) = round_mid(BigInt::from(x), 0, prec);
        RealBall { mid, exp, rad, prec }
    }

    pub fn from_bigint(x: &BigInt, prec: u32) -> Self {
        let (mid, exp, rad) = round_mid(x.clone(), 0, prec);
        RealBall { mid, exp, rad, prec }
    }

    /// The exact dyadic `mid * 2^exp` widened by `rad`, rounded to `prec`.
    pub fn from_parts(mid: BigInt, exp: i64, rad: Mag, prec: u32) -> Self {
        let (m, e, err) = round_mid(mid, exp, prec);
        RealBall { mid: m, exp: e, rad: rad.add(err), prec }
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let (n, d) = (q.numer(), q.denom());
        if n.is_zero() {
            return Self::zero(prec);
        }
        let s = prec as i64 + d.bits() as i64 - n.bits() as i64 + 2;
        let s = s.max(0);
        let scaled = n << s as u64;
        let (quot, rem) = scaled.div_rem(d);
        let rad = if rem.is_zero() { Mag::ZERO } else { Mag::pow2(-s) };
        Self::from_parts(quot, -s, rad, prec)
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        Self::from_rational(&BigRational::from_float(x).expect("finite"), prec.max(64))
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::from_parts(self.mid.clone(), self.exp, self.rad, prec)
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn mid_parts(&self) -> (&BigInt, i64) {
        (&self.mid, self.exp)
    }

    pub fn add_error(&self, e: Mag) -> Self {
        RealBall { rad: self.rad.add(e), ..self.clone() }
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    fn mid_mag_up(&self) -> Mag {
        Mag::from_biguint_up(self.mid.magnitude(), self.exp)
    }

    fn mid_mag_down(&self) -> Mag {
        Mag::from_biguint_down(self.mid.magnitude(), self.exp)
    }

    /// An upper bound for `|x|` over the ball.
    pub fn abs_upper(&self) -> Mag {
        self.mid_mag_up().add(self.rad)
    }

    /// A lower bound for `|x|` over the ball (zero if the ball contains zero).
    pub fn abs_lower(&self) -> Mag {
        self.mid_mag_down().sub_down(self.rad)
    }

    pub fn contains_zero(&self) -> bool {
        self.abs_lower().is_zero()
    }

    fn top_bit(&self) -> i64 {
        self.exp + self.mid.bits() as i64
    }

    pub fn add_ball(&self, o: &RealBall) -> RealBall {
        let prec = self.prec.max(o.prec);
        if o.mid.is_zero() {
            return RealBall::from_parts(self.mid.clone(), self.exp, self.rad.add(o.rad), prec);
        }
        if self.mid.is_zero() {
            return RealBall::from_parts(o.mid.clone(), o.exp, self.rad.add(o.rad), prec);
        }
        let (big, small) = if self.top_bit() >= o.top_bit() { (self, o) } else { (o, self) };
        if small.top_bit() + (prec as i64) + 8 < big.exp
            && small.top_bit() + 8 < big.top_bit() - prec as i64
        {
            let r = big.rad.add(small.rad).add(small.mid_mag_up());
            return RealBall::from_parts(big.mid.clone(), big.exp, r, prec);
        }
        let e = self.exp.min(o.exp);
        let a = &self.mid << (self.exp - e) as u64;
        let b = &o.mid << (o.exp - e) as u64;
        RealBall::from_parts(a + b, e, self.rad.add(o.rad), prec)
    }

    pub fn neg_ball(&self) -> RealBall {
        RealBall { mid: -&self.mid, ..self.clone() }
    }

    pub fn sub_ball(&self, o: &RealBall) -> RealBall {
        self.add_ball(&o.neg_ball())
    }

    pub fn mul_ball(&self, o: &RealBall) -> RealBall {
        let prec = self.prec.max(o.prec);
        let r = self
            .mid_mag_up()
            .mul(o.rad)
            .add(o.mid_mag_up().mul(self.rad))
            .add(self.rad.mul(o.rad));
        RealBall::from_parts(&self.mid * &o.mid, self.exp + o.exp, r, prec)
    }

    pub fn mul_i64(&self, c: i64) -> RealBall {
        let r = self.rad.mul(Mag::from_u64(c.unsigned_abs()));
        RealBall::from_parts(&self.mid * BigInt::from(c), self.exp, r, self.prec)
    }

    pub fn mul_bigint(&self, c: &BigInt) -> RealBall {
        let r = self.rad.mul(Mag::from_biguint_up(c.magnitude(), 0));
        RealBall::from_parts(&self.mid * c, self.exp, r, self.prec)
    }

    pub fn mul_2exp(&self, e: i64) -> RealBall {
        RealBall { mid: self.mid.clone(), exp: self.exp + e, rad: self.rad.mul_2exp(e), prec: self.prec }
    }

    pub fn mul_rational(&self, q: &BigRational) -> RealBall {
        self.mul_bigint(q.numer()).div_bigint(q.denom())
    }

    pub fn div_u64(&self, d: u64) -> RealBall {
        self.div_bigint(&BigInt::from(d))
    }

    pub fn div_bigint(&self, d: &BigInt) -> RealBall {
        assert!(!d.is_zero(), "division by zero");
        let prec = self.prec;
        let rad = self.rad.div_up(Mag::from_biguint_down(d.magnitude(), 0));
        if self.mid.is_zero() {
            return RealBall { mid: BigInt::zero(), exp: 0, rad, prec };
        }
        let s = (prec as i64 + d.bits() as i64 - self.mid.bits() as i64 + 2).max(0);
        let scaled = &self.mid << s as u64;
        let (q, rem) = scaled.div_rem(d);
        let err = if rem.is_zero() { Mag::ZERO } else { Mag::pow2(self.exp - s) };
        RealBall::from_parts(q, self.exp - s, rad.add(err), prec)
    }

    /// Division; `None` if the divisor ball contains zero.
    pub fn div_ball(&self, o: &RealBall) -> Option<RealBall> {
        let prec = self.prec.max(o.prec);
        let b_low = o.abs_lower();
        if b_low.is_zero() {
            return None;
        }
        let num = self.mid_mag_up().mul(o.rad).add(o.mid_mag_up().mul(self.rad));
        let den_low = o.mid_mag_down().mul_down(b_low);
        let rad = if num.is_zero() { Mag::ZERO } else { num.div_up(den_low) };
        if self.mid.is_zero() {
            return Some(RealBall { mid: BigInt::zero(), exp: 0, rad, prec });
        }
        let s = (prec as i64 + o.mid.bits() as i64 - self.mid.bits() as i64 + 2).max(0);
        let scaled = &self.mid << s as u64;
        let (q, rem) = scaled.div_rem(&o.mid);
        let e = self.exp - s - o.exp;
        let err = if rem.is_zero() { Mag::ZERO } else { Mag::pow2(e) };
        Some(RealBall::from_parts(q, e, rad.add(err), prec))
    }

    pub fn sqr(&self) -> RealBall {
        self.mul_ball(self)
    }

    pub fn pow(&self, n: u32) -> RealBall {
        let mut result = RealBall::one(self.prec);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul_ball(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.sqr();
            }
        }
        result
    }

    /// Square root of a non-negative rational.
    pub fn sqrt_rational(q: &BigRational, prec: u32) -> RealBall {
        assert!(!q.is_negative(), "square root of a negative number");
        let s = prec as i64 + 4 + (q.denom().bits() as i64 - q.numer().bits() as i64).max(0) / 2;
        let scaled: BigInt = (q.numer() << (2 * s) as u64) / q.denom();
        let root = scaled.sqrt();
        RealBall::from_parts(root, -s, Mag::pow2(1 - s), prec)
    }

    pub fn mid_rational(&self) -> BigRational {
        dyadic_to_rational(&self.mid, self.exp)
    }

    pub fn lower_rational(&self) -> BigRational {
        self.mid_rational() - self.rad.to_rational()
    }

    pub fn upper_rational(&self) -> BigRational {
        self.mid_rational() + self.rad.to_rational()
    }

    /// Whether the two balls share a point.
    pub fn overlaps(&self, o: &RealBall) -> bool {
        let d = (self.mid_rational() - o.mid_rational()).abs();
        d <= self.rad.to_rational() + o.rad.to_rational()
    }

    /// Whether `o` lies inside `self`.
    pub fn contains(&self, o: &RealBall) -> bool {
        self.lower_rational() <= o.lower_rational() && o.upper_rational() <= self.upper_rational()
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        (self.mid_rational() - q).abs() <= self.rad.to_rational()
    }

    /// Whether the ball lies in the closed interval `[lo, hi]`.
    pub fn within(&self, lo: &BigRational, hi: &BigRational) -> bool {
        lo <= &self.lower_rational() && self.upper_rational() <= *hi
    }

    /// Approximate value of the midpoint.
    pub fn to_f64(&self) -> f64 {
        if self.mid.is_zero() {
            return 0.0;
        }
        let bits = self.mid.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (&self.mid >> shift as u64).to_f64().unwrap_or(0.0);
        top * 2f64.powf((self.exp + shift) as f64)
    }

    /// Upper bound on `|x - y|` for all `x` in `self`, `y` in `o`.
    pub fn max_distance(&self, o: &RealBall) -> Mag {
        self.sub_ball(o).abs_upper()
    }

    /// Whether the radius meets `rad <= 2^(1-p) * max(1, |mid|)`.
    pub fn meets_precision(&self, p: u32) -> bool {
        let scale = self.mid_mag_up().max(Mag::from_u64(1));
        self.rad.le(scale.mul(Mag::pow2(1 - p as i64)))
    }

    /// Exact decimal expansion of the midpoint.
    pub fn mid_decimal(&self) -> String {
        dyadic_decimal(&self.mid, self.exp)
    }

    /// Inverse of [`RealBall::mid_decimal`] combined with a radius text.
    pub fn from_decimal_parts(mid: &str, rad: &str, prec: u32) -> Option<RealBall> {
        let (m, e) = parse_dyadic_decimal(mid)?;
        let (rm, re) = parse_dyadic_decimal(rad)?;
        if rm.is_negative() || rm.bits() > 64 {
            return None;
        }
        let rad = Mag::from_parts(rm.to_u64()?, re);
        Some(RealBall::from_parts(m, e, rad, prec))
    }

    /// The midpoint rounded to the decimal digits justified by the radius,
    /// followed by the radius.
    pub fn display_digits(&self) -> String {
        let max_digits = (self.prec as f64 * std::f64::consts::LOG10_2) as i64;
        let digits = if self.rad.is_zero() {
            max_digits
        } else {
            (-(self.rad.log2() * std::f64::consts::LOG10_2).ceil() as i64).clamp(0, max_digits)
        };
        format!("{} +/- {}", self.mid_rounded_decimal(digits), mag_scientific(self.rad))
    }

    fn mid_rounded_decimal(&self, digits: i64) -> String {
        let scaled = self.mid_rational() * BigRational::from_integer(num_traits::pow(BigInt::from(10), digits as usize));
        let n = scaled.round().to_integer();
        let neg = n.is_negative();
        let s = n.magnitude().to_string();
        let d = digits as usize;
        let body = if d == 0 {
            s
        } else if s.len() > d {
            format!("{}.{}", &s[..s.len() - d], &s[s.len() - d..])
        } else {
            format!("0.{}{}", "0".repeat(d - s.len()), s)
        };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }
}

impl Mag {
    /// Lower bound of a product of lower bounds.
    pub fn mul_down(self, o: Mag) -> Mag {
        if self.is_zero() || o.is_zero() {
            return Mag::ZERO;
        }
        Mag::norm(self.man as u128 * o.man as u128, self.exp + o.exp, false)
    }
}

fn mag_scientific(m: Mag) -> String {
    if m.is_zero() {
        return "0".into();
    }
    let l = m.log2() * std::f64::consts::LOG10_2;
    let e = l.floor();
    let mant = 10f64.powf(l - e);
    format!("{:.2}e{}", mant, e as i64)
}

/// Exact decimal text of `m * 2^exp`.
pub fn dyadic_decimal(m: &BigInt, exp: i64) -> String {
    if exp >= 0 {
        return (m << exp as u64).to_string();
    }
    let f = (-exp) as usize;
    let n = m * num_traits::pow(BigInt::from(5), f);
    let neg = n.is_negative();
    let s = n.magnitude().to_string();
    let body = if s.len() > f {
        format!("{}.{}", &s[..s.len() - f], &s[s.len() - f..])
    } else {
        format!("0.{}{}", "0".repeat(f - s.len()), s)
    };
    let body = body.trim_end_matches('0').trim_end_matches('.').to_string();
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Parses an exact decimal representing a dyadic rational.
pub fn parse_dyadic_decimal(s: &str) -> Option<(BigInt, i64)> {
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, t),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() || !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let n: BigInt = format!("{ip}{fp}").parse().ok()?;
    let f = fp.len();
    let five = num_traits::pow(BigInt::from(5), f);
    let (q, r) = n.div_rem(&five);
    if !r.is_zero() {
        return None;
    }
    let q = if neg { -q } else { q };
    Some((q, -(f as i64)))
}

impl fmt::Display for RealBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_digits())
    }
}

impl<'a> Add<&'a RealBall> for &'a RealBall {
    type Output = RealBall;
    fn add(self, o: &RealBall) -> RealBall {
        self.add_ball(o)
    }
}

impl<'a> Sub<&'a RealBall> for &'a RealBall {
    type Output = RealBall;
    fn sub(self, o: &RealBall) -> RealBall {
        self.sub_ball(o)
    }
}

impl<'a> Mul<&'a RealBall> for &'a RealBall {
    type Output = RealBall;
    fn mul(self, o: &RealBall) -> RealBall {
        self.mul_ball(o)
    }
}

impl Neg for &RealBall {
    type Output = RealBall;
    fn neg(self) -> RealBall {
        self.neg_ball()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn mag_rounding_is_upward() {
        let a = Mag::from_u64((1 << 40) + 1);
        assert!(a.to_rational() >= BigRational::from_integer(((1i64 << 40) + 1).into()));
        let s = Mag::from_u64(3).sub_down(Mag::from_u64(1));
        assert!(s.to_rational() <= BigRational::from_integer(2.into()));
        let d = Mag::from_u64(1).div_up(Mag::from_u64(3));
        assert!(d.to_rational() >= q(1, 3));
    }

    #[test]
    fn third_contains_exact_value() {
        let b = RealBall::from_rational(&q(1, 3), 100);
        assert!(b.contains_rational(&q(1, 3)));
        assert!(b.meets_precision(99));
        let c = b.mul_i64(3);
        assert!(c.contains_rational(&q(1, 1)));
    }

    #[test]
    fn field_ops_enclose() {
        let p = 128;
        let a = RealBall::from_rational(&q(2, 7), p);
        let b = RealBall::from_rational(&q(-5, 11), p);
        assert!((&a + &b).contains_rational(&(q(2, 7) + q(-5, 11))));
        assert!((&a - &b).contains_rational(&(q(2, 7) - q(-5, 11))));
        assert!((&a * &b).contains_rational(&(q(2, 7) * q(-5, 11))));
        assert!(a.div_ball(&b).unwrap().contains_rational(&(q(2, 7) / q(-5, 11))));
        assert!(a.div_u64(13).contains_rational(&q(2, 91)));
        assert!(a.pow(5).contains_rational(&q(32, 16807)));
        assert!(RealBall::zero(p).div_ball(&RealBall::zero(p)).is_none());
    }

    #[test]
    fn sqrt_two() {
        let r = RealBall::sqrt_rational(&q(2, 1), 200);
        let sq = r.sqr();
        assert!(sq.contains_rational(&q(2, 1)));
        assert!(r.meets_precision(190));
    }

    #[test]
    fn decimal_round_trip() {
        let b = RealBall::from_rational(&q(1, 3), 80);
        let m = b.mid_decimal();
        let (rm, re) = b.rad().parts();
        let rad = dyadic_decimal(&BigInt::from(rm), re);
        let c = RealBall::from_decimal_parts(&m, &rad, 80).unwrap();
        assert_eq!(b, c);
        assert!(parse_dyadic_decimal("0.1").is_none());
        assert_eq!(parse_dyadic_decimal("-0.75").unwrap(), (BigInt::from(-3), -2));
    }

    #[test]
    fn tiny_addend_absorbed() {
        let a = RealBall::one(64);
        let tiny = RealBall::from_parts(BigInt::from(1), -10_000, Mag::ZERO, 64);
        let s = &a + &tiny;
        assert!(s.contains_rational(&(q(1, 1) + dyadic_to_rational(&BigInt::from(1), -10_000))));
        assert!(s.mid_parts().0.bits() <= 64);
    }

    #[test]
    fn display_has_justified_digits() {
        let b = RealBall::from_rational(&q(1, 3), 64);
        let s = b.display_digits();
        assert!(s.starts_with("0.333333333333333333"), "{s}");
    }
}
