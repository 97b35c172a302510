//! Self-checks: oracle pre-flight, derivative identities by finite
//! differences, and the behaviour of polylogarithms near `z = 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::ball::{Mag, RealBall};
use super::evaluator::Evaluator;
use rayon::prelude::*;

use super::oracle::{multiple_value_bracket, polylog_bracket, polylog_near_one, Interval, DEFAULT_CUTOFF};
use super::series::{polylog, Level, Z_CAP};
use super::{ConstTag, Constant, FunTag, NumericsError};
use crate::index::{admissible_of_weight, Index};

/// Whether a ball lies inside a double-precision interval (compared exactly).
pub fn ball_within(b: &RealBall, iv: &Interval) -> bool {
    let lo = BigRational::from_float(iv.lo).expect("finite");
    let hi = BigRational::from_float(iv.hi).expect("finite");
    b.within(&lo, &hi)
}

/// Compares `ζ` (and `T`) against the summation oracle for every admissible
/// index of weight `2..=max_weight`.
pub fn preflight(ev: &Evaluator, max_weight: u32, level_two: bool) -> Result<(), NumericsError> {
    let mut levels = vec![Level::One];
    if level_two {
        levels.push(Level::Two);
    }
    for w in 2..=max_weight {
        for k in admissible_of_weight(w) {
            for &level in &levels {
                let c = match level {
                    Level::One => Constant::mzv(k.clone()),
                    Level::Two => Constant::mtv(k.clone()),
                };
                let b = ev.constant(&c)?;
                let iv = multiple_value_bracket(level, &k, DEFAULT_CUTOFF);
                if !ball_within(&b, &iv) {
                    return Err(NumericsError::Preflight(format!(
                        "{c} = {} lies outside the oracle interval [{:e}, {:e}]",
                        b.to_f64(),
                        iv.lo,
                        iv.hi
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Outcome of comparing memoized values with the summation oracle.
#[derive(Debug, Clone, Default, Serialize)]
pub struct AuditReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl AuditReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Relative width the oracle must reach for a comparison to count.
pub const ORACLE_REL_WIDTH: f64 = 1e-6;

fn constant_bracket(level: Level, k: &Index) -> Interval {
    let quick = multiple_value_bracket(level, k, 200_000);
    if quick.relative_width() <= ORACLE_REL_WIDTH {
        quick
    } else {
        multiple_value_bracket(level, k, DEFAULT_CUTOFF)
    }
}

/// Doubles `lo <= x <= hi` adjacent to the rational `x`.
fn f64_neighbours(x: &BigRational) -> (f64, f64) {
    let f = x.to_f64().unwrap_or(f64::NAN);
    let q = BigRational::from_float(f).expect("finite");
    if &q == x {
        (f, f)
    } else if &q < x {
        (f, f.next_up())
    } else {
        (f.next_down(), f)
    }
}

/// Bracket for `Li(k; x)` or `A(k; x)` at a rational `x ∈ [0, 0.99]`; both
/// are increasing in `x`, so the brackets at the neighbouring doubles enclose it.
pub fn function_bracket(level: Level, k: &Index, x: &BigRational) -> Interval {
    let (lo, hi) = f64_neighbours(x);
    Interval { lo: polylog_bracket(level, k, lo).lo, hi: polylog_bracket(level, k, hi).hi }
}

/// Checks every memoized `ζ`, `T`, `Li` and `A` value of `ev` against the
/// direct summation oracle.
pub fn oracle_audit(ev: &Evaluator) -> AuditReport {
    let consts: Vec<(Level, Index, String, RealBall)> = ev
        .memo_constants()
        .into_iter()
        .filter(|(c, _)| matches!(c.tag, ConstTag::Mzv | ConstTag::Mtv) && !c.is_unit())
        .map(|(c, b)| (c.tag.level(), c.index.clone(), c.to_string(), b))
        .collect();
    let funs: Vec<(Level, Index, BigRational, RealBall)> = ev
        .memo_functions()
        .into_iter()
        .filter_map(|(t, k, x, b)| match t {
            FunTag::Li => Some((Level::One, k, x, b)),
            FunTag::A => Some((Level::Two, k, x, b)),
            FunTag::Log => None,
        })
        .filter(|(_, k, _, _)| !k.is_empty())
        .collect();
    let judge = |name: String, b: &RealBall, iv: Interval| -> Option<String> {
        if iv.relative_width() > ORACLE_REL_WIDTH {
            Some(format!("{name}: oracle interval too wide ({:e})", iv.relative_width()))
        } else if !ball_within(b, &iv) {
            Some(format!("{name} = {} is outside [{:e}, {:e}]", b.to_f64(), iv.lo, iv.hi))
        } else {
            None
        }
    };
    let mut failures: Vec<String> = consts
        .par_iter()
        .filter_map(|(level, k, name, b)| judge(name.clone(), b, constant_bracket(*level, k)))
        .collect();
    failures.extend(funs.par_iter().filter_map(|(level, k, x, b)| {
        let too_close = x > &BigRational::new(99.into(), 100.into());
        let name = format!("{}({k}; {x})", if *level == Level::One { "Li" } else { "A" });
        if too_close {
            return Some(format!("{name}: argument beyond the oracle range"));
        }
        judge(name, b, function_bracket(*level, k, x))
    }).collect::<Vec<_>>());
    AuditReport { checked: consts.len() + funs.len(), failures }
}

#[derive(Debug, Clone, Serialize)]
pub struct DerivativeReport {
    pub index: String,
    pub level: String,
    pub z: String,
    pub finite_difference: f64,
    pub expected: f64,
    /// Upper bound for `|finite difference - expected|`.
    pub deviation: f64,
    /// Rigorous bound on the finite-difference truncation error.
    pub truncation_bound: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Central difference of `Li(k; ·)` or `A(k; ·)` at `z` compared with the
/// differential relation `d/dz F(k; z) = F(k_-; z)/z` (last entry `>= 2`)
/// or `F(k'; z)/(1-z)` resp. `2 F(k'; z)/(1-z^2)` (last entry 1).
pub fn derivative_check(
    level: Level,
    k: &Index,
    z: &BigRational,
    prec: u32,
    tolerance: f64,
) -> Result<DerivativeReport, NumericsError> {
    let last = k.last().ok_or(crate::index::IndexError::EmptyIndex)?;
    let wp = prec.max(128) + 64;
    let h = BigRational::new(BigInt::one(), BigInt::one() << 40u32);
    let cap = BigRational::new(47.into(), 50.into());
    let zero = BigRational::from_integer(0.into());
    if z <= &h || z + &h >= cap {
        return Err(NumericsError::Domain(format!("z = {z} too close to the ends of (0, {Z_CAP})")));
    }
    let f = |x: &BigRational, idx: &Index| polylog(level, idx, &RealBall::from_rational(x, wp), wp);
    let fp = f(&(z + &h), k)?;
    let fm = f(&(z - &h), k)?;
    let fd = fp.sub_ball(&fm).mul_rational(&(BigRational::from_integer(BigInt::one() << 39u32)));
    let zb = RealBall::from_rational(z, wp);
    let one = RealBall::one(wp);
    let expected = if last >= 2 {
        f(z, &k.k_minus()?)?.div_ball(&zb).expect("z > 0")
    } else {
        let head = Index::new(k.entries()[..k.depth() - 1].to_vec())?;
        let g = f(z, &head)?;
        match level {
            Level::One => g.div_ball(&one.sub_ball(&zb)).expect("z < 1"),
            Level::Two => g.mul_i64(2).div_ball(&one.sub_ball(&zb.sqr())).expect("z < 1"),
        }
    };
    let mut r = (BigRational::one() + z) / BigRational::from_integer(2.into()) + &h;
    if r > cap {
        r = cap.clone();
    }
    let rho = &r - z - &h;
    assert!(rho > zero);
    let big = f(&r, k)?;
    let rho_b = RealBall::from_rational(&rho, wp);
    let bound = RealBall::from_rational(&(&h * &h), wp)
        .mul_ball(&big)
        .div_ball(&rho_b.pow(3))
        .expect("rho > 0")
        .abs_upper();
    let dev = fd.sub_ball(&expected).abs_upper();
    let tol = Mag::from_f64_up(tolerance);
    Ok(DerivativeReport {
        index: k.to_string(),
        level: format!("{level:?}"),
        z: z.to_string(),
        finite_difference: fd.to_f64(),
        expected: expected.to_f64(),
        deviation: dev.to_f64(),
        truncation_bound: bound.to_f64(),
        tolerance,
        pass: dev.le(tol) && bound.le(tol),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LimitReport {
    pub l: String,
    pub a: u32,
    pub limit: f64,
    /// `(j, |C(1 - 10^{-j}) - limit|)` upper bounds.
    pub deviations: Vec<(u32, f64)>,
    pub tolerance: f64,
    pub pass: bool,
}

/// `Li(l, {1}^a; z) - Σ_{d=1}^a (-1)^{a-d} ξ(l_-; a-d+1) Li({1}^d; z)` tends to
/// `(-1)^a ξ(l_-; a+1)` as `z → 1`; checked at `z = 1 - 10^{-j}`, `j = 2..=6`.
pub fn near_one_limit_check(ev: &Evaluator, l: &Index, a: u32, tolerance: f64) -> Result<LimitReport, NumericsError> {
    l.require_admissible()?;
    if l.is_empty() {
        return Err(NumericsError::Domain("l must be non-empty".into()));
    }
    let lm = l.k_minus()?;
    let xi = |m: u32| -> Result<f64, NumericsError> {
        Ok(ev.constant(&Constant::with_arg(ConstTag::Xi, lm.clone(), m))?.to_f64())
    };
    let sign = |e: u32| if e % 2 == 0 { 1.0 } else { -1.0 };
    let limit = sign(a) * xi(a + 1)?;
    let coeffs: Vec<f64> = (1..=a).map(|d| Ok(sign(a - d) * xi(a - d + 1)?)).collect::<Result<_, NumericsError>>()?;
    let k = l.concat(&Index::ones(a as usize));
    let mut deviations = Vec::new();
    for j in 2..=6u32 {
        let eps = 10f64.powi(-(j as i32));
        let z = 1.0 - eps;
        let li = polylog_near_one(&k, z, 1e-13, 400_000_000)
            .ok_or_else(|| NumericsError::PrecisionUnreachable(format!("too many terms at z = 1 - 1e-{j}")))?;
        let log_term = j as f64 * std::f64::consts::LN_10;
        let mut c_mid = li.mid();
        let mut err = li.width() / 2.0;
        let mut fact = 1.0;
        for d in 1..=a {
            fact *= d as f64;
            let v = log_term.powi(d as i32) / fact;
            c_mid -= coeffs[d as usize - 1] * v;
            err += (coeffs[d as usize - 1] * v).abs() * 1e-13;
        }
        let dev = (c_mid - limit).abs() + err + limit.abs() * 1e-15;
        deviations.push((j, dev));
    }
    let monotone = deviations.windows(2).all(|w| w[1].1 < w[0].1);
    let last = deviations.last().map(|d| d.1).unwrap_or(f64::INFINITY);
    Ok(LimitReport {
        l: l.to_string(),
        a,
        limit,
        deviations,
        tolerance,
        pass: monotone && last <= tolerance,
    })
}

/// `f64` value of a rational (for reporting).
pub fn approx(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
