//! Nested power series for multiple polylogarithms at level one (`Li`) and
//! level two (`A`, odd/even alternating summation ranges).

use super::ball::{Mag, RealBall};
use super::elementary::upper_f64;
use super::NumericsError;
use crate::index::Index;

/// Largest `|z|` accepted by the direct series.
pub const Z_CAP: f64 = 0.95;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    /// `Li(k; z) = Σ_{0<m_1<…<m_r} z^{m_r} / ∏ m_i^{k_i}`.
    One,
    /// `A(k; z) = 2^r Σ_{0<m_1<…<m_r, m_i ≡ i (2)} z^{m_r} / ∏ m_i^{k_i}`.
    Two,
}

fn applies(level: Level, j: usize, m: u64) -> bool {
    match level {
        Level::One => true,
        Level::Two => (m as usize + j) % 2 == 0,
    }
}

/// `log2` of an upper bound for `Σ_{m>M} m^{r-1} z^m`.
fn tail_log2(zu: f64, r: usize, m: u64) -> f64 {
    let rr = (r as f64 - 1.0).max(0.0);
    let m1 = (m + 1) as f64;
    let q = zu * ((m1 + 1.0) / m1).powf(rr);
    if q >= 1.0 {
        return f64::INFINITY;
    }
    rr * m1.log2() + m1 * zu.log2() - (1.0 - q).log2() + 1.0
}

/// Values of the series for every prefix of the word of `k`.
///
/// Entry `i` of the result is the polylogarithm of the index whose word is
/// the first `i` letters of the word of `k` (entry 0 is 1).
pub fn prefix_series(
    level: Level,
    k: &Index,
    z: &RealBall,
    wp: u32,
) -> Result<Vec<RealBall>, NumericsError> {
    let r = k.depth();
    let wt = k.weight() as usize;
    let mut out = Vec::with_capacity(wt + 1);
    out.push(RealBall::one(wp));
    if r == 0 {
        return Ok(out);
    }
    let zu = upper_f64(z);
    if zu > Z_CAP {
        return Err(NumericsError::PrecisionUnreachable(format!(
            "series argument {zu} exceeds the convergence cap {Z_CAP}"
        )));
    }
    let ks = k.entries();
    let kmax = *ks.iter().max().unwrap() as usize;
    let mut sums: Vec<RealBall> = vec![RealBall::zero(wp); r];
    sums[0] = RealBall::one(wp);
    let mut acc: Vec<Vec<RealBall>> = ks.iter().map(|&kj| vec![RealBall::zero(wp); kj as usize]).collect();
    let mut zpow = RealBall::one(wp);
    let one = RealBall::one(wp);
    let target = -(wp as f64) - 8.0;
    let mut m: u64 = 0;
    let tail = loop {
        m += 1;
        zpow = zpow.mul_ball(z);
        let inv = one.div_u64(m);
        let mut invpow = Vec::with_capacity(kmax + 1);
        invpow.push(one.clone());
        for c in 1..=kmax {
            let next = invpow[c - 1].mul_ball(&inv);
            invpow.push(next);
        }
        for j in 1..=r {
            if !applies(level, j, m) {
                continue;
            }
            let t = zpow.mul_ball(&sums[j - 1]);
            for c in 1..=ks[j - 1] as usize {
                acc[j - 1][c - 1] = acc[j - 1][c - 1].add_ball(&t.mul_ball(&invpow[c]));
            }
        }
        for j in (1..r).rev() {
            if applies(level, j, m) {
                let inc = sums[j - 1].mul_ball(&invpow[ks[j - 1] as usize]);
                sums[j] = sums[j].add_ball(&inc);
            }
        }
        if m >= r as u64 && m % 4 == 0 {
            let t = tail_log2(zu, r, m);
            if t < target {
                break Mag::pow2(t.ceil() as i64);
            }
        }
        if m > 2_000_000 {
            return Err(NumericsError::PrecisionUnreachable("series did not converge".into()));
        }
    };
    for (j, row) in acc.into_iter().enumerate() {
        for v in row {
            let v = v.add_error(tail);
            out.push(match level {
                Level::One => v,
                Level::Two => v.mul_2exp(j as i64 + 1),
            });
        }
    }
    Ok(out)
}

/// `Li(k; z)` (level one) or `A(k; z)` (level two).
pub fn polylog(level: Level, k: &Index, z: &RealBall, wp: u32) -> Result<RealBall, NumericsError> {
    Ok(prefix_series(level, k, z, wp)?.pop().unwrap())
}

/// `x^d / d!`.
pub fn power_over_factorial(x: &RealBall, d: u32) -> RealBall {
    let mut r = x.pow(d);
    for i in 2..=d as u64 {
        r = r.div_u64(i);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn half(wp: u32) -> RealBall {
        RealBall::from_rational(&BigRational::new(1.into(), 2.into()), wp)
    }

    #[test]
    fn li1_at_half_is_log2() {
        let v = polylog(Level::One, &"(1)".parse().unwrap(), &half(128), 128).unwrap();
        assert!(v.overlaps(&super::super::elementary::ln2(128)));
        assert!(v.meets_precision(100));
    }

    #[test]
    fn prefixes_match_individual_series() {
        let k: Index = "(2,1,3)".parse().unwrap();
        let z = RealBall::from_rational(&BigRational::new(3.into(), 10.into()), 128);
        for level in [Level::One, Level::Two] {
            let all = prefix_series(level, &k, &z, 128).unwrap();
            let p: Index = "(2,1,2)".parse().unwrap();
            let single = polylog(level, &p, &z, 128).unwrap();
            assert!(all[5].overlaps(&single));
            let q: Index = "(1)".parse().unwrap();
            assert!(all[1].overlaps(&polylog(level, &q, &z, 128).unwrap()));
        }
    }

    #[test]
    fn cap_enforced() {
        let z = RealBall::from_rational(&BigRational::new(99.into(), 100.into()), 64);
        let e = polylog(Level::One, &"(2)".parse().unwrap(), &z, 64);
        assert!(matches!(e, Err(NumericsError::PrecisionUnreachable(_))));
    }
}
