//! Validation brackets in double precision by direct nested summation.
//!
//! These are independent of the ball evaluators: the partial sums are taken
//! up to a cutoff and the remainder is enclosed by integral comparisons.
//! Every returned interval is widened by an a priori bound for the floating
//! point rounding error.

use super::series::Level;
use crate::index::Index;

const U: f64 = f64::EPSILON / 2.0;

/// A closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// Relative width `(hi - lo) / |mid|`.
    pub fn relative_width(&self) -> f64 {
        self.width() / self.mid().abs().max(f64::MIN_POSITIVE)
    }
}

fn step(level: Level) -> f64 {
    match level {
        Level::One => 1.0,
        Level::Two => 2.0,
    }
}

fn applies(level: Level, j: usize, m: u64) -> bool {
    match level {
        Level::One => true,
        Level::Two => (m as usize + j) % 2 == 0,
    }
}

fn normalization(level: Level, r: usize) -> f64 {
    match level {
        Level::One => 1.0,
        Level::Two => 2f64.powi(r as i32),
    }
}

/// Bracket for `Σ_{m_r > M} m_r^{-k} G_i(m_r)` where `G_i(y)` sums
/// `∏ 1/n_j` over `M < n_1 < … < n_i < y`, all variables in arithmetic
/// progressions of step `s`.
fn tail_unit(i: usize, k: f64, big_m: f64, s: f64, r: usize) -> (f64, f64) {
    let ii = i as f64;
    let beta = big_m + 1.0 - s;
    let alpha = 1.0 + r as f64 * s / beta;
    let upper = alpha.powi(i as i32) / s.powi(i as i32 + 1)
        * (1.0 + (ii + 1.0) * s / beta).powf(k)
        * beta.powf(1.0 - k)
        / (k - 1.0).powi(i as i32 + 1);
    let gamma = big_m + s;
    let lambda = 1.0 - r as f64 * s / gamma;
    let lower = lambda.powi(i as i32) / s.powi(i as i32 + 1)
        * (gamma / (gamma + (ii + 1.0) * s)).powf(k)
        * gamma.powf(1.0 - k)
        / (k - 1.0).powi(i as i32 + 1);
    (lower.max(0.0), upper)
}

/// Bracket for `ζ(k)` (level one) or `T(k)` (level two), `k` admissible and
/// non-empty, using partial sums up to `cutoff`.
pub fn multiple_value_bracket(level: Level, k: &Index, cutoff: u64) -> Interval {
    assert!(!k.is_empty() && k.is_admissible(), "bracket needs a non-empty admissible index");
    let ks: Vec<f64> = k.entries().iter().map(|&x| x as f64).collect();
    let r = ks.len();
    let mut sums = vec![0.0f64; r];
    sums[0] = 1.0;
    let mut partial = 0.0f64;
    for m in 1..=cutoff {
        let mf = m as f64;
        if applies(level, r, m) {
            partial += sums[r - 1] * mf.powf(-ks[r - 1]);
        }
        for j in (1..r).rev() {
            if applies(level, j, m) {
                sums[j] += sums[j - 1] * mf.powf(-ks[j - 1]);
            }
        }
    }
    let eps = (cutoff as f64) * (2.0 * r as f64 + 8.0) * U;
    let big_m = cutoff as f64;
    let s = step(level);
    let kr = ks[r - 1];
    let (mut lo, mut hi) = (partial * (1.0 - eps), partial * (1.0 + eps));
    for i in 0..r {
        let excess: f64 = ks[r - 1 - i..r - 1].iter().map(|x| x - 1.0).sum();
        let (tl, tu) = tail_unit(i, kr, big_m, s, r);
        let prefix = sums[r - 1 - i];
        let upper = tu * (big_m + 1.0).powf(-excess);
        let lower = if excess == 0.0 { tl } else { 0.0 };
        lo += prefix * (1.0 - eps) * lower * (1.0 - 1e-12);
        hi += prefix * (1.0 + eps) * upper * (1.0 + 1e-12);
    }
    let n = normalization(level, r);
    Interval { lo: lo * n, hi: hi * n }
}

/// Default cutoff used by [`mzv_bracket`] and [`mtv_bracket`].
pub const DEFAULT_CUTOFF: u64 = 2_000_000;

pub fn mzv_bracket(k: &Index) -> Interval {
    multiple_value_bracket(Level::One, k, DEFAULT_CUTOFF)
}

pub fn mtv_bracket(k: &Index) -> Interval {
    multiple_value_bracket(Level::Two, k, DEFAULT_CUTOFF)
}

/// Bracket for `Li(k; z)` or `A(k; z)` with `0 <= z <= 0.99`.
pub fn polylog_bracket(level: Level, k: &Index, z: f64) -> Interval {
    assert!((0.0..=0.99).contains(&z), "oracle argument out of range");
    let r = k.depth();
    if r == 0 {
        return Interval { lo: 1.0, hi: 1.0 };
    }
    let ks: Vec<f64> = k.entries().iter().map(|&x| x as f64).collect();
    let mut sums = vec![0.0f64; r];
    sums[0] = 1.0;
    let mut partial = 0.0f64;
    let mut zp = 1.0f64;
    let mut m: u64 = 0;
    let tail = loop {
        m += 1;
        zp *= z;
        let mf = m as f64;
        if applies(level, r, m) {
            partial += zp * sums[r - 1] * mf.powf(-ks[r - 1]);
        }
        for j in (1..r).rev() {
            if applies(level, j, m) {
                sums[j] += sums[j - 1] * mf.powf(-ks[j - 1]);
            }
        }
        if m >= r as u64 {
            let m1 = mf + 1.0;
            let rr = r as f64 - 1.0;
            let q = z * ((m1 + 1.0) / m1).powf(rr);
            if q < 1.0 {
                let t = m1.powf(rr) * z.powf(m1) / (1.0 - q);
                if t < 1e-20 * partial.max(1e-300) || t == 0.0 {
                    break t;
                }
            }
        }
    };
    let eps = (m as f64) * (2.0 * r as f64 + 10.0) * U;
    let n = normalization(level, r);
    Interval {
        lo: partial * (1.0 - eps) * n,
        hi: (partial * (1.0 + eps) + tail * 1.01) * n,
    }
}

/// Neumaier summation of non-negative terms.
#[derive(Debug, Clone, Copy, Default)]
struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Bracket for `Li(k; z)` with `z` close to 1, using `S_j(m) <= (1+ln m)^j / j!`.
///
/// Returns `None` if the required number of terms exceeds `max_terms`.
pub fn polylog_near_one(k: &Index, z: f64, rel_tol: f64, max_terms: u64) -> Option<Interval> {
    assert!(z > 0.0 && z < 1.0, "argument must lie in (0, 1)");
    let r = k.depth();
    if r == 0 {
        return Some(Interval { lo: 1.0, hi: 1.0 });
    }
    let ks: Vec<f64> = k.entries().iter().map(|&x| x as f64).collect();
    let rr = r as f64 - 1.0;
    let fact: f64 = (1..r).map(|t| t as f64).product();
    let mut sums = vec![Compensated::default(); r];
    sums[0].add(1.0);
    let mut partial = Compensated::default();
    let mut m: u64 = 0;
    let tail = loop {
        m += 1;
        let mf = m as f64;
        partial.add(z.powf(mf) * sums[r - 1].value() * mf.powf(-ks[r - 1]));
        for j in (1..r).rev() {
            let inc = sums[j - 1].value() * mf.powf(-ks[j - 1]);
            sums[j].add(inc);
        }
        if m % 1024 == 0 {
            let m1 = mf + 1.0;
            let q = z * (1.0 + 1.0 / (m1 * (1.0 + m1.ln()))).powf(rr);
            if q < 1.0 {
                let t = z.powf(m1) * (1.0 + m1.ln()).powf(rr) / fact * m1.powf(-ks[r - 1]) / (1.0 - q);
                if t < rel_tol * partial.value() {
                    break t;
                }
            }
        }
        if m >= max_terms {
            return None;
        }
    };
    let partial = partial.value();
    let eps = (4.0 * r as f64 + 10.0) * U + 4.0 * r as f64 * m as f64 * U * U;
    Some(Interval {
        lo: partial * (1.0 - eps),
        hi: partial * (1.0 + eps) + tail * 1.01,
    })
}
