//! Memoizing evaluator for constants and sample-point functions.

use std::collections::HashMap;
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ball::RealBall;
use super::cache::DiskCache;
use super::elementary::log_rational;
use super::series::{polylog, power_over_factorial, Level};
use super::zeta::{mtv, mzv, xi_expansion};
use super::{Arg, ConstTag, Constant, FunFactor, FunTag, NumericsError, GUARD_BITS};
use crate::index::Index;
use crate::poset::xi_poset;
use crate::words::word_to_index;

/// How `ξ(k; m)` is reduced to multiple zeta values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum XiRoute {
    /// The binomial expansion over `(k_+)^†`.
    #[default]
    Expansion,
    /// The word map of the corresponding 2-poset.
    Poset,
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct CacheStats {
    pub memo_hits: u64,
    pub disk_hits: u64,
    pub computed: u64,
}

pub struct Evaluator {
    prec: u32,
    wp: u32,
    xi_route: XiRoute,
    consts: Mutex<HashMap<Constant, RealBall>>,
    funs: Mutex<HashMap<(FunTag, Index, BigRational), RealBall>>,
    disk: Option<Mutex<DiskCache>>,
    memo_hits: AtomicU64,
    disk_hits: AtomicU64,
    computed: AtomicU64,
}

impl Evaluator {
    /// An evaluator returning balls accurate to about `prec` bits.
    pub fn new(prec: u32) -> Self {
        Evaluator {
            prec,
            wp: prec + GUARD_BITS,
            xi_route: XiRoute::default(),
            consts: Mutex::new(HashMap::new()),
            funs: Mutex::new(HashMap::new()),
            disk: None,
            memo_hits: AtomicU64::new(0),
            disk_hits: AtomicU64::new(0),
            computed: AtomicU64::new(0),
        }
    }

    pub fn with_disk_cache(mut self, path: impl AsRef<Path>) -> Self {
        self.disk = Some(Mutex::new(DiskCache::open(path)));
        self
    }

    pub fn with_xi_route(mut self, route: XiRoute) -> Self {
        self.xi_route = route;
        self
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn working_prec(&self) -> u32 {
        self.wp
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            memo_hits: self.memo_hits.load(Ordering::Relaxed),
            disk_hits: self.disk_hits.load(Ordering::Relaxed),
            computed: self.computed.load(Ordering::Relaxed),
        }
    }

    pub fn cache_warnings(&self) -> Vec<String> {
        self.disk.as_ref().map(|d| d.lock().unwrap().warnings().to_vec()).unwrap_or_default()
    }

    /// Writes new constants to the persistent cache, if one is attached.
    pub fn flush(&self) -> Result<(), NumericsError> {
        match &self.disk {
            Some(d) => d.lock().unwrap().flush(),
            None => Ok(()),
        }
    }

    /// Every constant evaluated so far, sorted.
    pub fn memo_constants(&self) -> Vec<(Constant, RealBall)> {
        let mut v: Vec<_> = self.consts.lock().unwrap().iter().map(|(c, b)| (c.clone(), b.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    /// Every function value computed so far as `(tag, index, argument, value)`, sorted.
    pub fn memo_functions(&self) -> Vec<(FunTag, Index, BigRational, RealBall)> {
        let mut v: Vec<_> = self
            .funs
            .lock()
            .unwrap()
            .iter()
            .map(|((t, k, x), b)| (*t, k.clone(), x.clone(), b.clone()))
            .collect();
        v.sort_by(|a, b| (a.0, &a.1, &a.2).cmp(&(b.0, &b.1, &b.2)));
        v
    }

    pub fn constant(&self, c: &Constant) -> Result<RealBall, NumericsError> {
        if c.is_unit() {
            return Ok(RealBall::one(self.wp));
        }
        if let Some(b) = self.consts.lock().unwrap().get(c) {
            self.memo_hits.fetch_add(1, Ordering::Relaxed);
            return Ok(b.clone());
        }
        c.validate()?;
        let disk = self.disk.as_ref().filter(|_| matches!(c.tag, ConstTag::Mzv | ConstTag::Mtv));
        let from_disk = disk.and_then(|d| d.lock().unwrap().get(c, self.wp));
        let value = match from_disk {
            Some(b) => {
                self.disk_hits.fetch_add(1, Ordering::Relaxed);
                b
            }
            None => {
                let b = self.compute_constant(c)?;
                self.computed.fetch_add(1, Ordering::Relaxed);
                if let Some(d) = disk {
                    d.lock().unwrap().put(c, self.wp, &b);
                }
                b
            }
        };
        self.consts.lock().unwrap().insert(c.clone(), value.clone());
        Ok(value)
    }

    fn compute_constant(&self, c: &Constant) -> Result<RealBall, NumericsError> {
        let k = &c.index;
        let m = c.arg;
        match c.tag {
            ConstTag::Mzv => mzv(k, self.wp),
            ConstTag::Mtv => mtv(k, self.wp),
            ConstTag::EzInt => self.constant(&Constant::mzv(k.push(m))),
            ConstTag::TInt => {
                if k.is_empty() {
                    let z = self.constant(&Constant::mzv(Index::single(m)))?;
                    let factor = BigRational::from_integer(2.into())
                        * (BigRational::one() - BigRational::new(1.into(), num_traits::pow(2.into(), m as usize)));
                    Ok(z.mul_rational(&factor))
                } else {
                    self.constant(&Constant::mtv(k.push(m)))
                }
            }
            ConstTag::Xi | ConstTag::Psi => {
                let level_one = c.tag == ConstTag::Xi;
                if level_one && self.xi_route == XiRoute::Poset {
                    let x = xi_poset(k, m)?;
                    let mut sum = RealBall::zero(self.wp);
                    for (w, coeff) in x.w_map().iter() {
                        let idx = word_to_index(w).expect("poset words start with e1");
                        sum = sum.add_ball(&self.constant(&Constant::mzv(idx))?.mul_rational(coeff));
                    }
                    return Ok(sum);
                }
                let mut sum = RealBall::zero(self.wp);
                for (mult, idx) in xi_expansion(k, m)? {
                    let v = if level_one {
                        self.constant(&Constant::mzv(idx))?
                    } else {
                        self.constant(&Constant::mtv(idx))?
                    };
                    sum = sum.add_ball(&v.mul_bigint(&mult.into()));
                }
                Ok(sum)
            }
        }
    }

    /// The value of a function factor at the sample point `z ∈ (0, 1)`.
    pub fn function(&self, f: &FunFactor, z: &BigRational) -> Result<RealBall, NumericsError> {
        if !(z.is_positive() && z < &BigRational::one()) {
            return Err(NumericsError::Domain(format!("sample point {z} is not in (0, 1)")));
        }
        if f.is_unit() {
            return Ok(RealBall::one(self.wp));
        }
        let x = arg_value(f.arg, z);
        let key = (f.tag, f.index.clone(), x.clone());
        if let Some(b) = self.funs.lock().unwrap().get(&key) {
            return Ok(b.clone());
        }
        let v = match f.tag {
            FunTag::Log => log_rational(&x, self.wp)?,
            FunTag::Li => li(&f.index, &x, self.wp)?,
            FunTag::A => a_series(&f.index, &x, self.wp)?,
        };
        self.funs.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }
}

pub fn arg_value(arg: Arg, z: &BigRational) -> BigRational {
    match arg {
        Arg::Z => z.clone(),
        Arg::OneMinusZ => BigRational::one() - z,
        Arg::Level2Frac => (BigRational::one() - z) / (BigRational::one() + z),
    }
}

fn all_ones(k: &Index) -> bool {
    k.entries().iter().all(|&e| e == 1)
}

fn check_unit_interval(x: &BigRational) -> Result<(), NumericsError> {
    if x.is_negative() || x >= &BigRational::one() {
        Err(NumericsError::Domain(format!("argument {x} is not in [0, 1)")))
    } else {
        Ok(())
    }
}

/// `Li(k; x)` for rational `x ∈ [0, 1)`; closed form for `k = {1}^d`.
pub fn li(k: &Index, x: &BigRational, wp: u32) -> Result<RealBall, NumericsError> {
    check_unit_interval(x)?;
    if x.is_zero() {
        return Ok(if k.is_empty() { RealBall::one(wp) } else { RealBall::zero(wp) });
    }
    if all_ones(k) {
        return li_ones(k.depth() as u32, x, wp);
    }
    polylog(Level::One, k, &RealBall::from_rational(x, wp), wp)
}

/// `A(k; x)` for rational `x ∈ [0, 1)`; closed form for `k = {1}^d`.
pub fn a_series(k: &Index, x: &BigRational, wp: u32) -> Result<RealBall, NumericsError> {
    check_unit_interval(x)?;
    if x.is_zero() {
        return Ok(if k.is_empty() { RealBall::one(wp) } else { RealBall::zero(wp) });
    }
    if all_ones(k) {
        let one = BigRational::one();
        let a1 = log_rational(&((&one + x) / (&one - x)), wp)?;
        return Ok(power_over_factorial(&a1, k.depth() as u32));
    }
    polylog(Level::Two, k, &RealBall::from_rational(x, wp), wp)
}

/// `Li({1}^d; x) = (-log(1 - x))^d / d!`.
pub fn li_ones(d: u32, x: &BigRational, wp: u32) -> Result<RealBall, NumericsError> {
    check_unit_interval(x)?;
    let t = log_rational(&(BigRational::one() - x), wp)?.neg_ball();
    Ok(power_over_factorial(&t, d))
}

/// `A({1}^d; (1-z)/(1+z)) = (-log z)^d / d!` for `z ∈ (0, 1]`.
pub fn a_ones_frac(d: u32, z: &BigRational, wp: u32) -> Result<RealBall, NumericsError> {
    if !z.is_positive() || z > &BigRational::one() {
        return Err(NumericsError::Domain(format!("argument {z} is not in (0, 1]")));
    }
    let t = log_rational(z, wp)?.neg_ball();
    Ok(power_over_factorial(&t, d))
}
