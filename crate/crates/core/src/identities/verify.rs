//! Numerical verification of an identity at sample points.

use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Identity, IdentityError};
use crate::numerics::{Evaluator, Level, NumericsError, RealBall};
use crate::words::parse_rational;

/// Sample points, tolerance and precision for [`verify`].
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub zs: Vec<BigRational>,
    pub tol: f64,
}

/// The grid `{0.1, 0.3, 0.5, 0.7, 0.9}`.
pub fn default_grid() -> Vec<BigRational> {
    [1, 3, 5, 7, 9].iter().map(|&n| BigRational::new(n.into(), 10.into())).collect()
}

/// `10^-20` at level one, `10^-10` at level two.
pub fn default_tolerance(level: Level) -> f64 {
    match level {
        Level::One => 1e-20,
        Level::Two => 1e-10,
    }
}

/// Reads a comma-separated list of sample points such as `0.1,0.5,3/4`.
pub fn parse_grid(s: &str) -> Result<Vec<BigRational>, IdentityError> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| parse_rational(p.trim()).map_err(IdentityError::Domain))
        .collect()
}

impl VerifyOptions {
    pub fn new(zs: Vec<BigRational>, tol: f64) -> Self {
        VerifyOptions { zs, tol }
    }

    pub fn for_level(level: Level) -> Self {
        VerifyOptions { zs: default_grid(), tol: default_tolerance(level) }
    }

    fn validate(&self) -> Result<(), IdentityError> {
        let lo = BigRational::new(1.into(), 20.into());
        let hi = BigRational::new(19.into(), 20.into());
        if let Some(z) = self.zs.iter().find(|z| **z < lo || **z > hi) {
            return Err(IdentityError::Domain(format!("sample point {z} is outside [0.05, 0.95]")));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(IdentityError::Domain("tolerance must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointReport {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub z: Option<f64>,
    pub lhs: String,
    pub rhs: String,
    /// `|mid(lhs) - mid(rhs)|`.
    pub dev: f64,
    /// `rad(lhs) + rad(rhs)`.
    pub rad: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: serde_json::Value,
    pub points: Vec<PointReport>,
    pub max_dev: f64,
    pub tol: f64,
    pub pass: bool,
    pub ms: u64,
}

impl VerificationReport {
    /// One line: name, parameters, verdict and the worst deviation.
    pub fn summary(&self) -> String {
        let params: Vec<String> = match &self.params {
            serde_json::Value::Object(m) => {
                m.iter().map(|(k, v)| format!("{k}={}", v.as_str().unwrap_or_default())).collect()
            }
            _ => Vec::new(),
        };
        let verdict = if self.pass { "pass" } else { "FAIL" };
        let mut s = format!("{} [{}] {verdict} max_dev={:.2e} tol={:.0e}", self.identity, params.join(" "), self.max_dev, self.tol);
        if let Some(e) = self.points.iter().find_map(|p| p.error.as_ref()) {
            s.push_str(&format!(" error: {e}"));
        }
        s
    }

    /// The report with the timing removed, for reproducibility comparisons.
    pub fn without_timing(&self) -> VerificationReport {
        VerificationReport { ms: 0, ..self.clone() }
    }
}

fn compare(lhs: &RealBall, rhs: &RealBall, tol: f64) -> (f64, f64, bool) {
    let diff = (lhs.mid_rational() - rhs.mid_rational()).abs();
    let rad = lhs.rad().to_rational() + rhs.rad().to_rational();
    let tol_q = BigRational::from_float(tol).unwrap_or_else(BigRational::one);
    let pass = diff <= &tol_q + &rad;
    (diff.to_f64().unwrap_or(f64::INFINITY), lhs.rad().add(rhs.rad()).to_f64(), pass)
}

fn point(id: &Identity, ev: &Evaluator, z: Option<&BigRational>, tol: f64) -> PointReport {
    let zf = z.map(|q| q.to_f64().unwrap_or(f64::NAN));
    let sides = || -> Result<(RealBall, RealBall), NumericsError> { Ok((id.lhs.evaluate(ev, z)?, id.rhs.evaluate(ev, z)?)) };
    match sides() {
        Ok((l, r)) => {
            let (dev, rad, pass) = compare(&l, &r, tol);
            PointReport { z: zf, lhs: l.display_digits(), rhs: r.display_digits(), dev, rad, pass, error: None }
        }
        Err(e) => PointReport {
            z: zf,
            lhs: String::new(),
            rhs: String::new(),
            dev: f64::INFINITY,
            rad: 0.0,
            pass: false,
            error: Some(e.to_string()),
        },
    }
}

/// Evaluates both sides at each sample point (once for constant identities).
///
/// Evaluation failures produce a failed report; only invalid options are errors.
pub fn verify(id: &Identity, ev: &Evaluator, opts: &VerifyOptions) -> Result<VerificationReport, IdentityError> {
    opts.validate()?;
    let start = Instant::now();
    let points: Vec<PointReport> = if id.is_functional() {
        if opts.zs.is_empty() {
            return Err(IdentityError::Domain(format!("{} needs at least one sample point", id.name)));
        }
        opts.zs.par_iter().map(|z| point(id, ev, Some(z), opts.tol)).collect()
    } else {
        vec![point(id, ev, None, opts.tol)]
    };
    let max_dev = points.iter().map(|p| p.dev).fold(0.0, f64::max);
    let pass = points.iter().all(|p| p.pass);
    Ok(VerificationReport {
        identity: id.name.clone(),
        params: id.params_json(),
        points,
        max_dev,
        tol: opts.tol,
        pass,
        ms: start.elapsed().as_millis() as u64,
    })
}
