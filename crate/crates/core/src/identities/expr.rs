//! Formal linear combinations of products of constants and function factors.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::index::binomial;
use crate::numerics::{Evaluator, FunFactor, NumericsError, RealBall};
use crate::numerics::Constant;
use crate::words::rational_text;

/// `coeff · C(n, k) · ∏ consts · ∏ funs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigRational,
    pub consts: Vec<Constant>,
    pub funs: Vec<FunFactor>,
    /// `(n, k)` for a binomial factor `C(n, k)`, i.e. `C(s+d-1, d)` at a fixed `s`.
    pub binom: Option<(u64, u64)>,
}

pub(crate) type TermKey = (Vec<Constant>, Vec<FunFactor>, Option<(u64, u64)>);

impl Term {
    pub fn new(coeff: BigRational, consts: Vec<Constant>, funs: Vec<FunFactor>) -> Self {
        Term { coeff, consts, funs, binom: None }
    }

    pub fn with_binom(mut self, n: u64, k: u64) -> Self {
        self.binom = Some((n, k));
        self
    }

    /// Total weight of the constants and functions (`log` counts one).
    pub fn weight(&self) -> u32 {
        self.consts.iter().map(Constant::weight).sum::<u32>() + self.funs.iter().map(FunFactor::weight).sum::<u32>()
    }

    pub fn is_functional(&self) -> bool {
        self.funs.iter().any(|f| !f.is_unit())
    }

    /// Drops unit factors and sorts the remaining ones.
    pub fn canonical(&self) -> Term {
        let mut consts: Vec<Constant> = self.consts.iter().filter(|c| !c.is_unit()).cloned().collect();
        let mut funs: Vec<FunFactor> = self.funs.iter().filter(|f| !f.is_unit()).cloned().collect();
        consts.sort();
        funs.sort();
        let binom = self.binom.filter(|&(n, k)| k != 0 && k != n);
        let coeff = match self.binom {
            Some((n, k)) if binom.is_none() => &self.coeff * BigRational::from_integer(BigInt::from(binomial(n, k))),
            _ => self.coeff.clone(),
        };
        Term { coeff, consts, funs, binom }
    }

    pub(crate) fn key(&self) -> TermKey {
        (self.consts.clone(), self.funs.clone(), self.binom)
    }

    /// The exact rational prefactor including the binomial.
    pub fn scalar(&self) -> BigRational {
        match self.binom {
            Some((n, k)) => &self.coeff * BigRational::from_integer(BigInt::from(binomial(n, k))),
            None => self.coeff.clone(),
        }
    }

    pub fn evaluate(&self, ev: &Evaluator, z: Option<&BigRational>) -> Result<RealBall, NumericsError> {
        let mut v = RealBall::from_rational(&self.scalar(), ev.working_prec());
        for c in &self.consts {
            v = v.mul_ball(&ev.constant(c)?);
        }
        for f in &self.funs {
            if f.is_unit() {
                continue;
            }
            let z = z.ok_or_else(|| NumericsError::Domain(format!("{f} needs a sample point")))?;
            v = v.mul_ball(&ev.function(f, z)?);
        }
        Ok(v)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "coeff": rational_text(&self.coeff),
            "consts": self.consts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "funs": self.funs.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "binom": self.binom.map(|(n, k)| [n, k]),
        })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        if let Some((n, k)) = self.binom {
            write!(f, "*C({n},{k})")?;
        }
        for c in &self.consts {
            write!(f, "*{c}")?;
        }
        for g in &self.funs {
            write!(f, "*{g}")?;
        }
        Ok(())
    }
}

/// A finite sum of terms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Expr {
    pub terms: Vec<Term>,
}

impl Expr {
    pub fn new() -> Self {
        Expr::default()
    }

    pub fn single(t: Term) -> Self {
        Expr { terms: vec![t] }
    }

    pub fn push(&mut self, t: Term) {
        self.terms.push(t);
    }

    pub fn extend(&mut self, other: Expr) {
        self.terms.extend(other.terms);
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_functional(&self) -> bool {
        self.terms.iter().any(Term::is_functional)
    }

    /// Sorted by `(consts, funs, binom)` with equal keys merged and zero terms removed.
    pub fn canonical(&self) -> Expr {
        let mut terms: Vec<Term> = self.terms.iter().map(Term::canonical).collect();
        terms.sort_by_key(Term::key);
        let mut out: Vec<Term> = Vec::new();
        for t in terms {
            match out.last_mut() {
                Some(last) if last.key() == t.key() => last.coeff += t.coeff,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        Expr { terms: out }
    }

    /// Exchanges the arguments `z` and `1 - z` in every function factor.
    pub fn reflect(&self) -> Expr {
        Expr {
            terms: self
                .terms
                .iter()
                .map(|t| Term { funs: t.funs.iter().map(FunFactor::reflect).collect(), ..t.clone() })
                .collect(),
        }
    }

    pub fn scaled(&self, c: &BigRational) -> Expr {
        Expr { terms: self.terms.iter().map(|t| Term { coeff: &t.coeff * c, ..t.clone() }).collect() }
    }

    /// Sums the terms in order.
    pub fn evaluate(&self, ev: &Evaluator, z: Option<&BigRational>) -> Result<RealBall, NumericsError> {
        let mut sum = RealBall::zero(ev.working_prec());
        for t in &self.terms {
            sum = sum.add_ball(&t.evaluate(ev, z)?);
        }
        Ok(sum)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.terms.iter().map(Term::to_json).collect())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
                if !t.coeff.is_negative() {
                    write!(f, "+")?;
                }
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

pub(crate) fn sign(e: u32) -> BigRational {
    if e % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

pub(crate) fn int(n: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
