//! Certified evaluation of multiple zeta values, multiple t-values, the
//! multiple polylogarithms `Li` and `A`, and the xi and psi functions at
//! positive integers.

pub mod ball;
pub mod cache;
pub mod checks;
pub mod elementary;
pub mod evaluator;
pub mod oracle;
pub mod series;
pub mod zeta;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::index::{Index, IndexError};

pub use ball::{Mag, RealBall};
pub use evaluator::{Evaluator, XiRoute};
pub use series::Level;

/// Extra bits carried internally on top of the requested precision.
pub const GUARD_BITS: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericsError {
    #[error("precision unreachable: {0}")]
    PrecisionUnreachable(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("pre-flight self-check failed: {0}")]
    Preflight(String),
}

/// The kinds of real constants that identities refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConstTag {
    /// `ζ(k)`.
    Mzv,
    /// `T(k)`.
    Mtv,
    /// `ξ(k; m)`.
    Xi,
    /// `ψ(k; m)`.
    Psi,
    /// `ζ(k; m) = ζ(k, m)`.
    EzInt,
    /// `T(k; m) = T(k, m)`, with `T(∅; m) = 2(1 - 2^{-m}) ζ(m)`.
    TInt,
}

impl ConstTag {
    pub const ALL: [ConstTag; 6] =
        [ConstTag::Mzv, ConstTag::Mtv, ConstTag::Xi, ConstTag::Psi, ConstTag::EzInt, ConstTag::TInt];

    pub fn name(self) -> &'static str {
        match self {
            ConstTag::Mzv => "MZV",
            ConstTag::Mtv => "MTV",
            ConstTag::Xi => "XI",
            ConstTag::Psi => "PSI",
            ConstTag::EzInt => "EZ_INT",
            ConstTag::TInt => "T_INT",
        }
    }

    pub fn has_arg(self) -> bool {
        !matches!(self, ConstTag::Mzv | ConstTag::Mtv)
    }

    pub fn level(self) -> Level {
        match self {
            ConstTag::Mzv | ConstTag::Xi | ConstTag::EzInt => Level::One,
            _ => Level::Two,
        }
    }
}

impl FromStr for ConstTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        ConstTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown constant kind {s:?}"))
    }
}

/// A real constant: `tag(index)` or `tag(index; arg)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Constant {
    pub tag: ConstTag,
    pub index: Index,
    pub arg: u32,
}

impl Constant {
    pub fn mzv(k: Index) -> Self {
        Constant { tag: ConstTag::Mzv, index: k, arg: 0 }
    }

    pub fn mtv(k: Index) -> Self {
        Constant { tag: ConstTag::Mtv, index: k, arg: 0 }
    }

    pub fn with_arg(tag: ConstTag, k: Index, arg: u32) -> Self {
        Constant { tag, index: k, arg }
    }

    /// The constant is the empty product 1.
    pub fn is_unit(&self) -> bool {
        matches!(self.tag, ConstTag::Mzv | ConstTag::Mtv) && self.index.is_empty()
    }

    pub fn weight(&self) -> u32 {
        match self.tag {
            ConstTag::Mzv | ConstTag::Mtv => self.index.weight(),
            ConstTag::Xi | ConstTag::Psi => self.index.weight() + self.arg,
            ConstTag::EzInt | ConstTag::TInt => self.index.weight() + self.arg,
        }
    }

    pub fn validate(&self) -> Result<(), NumericsError> {
        match self.tag {
            ConstTag::Mzv | ConstTag::Mtv => Ok(self.index.require_admissible()?),
            ConstTag::Xi | ConstTag::Psi => {
                if self.index.is_empty() {
                    Err(NumericsError::Domain("xi/psi need a non-empty index".into()))
                } else if self.arg == 0 {
                    Err(NumericsError::Domain("xi/psi need m >= 1".into()))
                } else {
                    Ok(())
                }
            }
            ConstTag::EzInt | ConstTag::TInt => {
                if self.arg < 2 {
                    Err(NumericsError::Domain("the final argument must be >= 2".into()))
                } else {
                    Ok(())
                }
            }
        }
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tag.has_arg() {
            write!(f, "{}({};{})", self.tag.name(), self.index, self.arg)
        } else {
            write!(f, "{}{}", self.tag.name(), self.index)
        }
    }
}

/// Evaluation points of a function factor, as functions of the sample `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Arg {
    Z,
    OneMinusZ,
    /// `(1 - z) / (1 + z)`.
    Level2Frac,
}

/// Functions of the sample point that appear in identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FunTag {
    Li,
    A,
    Log,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FunFactor {
    pub tag: FunTag,
    pub index: Index,
    pub arg: Arg,
}

impl FunFactor {
    pub fn li(k: Index, arg: Arg) -> Self {
        FunFactor { tag: FunTag::Li, index: k, arg }
    }

    pub fn a(k: Index, arg: Arg) -> Self {
        FunFactor { tag: FunTag::A, index: k, arg }
    }

    pub fn log(arg: Arg) -> Self {
        FunFactor { tag: FunTag::Log, index: Index::empty(), arg }
    }

    pub fn is_unit(&self) -> bool {
        self.tag != FunTag::Log && self.index.is_empty()
    }

    pub fn weight(&self) -> u32 {
        match self.tag {
            FunTag::Log => 1,
            _ => self.index.weight(),
        }
    }

    /// The same factor with `z` and `1 - z` exchanged.
    pub fn reflect(&self) -> FunFactor {
        let arg = match self.arg {
            Arg::Z => Arg::OneMinusZ,
            Arg::OneMinusZ => Arg::Z,
            Arg::Level2Frac => Arg::Level2Frac,
        };
        FunFactor { arg, ..self.clone() }
    }
}

impl fmt::Display for FunFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = match self.arg {
            Arg::Z => "z",
            Arg::OneMinusZ => "1-z",
            Arg::Level2Frac => "(1-z)/(1+z)",
        };
        match self.tag {
            FunTag::Li => write!(f, "Li({};{a})", self.index),
            FunTag::A => write!(f, "A({};{a})", self.index),
            FunTag::Log => write!(f, "log({a})"),
        }
    }
}
