//! Formal expressions for both sides of the connection formulas, and a
//! harness that evaluates them and reports the deviation.

pub mod builders;
pub mod expr;
pub mod suites;
pub mod verify;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::index::{Index, IndexError};
use crate::numerics::{Level, NumericsError};

pub use builders::*;
pub use expr::{Expr, Term};
pub use verify::{verify, PointReport, VerificationReport, VerifyOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// A named identity `lhs = rhs` with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub params: Vec<(String, String)>,
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Identity {
    /// Depends on the sample point `z`.
    pub fn is_functional(&self) -> bool {
        self.lhs.is_functional() || self.rhs.is_functional()
    }

    pub fn params_json(&self) -> serde_json::Value {
        serde_json::Value::Object(
            self.params.iter().map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone()))).collect(),
        )
    }
}

/// Readings of the sign and factor pattern in the second sum of the
/// duality-type relation for `ξ({1}^{a-1}, k_1, ..., k_r - 1; m+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum XuReading {
    /// Exponent `k_j + ... + k_r` (with `k_0 = 0`), factors as written.
    AsPrinted,
    /// Exponent `k_{j+1} + ... + k_r`, factors as written.
    SignFromNext,
    /// Exponent `k_{j+2} + ... + k_r`, factors as written.
    SignFromSecondNext,
    /// Exponent `k_{j+2} + ... + k_r`; the subtracted product is
    /// `ξ({1}^{a-1}, k_1, ..., k_{j+1} - 1; 2) ζ({1}^{m-1}, k_r, ..., k_{j+2})`.
    SwappedSecondProduct,
}

impl XuReading {
    /// In the order the harness tries them.
    pub const ALL: [XuReading; 4] = [
        XuReading::AsPrinted,
        XuReading::SignFromNext,
        XuReading::SignFromSecondNext,
        XuReading::SwappedSecondProduct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            XuReading::AsPrinted => "as-printed",
            XuReading::SignFromNext => "sign-from-next",
            XuReading::SignFromSecondNext => "sign-from-second-next",
            XuReading::SwappedSecondProduct => "swapped-second-product",
        }
    }
}

impl fmt::Display for XuReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for XuReading {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        XuReading::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| format!("unknown reading {s:?}"))
    }
}

/// The identity families known to the harness, by command-line name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    ThmMain2,
    ThmMain1,
    CorMain,
    ThmMain2Lv2,
    ThmMain1Lv2,
    CorMainLv2,
    AkThm8,
    AkThm9_2,
    AkDep1,
    Xu2_8,
    XuThm3_3,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::ThmMain2,
        Family::ThmMain1,
        Family::CorMain,
        Family::ThmMain2Lv2,
        Family::ThmMain1Lv2,
        Family::CorMainLv2,
        Family::AkThm8,
        Family::AkThm9_2,
        Family::AkDep1,
        Family::Xu2_8,
        Family::XuThm3_3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::ThmMain2 => "thm-main2",
            Family::ThmMain1 => "thm-main1",
            Family::CorMain => "cor-main",
            Family::ThmMain2Lv2 => "thm-main2-lv2",
            Family::ThmMain1Lv2 => "thm-main1-lv2",
            Family::CorMainLv2 => "cor-main-lv2",
            Family::AkThm8 => "ak-thm8",
            Family::AkThm9_2 => "ak-thm9-2",
            Family::AkDep1 => "ak-dep1",
            Family::Xu2_8 => "xu-2-8",
            Family::XuThm3_3 => "xu-thm3-3",
        }
    }

    pub fn level(self) -> Level {
        match self {
            Family::ThmMain2Lv2 | Family::ThmMain1Lv2 | Family::CorMainLv2 => Level::Two,
            _ => Level::One,
        }
    }

    /// Parameter names the family takes.
    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            Family::ThmMain2 | Family::ThmMain2Lv2 => &["k"],
            Family::ThmMain1 | Family::CorMain | Family::ThmMain1Lv2 | Family::CorMainLv2 => &["k", "m"],
            Family::AkThm8 | Family::AkThm9_2 => &["a", "b", "m"],
            Family::AkDep1 => &["kk"],
            Family::Xu2_8 => &["a", "b"],
            Family::XuThm3_3 => &["a", "m", "ks", "reading"],
        }
    }

    /// Builds the identity from textual parameters.
    pub fn build(self, get: &dyn Fn(&str) -> Option<String>) -> Result<Identity, IdentityError> {
        let need = |name: &str| -> Result<String, IdentityError> {
            get(name).ok_or_else(|| IdentityError::Domain(format!("{} needs --{name}", self.name())))
        };
        let int = |name: &str| -> Result<u32, IdentityError> {
            need(name)?.trim().parse().map_err(|_| IdentityError::Domain(format!("--{name} must be an integer")))
        };
        let index = |name: &str| -> Result<Index, IdentityError> { Ok(need(name)?.parse::<Index>()?) };
        match self {
            Family::ThmMain2 => thm_main2(Level::One, &index("k")?),
            Family::ThmMain1 => thm_main1(Level::One, &index("k")?, int("m")?),
            Family::CorMain => cor_main(Level::One, &index("k")?, int("m")?),
            Family::ThmMain2Lv2 => thm_main2(Level::Two, &index("k")?),
            Family::ThmMain1Lv2 => thm_main1(Level::Two, &index("k")?, int("m")?),
            Family::CorMainLv2 => cor_main(Level::Two, &index("k")?, int("m")?),
            Family::AkThm8 => ak_thm8(int("a")?, int("b")?, int("m")?),
            Family::AkThm9_2 => ak_thm9_2(int("a")?, int("b")?, int("m")?),
            Family::AkDep1 => ak_dep1(int("kk")?),
            Family::Xu2_8 => xu_2_8(int("a")?, int("b")?),
            Family::XuThm3_3 => {
                let reading = match get("reading") {
                    Some(r) => r.parse().map_err(IdentityError::Domain)?,
                    None => XuReading::AsPrinted,
                };
                xu_thm3_3(int("a")?, int("m")?, &index("ks")?, reading)
            }
        }
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.replace('_', "-").to_ascii_lowercase();
        Family::ALL.into_iter().find(|f| f.name() == t).ok_or_else(|| format!("unknown identity {s:?}"))
    }
}
