//! Multiple zeta values, multiple polylogarithms and the Arakawa–Kaneko xi
//! function, with exact word and 2-poset combinatorics and certified
//! ball-arithmetic evaluation.

pub mod identities;
pub mod index;
pub mod numerics;
pub mod poset;
pub mod words;
