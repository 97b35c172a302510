//! Indices (finite sequences of positive integers), their block form and the
//! standard involutions on them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("index must be non-empty")]
    EmptyIndex,
    #[error("depth mismatch: {left} vs {right}")]
    DepthMismatch { left: usize, right: usize },
    #[error("index {0} is not admissible")]
    NotAdmissible(Index),
    #[error("{0}")]
    RangeError(String),
    #[error("cannot parse index: {0}")]
    Parse(String),
}

/// A finite sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Index(Vec<u32>);

/// A finite sequence of non-negative integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct NonNegIndex(pub Vec<u32>);

/// Block decomposition `k = ({1}^{a_1-1}, b_1+1, ..., {1}^{a_n-1}, b_n+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct BlockForm(Vec<(u32, u32)>);

impl TryFrom<Vec<u32>> for Index {
    type Error = IndexError;
    fn try_from(v: Vec<u32>) -> Result<Self, IndexError> {
        Index::new(v)
    }
}

impl From<Index> for Vec<u32> {
    fn from(k: Index) -> Vec<u32> {
        k.0
    }
}

impl Index {
    pub fn new(entries: Vec<u32>) -> Result<Self, IndexError> {
        if let Some(pos) = entries.iter().position(|&e| e == 0) {
            return Err(IndexError::RangeError(format!(
                "index entries must be positive, got 0 at position {pos}"
            )));
        }
        Ok(Index(entries))
    }

    pub fn empty() -> Self {
        Index(Vec::new())
    }

    /// `{1}^n`.
    pub fn ones(n: usize) -> Self {
        Index(vec![1; n])
    }

    pub fn single(k: u32) -> Self {
        assert!(k > 0, "index entries must be positive");
        Index(vec![k])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn is_admissible(&self) -> bool {
        self.0.last().is_none_or(|&k| k >= 2)
    }

    pub fn require_admissible(&self) -> Result<(), IndexError> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(IndexError::NotAdmissible(self.clone()))
        }
    }

    pub fn concat(&self, other: &Index) -> Index {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Index(v)
    }

    pub fn push(&self, k: u32) -> Index {
        assert!(k > 0, "index entries must be positive");
        let mut v = self.0.clone();
        v.push(k);
        Index(v)
    }

    /// `k_-`: decrease the last entry by one, dropping it if it becomes zero.
    pub fn k_minus(&self) -> Result<Index, IndexError> {
        let mut v = self.0.clone();
        match v.last_mut() {
            None => Err(IndexError::EmptyIndex),
            Some(1) => {
                v.pop();
                Ok(Index(v))
            }
            Some(x) => {
                *x -= 1;
                Ok(Index(v))
            }
        }
    }

    /// `k_+`: increase the last entry by one.
    pub fn k_plus(&self) -> Result<Index, IndexError> {
        let mut v = self.0.clone();
        match v.last_mut() {
            None => Err(IndexError::EmptyIndex),
            Some(x) => {
                *x += 1;
                Ok(Index(v))
            }
        }
    }

    /// Componentwise sum with a non-negative index of the same depth.
    pub fn add(&self, e: &NonNegIndex) -> Result<Index, IndexError> {
        if self.depth() != e.depth() {
            return Err(IndexError::DepthMismatch { left: self.depth(), right: e.depth() });
        }
        Ok(Index(self.0.iter().zip(&e.0).map(|(a, b)| a + b).collect()))
    }

    pub fn to_blocks(&self) -> BlockForm {
        let mut blocks = Vec::new();
        let mut ones = 0u32;
        for &k in &self.0 {
            if k == 1 {
                ones += 1;
            } else {
                blocks.push((ones + 1, k - 1));
                ones = 0;
            }
        }
        if ones > 0 {
            blocks.push((ones, 0));
        }
        BlockForm(blocks)
    }

    pub fn from_blocks(blocks: &BlockForm) -> Index {
        let mut v = Vec::new();
        for &(a, b) in &blocks.0 {
            v.extend(std::iter::repeat_n(1, (a - 1) as usize));
            v.push(b + 1);
        }
        Index(v)
    }

    /// The duality involution on admissible indices.
    pub fn dual(&self) -> Result<Index, IndexError> {
        self.require_admissible()?;
        let blocks = self.to_blocks();
        let swapped: Vec<(u32, u32)> = blocks.0.iter().rev().map(|&(a, b)| (b, a)).collect();
        Ok(Index::from_blocks(&BlockForm(swapped)))
    }

    /// Hoffman dual: swap the roles of `,` and `+` in `(1,..,1 + 1,..,1 + ...)`.
    pub fn hoffman_dual(&self) -> Index {
        let mut out: Vec<u32> = Vec::new();
        for (i, &k) in self.0.iter().enumerate() {
            for j in 0..k {
                match out.last_mut() {
                    Some(last) if i > 0 && j == 0 => *last += 1,
                    _ => out.push(1),
                }
            }
        }
        Index(out)
    }

    /// Hoffman dual of `(b, tail)` allowing `b = 0`, with `(0)^∨ = ∅`.
    pub fn hoffman_dual_with_head(b: u32, tail: &Index) -> Result<Index, IndexError> {
        if b == 0 {
            if tail.is_empty() {
                Ok(Index::empty())
            } else {
                Err(IndexError::RangeError(
                    "a zero head entry is only defined for an empty tail".into(),
                ))
            }
        } else {
            Ok(Index::single(b).concat(tail).hoffman_dual())
        }
    }

    /// Block reversal `(b_n+1, {1}^{a_n-1}, ..., b_1+1, {1}^{a_1-1})`.
    pub fn reverse_blocks(&self) -> Index {
        let mut v = Vec::new();
        for &(a, b) in self.to_blocks().0.iter().rev() {
            v.push(b + 1);
            v.extend(std::iter::repeat_n(1, (a - 1) as usize));
        }
        Index(v)
    }

    /// The sub-index made of blocks `i+1..=j`.
    pub fn slice(&self, i: usize, j: usize) -> Result<Index, IndexError> {
        let blocks = self.to_blocks();
        let n = blocks.len();
        if i > j || j > n {
            return Err(IndexError::RangeError(format!(
                "block slice {i}..{j} out of range for {n} blocks"
            )));
        }
        Ok(Index::from_blocks(&BlockForm(blocks.0[i..j].to_vec())))
    }

    /// `k^i`: blocks `i+1..=n`.
    pub fn tail(&self, i: usize) -> Result<Index, IndexError> {
        self.slice(i, self.to_blocks().len())
    }

    /// `k_j`: blocks `1..=j`.
    pub fn head(&self, j: usize) -> Result<Index, IndexError> {
        self.slice(0, j)
    }

    /// The canonical text form, e.g. `(1,2)`; `()` for the empty index.
    pub fn to_canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

fn parse_list(s: &str) -> Result<Vec<u32>, IndexError> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .or_else(|| t.strip_prefix('[').and_then(|x| x.strip_suffix(']')))
        .unwrap_or(t)
        .trim();
    if inner.is_empty() || inner == "∅" {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|e| IndexError::Parse(format!("{s:?}: {e}"))))
        .collect()
}

impl FromStr for Index {
    type Err = IndexError;
    fn from_str(s: &str) -> Result<Self, IndexError> {
        Index::new(parse_list(s)?)
    }
}

impl NonNegIndex {
    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn zeros(n: usize) -> Self {
        NonNegIndex(vec![0; n])
    }
}

impl fmt::Display for NonNegIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for NonNegIndex {
    type Err = IndexError;
    fn from_str(s: &str) -> Result<Self, IndexError> {
        Ok(NonNegIndex(parse_list(s)?))
    }
}

impl BlockForm {
    /// Validates `a_i >= 1` and `b_i >= 1` except possibly for the last block.
    pub fn new(blocks: Vec<(u32, u32)>) -> Result<Self, IndexError> {
        let n = blocks.len();
        for (i, &(a, b)) in blocks.iter().enumerate() {
            if a == 0 {
                return Err(IndexError::RangeError(format!("block {} has a = 0", i + 1)));
            }
            if b == 0 && i + 1 < n {
                return Err(IndexError::RangeError(format!(
                    "only the last block may have b = 0 (block {})",
                    i + 1
                )));
            }
        }
        Ok(BlockForm(blocks))
    }

    pub fn blocks(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn a(&self, i: usize) -> u32 {
        self.0[i - 1].0
    }

    pub fn b(&self, i: usize) -> u32 {
        self.0[i - 1].1
    }
}

impl fmt::Display for BlockForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(a, b)| format!("({a},{b})")).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `b(k;e) = ∏ C(k_i+e_i-1, e_i)`.
pub fn binom_weight(k: &Index, e: &NonNegIndex) -> Result<u128, IndexError> {
    if k.depth() != e.depth() {
        return Err(IndexError::DepthMismatch { left: k.depth(), right: e.depth() });
    }
    let mut prod: u128 = 1;
    for (&ki, &ei) in k.0.iter().zip(&e.0) {
        prod *= binomial((ki + ei - 1) as u64, ei as u64);
    }
    Ok(prod)
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// All non-negative compositions of `weight` into `depth` parts, in colex order
/// (ordered by the last entry first, then the one before it, and so on).
pub fn compositions(weight: u32, depth: usize) -> Vec<NonNegIndex> {
    fn rec(w: u32, d: usize) -> Vec<Vec<u32>> {
        if d == 0 {
            return if w == 0 { vec![Vec::new()] } else { Vec::new() };
        }
        let mut out = Vec::new();
        for last in 0..=w {
            for mut head in rec(w - last, d - 1) {
                head.push(last);
                out.push(head);
            }
        }
        out
    }
    rec(weight, depth).into_iter().map(NonNegIndex).collect()
}

/// All admissible indices of the given weight (weight 0 gives only the empty index).
pub fn admissible_of_weight(weight: u32) -> Vec<Index> {
    all_of_weight(weight).into_iter().filter(|k| k.is_admissible()).collect()
}

/// All indices (compositions into positive parts) of the given weight.
pub fn all_of_weight(weight: u32) -> Vec<Index> {
    fn rec(w: u32, prefix: &mut Vec<u32>, out: &mut Vec<Index>) {
        if w == 0 {
            out.push(Index(prefix.clone()));
            return;
        }
        for first in 1..=w {
            prefix.push(first);
            rec(w - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(weight, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ix(s: &str) -> Index {
        s.parse().unwrap()
    }

    #[test]
    fn blocks_of_examples() {
        assert_eq!(ix("(2,1,1,3)").to_blocks().blocks(), &[(1, 1), (3, 2)]);
        assert_eq!(ix("(1)").to_blocks().blocks(), &[(1, 0)]);
        assert!(ix("()").to_blocks().is_empty());
    }

    #[test]
    fn duals() {
        assert_eq!(ix("(2)").dual().unwrap(), ix("(2)"));
        assert_eq!(ix("(3)").dual().unwrap(), ix("(1,2)"));
        assert_eq!(ix("(1,2)").dual().unwrap(), ix("(3)"));
        assert_eq!(ix("(1,3)").dual().unwrap(), ix("(1,3)"));
        assert_eq!(ix("(2,1)").dual(), Err(IndexError::NotAdmissible(ix("(2,1)"))));
        assert_eq!(ix("()").dual().unwrap(), ix("()"));
    }

    #[test]
    fn hoffman() {
        assert_eq!(ix("(3)").hoffman_dual(), ix("(1,1,1)"));
        assert_eq!(ix("(2,1)").hoffman_dual(), ix("(1,2)"));
        assert_eq!(ix("(1,1)").hoffman_dual(), ix("(2)"));
        assert_eq!(ix("()").hoffman_dual(), ix("()"));
        assert_eq!(Index::hoffman_dual_with_head(0, &ix("()")).unwrap(), ix("()"));
        assert_eq!(Index::hoffman_dual_with_head(2, &ix("(1)")).unwrap(), ix("(1,2)"));
    }

    #[test]
    fn reverse_and_slices() {
        assert_eq!(ix("(1,2)").reverse_blocks(), ix("(2,1)"));
        let k = ix("(2,1,1,3)");
        assert_eq!(k.head(1).unwrap(), ix("(2)"));
        assert_eq!(k.tail(1).unwrap(), ix("(1,1,3)"));
        assert_eq!(k.tail(2).unwrap(), ix("()"));
        assert_eq!(k.head(0).unwrap(), ix("()"));
        assert!(k.slice(1, 3).is_err());
    }

    #[test]
    fn minus_plus() {
        assert_eq!(ix("(1,1)").k_minus().unwrap(), ix("(1)"));
        assert_eq!(ix("(2,3)").k_minus().unwrap(), ix("(2,2)"));
        assert_eq!(ix("(2,1)").k_plus().unwrap(), ix("(2,2)"));
        assert_eq!(ix("()").k_minus(), Err(IndexError::EmptyIndex));
    }

    #[test]
    fn binomial_weights_and_compositions() {
        let c: Vec<String> = compositions(2, 2).iter().map(|e| e.to_string()).collect();
        assert_eq!(c, ["(2,0)", "(1,1)", "(0,2)"]);
        assert_eq!(compositions(0, 0).len(), 1);
        assert!(compositions(1, 0).is_empty());
        assert_eq!(binom_weight(&ix("(2,1)"), &NonNegIndex(vec![1, 0])).unwrap(), 2);
        assert_eq!(binom_weight(&ix("(3)"), &NonNegIndex(vec![2])).unwrap(), 6);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(ix("(1, 2)").to_string(), "(1,2)");
        assert_eq!(ix("()").to_string(), "()");
        assert!("(0,1)".parse::<Index>().is_err());
        assert!("(a)".parse::<Index>().is_err());
        assert_eq!(admissible_of_weight(3).len(), 2);
        assert_eq!(all_of_weight(4).len(), 8);
    }
}
