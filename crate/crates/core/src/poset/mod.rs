//! Finite posets whose elements carry a label in `{0, 1}` and the linear map
//! sending such a poset to the sum of the words of its linear extensions.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::index::Index;

pub mod integral;

pub use integral::{i_one, i_z, quadrature_oracle, QuadratureEstimate};
use crate::words::{index_to_word, Letter, Word, WordSum};

/// Posets are stored as bitmasks, which caps their size.
pub const MAX_ELEMENTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("the relations contain a cycle through element {0}")]
    Cycle(usize),
    #[error("element {0} out of range")]
    BadElement(usize),
    #[error("label {0} is not 0 or 1")]
    BadLabel(u8),
    #[error("posets are limited to {MAX_ELEMENTS} elements")]
    TooLarge,
    #[error("poset is not {0}")]
    NotAdmissible(&'static str),
    #[error("cannot parse poset: {0}")]
    Parse(String),
}

/// A 2-poset on the elements `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoPoset {
    labels: Vec<Letter>,
    /// `above[x]` is the set of `y` with `x < y`.
    above: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    labels: Vec<u8>,
    covers: Vec<[usize; 2]>,
}

impl TwoPoset {
    /// Builds a poset from labels and generating relations `(x, y)` meaning `x < y`.
    pub fn new(labels: Vec<Letter>, relations: &[(usize, usize)]) -> Result<Self, PosetError> {
        let n = labels.len();
        if n > MAX_ELEMENTS {
            return Err(PosetError::TooLarge);
        }
        let mut p = TwoPoset { labels, above: vec![0; n] };
        for &(x, y) in relations {
            if x >= n {
                return Err(PosetError::BadElement(x));
            }
            if y >= n {
                return Err(PosetError::BadElement(y));
            }
            p.relate_closed(x, y);
        }
        if let Some(x) = (0..n).find(|&x| p.above[x] >> x & 1 == 1) {
            return Err(PosetError::Cycle(x));
        }
        Ok(p)
    }

    pub fn empty() -> Self {
        TwoPoset { labels: Vec::new(), above: Vec::new() }
    }

    /// Adds `x < y` and restores transitivity (may create a cycle).
    fn relate_closed(&mut self, x: usize, y: usize) {
        let up = self.above[y] | (1u64 << y);
        for z in 0..self.labels.len() {
            if z == x || self.above[z] >> x & 1 == 1 {
                self.above[z] |= up;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Letter] {
        &self.labels
    }

    pub fn less(&self, x: usize, y: usize) -> bool {
        self.above[x] >> y & 1 == 1
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        x == y || self.less(x, y) || self.less(y, x)
    }

    /// The Hasse diagram as `(x, y)` pairs with `y` covering `x`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.less(x, y) && !(0..n).any(|z| self.less(x, z) && self.less(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&y| !(0..self.len()).any(|x| self.less(x, y))).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.above[x] == 0).collect()
    }

    /// Every minimal element is labelled 1.
    pub fn is_semi_admissible(&self) -> bool {
        self.minimal_elements().iter().all(|&x| self.labels[x] == Letter::E1)
    }

    /// Semi-admissible and every maximal element is labelled 0.
    pub fn is_admissible(&self) -> bool {
        self.is_semi_admissible()
            && self.maximal_elements().iter().all(|&x| self.labels[x] == Letter::E0)
    }

    /// Reverse the order and exchange the labels.
    pub fn transpose(&self) -> TwoPoset {
        let n = self.len();
        let mut above = vec![0u64; n];
        for x in 0..n {
            for y in 0..n {
                if self.less(x, y) {
                    above[y] |= 1 << x;
                }
            }
        }
        TwoPoset { labels: self.labels.iter().map(|l| l.swap()).collect(), above }
    }

    /// Disjoint union; elements of `other` are shifted by `self.len()`.
    pub fn disjoint_union(&self, other: &TwoPoset) -> Result<TwoPoset, PosetError> {
        let shift = self.len();
        if shift + other.len() > MAX_ELEMENTS {
            return Err(PosetError::TooLarge);
        }
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        let mut above = self.above.clone();
        above.extend(other.above.iter().map(|m| m << shift));
        Ok(TwoPoset { labels, above })
    }

    /// All linear extensions, each as the list of elements from bottom to top.
    pub fn linear_extensions(&self) -> Vec<Vec<usize>> {
        fn rec(p: &TwoPoset, used: u64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let n = p.len();
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for y in 0..n {
                if used >> y & 1 == 1 {
                    continue;
                }
                let ready = (0..n).all(|x| !p.less(x, y) || used >> x & 1 == 1);
                if ready {
                    cur.push(y);
                    rec(p, used | 1 << y, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(self, 0, &mut Vec::new(), &mut out);
        out
    }

    /// Reference implementation of the word map: sum over linear extensions.
    pub fn w_map_by_extensions(&self) -> WordSum {
        let mut s = WordSum::zero();
        for ext in self.linear_extensions() {
            s.add_term(Word(ext.iter().map(|&x| self.labels[x]).collect()), BigRational::one());
        }
        s
    }

    /// The word map, by repeatedly splitting on the lexicographically smallest
    /// incomparable pair `(x, y)` into `x < y` and `y < x`.
    pub fn w_map(&self) -> WordSum {
        let mut counts: HashMap<Vec<Letter>, u64> = HashMap::new();
        self.w_split(&mut counts);
        let mut s = WordSum::zero();
        for (w, c) in counts {
            s.add_term(Word(w), BigRational::from_integer(BigInt::from(c)));
        }
        s
    }

    fn w_split(&self, counts: &mut HashMap<Vec<Letter>, u64>) {
        let n = self.len();
        for x in 0..n {
            for y in x + 1..n {
                if !self.comparable(x, y) {
                    let mut lo = self.clone();
                    lo.relate_closed(x, y);
                    lo.w_split(counts);
                    let mut hi = self.clone();
                    hi.relate_closed(y, x);
                    hi.w_split(counts);
                    return;
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| std::cmp::Reverse(self.above[x].count_ones()));
        *counts.entry(order.iter().map(|&x| self.labels[x]).collect()).or_insert(0) += 1;
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = PosetJson {
            labels: self.labels.iter().map(|l| if *l == Letter::E1 { 1 } else { 0 }).collect(),
            covers: self.covers().into_iter().map(|(x, y)| [x, y]).collect(),
        };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<TwoPoset, PosetError> {
        let j: PosetJson =
            serde_json::from_value(v.clone()).map_err(|e| PosetError::Parse(e.to_string()))?;
        let labels = j
            .labels
            .iter()
            .map(|&l| match l {
                0 => Ok(Letter::E0),
                1 => Ok(Letter::E1),
                other => Err(PosetError::BadLabel(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let rel: Vec<(usize, usize)> = j.covers.iter().map(|c| (c[0], c[1])).collect();
        TwoPoset::new(labels, &rel)
    }

    pub fn from_json_str(s: &str) -> Result<TwoPoset, PosetError> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| PosetError::Parse(e.to_string()))?;
        Self::from_json(&v)
    }
}

/// Incremental construction of 2-posets from chains and extra relations.
#[derive(Debug, Clone, Default)]
pub struct PosetBuilder {
    labels: Vec<Letter>,
    relations: Vec<(usize, usize)>,
}

/// The bottom and top elements of a chain added to a [`PosetBuilder`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainEnds {
    pub bottom: usize,
    pub top: usize,
}

impl PosetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a chain whose labels read `w` from bottom to top.
    pub fn chain(&mut self, w: &Word) -> Option<ChainEnds> {
        let start = self.labels.len();
        for (i, &l) in w.letters().iter().enumerate() {
            self.labels.push(l);
            if i > 0 {
                self.relations.push((start + i - 1, start + i));
            }
        }
        (!w.is_empty()).then(|| ChainEnds { bottom: start, top: start + w.len() - 1 })
    }

    pub fn relate(&mut self, lower: usize, upper: usize) {
        self.relations.push((lower, upper));
    }

    pub fn build(self) -> Result<TwoPoset, PosetError> {
        TwoPoset::new(self.labels, &self.relations)
    }
}

/// The chain whose word is that of the index `k`.
pub fn chain_from_index(k: &Index) -> TwoPoset {
    chain_from_word(&index_to_word(k))
}

pub fn chain_from_word(w: &Word) -> TwoPoset {
    let mut b = PosetBuilder::new();
    b.chain(w);
    b.build().expect("a chain is acyclic")
}

fn ones(n: usize) -> Word {
    Word::repeat(Letter::E1, n)
}

fn zeros(n: usize) -> Word {
    Word::repeat(Letter::E0, n)
}

/// The 2-poset whose integral is the xi value at `m`: the chain of `k_+`
/// with a chain of `m - 1` elements labelled 1 lying below its top element.
pub fn xi_poset(k: &Index, m: u32) -> Result<TwoPoset, crate::index::IndexError> {
    let kp = k.k_plus()?;
    let mut b = PosetBuilder::new();
    let main = b.chain(&index_to_word(&kp)).expect("non-empty");
    if let Some(h) = b.chain(&ones(m as usize - 1)) {
        b.relate(h.top, main.top);
    }
    Ok(b.build().expect("acyclic"))
}

/// The tree `v_{i,j}` over the chain of `l`.
///
/// For `i >= 1` a chain `h_1 < ... < h_i` of 1-labelled elements hangs below
/// the top of the chain of `l`, and a chain of `j` 1-labelled elements sits
/// above `h_1`. For `i = 0` the tree is the chain of `(l, {1}^j)`.
pub fn v_poset(l: &Index, i: usize, j: usize) -> TwoPoset {
    if i == 0 {
        return chain_from_index(&l.concat(&Index::ones(j)));
    }
    let mut b = PosetBuilder::new();
    let main = b.chain(&index_to_word(l)).expect("l is non-empty");
    let h = b.chain(&ones(i)).expect("i >= 1");
    b.relate(h.top, main.top);
    if let Some(d) = b.chain(&ones(j)) {
        b.relate(h.bottom, d.bottom);
    }
    b.build().expect("acyclic")
}

/// Which of the two attachment rules of the rewriting identity is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RewriteVariant {
    /// A run of `b` elements labelled 0 on top of the chain of `k`.
    Circles,
    /// A run of `a` elements labelled 1 on top of the chain of `k`.
    Bullets,
}

/// Both sides of the rewriting identity for two chains joined at their tops.
pub fn rewrite_sides(
    k: &Index,
    l: &Index,
    param: usize,
    variant: RewriteVariant,
) -> Result<(WordSum, WordSum), PosetError> {
    if k.is_empty() || l.is_empty() {
        return Err(PosetError::Parse("k and l must be non-empty".into()));
    }
    let wk = index_to_word(k);
    let wl = index_to_word(l);
    let sign = |j: usize| -> BigRational {
        if j % 2 == 0 {
            BigRational::one()
        } else {
            -BigRational::one()
        }
    };
    let joined = |lower: &Word, upper: &Word| -> Result<TwoPoset, PosetError> {
        let mut b = PosetBuilder::new();
        let lo = b.chain(lower).expect("non-empty");
        let hi = b.chain(upper).expect("non-empty");
        b.relate(lo.top, hi.top);
        b.build()
    };
    match variant {
        RewriteVariant::Circles => {
            let bb = param;
            let lhs = joined(&wk.concat(&zeros(bb)), &wl)?.w_map();
            let mut rhs = WordSum::zero();
            for j in 0..bb {
                let p = chain_from_word(&wk.concat(&zeros(bb - j))).w_map();
                let q = chain_from_word(&wl.concat(&zeros(j))).w_map();
                rhs.add_assign_scaled(&p.shuffle(&q), &sign(j));
            }
            let y = joined(&wk, &wl.concat(&zeros(bb)))?.w_map();
            rhs.add_assign_scaled(&y, &sign(bb));
            Ok((lhs, rhs))
        }
        RewriteVariant::Bullets => {
            let a = param;
            let lhs = joined(&wk.concat(&ones(a)), &wl)?.w_map();
            let hanging = |w: &Word, count: usize| -> Result<WordSum, PosetError> {
                let mut b = PosetBuilder::new();
                let main = b.chain(w).expect("non-empty");
                if let Some(h) = b.chain(&ones(count)) {
                    b.relate(h.top, main.top);
                }
                Ok(b.build()?.w_map())
            };
            let mut rhs = WordSum::zero();
            for j in 0..=a {
                let p = hanging(&wk, j)?;
                let q = hanging(&wl, a - j)?;
                rhs.add_assign_scaled(&p.shuffle(&q), &sign(j));
            }
            let r = joined(&wl.concat(&ones(a)), &wk)?.w_map();
            rhs.add_assign_scaled(&r, &sign(a + 1));
            Ok((lhs, rhs))
        }
    }
}

/// Checks the rewriting identity exactly in the word algebra.
pub fn rewrite_check(
    k: &Index,
    l: &Index,
    param: usize,
    variant: RewriteVariant,
) -> Result<bool, PosetError> {
    let (lhs, rhs) = rewrite_sides(k, l, param, variant)?;
    Ok(lhs == rhs)
}

/// Both sides of the word identity behind the limit of
/// `Li(l, {1}^a; z)` as `z → 1`:
/// `W(l, {1}^a) - Σ_{d=1}^a (-1)^{a-d} W(v_{a-d,0}) ⧢ W({1}^d) = (-1)^a W(v_{a,0})`.
pub fn limit_word_identity(l: &Index, a: usize) -> Result<(WordSum, WordSum), PosetError> {
    if l.is_empty() || !l.is_admissible() {
        return Err(PosetError::NotAdmissible("built on a non-empty admissible index"));
    }
    let sign = |e: usize| if e % 2 == 0 { BigRational::one() } else { -BigRational::one() };
    let mut lhs = chain_from_index(&l.concat(&Index::ones(a))).w_map();
    for d in 1..=a {
        let prod = v_poset(l, a - d, 0).w_map().shuffle(&WordSum::word(ones(d)));
        lhs.add_assign_scaled(&prod, &-sign(a - d));
    }
    let rhs = v_poset(l, a, 0).w_map().scale(&sign(a));
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn ix(s: &str) -> Index {
        s.parse().unwrap()
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn cycle_rejected() {
        let e = TwoPoset::new(vec![Letter::E1, Letter::E0], &[(0, 1), (1, 0)]);
        assert!(matches!(e, Err(PosetError::Cycle(_))));
    }

    #[test]
    fn xi_poset_words() {
        assert_eq!(xi_poset(&ix("(1)"), 1).unwrap().w_map(), WordSum::word(w("10")));
        assert_eq!(xi_poset(&ix("(1)"), 2).unwrap().w_map(), WordSum::term(w("110"), int(2)));
        let mut expect = WordSum::word(w("1010"));
        expect.add_term(w("1100"), int(2));
        assert_eq!(xi_poset(&ix("(2)"), 2).unwrap().w_map(), expect);
    }

    #[test]
    fn two_point_antichain() {
        let p = TwoPoset::new(vec![Letter::E1, Letter::E1], &[]).unwrap();
        assert_eq!(p.w_map(), WordSum::term(w("11"), int(2)));
        assert!(p.is_semi_admissible() && !p.is_admissible());
    }

    #[test]
    fn json_round_trip() {
        let p = xi_poset(&ix("(2)"), 3).unwrap();
        let q = TwoPoset::from_json(&p.to_json()).unwrap();
        assert_eq!(p, q);
        assert!(TwoPoset::from_json_str(r#"{"labels":[2],"covers":[]}"#).is_err());
    }

    #[test]
    fn transpose_reverses() {
        let p = chain_from_word(&w("110"));
        assert_eq!(p.transpose().w_map(), WordSum::word(w("100")));
        assert!(p.is_admissible());
    }

    #[test]
    fn small_rewrites() {
        for v in [RewriteVariant::Circles, RewriteVariant::Bullets] {
            for param in 0..3 {
                assert!(rewrite_check(&ix("(1)"), &ix("(1)"), param, v).unwrap(), "{v:?} {param}");
                assert!(rewrite_check(&ix("(1)"), &ix("(2)"), param, v).unwrap(), "{v:?} {param}");
            }
        }
    }
}
