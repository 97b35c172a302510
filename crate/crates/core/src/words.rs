//! Words in the letters `e0`, `e1` and their formal linear combinations with
//! rational coefficients under the shuffle product.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::index::Index;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("word {0} does not lie in the required subspace")]
    NotInSubspace(Word),
    #[error("cannot parse word: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    E0,
    E1,
}

impl Letter {
    pub fn swap(self) -> Letter {
        match self {
            Letter::E0 => Letter::E1,
            Letter::E1 => Letter::E0,
        }
    }

    pub fn digit(self) -> char {
        match self {
            Letter::E0 => '0',
            Letter::E1 => '1',
        }
    }
}

/// A word, written as a digit string (`"110"` is `e1 e1 e0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn repeat(letter: Letter, n: usize) -> Word {
        Word(vec![letter; n])
    }

    /// Empty or starting with `e1`.
    pub fn in_h1(&self) -> bool {
        self.0.first().is_none_or(|&l| l == Letter::E1)
    }

    /// Empty, or starting with `e1` and ending with `e0`.
    pub fn in_h0(&self) -> bool {
        self.is_empty() || (self.0[0] == Letter::E1 && *self.0.last().unwrap() == Letter::E0)
    }

    /// Reverse and exchange `e0` and `e1`.
    pub fn dual(&self) -> Result<Word, WordError> {
        if !self.in_h0() {
            return Err(WordError::NotInSubspace(self.clone()));
        }
        Ok(Word(self.0.iter().rev().map(|l| l.swap()).collect()))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.digit())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, WordError> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(Letter::E0),
                '1' => Ok(Letter::E1),
                _ => Err(WordError::Parse(format!("{s:?}: unexpected character {c:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

/// `k ↦ e1 e0^{k_1-1} ... e1 e0^{k_r-1}`.
pub fn index_to_word(k: &Index) -> Word {
    let mut v = Vec::with_capacity(k.weight() as usize);
    for &ki in k.entries() {
        v.push(Letter::E1);
        v.extend(std::iter::repeat_n(Letter::E0, (ki - 1) as usize));
    }
    Word(v)
}

/// Inverse of [`index_to_word`] on words that are empty or start with `e1`.
pub fn word_to_index(w: &Word) -> Result<Index, WordError> {
    if !w.in_h1() {
        return Err(WordError::NotInSubspace(w.clone()));
    }
    let mut v: Vec<u32> = Vec::new();
    for &l in &w.0 {
        match l {
            Letter::E1 => v.push(1),
            Letter::E0 => *v.last_mut().unwrap() += 1,
        }
    }
    Ok(Index::new(v).expect("entries are positive"))
}

/// A finite rational linear combination of words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WordSum(BTreeMap<Word, BigRational>);

impl WordSum {
    pub fn zero() -> Self {
        WordSum(BTreeMap::new())
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, BigRational::one())
    }

    pub fn term(w: Word, c: BigRational) -> Self {
        let mut s = Self::zero();
        s.add_term(w, c);
        s
    }

    pub fn add_term(&mut self, w: Word, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(w.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&w);
        }
    }

    pub fn add_assign_scaled(&mut self, other: &WordSum, c: &BigRational) {
        for (w, x) in &other.0 {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn add(&self, other: &WordSum) -> WordSum {
        let mut s = self.clone();
        s.add_assign_scaled(other, &BigRational::one());
        s
    }

    pub fn sub(&self, other: &WordSum) -> WordSum {
        let mut s = self.clone();
        s.add_assign_scaled(other, &-BigRational::one());
        s
    }

    pub fn scale(&self, c: &BigRational) -> WordSum {
        let mut s = WordSum::zero();
        s.add_assign_scaled(self, c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.0.iter()
    }

    pub fn coeff(&self, w: &Word) -> BigRational {
        self.0.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> BigRational {
        self.0.values().fold(BigRational::zero(), |acc, c| acc + c.abs())
    }

    pub fn shuffle(&self, other: &WordSum) -> WordSum {
        let mut out = WordSum::zero();
        for (u, a) in &self.0 {
            for (v, b) in &other.0 {
                out.add_assign_scaled(&shuffle(u, v), &(a * b));
            }
        }
        out
    }

    /// JSON object mapping word text to `"p/q"` coefficient strings.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .0
            .iter()
            .map(|(w, c)| (w.to_string(), serde_json::Value::String(rational_text(c))))
            .collect();
        serde_json::Value::Object(map)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<WordSum, WordError> {
        let obj = v.as_object().ok_or_else(|| WordError::Parse("expected a JSON object".into()))?;
        let mut s = WordSum::zero();
        for (k, c) in obj {
            let w: Word = k.parse()?;
            let text = c
                .as_str()
                .map(str::to_owned)
                .or_else(|| c.as_i64().map(|i| i.to_string()))
                .ok_or_else(|| WordError::Parse(format!("bad coefficient for {k}")))?;
            s.add_term(w, parse_rational(&text).map_err(WordError::Parse)?);
        }
        Ok(s)
    }
}

impl fmt::Display for WordSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", c, if w.is_empty() { "1".to_string() } else { w.to_string() })?;
        }
        Ok(())
    }
}

/// `p/q` text for a rational (denominator always written).
pub fn rational_text(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.35`.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let t = s.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|e| format!("{t:?}: {e}"))?;
        let q: BigInt = q.trim().parse().map_err(|e| format!("{t:?}: {e}"))?;
        if q.is_zero() {
            return Err(format!("{t:?}: zero denominator"));
        }
        return Ok(BigRational::new(p, q));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("{t:?}: empty number"));
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(format!("{t:?}: not a decimal number"));
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().unwrap() };
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = BigRational::new(num, den);
    Ok(if neg { -r } else { r })
}

/// The shuffle product of two words.
pub fn shuffle(u: &Word, v: &Word) -> WordSum {
    let (a, b) = (&u.0, &v.0);
    let mut memo: HashMap<(usize, usize), BTreeMap<Vec<Letter>, BigInt>> = HashMap::new();
    let table = shuffle_suffix(a, b, 0, 0, &mut memo);
    let mut out = WordSum::zero();
    for (w, c) in table {
        out.add_term(Word(w), BigRational::from_integer(c));
    }
    out
}

fn shuffle_suffix(
    a: &[Letter],
    b: &[Letter],
    i: usize,
    j: usize,
    memo: &mut HashMap<(usize, usize), BTreeMap<Vec<Letter>, BigInt>>,
) -> BTreeMap<Vec<Letter>, BigInt> {
    if let Some(t) = memo.get(&(i, j)) {
        return t.clone();
    }
    let mut out: BTreeMap<Vec<Letter>, BigInt> = BTreeMap::new();
    if i == a.len() || j == b.len() {
        let rest = if i == a.len() { &b[j..] } else { &a[i..] };
        out.insert(rest.to_vec(), BigInt::one());
    } else {
        for (first, sub) in [
            (a[i], shuffle_suffix(a, b, i + 1, j, memo)),
            (b[j], shuffle_suffix(a, b, i, j + 1, memo)),
        ] {
            for (w, c) in sub {
                let mut nw = Vec::with_capacity(w.len() + 1);
                nw.push(first);
                nw.extend_from_slice(&w);
                *out.entry(nw).or_insert_with(BigInt::zero) += c;
            }
        }
    }
    memo.insert((i, j), out.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn shuffle_small() {
        let s = shuffle(&w("10"), &w("1"));
        assert_eq!(s.coeff(&w("110")), r(2));
        assert_eq!(s.coeff(&w("101")), r(1));
        assert_eq!(s.len(), 2);
        let t = shuffle(&w("1"), &w("1"));
        assert_eq!(t, WordSum::term(w("11"), r(2)));
        assert_eq!(shuffle(&w(""), &w("10")), WordSum::word(w("10")));
    }

    #[test]
    fn dual_and_subspaces() {
        assert_eq!(w("110").dual().unwrap(), w("100"));
        assert!(w("11").dual().is_err());
        assert!(w("").dual().unwrap().is_empty());
        assert!(w("10").in_h0() && w("11").in_h1() && !w("01").in_h1());
    }

    #[test]
    fn index_word_round_trip() {
        let k: Index = "(2,1,3)".parse().unwrap();
        assert_eq!(index_to_word(&k), w("101100"));
        assert_eq!(word_to_index(&w("101100")).unwrap(), k);
        assert!(word_to_index(&w("01")).is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut s = WordSum::term(w("110"), r(2));
        s.add_term(w("1010"), BigRational::new(3.into(), 4.into()));
        let j = s.to_json();
        assert_eq!(j["110"], "2/1");
        assert_eq!(WordSum::from_json(&j).unwrap(), s);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("0.35").unwrap(), BigRational::new(7.into(), 20.into()));
        assert_eq!(parse_rational("-3/6").unwrap(), BigRational::new((-1).into(), 2.into()));
        assert_eq!(parse_rational("2").unwrap(), r(2));
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
