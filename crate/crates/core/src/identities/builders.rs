//! Both sides of the connection formulas and their known special cases.

use num_rational::BigRational;
use num_traits::One;

use super::expr::{int, sign, Expr, Term};
use super::{Identity, IdentityError, XuReading};
use crate::index::{binom_weight, compositions, Index};
use crate::numerics::{Arg, ConstTag, Constant, FunFactor, Level};

/// Level-dependent vocabulary: which constants and functions a builder emits.
#[derive(Debug, Clone, Copy)]
struct Vocab(Level);

impl Vocab {
    fn zeta(self, k: Index) -> Constant {
        match self.0 {
            Level::One => Constant::mzv(k),
            Level::Two => Constant::mtv(k),
        }
    }

    /// `ζ(k; s)` resp. `T(k; s)` at the integer `s`.
    fn zeta_s(self, k: Index, s: u32) -> Constant {
        let tag = match self.0 {
            Level::One => ConstTag::EzInt,
            Level::Two => ConstTag::TInt,
        };
        Constant::with_arg(tag, k, s)
    }

    fn xi(self, k: Index, m: u32) -> Constant {
        let tag = match self.0 {
            Level::One => ConstTag::Xi,
            Level::Two => ConstTag::Psi,
        };
        Constant::with_arg(tag, k, m)
    }

    fn fun(self, k: Index) -> FunFactor {
        match self.0 {
            Level::One => FunFactor::li(k, Arg::Z),
            Level::Two => FunFactor::a(k, Arg::Z),
        }
    }

    /// The function at the reflected argument `1 - z` resp. `(1-z)/(1+z)`.
    fn fun_reflected(self, k: Index) -> FunFactor {
        match self.0 {
            Level::One => FunFactor::li(k, Arg::OneMinusZ),
            Level::Two => FunFactor::a(k, Arg::Level2Frac),
        }
    }

    fn suffix(self, name: &str) -> String {
        match self.0 {
            Level::One => name.to_string(),
            Level::Two => format!("{name}-lv2"),
        }
    }
}

fn level_name(level: Level) -> &'static str {
    match level {
        Level::One => "1",
        Level::Two => "2",
    }
}

/// `(b, tail)_+` allowing `b = 0` when the tail is empty.
fn head_plus(b: u32, tail: &Index) -> Index {
    let mut v = vec![b];
    v.extend_from_slice(tail.entries());
    *v.last_mut().expect("non-empty") += 1;
    Index::new(v).expect("entries are positive")
}

/// `({1}^{m-1}, k)`.
fn ones_then(m: u32, k: &Index) -> Index {
    Index::ones(m as usize - 1).concat(k)
}

/// Summands shared by the functional equation and its integrated form.
struct Expansion {
    /// `ζ(k)` when `b_n >= 1`.
    delta: Option<Index>,
    /// `(coefficient, ζ-index, (j+1, k^l)^∨)` from the double sum, sign included.
    double: Vec<(BigRational, Index, Index)>,
    /// `(coefficient, ζ-index, d, (b_l, k^l)^∨ + e_2)` from the triple sum.
    triple: Vec<(BigRational, Index, u32, Index)>,
}

fn expansion(k: &Index) -> Result<Expansion, IdentityError> {
    if k.is_empty() {
        return Err(crate::index::IndexError::EmptyIndex.into());
    }
    let blocks = k.to_blocks();
    let n = blocks.len();
    let delta = (blocks.b(n) >= 1).then(|| k.clone());
    let mut double = Vec::new();
    let mut triple = Vec::new();
    for l in 1..=n {
        let (a_l, b_l) = (blocks.a(l), blocks.b(l));
        let tail = k.tail(l)?;
        let head = k.head(l - 1)?;
        let wt_tail = tail.weight();
        for j in 0..b_l.saturating_sub(1) {
            let mut zi = head.concat(&Index::ones(a_l as usize - 1));
            zi = zi.push(b_l - j);
            let hd = Index::single(j + 1).concat(&tail).hoffman_dual();
            double.push((-sign(j + wt_tail), zi, hd));
        }
        let kappa = head.dual()?;
        let nu = Index::hoffman_dual_with_head(b_l, &tail)?;
        let outer = sign(b_l + wt_tail);
        for d in 0..=a_l {
            for w1 in 0..=(a_l - d) {
                let w2 = a_l - d - w1;
                for e1 in compositions(w1, kappa.depth()) {
                    let c1 = binom_weight(&kappa, &e1)?;
                    let zi = kappa.add(&e1)?;
                    for e2 in compositions(w2, nu.depth()) {
                        let c2 = binom_weight(&nu, &e2)?;
                        let coeff = &outer * sign(w1) * int(c1 * c2);
                        triple.push((coeff, zi.clone(), d, nu.add(&e2)?));
                    }
                }
            }
        }
    }
    Ok(Expansion { delta, double, triple })
}

fn params(pairs: &[(&str, String)]) -> Vec<(String, String)> {
    pairs.iter().map(|(a, b)| (a.to_string(), b.clone())).collect()
}

/// `Li(k; 1-z)` (resp. `A(k; (1-z)/(1+z))`) expanded in functions of `z`.
pub fn thm_main2(level: Level, k: &Index) -> Result<Identity, IdentityError> {
    let v = Vocab(level);
    let ex = expansion(k)?;
    let lhs = Expr::single(Term::new(BigRational::one(), vec![], vec![v.fun_reflected(k.clone())]));
    let mut rhs = Expr::new();
    if let Some(d) = ex.delta {
        rhs.push(Term::new(BigRational::one(), vec![v.zeta(d)], vec![]));
    }
    for (c, zi, hd) in ex.double {
        rhs.push(Term::new(c, vec![v.zeta(zi)], vec![v.fun(hd)]));
    }
    for (c, zi, d, fi) in ex.triple {
        rhs.push(Term::new(c, vec![v.zeta(zi)], vec![v.fun_reflected(Index::ones(d as usize)), v.fun(fi)]));
    }
    Ok(Identity {
        name: v.suffix("thm-main2"),
        params: params(&[("level", level_name(level).into()), ("k", k.to_string())]),
        lhs,
        rhs,
    })
}

/// `ξ(k; m+1)` (resp. `ψ(k; m+1)`) as a combination of zeta values.
pub fn thm_main1(level: Level, k: &Index, m: u32) -> Result<Identity, IdentityError> {
    require_positive("m", m)?;
    let v = Vocab(level);
    let ex = expansion(k)?;
    let s = m + 1;
    let lhs = Expr::single(Term::new(BigRational::one(), vec![v.xi(k.clone(), s)], vec![]));
    let mut rhs = Expr::new();
    if let Some(d) = ex.delta {
        rhs.push(Term::new(BigRational::one(), vec![v.zeta(d), v.zeta_s(Index::empty(), s)], vec![]));
    }
    for (c, zi, hd) in ex.double {
        rhs.push(Term::new(c, vec![v.zeta(zi), v.zeta_s(hd, s)], vec![]));
    }
    for (c, zi, d, fi) in ex.triple {
        rhs.push(
            Term::new(c, vec![v.zeta(zi), v.zeta_s(fi, s + d)], vec![]).with_binom((m + d) as u64, d as u64),
        );
    }
    Ok(Identity {
        name: v.suffix("thm-main1"),
        params: params(&[("level", level_name(level).into()), ("k", k.to_string()), ("m", m.to_string())]),
        lhs,
        rhs,
    })
}

/// The duality-type relation between `ξ(k; m+1)` and its block-reversed partner.
pub fn cor_main(level: Level, k: &Index, m: u32) -> Result<Identity, IdentityError> {
    require_positive("m", m)?;
    if k.is_empty() {
        return Err(crate::index::IndexError::EmptyIndex.into());
    }
    let v = Vocab(level);
    let blocks = k.to_blocks();
    let n = blocks.len();
    let (a1, b1) = (blocks.a(1), blocks.b(1));
    let partner = ones_then(m, &head_plus(b1, &k.tail(1)?).reverse_blocks());
    let mut lhs = Expr::single(Term::new(BigRational::one(), vec![v.xi(k.clone(), m + 1)], vec![]));
    lhs.push(Term::new(-sign(k.weight() - a1), vec![v.xi(partner, a1 + 1)], vec![]));
    let mut rhs = Expr::new();
    if blocks.b(n) >= 1 {
        rhs.push(Term::new(BigRational::one(), vec![v.zeta(k.clone()), v.zeta(Index::single(m + 1))], vec![]));
    }
    for l in 1..=n {
        let (a_l, b_l) = (blocks.a(l), blocks.b(l));
        let tail = k.tail(l)?;
        let head = k.head(l - 1)?;
        for j in 0..b_l.saturating_sub(1) {
            let zi = head.concat(&Index::ones(a_l as usize - 1)).push(b_l - j);
            let other = ones_then(m, &head_plus(j + 2, &tail).reverse_blocks());
            rhs.push(Term::new(-sign(j + tail.weight()), vec![v.zeta(zi), v.zeta(other)], vec![]));
        }
        if l >= 2 {
            let left = head.k_minus()?;
            let right = ones_then(m, &head_plus(b_l, &tail).reverse_blocks());
            for d in 0..=a_l {
                rhs.push(Term::new(
                    sign(b_l + tail.weight() + d),
                    vec![v.xi(left.clone(), d + 1), v.xi(right.clone(), a_l - d + 1)],
                    vec![],
                ));
            }
        }
    }
    Ok(Identity {
        name: v.suffix("cor-main"),
        params: params(&[("level", level_name(level).into()), ("k", k.to_string()), ("m", m.to_string())]),
        lhs,
        rhs,
    })
}

pub fn thm_main2_lv2(k: &Index) -> Result<Identity, IdentityError> {
    thm_main2(Level::Two, k)
}

pub fn thm_main1_lv2(k: &Index, m: u32) -> Result<Identity, IdentityError> {
    thm_main1(Level::Two, k, m)
}

pub fn cor_main_lv2(k: &Index, m: u32) -> Result<Identity, IdentityError> {
    cor_main(Level::Two, k, m)
}

fn require_positive(name: &str, x: u32) -> Result<(), IdentityError> {
    if x == 0 {
        Err(IdentityError::Domain(format!("{name} must be >= 1")))
    } else {
        Ok(())
    }
}

/// `({1}^{a-1}, b+1)`.
fn single_block(a: u32, b: u32) -> Index {
    Index::ones(a as usize - 1).push(b + 1)
}

/// `ξ({1}^{a-1}, b+1; m+1)` through Euler–Zagier values.
pub fn ak_thm8(a: u32, b: u32, m: u32) -> Result<Identity, IdentityError> {
    require_positive("a", a)?;
    require_positive("m", m)?;
    let s = m + 1;
    let k = single_block(a, b);
    let lhs = Expr::single(Term::new(BigRational::one(), vec![Constant::with_arg(ConstTag::Xi, k, s)], vec![]));
    let mut rhs = Expr::new();
    for j in 0..b {
        rhs.push(Term::new(
            sign(j),
            vec![Constant::mzv(single_block(a, b - j)), Constant::with_arg(ConstTag::EzInt, Index::ones(j as usize), s)],
            vec![],
        ));
    }
    for d in 0..=a {
        for e in compositions(a - d, b as usize) {
            let idx = Index::ones(b as usize).add(&e)?;
            rhs.push(
                Term::new(sign(b), vec![Constant::with_arg(ConstTag::EzInt, idx, s + d)], vec![])
                    .with_binom((m + d) as u64, d as u64),
            );
        }
    }
    Ok(Identity {
        name: "ak-thm8".into(),
        params: params(&[("a", a.to_string()), ("b", b.to_string()), ("m", m.to_string())]),
        lhs,
        rhs,
    })
}

/// The duality of `ξ({1}^{a-1}, b+1; m+1)` under `a ↔ m`.
pub fn ak_thm9_2(a: u32, b: u32, m: u32) -> Result<Identity, IdentityError> {
    require_positive("a", a)?;
    require_positive("m", m)?;
    let mut lhs = Expr::single(Term::new(
        BigRational::one(),
        vec![Constant::with_arg(ConstTag::Xi, single_block(a, b), m + 1)],
        vec![],
    ));
    lhs.push(Term::new(-sign(b), vec![Constant::with_arg(ConstTag::Xi, single_block(m, b), a + 1)], vec![]));
    let mut rhs = Expr::new();
    for j in 0..b {
        rhs.push(Term::new(
            sign(j),
            vec![Constant::mzv(single_block(a, b - j)), Constant::mzv(single_block(m, j + 1))],
            vec![],
        ));
    }
    Ok(Identity {
        name: "ak-thm9-2".into(),
        params: params(&[("a", a.to_string()), ("b", b.to_string()), ("m", m.to_string())]),
        lhs,
        rhs,
    })
}

/// `Li(k; 1-z)` for a depth-one index `(k)`, `k >= 2`.
pub fn ak_dep1(k: u32) -> Result<Identity, IdentityError> {
    if k < 2 {
        return Err(IdentityError::Domain("k must be >= 2".into()));
    }
    let lhs = Expr::single(Term::new(BigRational::one(), vec![], vec![FunFactor::li(Index::single(k), Arg::OneMinusZ)]));
    let mut rhs = Expr::new();
    for i in 1..k {
        let idx = Index::ones(i as usize - 1).push(2).concat(&Index::ones((k - 1 - i) as usize));
        rhs.push(Term::new(sign(k - 1), vec![], vec![FunFactor::li(idx, Arg::Z)]));
    }
    for j in 0..=(k - 2) {
        rhs.push(Term::new(
            sign(j),
            vec![Constant::mzv(Index::single(k - j))],
            vec![FunFactor::li(Index::ones(j as usize), Arg::Z)],
        ));
    }
    rhs.push(Term::new(
        -sign(k - 1),
        vec![],
        vec![FunFactor::log(Arg::Z), FunFactor::li(Index::ones(k as usize - 1), Arg::Z)],
    ));
    Ok(Identity { name: "ak-dep1".into(), params: params(&[("k", k.to_string())]), lhs, rhs })
}

/// `Li({1}^{a-1}, b+1; z)` expanded in functions of `1-z`.
pub fn xu_2_8(a: u32, b: u32) -> Result<Identity, IdentityError> {
    require_positive("a", a)?;
    let lhs = Expr::single(Term::new(BigRational::one(), vec![], vec![FunFactor::li(single_block(a, b), Arg::Z)]));
    let mut rhs = Expr::new();
    for j in 0..b {
        rhs.push(Term::new(
            sign(j),
            vec![Constant::mzv(single_block(a, b - j))],
            vec![FunFactor::li(Index::ones(j as usize), Arg::OneMinusZ)],
        ));
    }
    for d in 0..=a {
        for e in compositions(a - d, b as usize) {
            let idx = Index::ones(b as usize).add(&e)?;
            rhs.push(Term::new(
                sign(b),
                vec![],
                vec![FunFactor::li(Index::ones(d as usize), Arg::Z), FunFactor::li(idx, Arg::OneMinusZ)],
            ));
        }
    }
    Ok(Identity { name: "xu-2-8".into(), params: params(&[("a", a.to_string()), ("b", b.to_string())]), lhs, rhs })
}

/// `(k_1, ..., k_{j-1}, k_j - 1)` for `j >= 1`.
fn minus_last(v: &[u32]) -> Index {
    Index::new(v.to_vec()).expect("positive").k_minus().expect("non-empty")
}

fn rev(v: &[u32]) -> Vec<u32> {
    v.iter().rev().copied().collect()
}

/// The duality-type relation for `ξ({1}^{a-1}, k_1, ..., k_r - 1; m+1)` with
/// all `k_i >= 2`, under one of the readings of its sign and factor pattern.
pub fn xu_thm3_3(a: u32, m: u32, ks: &Index, reading: XuReading) -> Result<Identity, IdentityError> {
    require_positive("a", a)?;
    require_positive("m", m)?;
    if ks.is_empty() || ks.entries().iter().any(|&x| x < 2) {
        return Err(IdentityError::Domain("ks must be non-empty with every entry >= 2".into()));
    }
    let k = ks.entries();
    let r = k.len();
    let total = ks.weight();
    // Sum of k_i for i in from..=r (1-based), zero when from > r.
    let tail_sum = |from: usize| -> u32 { k.iter().skip(from.saturating_sub(1)).sum() };
    let ones_a = Index::ones(a as usize - 1);
    let ones_m = Index::ones(m as usize - 1);
    let xi = |idx: Index, s: u32| Constant::with_arg(ConstTag::Xi, idx, s);

    let mut lhs = Expr::single(Term::new(BigRational::one(), vec![xi(ones_a.concat(&minus_last(k)), m + 1)], vec![]));
    let reversed = rev(k);
    lhs.push(Term::new(-sign(total), vec![xi(ones_m.concat(&minus_last(&reversed)), a + 1)], vec![]));

    let mut rhs = Expr::new();
    for j in 0..r {
        let outer = sign(tail_sum(j + 2));
        for i in 1..=k[j].saturating_sub(2) {
            let mut left = rev(&k[j + 1..]);
            left.push(i + 1);
            let mut right = k[..j].to_vec();
            right.push(k[j] - i);
            rhs.push(Term::new(
                &outer * sign(i - 1),
                vec![
                    Constant::mzv(ones_m.concat(&Index::new(left)?)),
                    Constant::mzv(ones_a.concat(&Index::new(right)?)),
                ],
                vec![],
            ));
        }
    }
    for j in 0..r.saturating_sub(1) {
        // 1-based exponent start for the sign of the j-th summand.
        let start = match reading {
            XuReading::AsPrinted => j,
            XuReading::SignFromNext => j + 1,
            XuReading::SignFromSecondNext | XuReading::SwappedSecondProduct => j + 2,
        };
        let s = sign(if start == 0 { total } else { tail_sum(start) });
        let first_zeta = ones_a.concat(&Index::new(k[..=j].to_vec())?);
        let first_xi = ones_m.concat(&minus_last(&rev(&k[j + 1..])));
        rhs.push(Term::new(s.clone(), vec![Constant::mzv(first_zeta), xi(first_xi, 2)], vec![]));
        let (zeta_part, xi_part) = match reading {
            XuReading::SwappedSecondProduct => {
                (ones_m.concat(&Index::new(rev(&k[j + 1..]))?), ones_a.concat(&minus_last(&k[..=j])))
            }
            _ => (ones_a.concat(&Index::new(k[..j].to_vec())?), ones_m.concat(&minus_last(&rev(&k[j..])))),
        };
        rhs.push(Term::new(-s, vec![Constant::mzv(zeta_part), xi(xi_part, 2)], vec![]));
    }
    Ok(Identity {
        name: "xu-thm3-3".into(),
        params: params(&[
            ("a", a.to_string()),
            ("m", m.to_string()),
            ("ks", ks.to_string()),
            ("reading", reading.name().into()),
        ]),
        lhs,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ix(s: &str) -> Index {
        s.parse().unwrap()
    }

    #[test]
    fn k_one_collapses() {
        let id = thm_main2(Level::One, &ix("(1)")).unwrap();
        assert_eq!(id.rhs.canonical(), id.lhs.canonical());
        let id = thm_main1(Level::One, &ix("(1)"), 3).unwrap();
        let rhs = id.rhs.canonical();
        assert_eq!(rhs.terms.len(), 1);
        assert_eq!(rhs.terms[0].scalar(), int(4));
        assert_eq!(rhs.terms[0].consts, vec![Constant::with_arg(ConstTag::EzInt, Index::empty(), 5)]);
    }

    #[test]
    fn k_two_terms() {
        let id = thm_main2(Level::One, &ix("(2)")).unwrap();
        let text = id.rhs.canonical().to_string();
        assert_eq!(text, "-1*Li((1);z)*Li((1);1-z) -1*Li((2);z) +1*MZV(2)");
    }

    #[test]
    fn single_blocks_match_the_depth_one_expansion() {
        for a in 1..=3 {
            for b in 0..=3 {
                let main = thm_main2(Level::One, &single_block(a, b)).unwrap();
                let xu = xu_2_8(a, b).unwrap();
                assert_eq!(main.rhs.canonical(), xu.rhs.reflect().canonical(), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn weights_are_homogeneous() {
        for w in 1..=6 {
            for k in crate::index::all_of_weight(w) {
                for t in thm_main2(Level::One, &k).unwrap().rhs.terms {
                    assert_eq!(t.weight(), w, "{k}: {t}");
                }
            }
        }
    }

    #[test]
    fn xu_domain() {
        assert!(xu_thm3_3(1, 1, &ix("(1,2)"), XuReading::AsPrinted).is_err());
        assert!(ak_dep1(1).is_err());
        assert!(cor_main(Level::One, &Index::empty(), 1).is_err());
    }
}
