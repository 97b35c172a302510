//! Grouped verification runs over ranges of indices and parameters.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::verify::{default_grid, default_tolerance};
use super::{builders, verify, Identity, IdentityError, VerificationReport, VerifyOptions, XuReading};
use crate::index::{admissible_of_weight, all_of_weight, binomial, compositions, Index};
use crate::numerics::checks::{derivative_check, near_one_limit_check, oracle_audit, preflight};
use crate::numerics::elementary::pi;
use crate::numerics::{ConstTag, Constant, Evaluator, Level, RealBall, XiRoute};
use crate::poset::{
    chain_from_index, i_one, i_z, limit_word_identity, quadrature_oracle, rewrite_check, xi_poset, RewriteVariant,
    TwoPoset,
};
use crate::words::{shuffle, Letter, Word};

/// One named pass/fail line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }

    /// Summarizes a batch of verification reports.
    pub fn from_reports(name: impl Into<String>, reports: &[VerificationReport]) -> Self {
        let failed: Vec<String> = reports.iter().filter(|r| !r.pass).map(|r| r.summary()).collect();
        let max_dev = reports.iter().map(|r| r.max_dev).fold(0.0, f64::max);
        let points: usize = reports.iter().map(|r| r.points.len()).sum();
        let mut detail = format!("{} identities, {points} evaluations, max_dev={max_dev:.2e}", reports.len());
        if !failed.is_empty() {
            detail.push_str(&format!("; {} failed, first: {}", failed.len(), failed[0]));
        }
        Check::new(name, failed.is_empty(), detail)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", if self.pass { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteName {
    Level1,
    Level2,
    Combinatorics,
    Posets,
    All,
}

impl SuiteName {
    pub fn name(self) -> &'static str {
        match self {
            SuiteName::Level1 => "level1",
            SuiteName::Level2 => "level2",
            SuiteName::Combinatorics => "combinatorics",
            SuiteName::Posets => "posets",
            SuiteName::All => "all",
        }
    }
}

impl FromStr for SuiteName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        [SuiteName::Level1, SuiteName::Level2, SuiteName::Combinatorics, SuiteName::Posets, SuiteName::All]
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub max_weight: u32,
    pub zs: Vec<BigRational>,
    pub tol_level1: f64,
    pub tol_level2: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_weight: 5,
            zs: default_grid(),
            tol_level1: default_tolerance(Level::One),
            tol_level2: default_tolerance(Level::Two),
        }
    }
}

impl SuiteConfig {
    fn options(&self, level: Level) -> VerifyOptions {
        let tol = match level {
            Level::One => self.tol_level1,
            Level::Two => self.tol_level2,
        };
        VerifyOptions::new(self.zs.clone(), tol)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    /// Set when the pre-flight self-check failed and nothing else ran.
    pub aborted: Option<String>,
    pub checks: Vec<Check>,
    pub reports: Vec<VerificationReport>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.into(), pass: true, aborted: None, checks: Vec::new(), reports: Vec::new() }
    }

    fn absorb(&mut self, other: SuiteReport) {
        if other.aborted.is_some() && self.aborted.is_none() {
            self.aborted = other.aborted;
        }
        self.checks.extend(other.checks);
        self.reports.extend(other.reports);
    }

    fn finish(mut self) -> Self {
        self.pass = self.aborted.is_none() && self.checks.iter().all(|c| c.pass);
        self
    }

    /// The report with timings removed, for reproducibility comparisons.
    pub fn without_timing(&self) -> SuiteReport {
        SuiteReport { reports: self.reports.iter().map(VerificationReport::without_timing).collect(), ..self.clone() }
    }
}

/// Verifies identities concurrently; results keep the input order.
pub fn verify_all(
    ids: Vec<Result<Identity, IdentityError>>,
    ev: &Evaluator,
    opts: &VerifyOptions,
) -> Result<Vec<VerificationReport>, IdentityError> {
    ids.into_par_iter().map(|id| verify(&id?, ev, opts)).collect()
}

fn indices_up_to(max_weight: u32) -> Vec<Index> {
    (1..=max_weight).flat_map(all_of_weight).collect()
}

pub fn thm_main2_reports(
    ev: &Evaluator,
    level: Level,
    max_weight: u32,
    opts: &VerifyOptions,
) -> Result<Vec<VerificationReport>, IdentityError> {
    let ids = indices_up_to(max_weight).iter().map(|k| builders::thm_main2(level, k)).collect();
    verify_all(ids, ev, opts)
}

pub fn thm_main1_reports(
    ev: &Evaluator,
    level: Level,
    max_weight: u32,
    ms: &[u32],
    opts: &VerifyOptions,
) -> Result<Vec<VerificationReport>, IdentityError> {
    let ids = indices_up_to(max_weight)
        .iter()
        .flat_map(|k| ms.iter().map(move |&m| builders::thm_main1(level, k, m)))
        .collect();
    verify_all(ids, ev, opts)
}

pub fn cor_main_reports(
    ev: &Evaluator,
    level: Level,
    max_weight: u32,
    ms: &[u32],
    opts: &VerifyOptions,
) -> Result<Vec<VerificationReport>, IdentityError> {
    let ids = indices_up_to(max_weight)
        .iter()
        .flat_map(|k| ms.iter().map(move |&m| builders::cor_main(level, k, m)))
        .collect();
    verify_all(ids, ev, opts)
}

/// The earlier depth-one and single-block results for `a, b, m <= 3` and the
/// depth-one functional equation for `k <= 5`.
pub fn classical_reports(ev: &Evaluator, opts: &VerifyOptions) -> Result<Vec<VerificationReport>, IdentityError> {
    let mut ids = Vec::new();
    for a in 1..=3 {
        for b in 0..=3 {
            for m in 1..=3 {
                ids.push(builders::ak_thm8(a, b, m));
                ids.push(builders::ak_thm9_2(a, b, m));
            }
        }
    }
    for k in 2..=5 {
        ids.push(builders::ak_dep1(k));
    }
    verify_all(ids, ev, opts)
}

/// The functional equation on single-block indices against the known
/// expansion, compared as canonical term lists after exchanging `z` and `1 - z`.
pub fn single_block_symbolic_check(max: u32) -> Check {
    let mut bad = Vec::new();
    let mut count = 0;
    for a in 1..=max {
        for b in 0..=max {
            count += 1;
            let k = Index::ones(a as usize - 1).push(b + 1);
            let main = builders::thm_main2(Level::One, &k).expect("non-empty");
            let xu = builders::xu_2_8(a, b).expect("a >= 1");
            if main.rhs.canonical() != xu.rhs.reflect().canonical() || main.lhs != xu.lhs.reflect() {
                bad.push(format!("(a,b)=({a},{b})"));
            }
        }
    }
    Check::new(
        "single-block expansion matches symbolically",
        bad.is_empty(),
        if bad.is_empty() { format!("{count} cases identical") } else { format!("differs at {}", bad.join(", ")) },
    )
}

/// The parameter sets used to decide between the readings.
pub fn xu_cases() -> Vec<(u32, u32, Index)> {
    let mut ks: Vec<Vec<u32>> = vec![vec![2], vec![3]];
    for x in 2..=3 {
        for y in 2..=3 {
            ks.push(vec![x, y]);
        }
    }
    let mut out = Vec::new();
    for k in ks {
        for a in 1..=3 {
            for m in 1..=3 {
                out.push((a, m, Index::new(k.clone()).expect("positive")));
            }
        }
    }
    out
}

/// Outcome of trying the readings in order.
#[derive(Debug, Clone, Serialize)]
pub struct Adjudication {
    /// The first reading under which every case passes.
    pub reading: Option<XuReading>,
    pub tried: Vec<(XuReading, bool, String)>,
    pub reports: Vec<VerificationReport>,
}

pub fn adjudicate_xu(ev: &Evaluator, opts: &VerifyOptions) -> Result<Adjudication, IdentityError> {
    let cases = xu_cases();
    let mut tried = Vec::new();
    for reading in XuReading::ALL {
        let ids = cases.iter().map(|(a, m, ks)| builders::xu_thm3_3(*a, *m, ks, reading)).collect();
        let reports = verify_all(ids, ev, opts)?;
        let check = Check::from_reports(reading.name(), &reports);
        tried.push((reading, check.pass, check.detail));
        if check.pass {
            return Ok(Adjudication { reading: Some(reading), tried, reports });
        }
    }
    Ok(Adjudication { reading: None, tried, reports: Vec::new() })
}

fn cases_detail(count: usize, failures: &[String]) -> String {
    if failures.is_empty() {
        format!("{count} cases")
    } else {
        format!("{count} cases; failing: {}", failures.join(", "))
    }
}

fn close(a: &RealBall, b: &RealBall, tol: f64) -> (bool, f64) {
    let d = a.sub_ball(b);
    let dev = d.abs_upper().to_f64();
    (dev <= tol, dev)
}

/// `|ζ(k) - ζ(k†)|` (resp. `T`) for admissible `k` of weight `2..=max_weight`.
pub fn duality_check(ev: &Evaluator, level: Level, max_weight: u32, tol: f64) -> Check {
    let ks: Vec<Index> = (2..=max_weight).flat_map(admissible_of_weight).collect();
    let make = |k: Index| match level {
        Level::One => Constant::mzv(k),
        Level::Two => Constant::mtv(k),
    };
    let results: Vec<Result<f64, String>> = ks
        .par_iter()
        .map(|k| {
            let a = ev.constant(&make(k.clone())).map_err(|e| e.to_string())?;
            let b = ev.constant(&make(k.dual().expect("admissible"))).map_err(|e| e.to_string())?;
            Ok(a.sub_ball(&b).abs_upper().to_f64())
        })
        .collect();
    let mut worst: f64 = 0.0;
    let mut errors = Vec::new();
    for (k, r) in ks.iter().zip(results) {
        match r {
            Ok(d) => worst = worst.max(d),
            Err(e) => errors.push(format!("{k}: {e}")),
        }
    }
    let name = match level {
        Level::One => format!("zeta duality up to weight {max_weight}"),
        Level::Two => format!("T duality up to weight {max_weight}"),
    };
    let pass = errors.is_empty() && worst <= tol;
    let mut detail = format!("{} indices, max |difference| <= {worst:.2e}, tol {tol:.0e}", ks.len());
    if !errors.is_empty() {
        detail.push_str(&format!("; errors: {}", errors.join("; ")));
    }
    Check::new(name, pass, detail)
}

/// `ξ((1); m+1) = (m+1) ζ(m+2)`, `ξ((2); 2) = π⁴/72` and `2 ξ((2); 2) = ζ(2)²`.
pub fn xi_closed_form_checks(ev: &Evaluator, tol: f64) -> Vec<Check> {
    let mut out = Vec::new();
    let wp = ev.working_prec();
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for m in 1..=5u32 {
        let xi = ev.constant(&Constant::with_arg(ConstTag::Xi, Index::single(1), m + 1));
        let z = ev.constant(&Constant::mzv(Index::single(m + 2)));
        match (xi, z) {
            (Ok(x), Ok(z)) => {
                let (p, d) = close(&x, &z.mul_i64((m + 1) as i64), tol);
                ok &= p;
                worst = worst.max(d);
            }
            _ => ok = false,
        }
    }
    out.push(Check::new("xi((1);m+1) = (m+1) zeta(m+2), m <= 5", ok, format!("max deviation {worst:.2e}")));
    let xi2 = ev.constant(&Constant::with_arg(ConstTag::Xi, Index::single(2), 2));
    let p = pi(wp + 16);
    let target = p.sqr().sqr().div_u64(72);
    match &xi2 {
        Ok(x) => {
            let (pass, d) = close(x, &target, tol);
            out.push(Check::new("xi((2);2) = pi^4/72", pass, format!("deviation {d:.2e}")));
        }
        Err(e) => out.push(Check::new("xi((2);2) = pi^4/72", false, e.to_string())),
    }
    let z2 = ev.constant(&Constant::mzv(Index::single(2)));
    match (&xi2, z2) {
        (Ok(x), Ok(z)) => {
            let (pass, d) = close(&x.mul_i64(2), &z.sqr(), tol);
            out.push(Check::new("2 xi((2);2) = zeta(2)^2", pass, format!("deviation {d:.2e}")));
        }
        _ => out.push(Check::new("2 xi((2);2) = zeta(2)^2", false, "evaluation failed")),
    }
    out
}

/// `2 ψ((2); 2)` against `(π²/c)²`, with `c = 4` for the value consistent
/// with `T(2) = π²/4`.
pub fn psi_closed_form_check(ev: &Evaluator, c: u64, tol: f64) -> Check {
    let name = format!("2 psi((2);2) = (pi^2/{c})^2");
    let psi = match ev.constant(&Constant::with_arg(ConstTag::Psi, Index::single(2), 2)) {
        Ok(b) => b,
        Err(e) => return Check::new(name, false, e.to_string()),
    };
    let p = pi(ev.working_prec() + 16);
    let target = p.sqr().div_u64(c).sqr();
    let (pass, d) = close(&psi.mul_i64(2), &target, tol);
    Check::new(name, pass, format!("2 psi = {:.15}, target {:.15}, deviation {d:.2e}", 2.0 * psi.to_f64(), target.to_f64()))
}

/// Finite-difference checks of the differential relations, weight <= 4.
pub fn derivative_checks(level: Level, prec: u32, tol: f64) -> Check {
    let zs: Vec<BigRational> = [3, 5, 7].iter().map(|&n| BigRational::new(n.into(), 10.into())).collect();
    let cases: Vec<(Index, BigRational)> =
        indices_up_to(4).into_iter().flat_map(|k| zs.iter().map(move |z| (k.clone(), z.clone()))).collect();
    let results: Vec<Result<bool, String>> = cases
        .par_iter()
        .map(|(k, z)| derivative_check(level, k, z, prec, tol).map(|r| r.pass).map_err(|e| e.to_string()))
        .collect();
    let failed: Vec<String> = cases
        .iter()
        .zip(&results)
        .filter(|(_, r)| !matches!(r, Ok(true)))
        .map(|((k, z), r)| format!("{k} at {z}: {r:?}"))
        .collect();
    let name = match level {
        Level::One => "Li derivative relations",
        Level::Two => "A derivative relations",
    };
    Check::new(name, failed.is_empty(), cases_detail(cases.len(), &failed))
}

/// The limit of `Li(l, {1}^a; z)` at `z = 1` for `l ∈ {(2), (3), (1,2)}`, `a <= 3`.
pub fn limit_checks(ev: &Evaluator, tol: f64) -> Check {
    let mut failed = Vec::new();
    let mut count = 0;
    for l in ["(2)", "(3)", "(1,2)"] {
        let l: Index = l.parse().expect("valid");
        for a in 1..=3 {
            count += 1;
            match near_one_limit_check(ev, &l, a, tol) {
                Ok(r) if r.pass => {}
                Ok(r) => failed.push(format!("{l} a={a}: {:?}", r.deviations)),
                Err(e) => failed.push(format!("{l} a={a}: {e}")),
            }
        }
    }
    Check::new("limits at z = 1", failed.is_empty(), cases_detail(count, &failed))
}

pub fn combinatorics_checks(max_weight: u32) -> Vec<Check> {
    let all: Vec<Index> = indices_up_to(max_weight);
    let mut dual_bad = 0;
    let mut adm = 0;
    let mut hoff_bad = 0;
    let mut relation_bad = 0;
    for k in &all {
        if k.is_admissible() {
            adm += 1;
            let d = k.dual().expect("admissible");
            if d.dual().ok().as_ref() != Some(k) || d.weight() != k.weight() {
                dual_bad += 1;
            }
        }
        let h = k.hoffman_dual();
        if h.hoffman_dual() != *k || h.weight() != k.weight() {
            hoff_bad += 1;
        }
        let other = k.k_plus().and_then(|p| p.dual()).and_then(|d| d.k_minus()).map(|x| x.reverse_blocks());
        if other.as_ref() != Ok(&h) {
            relation_bad += 1;
        }
    }
    let mut comp_bad = Vec::new();
    for w in 0..=8u32 {
        for d in 1..=6usize {
            let expect = binomial((w as usize + d - 1) as u64, (d - 1) as u64);
            if compositions(w, d).len() as u128 != expect {
                comp_bad.push(format!("({w},{d})"));
            }
        }
    }
    let words: Vec<Word> = (0..=4usize)
        .flat_map(|n| {
            (0..1u32 << n).map(move |bits| {
                Word((0..n).map(|i| if bits >> i & 1 == 1 { Letter::E1 } else { Letter::E0 }).collect())
            })
        })
        .collect();
    let mut shuffle_bad = 0;
    for u in &words {
        for v in &words {
            if u.len() + v.len() <= 6 && shuffle(u, v) != shuffle(v, u) {
                shuffle_bad += 1;
            }
        }
    }
    vec![
        Check::new(
            format!("dual is a weight-preserving involution (weight <= {max_weight})"),
            dual_bad == 0,
            format!("{adm} admissible indices, {dual_bad} failures"),
        ),
        Check::new(
            format!("Hoffman dual is a weight-preserving involution (weight <= {max_weight})"),
            hoff_bad == 0,
            format!("{} indices, {hoff_bad} failures", all.len()),
        ),
        Check::new(
            "Hoffman dual = reverse((dual(k_+))_-)",
            relation_bad == 0,
            format!("{} indices, {relation_bad} failures", all.len()),
        ),
        Check::new(
            "composition counts C(w+d-1, d-1) for w <= 8, d <= 6",
            comp_bad.is_empty(),
            if comp_bad.is_empty() { "54 cases".to_string() } else { comp_bad.join(", ") },
        ),
        Check::new("shuffle is commutative", shuffle_bad == 0, format!("{} word pairs", words.len() * words.len())),
    ]
}

/// A random 2-poset on `n` elements: each pair is related with probability `p`.
pub fn random_poset(rng: &mut impl Rng, n: usize, p: f64) -> TwoPoset {
    let labels: Vec<Letter> = (0..n).map(|_| if rng.random_bool(0.5) { Letter::E1 } else { Letter::E0 }).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                rel.push((perm[i], perm[j]));
            }
        }
    }
    TwoPoset::new(labels, &rel).expect("relations follow a total order")
}

/// `count` random posets with at most `max_len` elements, from a fixed seed.
pub fn random_posets(seed: u64, count: usize, max_len: usize) -> Vec<TwoPoset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(1..=max_len);
            let p = rng.random_range(0.1..0.6);
            random_poset(&mut rng, n, p)
        })
        .collect()
}

/// Exact word-level checks of the 2-poset machinery.
pub fn poset_word_checks() -> Vec<Check> {
    let randoms = random_posets(0x5eed, 200, 8);
    let ext_bad = randoms.iter().filter(|p| p.w_map() != p.w_map_by_extensions()).count();
    let mut pool: Vec<TwoPoset> = randoms.clone();
    for w in 1..=4 {
        for k in all_of_weight(w) {
            pool.push(chain_from_index(&k));
            for m in 1..=3 {
                pool.push(xi_poset(&k, m).expect("non-empty"));
            }
        }
    }
    let admissible: Vec<&TwoPoset> = pool.iter().filter(|p| p.is_admissible() && !p.is_empty()).collect();
    let transpose_bad = admissible
        .iter()
        .filter(|p| {
            let mut dual = crate::words::WordSum::zero();
            for (w, c) in p.w_map().iter() {
                dual.add_term(w.dual().expect("admissible words"), c.clone());
            }
            dual != p.transpose().w_map()
        })
        .count();
    let small: Vec<&TwoPoset> = randoms.iter().filter(|p| p.len() <= 4).take(30).collect();
    let mut hom_bad = 0;
    let mut hom_count = 0;
    for x in &small {
        for y in small.iter().take(10) {
            hom_count += 1;
            let u = x.disjoint_union(y).expect("small");
            if u.w_map() != x.w_map().shuffle(&y.w_map()) {
                hom_bad += 1;
            }
        }
    }
    let mut rewrite_bad = Vec::new();
    let mut rewrite_count = 0;
    let ks: Vec<Index> = indices_up_to(3);
    for k in &ks {
        for l in &ks {
            for param in 0..=2 {
                for variant in [RewriteVariant::Circles, RewriteVariant::Bullets] {
                    rewrite_count += 1;
                    if !rewrite_check(k, l, param, variant).unwrap_or(false) {
                        rewrite_bad.push(format!("{variant:?} k={k} l={l} p={param}"));
                    }
                }
            }
        }
    }
    let mut limit_bad = Vec::new();
    for l in ["(2)", "(3)", "(1,2)"] {
        let l: Index = l.parse().expect("valid");
        for a in 0..=3 {
            match limit_word_identity(&l, a) {
                Ok((lhs, rhs)) if lhs == rhs => {}
                _ => limit_bad.push(format!("{l} a={a}")),
            }
        }
    }
    vec![
        Check::new(
            "word map recursion = linear extension sum",
            ext_bad == 0,
            format!("{} random posets with <= 8 elements, {ext_bad} mismatches", randoms.len()),
        ),
        Check::new(
            "transpose corresponds to word duality",
            transpose_bad == 0,
            format!("{} admissible posets, {transpose_bad} mismatches", admissible.len()),
        ),
        Check::new(
            "disjoint union maps to the shuffle product",
            hom_bad == 0,
            format!("{hom_count} pairs, {hom_bad} mismatches"),
        ),
        Check::new(
            "rewriting identities for chains joined at the top",
            rewrite_bad.is_empty(),
            cases_detail(rewrite_count, &rewrite_bad),
        ),
        Check::new("limit word identity", limit_bad.is_empty(), cases_detail(12, &limit_bad)),
    ]
}

/// Numerical checks of the poset integrals.
pub fn poset_numeric_checks(ev: &Evaluator) -> Vec<Check> {
    let mut xi_bad = Vec::new();
    let mut xi_count = 0;
    for k in indices_up_to(4) {
        for m in 1..=3 {
            xi_count += 1;
            let x = xi_poset(&k, m).expect("non-empty");
            let a = i_one(&x, ev);
            let b = ev.constant(&Constant::with_arg(ConstTag::Xi, k.clone(), m));
            match (a, b) {
                (Ok(a), Ok(b)) if a.overlaps(&b) => {}
                (a, b) => xi_bad.push(format!("{k} m={m}: {a:?} vs {b:?}")),
            }
        }
    }
    let mut test_set: Vec<TwoPoset> = indices_up_to(4).iter().map(chain_from_index).collect();
    test_set.push(xi_poset(&Index::single(1), 2).expect("non-empty"));
    test_set.push(TwoPoset::new(vec![Letter::E1, Letter::E1], &[]).expect("antichain"));
    test_set.extend(random_posets(0xa11, 60, 4).into_iter().filter(|p| p.is_semi_admissible()).take(20));
    let zs: Vec<BigRational> = [3, 5, 7].iter().map(|&n| BigRational::new(n.into(), 10.into())).collect();
    let pairs: Vec<(&TwoPoset, &BigRational)> = test_set.iter().flat_map(|p| zs.iter().map(move |z| (p, z))).collect();
    let quad_bad: Vec<String> = pairs
        .par_iter()
        .filter_map(|(p, z)| {
            let zf = num_traits::ToPrimitive::to_f64(*z).expect("finite");
            let ball = i_z(p, z, ev).ok()?;
            match quadrature_oracle(p, zf, 1e-9) {
                Ok(q) if (ball.to_f64() - q.value).abs() <= q.error + ball.rad().to_f64() + 1e-12 => None,
                other => Some(format!("{:?} at {z}: ball {} vs {other:?}", p.to_json(), ball.to_f64())),
            }
        })
        .collect();
    let expansion = Evaluator::new(ev.prec());
    let via_poset = Evaluator::new(ev.prec()).with_xi_route(XiRoute::Poset);
    let mut route_bad = Vec::new();
    let mut route_count = 0;
    for k in ["(2)", "(1,2)", "(2,1)", "(1,1,2)"] {
        let k: Index = k.parse().expect("valid");
        for m in 1..=2 {
            route_count += 1;
            let id = builders::cor_main(Level::One, &k, m).expect("non-empty");
            let diff = |e: &Evaluator| -> Option<RealBall> {
                Some(id.lhs.evaluate(e, None).ok()?.sub_ball(&id.rhs.evaluate(e, None).ok()?))
            };
            match (diff(&expansion), diff(&via_poset)) {
                (Some(a), Some(b)) if a.overlaps(&b) => {}
                (a, b) => route_bad.push(format!("{k} m={m}: {a:?} vs {b:?}")),
            }
        }
    }
    vec![
        Check::new(
            "zeta of the xi poset word = xi value",
            xi_bad.is_empty(),
            cases_detail(xi_count, &xi_bad),
        ),
        Check::new(
            "poset integrals agree with quadrature",
            quad_bad.is_empty(),
            cases_detail(pairs.len(), &quad_bad),
        ),
        Check::new(
            "duality relation agrees across the two xi routes",
            route_bad.is_empty(),
            cases_detail(route_count, &route_bad),
        ),
    ]
}

fn identity_checks(report: &mut SuiteReport, name: &str, reports: Result<Vec<VerificationReport>, IdentityError>) {
    match reports {
        Ok(r) => {
            report.checks.push(Check::from_reports(name, &r));
            report.reports.extend(r);
        }
        Err(e) => report.checks.push(Check::new(name, false, e.to_string())),
    }
}

fn run_preflight(report: &mut SuiteReport, ev: &Evaluator, level_two: bool) -> bool {
    match preflight(ev, 5, level_two) {
        Ok(()) => {
            report.checks.push(Check::new("pre-flight against the summation oracle", true, "weight <= 5"));
            true
        }
        Err(e) => {
            report.aborted = Some(e.to_string());
            report.checks.push(Check::new("pre-flight against the summation oracle", false, e.to_string()));
            false
        }
    }
}

fn audit(report: &mut SuiteReport, ev: &Evaluator) {
    let a = oracle_audit(ev);
    let detail = if a.pass() {
        format!("{} values inside their oracle intervals", a.checked)
    } else {
        format!("{} of {} outside: {}", a.failures.len(), a.checked, a.failures.join("; "))
    };
    report.checks.push(Check::new("evaluations enclosed by the summation oracle", a.pass(), detail));
}

fn level1(ev: &Evaluator, cfg: &SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new("level1");
    if !run_preflight(&mut r, ev, false) {
        return r;
    }
    let opts = cfg.options(Level::One);
    let w = cfg.max_weight;
    identity_checks(&mut r, "Li(k;1-z) expansion", thm_main2_reports(ev, Level::One, w, &opts));
    identity_checks(&mut r, "xi(k;m+1) expansion, m <= 3", thm_main1_reports(ev, Level::One, w, &[1, 2, 3], &opts));
    identity_checks(&mut r, "xi duality relation, m <= 2", cor_main_reports(ev, Level::One, w, &[1, 2], &opts));
    identity_checks(&mut r, "single-block and depth-one special cases", classical_reports(ev, &opts));
    r.checks.push(single_block_symbolic_check(3));
    match adjudicate_xu(ev, &opts) {
        Ok(adj) => {
            let tried: Vec<String> = adj.tried.iter().map(|(x, p, _)| format!("{x}={}", if *p { "pass" } else { "fail" })).collect();
            let detail = match adj.reading {
                Some(x) => format!("passing reading: {x} (tried {})", tried.join(", ")),
                None => format!("no reading passes (tried {})", tried.join(", ")),
            };
            r.checks.push(Check::new("multi-block duality of an earlier form", adj.reading.is_some(), detail));
            r.reports.extend(adj.reports);
        }
        Err(e) => r.checks.push(Check::new("multi-block duality of an earlier form", false, e.to_string())),
    }
    r.checks.push(duality_check(ev, Level::One, w.max(2), 1e-25));
    r.checks.extend(xi_closed_form_checks(ev, 1e-25));
    r.checks.push(derivative_checks(Level::One, 256, 1e-15));
    r.checks.push(limit_checks(ev, 1e-3));
    audit(&mut r, ev);
    r
}

fn level2(ev: &Evaluator, cfg: &SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new("level2");
    if !run_preflight(&mut r, ev, true) {
        return r;
    }
    let opts = cfg.options(Level::Two);
    let w = cfg.max_weight;
    identity_checks(&mut r, "A(k;(1-z)/(1+z)) expansion", thm_main2_reports(ev, Level::Two, w, &opts));
    identity_checks(&mut r, "psi(k;m+1) expansion, m <= 2", thm_main1_reports(ev, Level::Two, w, &[1, 2], &opts));
    identity_checks(&mut r, "psi duality relation, m <= 2", cor_main_reports(ev, Level::Two, w, &[1, 2], &opts));
    r.checks.push(duality_check(ev, Level::Two, w.max(2), cfg.tol_level2));
    r.checks.push(psi_closed_form_check(ev, 4, cfg.tol_level2));
    r.checks.push(derivative_checks(Level::Two, 256, 1e-15));
    audit(&mut r, ev);
    r
}

fn posets(ev: &Evaluator) -> SuiteReport {
    let mut r = SuiteReport::new("posets");
    r.checks.extend(poset_word_checks());
    r.checks.extend(poset_numeric_checks(ev));
    r
}

/// Runs a suite; `max_weight` bounds the indices enumerated.
pub fn run_suite(name: SuiteName, ev: &Evaluator, cfg: &SuiteConfig) -> SuiteReport {
    let r = match name {
        SuiteName::Level1 => level1(ev, cfg),
        SuiteName::Level2 => level2(ev, cfg),
        SuiteName::Combinatorics => {
            let mut r = SuiteReport::new("combinatorics");
            r.checks = combinatorics_checks(cfg.max_weight);
            r
        }
        SuiteName::Posets => posets(ev),
        SuiteName::All => {
            let mut all = SuiteReport::new("all");
            let mut c = SuiteReport::new("combinatorics");
            c.checks = combinatorics_checks(cfg.max_weight);
            all.absorb(c);
            all.absorb(posets(ev));
            all.absorb(level1(ev, cfg));
            all.absorb(level2(ev, cfg));
            all
        }
    };
    r.finish()
}
