//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use akzeta::identities::suites::*;
use akzeta::identities::VerifyOptions;
use akzeta::numerics::checks::{oracle_audit, preflight};
use akzeta::numerics::{Evaluator, Level};

struct Criterion {
    number: u32,
    title: &'static str,
    checks: Vec<Check>,
    elapsed: Duration,
    budget: Option<Duration>,
}

impl Criterion {
    fn pass(&self) -> bool {
        !self.checks.is_empty()
            && self.checks.iter().all(|c| c.pass)
            && self.budget.is_none_or(|b| self.elapsed <= b)
    }

    fn print(&self) {
        let verdict = if self.pass() { "PASS" } else { "FAIL" };
        let budget = match self.budget {
            Some(b) => format!(", budget {} s", b.as_secs()),
            None => String::new(),
        };
        println!(
            "[{verdict}] criterion {}: {} ({:.1} s{budget})",
            self.number,
            self.title,
            self.elapsed.as_secs_f64()
        );
        for c in &self.checks {
            println!("    {c}");
        }
    }
}

fn timed(
    number: u32,
    title: &'static str,
    budget: Option<u64>,
    f: impl FnOnce() -> Vec<Check>,
) -> Criterion {
    let start = Instant::now();
    let checks = f();
    Criterion { number, title, checks, elapsed: start.elapsed(), budget: budget.map(Duration::from_secs) }
}

fn reports(name: &str, r: Result<Vec<akzeta::identities::VerificationReport>, akzeta::identities::IdentityError>) -> Check {
    match r {
        Ok(r) => Check::from_reports(name, &r),
        Err(e) => Check::new(name, false, e.to_string()),
    }
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let ev = Evaluator::new(128);
    let l1 = VerifyOptions::for_level(Level::One);
    let l2 = VerifyOptions::for_level(Level::Two);
    let mut out = Vec::new();

    let pre_start = Instant::now();
    let pre = preflight(&ev, 5, true);
    let pre_elapsed = pre_start.elapsed();
    let pre_check = match &pre {
        Ok(()) => Check::new("pre-flight: split evaluation inside the summation oracle, weight <= 5", true, "both levels"),
        Err(e) => Check::new("pre-flight: split evaluation inside the summation oracle, weight <= 5", false, e.to_string()),
    };

    out.push(timed(1, "combinatorial exactness to weight 10", Some(5), || combinatorics_checks(10)));

    if pre.is_ok() {
        out.push(timed(2, "duality numerics", Some(60), || {
            vec![duality_check(&ev, Level::One, 7, 1e-25), duality_check(&ev, Level::Two, 6, 1e-10)]
        }));
        out.push(timed(3, "xi closed forms", None, || xi_closed_form_checks(&ev, 1e-25).into_iter().take(2).collect()));
        out.push(timed(4, "Li(k;1-z) expansion, weight <= 5, five sample points", Some(600), || {
            vec![reports("Li(k;1-z) expansion", thm_main2_reports(&ev, Level::One, 5, &l1))]
        }));
        out.push(timed(5, "xi(k;m+1) expansion, weight <= 5, m <= 3", None, || {
            vec![reports("xi(k;m+1) expansion", thm_main1_reports(&ev, Level::One, 5, &[1, 2, 3], &l1))]
        }));
        out.push(timed(6, "xi duality relation, weight <= 5, m <= 2", None, || {
            let mut v = vec![reports("xi duality relation", cor_main_reports(&ev, Level::One, 5, &[1, 2], &l1))];
            v.extend(xi_closed_form_checks(&ev, 1e-25).into_iter().skip(2));
            v
        }));
        out.push(timed(7, "earlier special cases", None, || {
            let mut v = vec![reports("single-block and depth-one results", classical_reports(&ev, &l1))];
            v.push(single_block_symbolic_check(3));
            v.push(match adjudicate_xu(&ev, &l1) {
                Ok(adj) => {
                    let tried: Vec<String> =
                        adj.tried.iter().map(|(r, p, _)| format!("{r}={}", if *p { "pass" } else { "fail" })).collect();
                    let detail = format!(
                        "recorded reading: {} (tried {})",
                        adj.reading.map(|r| r.to_string()).unwrap_or_else(|| "none".into()),
                        tried.join(", ")
                    );
                    Check::new("multi-block relation, r <= 2, entries <= 3", adj.reading.is_some(), detail)
                }
                Err(e) => Check::new("multi-block relation", false, e.to_string()),
            });
            v
        }));
    } else {
        for (n, title) in [
            (2, "duality numerics"),
            (3, "xi closed forms"),
            (4, "Li(k;1-z) expansion"),
            (5, "xi(k;m+1) expansion"),
            (6, "xi duality relation"),
            (7, "earlier special cases"),
        ] {
            out.push(Criterion {
                number: n,
                title,
                checks: vec![Check::new("not run", false, "pre-flight failed and no fallback evaluator exists")],
                elapsed: Duration::ZERO,
                budget: None,
            });
        }
    }

    out.push(timed(8, "2-poset machinery", None, || {
        let mut v = poset_word_checks();
        v.extend(poset_numeric_checks(&ev));
        v
    }));

    let mut c10 = timed(10, "level two, weight <= 4, m <= 2", None, || {
        vec![
            reports("A(k;(1-z)/(1+z)) expansion", thm_main2_reports(&ev, Level::Two, 4, &l2)),
            reports("psi(k;m+1) expansion", thm_main1_reports(&ev, Level::Two, 4, &[1, 2], &l2)),
            reports("psi duality relation", cor_main_reports(&ev, Level::Two, 4, &[1, 2], &l2)),
            psi_closed_form_check(&ev, 8, 1e-10),
            psi_closed_form_check(&ev, 4, 1e-10),
        ]
    });
    c10.title = "level two, weight <= 4, m <= 2, closed case against (pi^2/8)^2";

    out.push(timed(11, "analytic sanity", None, || {
        vec![
            derivative_checks(Level::One, 256, 1e-15),
            derivative_checks(Level::Two, 256, 1e-15),
            limit_checks(&ev, 1e-3),
        ]
    }));

    let audit_start = Instant::now();
    let audit = oracle_audit(&ev);
    let audit_check = Check::new(
        "every memoized mzv/mtv/li/a value inside its oracle interval (relative width <= 1e-6)",
        audit.pass(),
        if audit.pass() {
            format!("{} values checked", audit.checked)
        } else {
            format!("{} of {} fail: {}", audit.failures.len(), audit.checked, audit.failures.join("; "))
        },
    );
    out.push(Criterion {
        number: 9,
        title: "oracle enclosures",
        checks: vec![pre_check, audit_check],
        elapsed: pre_elapsed + audit_start.elapsed(),
        budget: None,
    });
    out.push(c10);
    out.sort_by_key(|c| c.number);

    for c in &out {
        c.print();
    }
    let failed: Vec<u32> = out.iter().filter(|c| !c.pass()).map(|c| c.number).collect();
    println!("acceptance: {} of {} criteria pass", out.len() - failed.len(), out.len());
    if failed.is_empty() {
        println!("test result: ok. acceptance");
        ExitCode::SUCCESS
    } else {
        println!("test result: FAILED. acceptance criteria failing: {failed:?}");
        ExitCode::FAILURE
    }
}
