//! Command-line front end: index, word and poset operations, evaluation of
//! constants and functions, identity verification, suites and the cache.

use std::path::PathBuf;
use std::process::ExitCode;

use akzeta::identities::suites::{run_suite, SuiteConfig, SuiteName};
use akzeta::identities::verify::{default_grid, default_tolerance, parse_grid};
use akzeta::identities::{verify, Family, IdentityError, VerificationReport, VerifyOptions, XuReading};
use akzeta::index::Index;
use akzeta::numerics::cache::{self, DiskCache};
use akzeta::numerics::{Arg, ConstTag, Constant, Evaluator, FunFactor, RealBall};
use akzeta::poset::{i_one, i_z, TwoPoset};
use akzeta::words::{index_to_word, parse_rational, shuffle, word_to_index, Word};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;

#[derive(Parser)]
#[command(name = "akzeta", version, about = "Multiple zeta values, polylogarithms and their connection formulas")]
struct Cli {
    /// Target precision in bits (at least 64).
    #[arg(long, global = true, default_value_t = 128)]
    prec: u32,
    /// Cache file; overrides the AKZETA_CACHE environment variable.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Operations on indices written as "(k1,k2,...)".
    Index {
        op: IndexOp,
        k: String,
    },
    /// Operations on words in the letters 0 and 1.
    Word {
        #[command(subcommand)]
        op: WordOp,
    },
    /// Evaluates a function at z or a constant.
    Eval(EvalArgs),
    /// Verifies a named identity at sample points.
    Verify(VerifyArgs),
    /// Runs a verification suite.
    Suite {
        name: SuiteArg,
        #[arg(long, default_value_t = 5)]
        max_weight: u32,
    },
    /// Inspects or clears the cache.
    Cache { op: CacheOp },
    /// Operations on 2-posets given as JSON (or @file).
    Poset {
        op: PosetOp,
        poset: String,
        /// Sample point for `eval`; without it the value at 1 is computed.
        #[arg(long)]
        z: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum IndexOp {
    Dual,
    Hdual,
    Blocks,
    Rev,
    Minus,
    Plus,
}

#[derive(Subcommand)]
enum WordOp {
    /// The word of an index.
    FromIndex { k: String },
    /// The index of a word ending in 1.
    ToIndex { w: String },
    /// The duality involution on words.
    Dual { w: String },
    /// The shuffle product of two words.
    Shuffle { u: String, v: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalKind {
    Li,
    A,
    Zeta,
    T,
    Xi,
    Psi,
}

#[derive(Args)]
struct EvalArgs {
    kind: EvalKind,
    k: String,
    #[arg(long)]
    z: Option<String>,
    #[arg(long)]
    m: Option<u32>,
}

#[derive(Args)]
struct VerifyArgs {
    identity: String,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    kk: Option<String>,
    #[arg(long)]
    ks: Option<String>,
    /// Reading of the multi-block relation; all are tried in order when omitted.
    #[arg(long)]
    reading: Option<String>,
    /// Comma-separated sample points in [0.05, 0.95].
    #[arg(long)]
    z_grid: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Level1,
    Level2,
    Combinatorics,
    Posets,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum CacheOp {
    Stats,
    Clear,
    Path,
}

#[derive(Clone, Copy, ValueEnum)]
enum PosetOp {
    /// The word sum over linear extensions.
    Wmap,
    Transpose,
    /// Size, admissibility and number of linear extensions.
    Info,
    /// The iterated integral at z, or at 1 without --z.
    Eval,
}

enum Failure {
    /// Exit code 1: a verification ran and failed.
    Verification,
    /// Exit code 2: bad input or a domain error.
    Usage(String),
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

type Outcome = Result<(), Failure>;

struct Ctx {
    prec: u32,
    json: bool,
    cache: Option<PathBuf>,
}

impl Ctx {
    fn evaluator(&self) -> Evaluator {
        let ev = Evaluator::new(self.prec);
        match &self.cache {
            Some(p) => ev.with_disk_cache(p),
            None => ev,
        }
    }

    fn finish(&self, ev: &Evaluator) {
        for w in ev.cache_warnings() {
            eprintln!("warning: {w}");
        }
        if let Err(e) = ev.flush() {
            eprintln!("warning: {e}");
        }
    }

    fn emit(&self, text: impl std::fmt::Display, value: serde_json::Value) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        } else {
            println!("{text}");
        }
    }
}

fn parse_index(s: &str) -> Result<Index, Failure> {
    s.parse().map_err(usage)
}

fn parse_word(s: &str) -> Result<Word, Failure> {
    s.parse().map_err(usage)
}

fn ball_json(b: &RealBall) -> serde_json::Value {
    json!({ "value": b.display_digits(), "mid": b.mid_decimal(), "radius": b.rad().to_f64() })
}

fn cmd_index(ctx: &Ctx, op: IndexOp, k: &str) -> Outcome {
    let k = parse_index(k)?;
    let (name, out) = match op {
        IndexOp::Dual => ("dual", k.dual().map_err(usage)?.to_string()),
        IndexOp::Hdual => ("hdual", k.hoffman_dual().to_string()),
        IndexOp::Blocks => ("blocks", k.to_blocks().to_string()),
        IndexOp::Rev => ("rev", k.reverse_blocks().to_string()),
        IndexOp::Minus => ("minus", k.k_minus().map_err(usage)?.to_string()),
        IndexOp::Plus => ("plus", k.k_plus().map_err(usage)?.to_string()),
    };
    ctx.emit(&out, json!({ "op": name, "input": k.to_string(), "result": out }));
    Ok(())
}

fn cmd_word(ctx: &Ctx, op: &WordOp) -> Outcome {
    match op {
        WordOp::FromIndex { k } => {
            let w = index_to_word(&parse_index(k)?);
            ctx.emit(&w, json!({ "word": w.to_string() }));
        }
        WordOp::ToIndex { w } => {
            let k = word_to_index(&parse_word(w)?).map_err(usage)?;
            ctx.emit(&k, json!({ "index": k.to_string() }));
        }
        WordOp::Dual { w } => {
            let d = parse_word(w)?.dual().map_err(usage)?;
            ctx.emit(&d, json!({ "word": d.to_string() }));
        }
        WordOp::Shuffle { u, v } => {
            let s = shuffle(&parse_word(u)?, &parse_word(v)?);
            ctx.emit(&s, s.to_json());
        }
    }
    Ok(())
}

fn cmd_eval(ctx: &Ctx, args: &EvalArgs) -> Outcome {
    let k = parse_index(&args.k)?;
    let ev = ctx.evaluator();
    let need_m = || args.m.ok_or_else(|| usage("this kind needs --m"));
    let result = match args.kind {
        EvalKind::Li | EvalKind::A => {
            let z = parse_rational(args.z.as_deref().ok_or_else(|| usage("this kind needs --z"))?).map_err(usage)?;
            let f = match args.kind {
                EvalKind::Li => FunFactor::li(k.clone(), Arg::Z),
                _ => FunFactor::a(k.clone(), Arg::Z),
            };
            ev.function(&f, &z)
        }
        EvalKind::Zeta => ev.constant(&Constant::mzv(k.clone())),
        EvalKind::T => ev.constant(&Constant::mtv(k.clone())),
        EvalKind::Xi => ev.constant(&Constant::with_arg(ConstTag::Xi, k.clone(), need_m()?)),
        EvalKind::Psi => ev.constant(&Constant::with_arg(ConstTag::Psi, k.clone(), need_m()?)),
    };
    ctx.finish(&ev);
    let b = result.map_err(usage)?;
    let shown = b.with_prec(ctx.prec);
    let mut v = ball_json(&shown);
    v["index"] = json!(k.to_string());
    ctx.emit(shown.display_digits(), v);
    Ok(())
}

fn verify_opts(args: &VerifyArgs, family: Family) -> Result<VerifyOptions, Failure> {
    let zs = match &args.z_grid {
        Some(g) => parse_grid(g).map_err(usage)?,
        None => default_grid(),
    };
    Ok(VerifyOptions::new(zs, args.tol.unwrap_or_else(|| default_tolerance(family.level()))))
}

fn print_report(ctx: &Ctx, r: &VerificationReport) {
    if ctx.json {
        println!("{}", serde_json::to_string_pretty(r).expect("serializable"));
        return;
    }
    println!("{}", r.summary());
    for p in &r.points {
        let at = p.z.map(|z| format!("z={z}")).unwrap_or_else(|| "constant".into());
        match &p.error {
            Some(e) => println!("  {at}: error: {e}"),
            None => println!(
                "  {at}: {} dev={:.2e} lhs={} rhs={}",
                if p.pass { "pass" } else { "FAIL" },
                p.dev,
                p.lhs,
                p.rhs
            ),
        }
    }
}

fn cmd_verify(ctx: &Ctx, args: &VerifyArgs) -> Outcome {
    let family: Family = args.identity.parse().map_err(usage)?;
    let opts = verify_opts(args, family)?;
    let base = |reading: Option<String>| {
        move |name: &str| -> Option<String> {
            match name {
                "k" => args.k.clone(),
                "m" => args.m.clone(),
                "a" => args.a.clone(),
                "b" => args.b.clone(),
                "kk" => args.kk.clone(),
                "ks" => args.ks.clone(),
                "reading" => reading.clone(),
                _ => None,
            }
        }
    };
    let readings: Vec<Option<String>> = match (&args.reading, family) {
        (None, Family::XuThm3_3) => XuReading::ALL.iter().map(|r| Some(r.name().to_string())).collect(),
        (r, _) => vec![r.clone()],
    };
    let ev = ctx.evaluator();
    let mut first: Option<VerificationReport> = None;
    let mut chosen: Option<VerificationReport> = None;
    for reading in readings {
        let get = base(reading.clone());
        let id = family.build(&get).map_err(usage)?;
        let report = verify(&id, &ev, &opts).map_err(|e: IdentityError| usage(e))?;
        if report.pass {
            if let (Some(r), None) = (&reading, &args.reading) {
                eprintln!("reading {r} passes");
            }
            chosen = Some(report);
            break;
        }
        if let (Some(r), None) = (&reading, &args.reading) {
            eprintln!("reading {r} fails");
        }
        first.get_or_insert(report);
    }
    ctx.finish(&ev);
    let report = chosen.or(first).expect("at least one reading");
    print_report(ctx, &report);
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_suite(ctx: &Ctx, name: SuiteArg, max_weight: u32) -> Outcome {
    let suite = match name {
        SuiteArg::Level1 => SuiteName::Level1,
        SuiteArg::Level2 => SuiteName::Level2,
        SuiteArg::Combinatorics => SuiteName::Combinatorics,
        SuiteArg::Posets => SuiteName::Posets,
        SuiteArg::All => SuiteName::All,
    };
    if max_weight == 0 {
        return Err(usage("--max-weight must be positive"));
    }
    let ev = ctx.evaluator();
    let cfg = SuiteConfig { max_weight, ..SuiteConfig::default() };
    let report = run_suite(suite, &ev, &cfg);
    ctx.finish(&ev);
    if ctx.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        for c in &report.checks {
            println!("{c}");
        }
        if let Some(a) = &report.aborted {
            println!("aborted: {a}");
        }
        let failed = report.checks.iter().filter(|c| !c.pass).count();
        println!(
            "suite {}: {} ({} checks, {failed} failed, {} identity reports)",
            report.suite,
            if report.pass { "PASS" } else { "FAIL" },
            report.checks.len(),
            report.reports.len()
        );
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_cache(ctx: &Ctx, op: CacheOp) -> Outcome {
    let path = ctx.cache.clone();
    match op {
        CacheOp::Path => {
            let shown = path.as_ref().map(|p| p.display().to_string());
            ctx.emit(shown.clone().unwrap_or_else(|| "(no cache configured)".into()), json!({ "path": shown }));
        }
        CacheOp::Stats => {
            let (entries, warnings) = match &path {
                Some(p) => {
                    let c = DiskCache::open(p);
                    (c.len(), c.warnings().to_vec())
                }
                None => (0, Vec::new()),
            };
            for w in &warnings {
                eprintln!("warning: {w}");
            }
            let shown = path.as_ref().map(|p| p.display().to_string());
            ctx.emit(
                format!("{entries} entries ({})", shown.clone().unwrap_or_else(|| "no cache configured".into())),
                json!({ "path": shown, "entries": entries, "warnings": warnings }),
            );
        }
        CacheOp::Clear => {
            let p = path.ok_or_else(|| usage("no cache configured"))?;
            cache::clear(&p).map_err(usage)?;
            ctx.emit(format!("cleared {}", p.display()), json!({ "path": p.display().to_string(), "entries": 0 }));
        }
    }
    Ok(())
}

fn read_poset(text: &str) -> Result<TwoPoset, Failure> {
    let body = match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?,
        None => text.to_string(),
    };
    TwoPoset::from_json_str(&body).map_err(usage)
}

fn cmd_poset(ctx: &Ctx, op: PosetOp, text: &str, z: Option<&str>) -> Outcome {
    let x = read_poset(text)?;
    match op {
        PosetOp::Wmap => {
            let w = x.w_map();
            ctx.emit(&w, w.to_json());
        }
        PosetOp::Transpose => {
            let t = x.transpose();
            println!("{}", serde_json::to_string(&t.to_json()).expect("serializable"));
        }
        PosetOp::Info => {
            let v = json!({
                "elements": x.len(),
                "admissible": x.is_admissible(),
                "semi_admissible": x.is_semi_admissible(),
                "linear_extensions": x.linear_extensions().len(),
            });
            let text = format!(
                "elements={} admissible={} semi_admissible={} linear_extensions={}",
                v["elements"], v["admissible"], v["semi_admissible"], v["linear_extensions"]
            );
            ctx.emit(text, v);
        }
        PosetOp::Eval => {
            let ev = ctx.evaluator();
            let result = match z {
                Some(z) => {
                    let z: BigRational = parse_rational(z).map_err(usage)?;
                    i_z(&x, &z, &ev)
                }
                None => i_one(&x, &ev),
            };
            ctx.finish(&ev);
            let b = result.map_err(usage)?.with_prec(ctx.prec);
            ctx.emit(b.display_digits(), ball_json(&b));
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    if cli.prec < 64 {
        return Err(usage("--prec must be at least 64"));
    }
    let ctx = Ctx { prec: cli.prec, json: cli.json, cache: cli.cache.or_else(cache::default_path) };
    match &cli.command {
        Command::Index { op, k } => cmd_index(&ctx, *op, k),
        Command::Word { op } => cmd_word(&ctx, op),
        Command::Eval(args) => cmd_eval(&ctx, args),
        Command::Verify(args) => cmd_verify(&ctx, args),
        Command::Suite { name, max_weight } => cmd_suite(&ctx, *name, *max_weight),
        Command::Cache { op } => cmd_cache(&ctx, *op),
        Command::Poset { op, poset, z } => cmd_poset(&ctx, *op, poset, z.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
