//! Command-line front end. [`run`] parses arguments, dispatches and returns
//! the process exit code: 0 on success, 1 on a failed check or internal
//! error, 2 on bad input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{scan_with, Property, ScanOptions};
use crate::dyck::{Hess, Partition};
use crate::engine::{Engine, DEFAULT_STEP_LIMIT};
use crate::error::{Error, Result};
use crate::symfunc::{Basis, SymFunc};
use crate::{network, oracle, qhit};

mod verify;

pub use verify::{run_suite, Suite, SuiteResult};

pub const SCHEMA: &str = "chromod/1";

#[derive(Parser, Debug)]
#[command(name = "chromod", version, about = "Chromatic quasisymmetric functions of indifference graphs")]
pub struct Cli {
    /// JSON-lines memo file loaded before and saved after the command.
    #[arg(long, global = true, env = "CHROMOD_CACHE")]
    cache: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Allow overriding built-in guard limits.
    #[arg(long = "unsafe", global = true)]
    allow_unsafe: bool,

    /// Bound on relation applications per reduction (needs --unsafe).
    #[arg(long, global = true)]
    step_limit: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct HessInput {
    /// Hessenberg function as comma-separated values, e.g. 2,4,4,5,5.
    #[arg(long)]
    hess: Option<String>,
    /// Dyck word over {n, e}, e.g. nnenee.
    #[arg(long)]
    word: Option<String>,
}

impl HessInput {
    fn parse(&self) -> Result<Hess> {
        match (&self.hess, &self.word) {
            (Some(s), None) => s.parse(),
            (None, Some(w)) => Hess::from_word(w.trim()),
            _ => Err(Error::Precondition("give exactly one of --hess and --word".into())),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisArg {
    M,
    E,
    S,
    P,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::M => Basis::M,
            BasisArg::E => Basis::E,
            BasisArg::S => Basis::S,
            BasisArg::P => Basis::P,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Jsonl,
    Table,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Check {
    Palindromic,
    Unimodal,
    LogConcave,
}

impl From<Check> for Property {
    fn from(c: Check) -> Self {
        match c {
            Check::Palindromic => Property::Palindromic,
            Check::Unimodal => Property::Unimodal,
            Check::LogConcave => Property::LogConcave,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Emit {
    Dot,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// csf_q(h) in the requested basis.
    Csf {
        #[command(flatten)]
        input: HessInput,
        #[arg(long, value_enum, default_value = "e")]
        basis: BasisArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Coefficients of h over the complete products.
    Expand {
        #[command(flatten)]
        input: HessInput,
    },
    /// Monomial expansion from brute-force colorings (n <= 8).
    Oracle {
        #[command(flatten)]
        input: HessInput,
    },
    /// The q-chromatic polynomial prod (x - [h(i) - i]_q).
    ChiQ {
        #[command(flatten)]
        input: HessInput,
    },
    /// The q-hit number R_{j,m}(lambda).
    Qhit {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        j: usize,
    },
    /// e-expansion of an abelian h from q-hit numbers.
    CsfAbelian {
        #[command(flatten)]
        input: HessInput,
    },
    /// Planar network of an abelian h.
    Network {
        #[command(flatten)]
        input: HessInput,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
    },
    /// Check coefficient shapes over every h of size n.
    Scan {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "e")]
        basis: BasisArg,
        #[arg(long, value_enum, default_value = "log-concave")]
        check: Check,
        #[arg(long, value_enum, default_value = "jsonl")]
        format: Format,
        /// Only irreducible h.
        #[arg(long)]
        irreducible_only: bool,
        /// Exit with status 1 if any coefficient fails.
        #[arg(long)]
        expect_all_pass: bool,
    },
    /// Run identity checkers over all small cases.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

/// Bad input (exit 2) versus everything else (exit 1).
fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidHess { .. }
            | Error::InvalidWord { .. }
            | Error::OutOfRange { .. }
            | Error::Precondition(_)
            | Error::NotAbelian(_)
            | Error::RelationConditions(_)
            | Error::DegreeMismatch { .. }
    )
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if is_usage_error(&e) {
                2
            } else {
                1
            }
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    if cli.step_limit.is_some() && !cli.allow_unsafe {
        return Err(Error::Precondition("--step-limit needs --unsafe".into()));
    }
    let mut engine = Engine::new().with_step_limit(cli.step_limit.unwrap_or(DEFAULT_STEP_LIMIT));
    if matches!(cli.command, Command::Scan { .. }) {
        engine = engine.with_multiplicative_shortcut(true);
    }
    if let Some(path) = &cli.cache {
        if path.exists() {
            engine.load_cache(path)?;
        }
    }
    let code = match cli.threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
            let mut buf = Vec::new();
            let r = pool.install(|| dispatch(cli, &engine, &mut buf));
            out.write_all(&buf)?;
            r?
        }
        None => dispatch(cli, &engine, out)?,
    };
    if let Some(path) = &cli.cache {
        let tmp = path.with_extension("tmp");
        let _ = std::fs::remove_file(&tmp);
        engine.save_cache(&tmp)?;
        std::fs::rename(&tmp, path)?;
    }
    Ok(code)
}

fn emit(out: &mut dyn Write, v: &Value) -> Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn with_schema(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), json!(SCHEMA));
    }
    v
}

/// Coefficient list: `poly` for polynomial values, `num`/`den` otherwise.
fn coeffs_json(f: &SymFunc) -> Value {
    let items: Vec<Value> = f
        .terms()
        .map(|(p, c)| match c.is_polynomial() {
            Some(poly) => json!({"partition": p, "poly": poly}),
            None => json!({"partition": p, "num": c.numer(), "den": c.denom()}),
        })
        .collect();
    Value::Array(items)
}

fn symfunc_json(h: &Hess, f: &SymFunc) -> Value {
    with_schema(json!({"h": h, "basis": f.basis(), "coeffs": coeffs_json(f)}))
}

fn table(f: &SymFunc) -> String {
    let mut s = String::new();
    for (p, c) in f.terms() {
        s.push_str(&format!("{}{p}\t{c}\n", f.basis()));
    }
    s
}

fn to_value<T: Serialize>(x: &T) -> Result<Value> {
    Ok(serde_json::to_value(x)?)
}

fn dispatch(cli: &Cli, engine: &Engine, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Csf { input, basis, format } => {
            let h = input.parse()?;
            let f = engine.csf_e(&h)?.convert((*basis).into());
            match format {
                Format::Table => write!(out, "{}", table(&f))?,
                _ => emit(out, &symfunc_json(&h, &f))?,
            }
        }
        Command::Expand { input } => {
            let h = input.parse()?;
            let e = engine.expand(&h)?;
            emit(out, &with_schema(json!({"h": h, "terms": to_value(&e)?})))?;
        }
        Command::Oracle { input } => {
            let h = input.parse()?;
            let f = oracle::csf_oracle(&h)?;
            emit(out, &symfunc_json(&h, &f))?;
        }
        Command::ChiQ { input } => {
            let h = input.parse()?;
            let x = oracle::chromatic_poly_q(&h);
            let mut v = to_value(&x)?;
            if let Value::Object(map) = &mut v {
                map.insert("h".into(), to_value(&h)?);
            }
            emit(out, &with_schema(v))?;
        }
        Command::Qhit { lambda, m, j } => {
            let lam: Partition = lambda.parse()?;
            let r = qhit::r(*j, *m, &lam)?;
            emit(out, &with_schema(json!({"lambda": lam, "m": m, "j": j, "poly": r})))?;
        }
        Command::CsfAbelian { input } => {
            let h = input.parse()?;
            let f = qhit::csf_abelian_qhit(&h)?;
            emit(out, &symfunc_json(&h, &f))?;
        }
        Command::Network { input, emit: kind } => {
            let h = input.parse()?;
            let net = network::build_network(&h)?;
            match kind {
                Emit::Dot => write!(out, "{}", net.to_dot())?,
                Emit::Json => emit(out, &with_schema(to_value(&net.to_json(&h))?))?,
            }
        }
        Command::Scan { n, basis, check, format, irreducible_only, expect_all_pass } => {
            let mut opts = ScanOptions::new(*n, (*basis).into(), (*check).into());
            opts.irreducible_only = *irreducible_only;
            let mut total = 0usize;
            let mut failed = 0usize;
            scan_with(engine, &opts, |r| {
                total += 1;
                if !r.passed() {
                    failed += 1;
                }
                match format {
                    Format::Table => {
                        if !r.passed() {
                            let parts: Vec<String> = r.failures.iter().map(|f| f.partition.to_string()).collect();
                            writeln!(out, "{}\tFAIL\t{}", r.h, parts.join(" "))?;
                        }
                    }
                    _ => emit(out, &with_schema(to_value(&r)?))?,
                }
                Ok(())
            })?;
            if *format == Format::Table {
                writeln!(out, "checked {total}, failed {failed}")?;
            }
            if *expect_all_pass && failed > 0 {
                return Ok(1);
            }
        }
        Command::Verify { suite, max_n } => {
            let suites: Vec<Suite> = match suite {
                Suite::All => Suite::value_variants().iter().copied().filter(|s| *s != Suite::All).collect(),
                s => vec![*s],
            };
            let mut ok = true;
            writeln!(out, "{:<14} {:>7} {:>7}  result", "suite", "cases", "failed")?;
            for s in suites {
                let r = run_suite(s, *max_n, engine)?;
                ok &= r.failed == 0;
                writeln!(
                    out,
                    "{:<14} {:>7} {:>7}  {}",
                    s.to_possible_value().unwrap().get_name(),
                    r.cases,
                    r.failed,
                    if r.failed == 0 { "pass" } else { "FAIL" }
                )?;
                for f in r.examples.iter().take(5) {
                    writeln!(out, "  {f}")?;
                }
            }
            return Ok(if ok { 0 } else { 1 });
        }
    }
    Ok(0)
}
