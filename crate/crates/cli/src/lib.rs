//! Command handlers behind the `delannoy` binary.
//!
//! Every handler writes data to `out`, diagnostics to `err`, and returns the
//! process exit code: 0 when everything checked holds, 1 when a
//! mathematical failure was found, 2 for usage or configuration errors.

use std::io::{self, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use delannoy::congruence::{self, CongruenceCheck, Grid, CSV_HEADER};
use delannoy::families::{self, Family, Route};
use delannoy::verify::{self, moments, SuiteSummary};
use delannoy::{Error, MultiPoly, Var};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable that sets the default `--max` of `verify`.
pub const MAX_N_ENV: &str = "DELANNOY_MAX_N";

#[derive(Parser, Debug)]
#[command(
    name = "delannoy",
    version,
    about = "Generalized Delannoy polynomials: generation, identity checks, congruence scans"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build polynomials of one family, or a table of Delannoy numbers.
    Gen(GenArgs),
    /// Run registered identity checks.
    Verify(VerifyArgs),
    /// Scan an integer congruence over a grid.
    Congruence(CongruenceArgs),
    /// Moments of the functional that makes the D_n orthogonal.
    Moments(MomentsArgs),
    /// List the identity checks and congruence scans.
    ListChecks(ListArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenFamily {
    /// d_n(x) with parameter r
    #[value(name = "d")]
    Small,
    /// D_n(x) with parameter r
    #[value(name = "D")]
    Big,
    /// Delannoy numbers D(m, n)
    #[value(name = "delannoy")]
    Numbers,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Pretty,
    Csv,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    pub family: GenFamily,
    /// Index to build (largest column for `delannoy`).
    #[arg(long)]
    pub n: usize,
    /// Largest row for `delannoy`; defaults to `--n`.
    #[arg(long)]
    pub m: Option<usize>,
    /// Construction route: def, rec, gf (d); rec, from-d, egf (D).
    #[arg(long, default_value = "rec")]
    pub route: String,
    /// Emit every index 0..=n instead of n alone.
    #[arg(long)]
    pub upto: bool,
    #[arg(long, value_enum, default_value_t = Output::Json)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Check name; repeat for several.
    #[arg(long, required_unless_present = "all", conflicts_with = "all")]
    pub check: Vec<String>,
    /// Run the whole catalog.
    #[arg(long)]
    pub all: bool,
    /// Largest index in every instance.
    #[arg(long, env = MAX_N_ENV, default_value_t = verify::DEFAULT_MAX_N)]
    pub max: usize,
    /// Worker threads; 0 means one per core.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Print only the summary line.
    #[arg(long)]
    pub summary_only: bool,
    /// Include per-instance timings (makes output run-dependent).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Args, Debug)]
pub struct CongruenceArgs {
    #[arg(long)]
    pub check: String,
    #[arg(long, default_value_t = congruence::DEFAULT_N_MAX)]
    pub n_max: u32,
    #[arg(long, default_value_t = congruence::DEFAULT_R_MAX)]
    pub r_max: u32,
    #[arg(long, default_value_t = congruence::DEFAULT_M_MAX)]
    pub m_max: u32,
    /// Inclusive range `a..b` of x values.
    #[arg(long, allow_hyphen_values = true, default_value = "-20..20")]
    pub x_range: String,
    /// Print only failing rows (the header is kept).
    #[arg(long)]
    pub failures_only: bool,
    /// Worker threads; 0 means one per core.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Args, Debug)]
pub struct MomentsArgs {
    /// Largest moment index.
    #[arg(long, default_value_t = 10)]
    pub max: usize,
    #[arg(long, value_enum, default_value_t = Output::Pretty)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct ListArgs {
    #[arg(long, value_enum, default_value_t = Output::Pretty)]
    pub output: Output,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(&a, out, err),
        Command::Verify(a) => cmd_verify(&a, out, err),
        Command::Congruence(a) => cmd_congruence(&a, out, err),
        Command::Moments(a) => cmd_moments(&a, out),
        Command::ListChecks(a) => cmd_list_checks(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

fn usage(err: &mut dyn Write, msg: impl std::fmt::Display) -> io::Result<i32> {
    writeln!(err, "error: {msg}")?;
    Ok(EXIT_USAGE)
}

pub fn cmd_gen(a: &GenArgs, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let family = match a.family {
        GenFamily::Small => Family::Delannoy,
        GenFamily::Big => Family::Orthogonal,
        GenFamily::Numbers => return gen_numbers(a, out, err),
    };
    let route: Route = match a.route.parse() {
        Ok(r) => r,
        Err(_) => return usage(err, format!("unknown route `{}`", a.route)),
    };
    if !route.valid_for(family) {
        let valid = [Route::Def, Route::Rec, Route::Gf, Route::Egf, Route::FromD]
            .into_iter()
            .filter(|r| r.valid_for(family))
            .map(Route::name)
            .collect::<Vec<_>>()
            .join(", ");
        return usage(err, format!("route `{route}` does not build this family; use one of: {valid}"));
    }
    let polys: Vec<(usize, MultiPoly)> = if a.upto {
        match families::construct_list(family, route, a.n) {
            Ok(list) => list.into_iter().enumerate().collect(),
            Err(e) => return failure(err, e),
        }
    } else {
        match families::construct(family, route, a.n) {
            Ok(p) => vec![(a.n, p)],
            Err(e) => return failure(err, e),
        }
    };
    match a.output {
        Output::Pretty => {
            for (n, p) in &polys {
                if a.upto {
                    write!(out, "{n}: ")?;
                }
                writeln!(out, "{p}")?;
            }
        }
        Output::Json => {
            let value = if a.upto {
                Value::Array(polys.iter().map(|(n, p)| json!({ "n": n, "poly": p })).collect())
            } else {
                serde_json::to_value(&polys[0].1).expect("polynomials serialize")
            };
            writeln!(out, "{value}")?;
        }
        Output::Csv => {
            writeln!(out, "n,exp_x,exp_y,exp_r,exp_t,re,im")?;
            for (n, p) in &polys {
                for (m, c) in p.terms().iter().rev() {
                    let e = m.exps();
                    writeln!(out, "{n},{},{},{},{},{},{}", e[0], e[1], e[2], e[3], c.re, c.im)?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn failure(err: &mut dyn Write, e: Error) -> io::Result<i32> {
    writeln!(err, "error: {e}")?;
    Ok(EXIT_FAILURE)
}

fn gen_numbers(a: &GenArgs, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    if a.output != Output::Csv {
        return usage(err, "Delannoy numbers are written as CSV; pass --output csv");
    }
    let max_m = a.m.unwrap_or(a.n);
    let table = families::delannoy_table(max_m, a.n);
    writeln!(out, "m,n,value")?;
    for (m, row) in table.iter().enumerate() {
        for (n, v) in row.iter().enumerate() {
            writeln!(out, "{m},{n},{v}")?;
        }
    }
    Ok(EXIT_OK)
}

fn pool(workers: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("thread pool")
}

/// Report JSON without timing fields unless asked, so reruns are
/// byte-identical.
fn strip_timing(mut v: Value, keep: bool, key: &str) -> Value {
    if !keep {
        if let Value::Object(map) = &mut v {
            map.remove(key);
        }
    }
    v
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let names: Vec<&str> = if a.all { verify::check_names() } else { a.check.iter().map(String::as_str).collect() };
    for name in &names {
        if verify::find_check(name).is_err() {
            writeln!(err, "error: unknown check `{name}`")?;
            writeln!(err, "available checks:")?;
            for c in verify::catalog() {
                writeln!(err, "  {}", c.name)?;
            }
            return Ok(EXIT_USAGE);
        }
    }
    let start = Instant::now();
    let parallel = a.workers != 1;
    let reports = match pool(a.workers).install(|| verify::run_checks(&names, a.max, parallel)) {
        Ok(r) => r,
        Err(e) => return usage(err, e),
    };
    let summary = SuiteSummary::from_reports(a.max, &reports, start.elapsed());
    if !a.summary_only {
        for r in &reports {
            let v = serde_json::to_value(r).expect("reports serialize");
            writeln!(out, "{}", strip_timing(v, a.timings, "elapsed_ms"))?;
        }
    }
    let v = json!({ "summary": strip_timing(serde_json::to_value(&summary).expect("summary serializes"), a.timings, "wall_ms") });
    writeln!(out, "{v}")?;
    Ok(if summary.all_passed() { EXIT_OK } else { EXIT_FAILURE })
}

pub fn cmd_congruence(a: &CongruenceArgs, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let check: CongruenceCheck = match a.check.parse() {
        Ok(c) => c,
        Err(e) => return usage(err, e),
    };
    let range = match congruence::parse_range(&a.x_range) {
        Ok(r) => r,
        Err(_) => return usage(err, format!("malformed x range `{}`; expected a..b", a.x_range)),
    };
    let grid = Grid { n_max: a.n_max, r_max: a.r_max, m_max: a.m_max, x_min: *range.start(), x_max: *range.end() };
    let scan = match pool(a.workers).install(|| congruence::run_scan(check, &grid)) {
        Ok(s) => s,
        Err(e @ Error::Precondition(_)) => return usage(err, e),
        Err(e) => return failure(err, e),
    };
    writeln!(out, "{CSV_HEADER}")?;
    for row in scan.rows.iter().filter(|r| !a.failures_only || !r.divisible) {
        writeln!(out, "{}", row.to_csv())?;
    }
    let summary = scan.summary();
    writeln!(err, "{}", serde_json::to_string(&summary).expect("summary serializes"))?;
    Ok(if scan.passed() { EXIT_OK } else { EXIT_FAILURE })
}

pub fn cmd_moments(a: &MomentsArgs, out: &mut dyn Write) -> io::Result<i32> {
    let mu = moments::moments(a.max);
    match a.output {
        Output::Pretty => {
            for (n, m) in mu.iter().enumerate() {
                writeln!(out, "mu_{n} = {m}")?;
            }
        }
        Output::Json => {
            let v: Vec<Value> = mu.iter().enumerate().map(|(n, m)| json!({ "n": n, "moment": m })).collect();
            writeln!(out, "{}", Value::Array(v))?;
        }
        Output::Csv => {
            // Moments are polynomials in r alone.
            writeln!(out, "n,exp_r,re")?;
            for (n, m) in mu.iter().enumerate() {
                for (mono, c) in m.terms().iter().rev() {
                    writeln!(out, "{n},{},{}", mono.exp(Var::R), c.re)?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_list_checks(a: &ListArgs, out: &mut dyn Write) -> io::Result<i32> {
    match a.output {
        Output::Json => {
            let identities: Vec<Value> = verify::catalog()
                .iter()
                .map(|c| json!({ "name": c.name, "statement": c.statement, "domain": c.domain, "note": c.note }))
                .collect();
            let scans: Vec<&str> = CongruenceCheck::ALL.iter().map(|c| c.name()).collect();
            writeln!(out, "{}", json!({ "identities": identities, "congruences": scans }))?;
        }
        Output::Pretty | Output::Csv => {
            for c in verify::catalog() {
                writeln!(out, "{:<22} {}", c.name, c.statement)?;
                writeln!(out, "{:<22} instances: {}", "", c.domain)?;
            }
            writeln!(out)?;
            writeln!(out, "congruence scans: {}", CongruenceCheck::ALL.map(|c| c.name()).join(", "))?;
        }
    }
    Ok(EXIT_OK)
}
