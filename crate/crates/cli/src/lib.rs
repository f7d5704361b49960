//! Command-line front end.
//!
//! [`run`] parses arguments, builds (or loads) the sieve, runs the requested
//! computation on a worker pool and writes one report. Exit codes: 0 success,
//! 1 usage error, 2 computation error, 3 resource cap.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nfactorial::analytic::{self, InequalitySides};
use nfactorial::cache;
use nfactorial::field::parse_field;
use nfactorial::report::{
    BertrandCheckReport, BoundsReport, FactorialReport, FieldInfoReport, IdealCountReport, SearchReport,
    SplitPrimesReport, SCHEMA_VERSION,
};
use nfactorial::solver::{self, DEFAULT_ARITY_CAP};
use nfactorial::{BoundConstants, Error, FieldDescriptor, IdealCountSieve, PiTable, SearchMode, SieveOptions};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Environment variable naming the sieve cache directory.
pub const CACHE_DIR_ENV: &str = "NFACTORIAL_CACHE_DIR";

#[derive(Debug, Parser)]
#[command(name = "nfactorial", version, about = "Generalized factorials over number fields")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Field spec: `Q`, `quadratic:<d>` or `poly:<c0>,...,<c_{n-1}>[;k=<k>][;D=<D>]`.
    #[arg(long, global = true, default_value = "Q", value_parser = parse_field_arg)]
    pub field: FieldDescriptor,
    /// Treat every prime as coprime to the index of Z[θ] (poly fields).
    #[arg(long, global = true)]
    pub assume_index_coprime: bool,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Ignore the sieve cache.
    #[arg(long, global = true)]
    pub seedless: bool,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub workers: Option<u64>,
    /// Refuse sieves larger than this many bytes.
    #[arg(long, global = true, default_value_t = SieveOptions::default().memory_cap_bytes)]
    pub mem_cap: u64,
    /// Include wall-clock runtime in search stats.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree, discriminant and splitting of small primes.
    FieldInfo {
        /// Show the splitting of primes up to this bound.
        #[arg(long, default_value_t = 50)]
        primes: u64,
    },
    /// `a(n)` for `n ≤ X`.
    IdealCount {
        #[arg(long = "max", default_value_t = 10_000, value_parser = bound_parser())]
        x: u64,
        /// Only rows with `a(n) > 0`.
        #[arg(long)]
        nonzero: bool,
    },
    /// `Π_K(x)` in factored form.
    Factorial {
        #[arg(long)]
        x: u64,
    },
    /// Solutions of `Π(l_1)···Π(l_{m-1}) = Π(l_m)` with `l_m ≤ X`.
    Search {
        #[arg(long = "max", default_value_t = 10_000, value_parser = bound_parser())]
        x: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(3..))]
        m: u64,
        #[arg(long, default_value = "all", value_parser = parse_mode)]
        mode: SearchMode,
        /// Also list the non-canonical members of each solution's family.
        #[arg(long)]
        expand: bool,
        /// Largest `m` accepted.
        #[arg(long, default_value_t = DEFAULT_ARITY_CAP as u64)]
        arity_cap: u64,
    },
    /// Completely split primes up to `X`.
    SplitPrimes {
        #[arg(long = "max", default_value_t = 10_000, value_parser = bound_parser())]
        x: u64,
    },
    /// Integers `x ≤ X` with no completely split prime in `(x, A·x]`.
    BertrandCheck {
        #[arg(long = "max", default_value_t = 10_000, value_parser = bound_parser())]
        x: u64,
        #[arg(long = "A", default_value_t = 2.0)]
        a: f64,
    },
    /// Explicit constants, the finiteness bound and an inequality grid.
    Bounds {
        #[arg(long = "A", default_value_t = 2.0)]
        a: f64,
        #[arg(long)]
        c1: Option<f64>,
        #[arg(long)]
        c2: Option<f64>,
        #[arg(long)]
        c3: Option<f64>,
        /// `m` for the split-prime threshold.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(3..))]
        m: u64,
        /// Search bound for the threshold prime.
        #[arg(long, default_value_t = 1_000_000)]
        threshold_limit: u64,
        /// Smallest `ln x` on the grid.
        #[arg(long, default_value_t = 1e3)]
        grid_from: f64,
        /// Largest `ln x` on the grid.
        #[arg(long, default_value_t = 1e8)]
        grid_to: f64,
        #[arg(long, default_value_t = 21)]
        grid_points: usize,
    },
}

fn parse_field_arg(s: &str) -> Result<FieldDescriptor, String> {
    parse_field(s).map_err(|e| e.to_string())
}

fn parse_mode(s: &str) -> Result<SearchMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn bound_parser() -> clap::builder::RangedU64ValueParser<u64> {
    clap::value_parser!(u64).range(2..)
}

/// A computation failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_resource_cap() { EXIT_RESOURCE } else { EXIT_COMPUTE };
        Failure { code, message: e.to_string() }
    }
}

fn compute_failure(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_COMPUTE, message: message.into() }
}

/// Runs the CLI with `argv` (including the program name), writing the report
/// to `out` (unless `--out` is given) and diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(&cli) {
        Ok(text) => match &cli.common.out {
            Some(path) => match std::fs::write(path, text) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "error: {}: {e}", path.display());
                    EXIT_COMPUTE
                }
            },
            None => match out.write_all(text.as_bytes()) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_COMPUTE
                }
            },
        },
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Runs the parsed command and renders its report.
pub fn execute(cli: &Cli) -> Result<String, Failure> {
    let workers = match cli.common.workers {
        Some(w) => w as usize,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| compute_failure(format!("worker pool: {e}")))?;
    pool.install(|| dispatch(cli))
}

fn dispatch(cli: &Cli) -> Result<String, Failure> {
    let c = &cli.common;
    let field = c.field.clone().assert_index_coprime(c.assume_index_coprime);
    match &cli.command {
        Command::FieldInfo { primes } => {
            let splitting = nfactorial::primes::primes_up_to(*primes)
                .into_iter()
                .map(|p| field.splitting_type(p))
                .collect::<nfactorial::Result<Vec<_>>>()?;
            let report = FieldInfoReport::new(&field, &splitting);
            render(c.format, &report, || field_info_csv(&report), || field_info_text(&report))
        }
        Command::IdealCount { x, nonzero } => {
            let sieve = sieve_for(c, &field, *x)?;
            let report = IdealCountReport::new(&sieve, *nonzero);
            let csv = || {
                let mut w = csv_writer();
                w.write_record(["n", "a"])?;
                for r in &report.rows {
                    w.write_record([r.n.to_string(), r.a.to_string()])?;
                }
                finish_csv(w)
            };
            let text = || {
                let mut s = format!("{}: sum of a(n) for n <= {} is {}\n", report.field, report.x, report.total);
                for r in &report.rows {
                    s.push_str(&format!("a({}) = {}\n", r.n, r.a));
                }
                Ok(s)
            };
            render(c.format, &report, csv, text)
        }
        Command::Factorial { x } => {
            let limit = (*x).max(1);
            let sieve = sieve_for(c, &field, limit)?;
            let table = PiTable::build(sieve);
            let value = table.pi_factored(*x)?;
            let report = FactorialReport::new(&field, *x, &value);
            let csv = || {
                let mut w = csv_writer();
                w.write_record(["p", "e"])?;
                for pe in &report.exponents {
                    w.write_record([pe.p.to_string(), pe.e.to_string()])?;
                }
                finish_csv(w)
            };
            let text = || {
                Ok(match &report.value {
                    Some(v) => format!("{} (={v})\n", report.factored),
                    None => format!("{} (log10={:e})\n", report.factored, report.log10),
                })
            };
            render(c.format, &report, csv, text)
        }
        Command::Search { x, m, mode, expand, arity_cap } => {
            let m = *m as usize;
            let start = Instant::now();
            let sieve = sieve_for(c, &field, *x)?;
            let table = PiTable::new(Arc::new(sieve));
            let mut outcome = if m == 3 {
                solver::search_m3(&table, *x, *mode)?
            } else {
                solver::search_general_m(&table, *x, m, *mode, *arity_cap as usize)?
            };
            if *expand {
                let mut all = Vec::new();
                for s in &outcome.solutions {
                    all.extend(solver::expand_family(table.sieve(), s));
                }
                solver::sort_solutions(&mut all);
                outcome.solutions = all;
            }
            let mut report = SearchReport::new(table.sieve(), m, *mode, &outcome)?;
            if c.timing {
                report.stats.runtime_ms = Some(start.elapsed().as_millis() as u64);
            }
            render(c.format, &report, || search_csv(&report), || search_text(&report))
        }
        Command::SplitPrimes { x } => {
            let primes = analytic::split_primes(&field, *x)?;
            let report = SplitPrimesReport::new(&field, *x, primes);
            let csv = || {
                let mut w = csv_writer();
                w.write_record(["p"])?;
                for p in &report.primes {
                    w.write_record([p.to_string()])?;
                }
                finish_csv(w)
            };
            let text = || {
                let list: Vec<String> = report.primes.iter().map(u64::to_string).collect();
                Ok(format!("{} split primes <= {} in {}: {}\n", report.count, report.x, report.field, list.join(" ")))
            };
            render(c.format, &report, csv, text)
        }
        Command::BertrandCheck { x, a } => {
            let report: BertrandCheckReport = analytic::bertrand_failures(&field, *a, *x)?.into();
            let r = &report.report;
            let csv = || {
                let mut w = csv_writer();
                w.write_record(["x"])?;
                for f in &r.failures {
                    w.write_record([f.to_string()])?;
                }
                finish_csv(w)
            };
            let text = || {
                let list: Vec<String> = r.failures.iter().map(u64::to_string).collect();
                Ok(format!(
                    "{}: A={:e}, x <= {}: {} failures [{}]\n",
                    r.field,
                    r.a,
                    r.xmax,
                    r.failures.len(),
                    list.join(", ")
                ))
            };
            render(c.format, &report, csv, text)
        }
        Command::Bounds { a, c1, c2, c3, m, threshold_limit, grid_from, grid_to, grid_points } => {
            let d = BoundConstants::default();
            let constants =
                BoundConstants { c1: c1.unwrap_or(d.c1), c2: c2.unwrap_or(d.c2), c3: c3.unwrap_or(d.c3), a: *a };
            constants.validate()?;
            let report = bounds_report(
                &field,
                constants,
                *m as usize,
                *threshold_limit,
                (*grid_from, *grid_to, *grid_points),
            )?;
            let csv = || {
                let mut w = csv_writer();
                w.write_record(["log_x", "lhs", "rhs"])?;
                for g in &report.grid {
                    w.write_record([fmt_f64(g.log_x), fmt_f64(g.lhs), fmt_f64(g.rhs)])?;
                }
                finish_csv(w)
            };
            render(c.format, &report, csv, || Ok(bounds_text(&report)))
        }
    }
}

fn sieve_for(c: &Common, field: &FieldDescriptor, x: u64) -> Result<IdealCountSieve, Failure> {
    let opts = SieveOptions { memory_cap_bytes: c.mem_cap };
    let dir = if c.seedless { None } else { c.cache_dir.as_deref() };
    Ok(cache::load_or_build(dir, field, x, opts)?.0)
}

fn bounds_report(
    field: &FieldDescriptor,
    constants: BoundConstants,
    m: usize,
    threshold_limit: u64,
    grid: (f64, f64, usize),
) -> Result<BoundsReport, Failure> {
    let c2 = analytic::explicit_c2(&constants)?;
    let mut report = BoundsReport {
        schema_version: SCHEMA_VERSION,
        field: field.render(),
        constants,
        c2,
        k: None,
        ln_d: None,
        log_bound: None,
        c2_sides: None,
        threshold: None,
        grid: Vec::new(),
    };
    if field.is_rational() {
        return Ok(report);
    }
    report.threshold = match analytic::threshold_q(field, m, threshold_limit) {
        Ok(t) => Some(t),
        Err(Error::NotFound(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let Ok((k, ln_d)) = analytic::closure_data(field) else {
        return Ok(report);
    };
    report.k = Some(k);
    report.ln_d = Some(ln_d);
    report.log_bound = Some(analytic::explicit_bound_log(field, &constants)?);
    report.c2_sides = analytic::c2_inequality_sides(&constants, k, ln_d, c2).ok();
    report.grid = analytic::inequality_grid(&constants, k, ln_d, grid.0, grid.1, grid.2)?;
    Ok(report)
}

fn render<R: Serialize>(
    format: Format,
    report: &R,
    csv: impl FnOnce() -> Result<String, Failure>,
    text: impl FnOnce() -> Result<String, Failure>,
) -> Result<String, Failure> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| compute_failure(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => csv(),
        Format::Text => text(),
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        compute_failure(format!("csv: {e}"))
    }
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new())
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, Failure> {
    let bytes = w.into_inner().map_err(|e| compute_failure(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| compute_failure(e.to_string()))
}

/// Decimal with an explicit exponent, round-trippable.
fn fmt_f64(v: f64) -> String {
    format!("{v:e}")
}

fn search_csv(r: &SearchReport) -> Result<String, Failure> {
    let mut w = csv_writer();
    let mut header: Vec<String> = (1..=r.m).map(|i| format!("l{i}")).collect();
    header.extend(["kind", "canonical", "a_lm", "pred_norm"].map(String::from));
    w.write_record(&header)?;
    for s in &r.solutions {
        let mut row: Vec<String> = s.ls.iter().map(u64::to_string).collect();
        row.push(s.kind.to_string());
        row.push(s.canonical.to_string());
        row.push(s.witnesses.a_lm.to_string());
        row.push(s.witnesses.pred_norm.map_or(String::new(), |p| p.to_string()));
        w.write_record(&row)?;
    }
    finish_csv(w)
}

fn search_text(r: &SearchReport) -> Result<String, Failure> {
    let mut s = format!("{} m={} X={} mode={}: {} solutions\n", r.field, r.m, r.x, r.mode, r.solutions.len());
    if let Some(note) = &r.note {
        s.push_str(&format!("note: {note}\n"));
    }
    for sol in &r.solutions {
        let ls: Vec<String> = sol.ls.iter().map(u64::to_string).collect();
        s.push_str(&format!(
            "({}) {}{}\n",
            ls.join(", "),
            sol.kind,
            if sol.canonical { "" } else { " non-canonical" }
        ));
    }
    s.push_str(&format!("checked={} log_collisions={}", r.stats.checked, r.stats.log_collisions));
    if let Some(ms) = r.stats.runtime_ms {
        s.push_str(&format!(" runtime_ms={ms}"));
    }
    s.push('\n');
    Ok(s)
}

fn field_info_csv(r: &FieldInfoReport) -> Result<String, Failure> {
    let mut w = csv_writer();
    w.write_record(["p", "parts", "splits_completely", "ramified"])?;
    for s in &r.splitting {
        let parts: Vec<String> = s.parts.iter().map(|q| format!("e={},f={}", q.e, q.f)).collect();
        w.write_record([s.p.to_string(), parts.join(";"), s.splits_completely.to_string(), s.ramified.to_string()])?;
    }
    finish_csv(w)
}

fn field_info_text(r: &FieldInfoReport) -> Result<String, Failure> {
    let mut s = format!("{}: degree {}, discriminant {}\n", r.field, r.degree, r.discriminant);
    if let Some(k) = r.galois_degree {
        s.push_str(&format!("Galois closure degree {k}\n"));
    }
    if let Some(d) = &r.galois_abs_disc {
        s.push_str(&format!("Galois closure |disc| {d}\n"));
    }
    for sp in &r.splitting {
        let parts: Vec<String> = sp.parts.iter().map(|q| format!("(e={}, f={})", q.e, q.f)).collect();
        let tag = if sp.splits_completely {
            " split"
        } else if sp.ramified {
            " ramified"
        } else {
            ""
        };
        s.push_str(&format!("p={}: {}{tag}\n", sp.p, parts.join(" ")));
    }
    Ok(s)
}

fn bounds_text(r: &BoundsReport) -> String {
    let mut s = format!("{}\nc(2)={:e}\n", r.field, r.c2);
    if let (Some(k), Some(ln_d)) = (r.k, r.ln_d) {
        s.push_str(&format!("k={k} ln(D)={ln_d:e}\n"));
    }
    match r.log_bound {
        Some(b) => s.push_str(&format!("log-bound={b:.4e}\n")),
        None => s.push_str("log-bound=unavailable\n"),
    }
    if let Some(InequalitySides { log_x, lhs, rhs }) = r.c2_sides {
        s.push_str(&format!("at ln x={log_x:e}: lhs={lhs:e} rhs={rhs:e}\n"));
    }
    if let Some(t) = &r.threshold {
        s.push_str(&format!(
            "threshold q={} (m={}, {} split primes, need n^|P| > {}); analytic condition met: {}\n",
            t.q, t.m, t.split_count, t.required, t.analytic_condition_met
        ));
    }
    s
}
