//! Command-line front end: argument parsing and the subcommand drivers.
//!
//! Exit status: 0 on success, 1 when a verification check fails or a
//! computation breaks down, 2 on usage, configuration, parse or I/O errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;

use crate::arithmetic::{cf_expand, ContinuedFraction, Flux};
use crate::dynamics::{eig_localization_profile, lyapunov, write_localization_csv, LocalizationRow};
use crate::error::{Error, Result};
use crate::fmt::g17;
use crate::operators::{build_amo, build_lieb_1d, Boundary, GeneralCouplings, LiebParams};
use crate::spectra::{
    amo_bands_rational, general_bands_rational, lieb_bands_direct, lieb_bands_rational, write_bands_csv,
    write_bands_json, BandSet, Interval, Method, DEFAULT_GRID,
};
use crate::verify::{classify_regime, run_suite, weyl_zero_residual, CouplingModel, Suite, SuiteConfig};

pub const MAX_QMAX: u64 = 500;
pub const MIN_GRID: usize = 8;
/// Depth used when a decimal `--alpha` is expanded into a continued fraction.
const DECIMAL_CF_DEPTH: usize = 40;

#[derive(Parser, Debug)]
#[command(name = "lieb-spectra", version, about = "Magnetic Lieb-lattice spectra and their almost Mathieu reduction")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Band edges for every reduced p/q with q <= qmax.
    Butterfly(ButterflyArgs),
    /// Band edges at a single rational flux p/q.
    Bands(BandsArgs),
    /// Run a verification suite and print a JSON report.
    Verify(VerifyArgs),
    /// Spectral regime from the arithmetic indices and the coupling.
    Classify(ClassifyArgs),
    /// Lyapunov exponents of the almost Mathieu cocycle.
    Lyapunov(LyapunovArgs),
    /// Eigenvector localization report of an open truncation.
    Localize(LocalizeArgs),
    /// Zero-energy approximate eigenvector and its residual.
    Weyl(WeylArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Lieb,
    Amo,
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Mapped,
    Direct,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct CouplingArgs {
    #[arg(long, value_enum, default_value = "lieb")]
    pub model: ModelArg,
    /// Lieb hopping t.
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// AMO coupling; defaults to t⁻².
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub t2: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t3: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t4: f64,
    #[arg(long, value_enum, default_value = "mapped")]
    pub method: MethodArg,
    /// Grid points per axis of the direct (θ, k) sweep.
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ButterflyArgs {
    #[command(flatten)]
    pub coupling: CouplingArgs,
    #[arg(long)]
    pub qmax: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct BandsArgs {
    #[command(flatten)]
    pub coupling: CouplingArgs,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub q: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct FluxArgs {
    /// golden, silver, e2, a fraction p/q, or a decimal.
    #[arg(long, default_value = "golden")]
    pub alpha: String,
    /// Partial quotients a1,a2,... of α = [0; a1, a2, ...]; overrides --alpha.
    #[arg(long, value_delimiter = ',')]
    pub cf: Option<Vec<String>>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// reduction, symmetry, weyl, mapping, gap or all.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub flux: FluxArgs,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// Use the general couplings t2, t3, t4 instead of t.
    #[arg(long, num_args = 3, value_names = ["T2", "T3", "T4"])]
    pub general: Option<Vec<f64>>,
    /// Continued-fraction depth used for β and the γ scan length.
    #[arg(long, default_value_t = 30)]
    pub depth: usize,
    /// Print the full label as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct LyapunovArgs {
    #[command(flatten)]
    pub flux: FluxArgs,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Comma-separated energies.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub energies: Vec<f64>,
    #[arg(long, default_value_t = 100_000)]
    pub steps: u64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct LocalizeArgs {
    #[command(flatten)]
    pub flux: FluxArgs,
    #[arg(long, value_enum, default_value = "lieb")]
    pub model: ModelArg,
    /// Lieb hopping t, or λ for the AMO.
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// Number of cells.
    #[arg(long, default_value_t = 500)]
    pub n: usize,
    #[arg(long, default_value_t = -1e6, allow_negative_numbers = true)]
    pub emin: f64,
    #[arg(long, default_value_t = 1e6, allow_negative_numbers = true)]
    pub emax: f64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct WeylArgs {
    #[command(flatten)]
    pub flux: FluxArgs,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long)]
    pub k: u64,
}

/// Parses `golden`, `silver`, `e2`, `p/q` or a decimal.
pub fn parse_flux(s: &str) -> Result<Flux> {
    if let Some(f) = Flux::named(s) {
        return Ok(f);
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| Error::Usage(format!("bad numerator in {s:?}")))?;
        let q: u64 = q.trim().parse().map_err(|_| Error::Usage(format!("bad denominator in {s:?}")))?;
        if q == 0 {
            return Err(Error::Usage(format!("zero denominator in {s:?}")));
        }
        let g = p.unsigned_abs().gcd(&q);
        return Flux::rational(p / g as i64, q / g);
    }
    let x: f64 = s.parse().map_err(|_| Error::Usage(format!("unrecognised flux {s:?}")))?;
    cf_expand(x, DECIMAL_CF_DEPTH)
}

fn flux_of(args: &FluxArgs) -> Result<Flux> {
    match &args.cf {
        Some(parts) => {
            let qs = parts
                .iter()
                .map(|a| a.trim().parse::<BigUint>().map_err(|_| Error::Usage(format!("bad partial quotient {a:?}"))))
                .collect::<Result<Vec<_>>>()?;
            let label = format!("cf[{}]", parts.join(","));
            Flux::irrational(ContinuedFraction::from_quotients(0, qs, label)?)
        }
        None => parse_flux(&args.alpha),
    }
}

fn sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn check_grid(grid: usize) -> Result<()> {
    if grid < MIN_GRID {
        return Err(Error::Config(format!("grid must be >= {MIN_GRID}, got {grid}")));
    }
    Ok(())
}

fn bands_at(c: &CouplingArgs, p: u64, q: u64) -> Result<BandSet> {
    let method = match c.method {
        MethodArg::Mapped => Method::Mapped,
        MethodArg::Direct => Method::Direct,
    };
    match c.model {
        ModelArg::Amo => amo_bands_rational(p, q, c.lambda.unwrap_or(c.t.powi(-2))),
        ModelArg::Lieb if method == Method::Direct => lieb_bands_direct(p, q, c.t, c.grid),
        ModelArg::Lieb => lieb_bands_rational(p, q, c.t, method),
        ModelArg::General => general_bands_rational(p, q, &GeneralCouplings::new(c.t2, c.t3, c.t4)?, method),
    }
}

fn emit_bands(out: &OutputArgs, sets: &[BandSet]) -> Result<()> {
    let mut w = sink(&out.output)?;
    match out.format {
        Format::Csv => write_bands_csv(&mut w, sets)?,
        Format::Json => write_bands_json(&mut w, sets)?,
    }
    w.flush()?;
    Ok(())
}

/// Reduced fractions p/q with `1 <= q <= qmax`, `0 <= p < q`, ordered by q then p.
pub fn reduced_fractions(qmax: u64) -> Vec<(u64, u64)> {
    (1..=qmax).flat_map(|q| (0..q).filter(move |&p| p.gcd(&q) == 1).map(move |p| (p, q))).collect()
}

fn cmd_butterfly(a: &ButterflyArgs) -> Result<i32> {
    if a.qmax == 0 || a.qmax > MAX_QMAX {
        return Err(Error::Config(format!("qmax must lie in 1..={MAX_QMAX}, got {}", a.qmax)));
    }
    check_grid(a.coupling.grid)?;
    let sets = reduced_fractions(a.qmax)
        .par_iter()
        .map(|&(p, q)| bands_at(&a.coupling, p, q))
        .collect::<Result<Vec<_>>>()?;
    emit_bands(&a.out, &sets)?;
    Ok(0)
}

fn cmd_bands(a: &BandsArgs) -> Result<i32> {
    check_grid(a.coupling.grid)?;
    if a.q == 0 || a.p.gcd(&a.q) != 1 {
        return Err(Error::Config(format!("p/q = {}/{} is not a reduced fraction", a.p, a.q)));
    }
    emit_bands(&a.out, &[bands_at(&a.coupling, a.p, a.q)?])?;
    Ok(0)
}

fn cmd_verify(a: &VerifyArgs) -> Result<i32> {
    let suite = Suite::parse(&a.suite).ok_or_else(|| Error::Usage(format!("unknown suite {:?}", a.suite)))?;
    let cfg = SuiteConfig { t: a.t, alpha: a.alpha.as_deref().map(parse_flux).transpose()?, theta: a.theta, n: a.n };
    let reports = run_suite(suite, &cfg)?;
    let mut w = sink(&a.output)?;
    serde_json::to_writer_pretty(&mut w, &reports)?;
    writeln!(w)?;
    w.flush()?;
    Ok(if reports.iter().all(|r| r.pass) { 0 } else { 1 })
}

fn cmd_classify(a: &ClassifyArgs) -> Result<i32> {
    let alpha = flux_of(&a.flux)?;
    let model = match &a.general {
        Some(g) => CouplingModel::General(GeneralCouplings::new(g[0], g[1], g[2])?),
        None => CouplingModel::Lieb { t: a.t },
    };
    let label = classify_regime(&alpha, a.flux.theta, model, a.depth)?;
    let mut out = io::stdout().lock();
    if a.json {
        serde_json::to_writer_pretty(&mut out, &label)?;
        writeln!(out)?;
    } else {
        writeln!(out, "{}", label.regime)?;
        for r in &label.reasons {
            writeln!(out, "  {r}")?;
        }
    }
    Ok(0)
}

fn cmd_lyapunov(a: &LyapunovArgs) -> Result<i32> {
    let alpha = flux_of(&a.flux)?;
    let values = a
        .energies
        .par_iter()
        .map(|&e| lyapunov(e, a.lambda, &alpha, a.flux.theta, a.steps))
        .collect::<Result<Vec<_>>>()?;
    let mut w = sink(&a.output)?;
    writeln!(w, "energy,lambda,lyapunov")?;
    for (e, l) in a.energies.iter().zip(values) {
        writeln!(w, "{},{},{}", g17(*e), g17(a.lambda), g17(l))?;
    }
    w.flush()?;
    Ok(0)
}

fn cmd_localize(a: &LocalizeArgs) -> Result<i32> {
    let alpha = flux_of(&a.flux)?;
    let window = Interval::new(a.emin, a.emax)?;
    let (m, tag) = match a.model {
        ModelArg::Lieb => (build_lieb_1d(&LiebParams::new(alpha.clone(), a.flux.theta, a.t)?, a.n, Boundary::Open)?, "lieb"),
        ModelArg::Amo => (build_amo(&alpha, a.flux.theta, a.t, a.n, Boundary::Open)?, "amo"),
        ModelArg::General => return Err(Error::Usage("localize supports the lieb and amo models".into())),
    };
    let rows: Vec<LocalizationRow> = eig_localization_profile(&m, window)?
        .into_iter()
        .filter(|s| a.model == ModelArg::Amo || s.eigenvalue.abs() > 1e-8)
        .map(|state| LocalizationRow {
            model: tag.into(),
            alpha_desc: alpha.label(),
            theta: a.flux.theta,
            t: a.t,
            n: a.n,
            state,
        })
        .collect();
    let mut w = sink(&a.output)?;
    write_localization_csv(&mut w, &rows)?;
    w.flush()?;
    Ok(0)
}

fn cmd_weyl(a: &WeylArgs) -> Result<i32> {
    let params = LiebParams::new(flux_of(&a.flux)?, a.flux.theta, a.t)?;
    let w = weyl_zero_residual(&params, a.k)?;
    println!("m = {}", w.m);
    println!("residual = {}", g17(w.residual));
    println!("bound = {}", g17(1.0 / a.k as f64));
    Ok(if w.report.pass { 0 } else { 1 })
}

pub fn execute(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Butterfly(a) => cmd_butterfly(a),
        Command::Bands(a) => cmd_bands(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Lyapunov(a) => cmd_lyapunov(a),
        Command::Localize(a) => cmd_localize(a),
        Command::Weyl(a) => cmd_weyl(a),
    }
}

/// Exit code for an error that escaped a subcommand.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Config(_) | Error::Domain(_) | Error::Parse { .. } | Error::Io(_) | Error::Csv(_) => 2,
        _ => 1,
    }
}

/// Parses `args`, configures the worker pool from `LIEB_SPECTRA_THREADS` and runs.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    if let Ok(n) = std::env::var("LIEB_SPECTRA_THREADS") {
        match n.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: LIEB_SPECTRA_THREADS must be a positive integer, got {n:?}");
                return 2;
            }
        }
    }
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
