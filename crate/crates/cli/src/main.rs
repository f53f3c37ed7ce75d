//! Command-line front end for the exact representation-number library.
//!
//! Table subcommands (`expand`, `counts`, `eisenstein`) print CSV by default
//! and JSON on request; checker subcommands (`verify-identity`,
//! `verify-relations`, `ratio`) print a JSON report by default; `selftest`
//! prints one line per cross-check.
//!
//! Exit codes: 0 success or claim verified, 1 claim refuted or self-test
//! failure, 2 usage or domain error.

mod selftest;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use trisq::counts::count_vec;
use trisq::decomposition::{build_plan, FormParams, Side};
use trisq::verify::{
    check_eisenstein_relations, check_exact_identity, check_ratio_convergence, parse_rational,
    rational_string, ExactIdentityClaim, RatioCase, VerificationReport,
};
use trisq::{eta_quotient_series, ipow, Variant};

#[derive(Parser)]
#[command(
    name = "trisq",
    version,
    about = "Representation numbers of x_1^2 + ... + x_a^2 + 3 y_1^2 + ... + 3 y_b^2: \
             q-expansions, Eisenstein components, and exact identity checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print q-expansion coefficients of a counting series or an eta quotient
    Expand(ExpandArgs),
    /// Tabulate the all-integer, all-odd, and four-free counts of one form
    Counts(CountsArgs),
    /// Tabulate Eisenstein and cusp components along the progression m = a + 3b (mod 8)
    Eisenstein(EisensteinArgs),
    /// Check that the all-odd count is an exact constant multiple of the
    /// all-integer count (or of the four-free count)
    VerifyIdentity(VerifyIdentityArgs),
    /// Check the exact relations between the two Eisenstein coefficient functions
    VerifyRelations(VerifyRelationsArgs),
    /// Measure convergence of the ratio of counts to its exact limit
    Ratio(RatioArgs),
    /// Run the built-in cross-check suite
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    /// Solutions over all integers
    All,
    /// Solutions with every coordinate odd
    Odd,
    /// Four-free count: all-integer solutions at m minus those at m/4
    Tilde,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::All => Variant::All,
            VariantArg::Odd => Variant::Odd,
            VariantArg::Tilde => Variant::Tilde,
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format (tables default to csv, reports to json)
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to a file instead of stdout
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExpandArgs {
    /// Number of x^2 terms
    #[arg(short, long, required_unless_present = "eta")]
    a: Option<u32>,
    /// Number of 3 y^2 terms
    #[arg(short, long, required_unless_present = "eta")]
    b: Option<u32>,
    /// Which counting series to expand
    #[arg(long, value_enum, default_value_t = VariantArg::All)]
    variant: VariantArg,
    /// Expand an eta quotient instead, as comma-separated d:e factors,
    /// e.g. "16:2,8:-1" for eta(16z)^2 / eta(8z)
    #[arg(long, value_name = "FACTORS", conflicts_with_all = ["a", "b"])]
    eta: Option<String>,
    /// Number of coefficients to print
    #[arg(short, long, env = "TRISQ_PRECISION", default_value_t = 64)]
    precision: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct CountsArgs {
    /// Number of x^2 terms
    #[arg(short, long)]
    a: u32,
    /// Number of 3 y^2 terms
    #[arg(short, long)]
    b: u32,
    /// Largest target integer m to tabulate
    #[arg(long, default_value_t = 32)]
    nmax: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct EisensteinArgs {
    /// Number of x^2 terms (a + b must be even and at least 4)
    #[arg(short, long)]
    a: u32,
    /// Number of 3 y^2 terms
    #[arg(short, long)]
    b: u32,
    /// Number of progression indices m = a + 3b + 8n to tabulate
    #[arg(long, default_value_t = 50)]
    nmax: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct VerifyIdentityArgs {
    /// Number of x^2 terms
    #[arg(short, long)]
    a: u32,
    /// Number of 3 y^2 terms
    #[arg(short, long)]
    b: u32,
    /// Compare against the four-free count instead of the all-integer count
    #[arg(long)]
    tilde: bool,
    /// Claimed constant as p or p/q; inferred from the first nonzero index
    /// when absent
    #[arg(long, value_name = "RATIONAL")]
    constant: Option<String>,
    /// Number of progression indices to scan (default: the Sturm depth
    /// 64 (a + b))
    #[arg(long)]
    depth: Option<u64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct VerifyRelationsArgs {
    /// Number of x^2 terms (a + b must be even and at least 4)
    #[arg(short, long)]
    a: u32,
    /// Number of 3 y^2 terms
    #[arg(short, long)]
    b: u32,
    /// Number of progression indices to scan
    #[arg(long, default_value_t = 100)]
    depth: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct RatioArgs {
    /// Number of x^2 terms (needs a >= 2)
    #[arg(short, long)]
    a: u32,
    /// Number of 3 y^2 terms
    #[arg(short, long)]
    b: u32,
    /// Number of progression indices to inspect
    #[arg(long, default_value_t = 2000)]
    nmax: u64,
    /// Fix the 2-adic valuation of the inspected indices (needs 8 | a + 3b
    /// and nu >= 3)
    #[arg(long, conflicts_with = "tilde")]
    nu: Option<u32>,
    /// Compare against the four-free count (needs 4 | a + 3b)
    #[arg(long)]
    tilde: bool,
    /// Largest tolerated absolute error over the top decile of indices
    #[arg(long, default_value_t = 0.02)]
    tolerance: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct SelftestArgs {
    /// Series precision used by the expansion checks
    #[arg(short, long, default_value_t = 256)]
    precision: usize,
    /// Number of progression indices scanned by the identity checks
    #[arg(short, long, default_value_t = 100)]
    depth: u64,
    /// Corrupt one decomposition plan to prove the suite can fail
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<selftest::FaultCase>,
    /// Write to a file instead of stdout
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

/// A rendered table: column names plus stringified rows.
struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut s = String::new();
                s.push_str(&self.columns.join(","));
                s.push('\n');
                for row in &self.rows {
                    s.push_str(&row.join(","));
                    s.push('\n');
                }
                s
            }
            Format::Json => {
                let value = serde_json::json!({
                    "columns": self.columns,
                    "rows": self.rows,
                });
                let mut s = serde_json::to_string_pretty(&value).expect("tables serialize");
                s.push('\n');
                s
            }
        }
    }
}

fn render_report(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("index,lhs,rhs\n");
            for row in &report.table {
                s.push_str(&format!("{},{},{}\n", row.index, row.lhs, row.rhs));
            }
            s
        }
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), String> {
    let res = match output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    res.map_err(|e| e.to_string())
}

fn report_exit(report: &VerificationReport) -> ExitCode {
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// `{:.11e}` rendering of a rational, for the approximate columns.
fn approx(r: &BigRational) -> String {
    match r.to_f64() {
        Some(x) => format!("{x:.11e}"),
        None => "overflow".into(),
    }
}

fn parse_eta_factors(text: &str) -> Result<Vec<(u64, i64)>, String> {
    let mut factors = Vec::new();
    for part in text.split(',') {
        let (d, e) = part
            .split_once(':')
            .ok_or_else(|| format!("bad eta factor {part:?}: expected d:e"))?;
        let d: u64 = d
            .trim()
            .parse()
            .map_err(|_| format!("bad dilation in eta factor {part:?}"))?;
        let e: i64 = e
            .trim()
            .parse()
            .map_err(|_| format!("bad exponent in eta factor {part:?}"))?;
        if d == 0 {
            return Err(format!("dilation must be >= 1 in eta factor {part:?}"));
        }
        factors.push((d, e));
    }
    Ok(factors)
}

fn cmd_expand(args: ExpandArgs) -> Result<ExitCode, String> {
    let rows: Vec<Vec<String>> = if let Some(factors_text) = &args.eta {
        let factors = parse_eta_factors(factors_text)?;
        let series = eta_quotient_series(&factors, args.precision).map_err(|e| e.to_string())?;
        series
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| vec![n.to_string(), rational_string(c)])
            .collect()
    } else {
        let (a, b) = (args.a.expect("required by clap"), args.b.expect("required by clap"));
        count_vec(a, b, args.variant.into(), args.precision)
            .iter()
            .enumerate()
            .map(|(n, c)| vec![n.to_string(), c.to_string()])
            .collect()
    };
    let table = Table {
        columns: vec!["n", "coefficient"],
        rows,
    };
    emit(
        &table.render(args.out.format.unwrap_or(Format::Csv)),
        args.out.output.as_ref(),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_counts(args: CountsArgs) -> Result<ExitCode, String> {
    let prec = args.nmax as usize + 1;
    let all = count_vec(args.a, args.b, Variant::All, prec);
    let odd = count_vec(args.a, args.b, Variant::Odd, prec);
    let tilde = count_vec(args.a, args.b, Variant::Tilde, prec);
    let rows = (0..prec)
        .map(|n| {
            vec![
                n.to_string(),
                all[n].to_string(),
                odd[n].to_string(),
                tilde[n].to_string(),
            ]
        })
        .collect();
    let table = Table {
        columns: vec!["n", "all_integer", "all_odd", "four_free"],
        rows,
    };
    emit(
        &table.render(args.out.format.unwrap_or(Format::Csv)),
        args.out.output.as_ref(),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_eisenstein(args: EisensteinArgs) -> Result<ExitCode, String> {
    if args.nmax == 0 {
        return Err("--nmax must be at least 1".into());
    }
    let params = FormParams::new(args.a, args.b).map_err(|e| e.to_string())?;
    let offset = params.offset() as u64;
    let prec = (offset + 8 * (args.nmax - 1) + 1) as usize;
    let psi_plan = build_plan(&params, Side::Psi);
    let phi_plan = build_plan(&params, Side::Phi);
    let star = count_vec(args.a, args.b, Variant::Odd, prec);
    let all = count_vec(args.a, args.b, Variant::All, prec);
    let norm = BigRational::from(ipow(2, args.a + args.b));

    let mut rows = Vec::with_capacity(args.nmax as usize);
    for n in 0..args.nmax {
        let m = offset + 8 * n;
        let alpha = psi_plan.coefficient(m);
        let beta = phi_plan.coefficient(m);
        let gamma = BigRational::from(BigInt::from(star[m as usize])) / &norm - &alpha;
        let gamma_prime = BigRational::from(BigInt::from(all[m as usize])) - &beta;
        rows.push(vec![
            n.to_string(),
            m.to_string(),
            rational_string(&alpha),
            rational_string(&beta),
            rational_string(&gamma),
            rational_string(&gamma_prime),
            approx(&alpha),
        ]);
    }
    let table = Table {
        columns: vec!["n", "m", "alpha", "beta", "gamma", "gamma_prime", "alpha_approx"],
        rows,
    };
    emit(
        &table.render(args.out.format.unwrap_or(Format::Csv)),
        args.out.output.as_ref(),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify_identity(args: VerifyIdentityArgs) -> Result<ExitCode, String> {
    let mut claim =
        ExactIdentityClaim::new(args.a, args.b, args.tilde).map_err(|e| e.to_string())?;
    if let Some(text) = &args.constant {
        claim.constant = Some(parse_rational(text).map_err(|e| e.to_string())?);
    }
    if let Some(depth) = args.depth {
        claim.depth = depth;
    }
    let report = check_exact_identity(&claim).map_err(|e| e.to_string())?;
    emit(
        &render_report(&report, args.out.format.unwrap_or(Format::Json)),
        args.out.output.as_ref(),
    )?;
    Ok(report_exit(&report))
}

fn cmd_verify_relations(args: VerifyRelationsArgs) -> Result<ExitCode, String> {
    let report =
        check_eisenstein_relations(args.a, args.b, args.depth).map_err(|e| e.to_string())?;
    emit(
        &render_report(&report, args.out.format.unwrap_or(Format::Json)),
        args.out.output.as_ref(),
    )?;
    Ok(report_exit(&report))
}

fn cmd_ratio(args: RatioArgs) -> Result<ExitCode, String> {
    let case = if args.tilde {
        RatioCase::Tilde
    } else if let Some(nu) = args.nu {
        RatioCase::TwoAdic(nu)
    } else {
        RatioCase::Plain
    };
    let report = check_ratio_convergence(args.a, args.b, case, args.nmax, args.tolerance)
        .map_err(|e| e.to_string())?;
    emit(
        &render_report(&report, args.out.format.unwrap_or(Format::Json)),
        args.out.output.as_ref(),
    )?;
    Ok(report_exit(&report))
}

fn cmd_selftest(args: SelftestArgs) -> Result<ExitCode, String> {
    let cfg = selftest::Config {
        precision: args.precision,
        depth: args.depth,
        fault: args.inject_fault,
    };
    let (text, ok) = selftest::run(&cfg);
    emit(&text, args.output.as_ref())?;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Expand(args) => cmd_expand(args),
        Command::Counts(args) => cmd_counts(args),
        Command::Eisenstein(args) => cmd_eisenstein(args),
        Command::VerifyIdentity(args) => cmd_verify_identity(args),
        Command::VerifyRelations(args) => cmd_verify_relations(args),
        Command::Ratio(args) => cmd_ratio(args),
        Command::Selftest(args) => cmd_selftest(args),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
