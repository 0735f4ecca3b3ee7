//! `fracbinom`: coefficient tables, generating functions, partial sums,
//! Mittag-Leffler values, figure data and the verification suite.

mod table;

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use fracbinom_core::exact::rational_from_f64;
use fracbinom_core::figure::figure;
use fracbinom_core::fracbinom::binom;
use fracbinom_core::genfunc::{phi, phi_series};
use fracbinom_core::mittag::{mittag_leffler, ml_envelopes, ml_square_cauchy};
use fracbinom_core::partial_sum::{finite_sum, phibar, phibar_exact};
use fracbinom_core::verify::run_suite;
use fracbinom_core::{
    binom_half_exact, row_via_pascal, Beta, GenFuncRoute, MLQuery, PartialSumRoute, SeriesPolicy, Suite, SumId,
};

use table::{write_figure, write_json, Cell, Format, Table};

#[derive(Parser)]
#[command(
    name = "fracbinom",
    version,
    about = "Fractional binomial coefficients and their companions"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    /// Significant digits for floats.
    #[arg(long, global = true, default_value_t = 12)]
    precision: usize,
    /// Relative tolerance for series routes.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// [n k]_β for one k or a range `a:b`.
    Binom {
        #[arg(short)]
        n: u32,
        #[arg(short, allow_hyphen_values = true, value_parser = parse_k_range)]
        k: KRange,
        #[arg(long, default_value = "1/2", value_parser = parse_beta)]
        beta: Beta,
    },
    /// A row built by Pascal's rule at β = 1/2 (other β: direct evaluation).
    Row {
        #[arg(short)]
        n: u32,
        /// Inclusive k range, default 0:n.
        #[arg(short, allow_hyphen_values = true, value_parser = parse_k_range)]
        k: Option<KRange>,
        #[arg(long, default_value = "1/2", value_parser = parse_beta)]
        beta: Beta,
    },
    /// φ_n(t) = Σ_k [n k] t^k.
    Genfunc {
        #[arg(short)]
        n: u32,
        #[arg(short, allow_negative_numbers = true)]
        t: f64,
        /// series|recursive|closed|integral|asymptotic|all; default picks one.
        #[arg(long)]
        route: Option<String>,
    },
    /// φ̄_n(t) = Σ_{k=0}^n [n k] t^k, or a finite sum s1..s5 with --sum.
    PartialSum {
        #[arg(short)]
        n: u32,
        #[arg(short, allow_negative_numbers = true, default_value_t = 1.0)]
        t: f64,
        /// direct|recursive|closed|integral|all.
        #[arg(long, default_value = "closed")]
        route: String,
        #[arg(long, conflicts_with = "route")]
        sum: Option<String>,
    },
    /// E_β(x), optionally with its Cauchy square and the envelopes.
    Ml {
        #[arg(long, value_parser = parse_beta)]
        beta: Beta,
        #[arg(short, allow_negative_numbers = true)]
        x: f64,
        /// Terms of the Cauchy product for E_β(x)².
        #[arg(long)]
        square: Option<usize>,
        /// Print e₀(x), e∞(x) and E_β(−x^β) instead, for x > 0.
        #[arg(long, conflicts_with = "square")]
        envelopes: bool,
    },
    /// Data behind figure 1..5.
    Figure { id: u8 },
    /// Run an invariant suite; exit 1 if any check fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// TOML table of check name = threshold.
        #[arg(long)]
        thresholds: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy)]
struct KRange(i64, i64);

fn parse_k_range(s: &str) -> Result<KRange, String> {
    let int = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("bad k {t:?}"));
    match s.split_once(':') {
        Some((a, b)) => {
            let (a, b) = (int(a)?, int(b)?);
            if a > b {
                return Err(format!("empty k range {a}:{b}"));
            }
            Ok(KRange(a, b))
        }
        None => int(s).map(|k| KRange(k, k)),
    }
}

fn parse_beta(s: &str) -> Result<Beta, String> {
    Beta::from_str(s).map_err(|e| e.to_string())
}

enum Failure {
    /// Bad arguments, configuration or a request the library rejects.
    Usage(String),
    /// A verification check failed.
    Verify,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn policy(tol: Option<f64>) -> Result<SeriesPolicy, Failure> {
    let base = SeriesPolicy::default();
    match tol {
        None => Ok(base),
        Some(t) => Ok(SeriesPolicy::new(t, base.abs_tol, base.max_terms)?),
    }
}

fn exact_cell(beta: Beta, n: u32, k: i64) -> Cell {
    if beta.is_half() {
        Cell::Text(binom_half_exact(n, k).to_string())
    } else {
        Cell::Empty
    }
}

fn coefficient_table(n: u32, ks: KRange, beta: Beta) -> Result<Table, Failure> {
    let mut t = Table::new(vec!["n", "k", "exact", "value"]);
    for k in ks.0..=ks.1 {
        t.push(vec![
            Cell::Int(n as i64),
            Cell::Int(k),
            exact_cell(beta, n, k),
            Cell::Num(binom(n, k, beta)?),
        ]);
    }
    Ok(t)
}

fn pascal_table(n: u32, ks: KRange, beta: Beta) -> Result<Table, Failure> {
    if !beta.is_half() {
        return coefficient_table(n, ks, beta);
    }
    let row = row_via_pascal(n, ks.0, ks.1)?;
    let mut t = Table::new(vec!["n", "k", "exact", "value"]);
    for (k, v) in row.iter() {
        t.push(vec![
            Cell::Int(n as i64),
            Cell::Int(k),
            Cell::Text(v.to_string()),
            Cell::Num(v.to_f64()),
        ]);
    }
    Ok(t)
}

fn genfunc_table(n: u32, t: f64, route: Option<&str>, series: &SeriesPolicy) -> Result<Table, Failure> {
    let routes: Vec<Option<GenFuncRoute>> = match route {
        None => vec![None],
        Some("all") => GenFuncRoute::ALL.into_iter().map(Some).collect(),
        Some(r) => vec![Some(r.parse()?)],
    };
    let mut table = Table::new(vec!["n", "t", "route", "value", "tail_bound"]);
    for r in routes {
        let (route, value, bound) = match r {
            Some(GenFuncRoute::Series) => {
                let out = phi_series(n, t, series)?;
                if !out.converged {
                    return Err(Failure::Usage(format!(
                        "φ_{n}({t}) series stopped at bound {:e} after {} terms; loosen --tol",
                        out.tail_bound, out.terms_used
                    )));
                }
                (GenFuncRoute::Series, out.value, Cell::Num(out.tail_bound))
            }
            other => {
                let p = phi(n, t, other)?;
                (p.route, p.value, Cell::Empty)
            }
        };
        table.push(vec![
            Cell::Int(n as i64),
            Cell::Num(t),
            Cell::Text(route.to_string()),
            Cell::Num(value),
            bound,
        ]);
    }
    Ok(table)
}

fn partial_sum_table(n: u32, t: f64, route: &str) -> Result<Table, Failure> {
    let routes: Vec<PartialSumRoute> = if route == "all" {
        PartialSumRoute::ALL.to_vec()
    } else {
        vec![route.parse()?]
    };
    // exact only when t has a short binary expansion
    let exact = rational_from_f64(t)
        .filter(|q| q.denom().bits() <= 16)
        .map(|q| phibar_exact(n, &q).to_string());
    let mut table = Table::new(vec!["n", "t", "route", "exact", "value"]);
    for r in routes {
        let p = phibar(n, t, r)?;
        let e = exact.clone().map_or(Cell::Empty, Cell::Text);
        table.push(vec![
            Cell::Int(n as i64),
            Cell::Num(t),
            Cell::Text(r.to_string()),
            e,
            Cell::Num(p.value),
        ]);
    }
    Ok(table)
}

fn finite_sum_table(n: u32, id: &str) -> Result<Table, Failure> {
    let id: SumId = id.parse()?;
    let s = finite_sum(id, n)?;
    let mut table = Table::new(vec!["n", "sum", "lhs", "rhs", "holds", "value"]);
    table.push(vec![
        Cell::Int(n as i64),
        Cell::Text(id.to_string()),
        Cell::Text(s.lhs.to_string()),
        Cell::Text(s.rhs.to_string()),
        Cell::Bool(s.holds()),
        Cell::Num(s.lhs.to_f64()),
    ]);
    Ok(table)
}

fn ml_table(
    beta: Beta,
    x: f64,
    square: Option<usize>,
    envelopes: bool,
    series: SeriesPolicy,
) -> Result<Table, Failure> {
    let b = beta.value();
    if envelopes {
        let (e0, einf) = ml_envelopes(b, x)?;
        let along = mittag_leffler(&MLQuery::new(b, -x.powf(b)).with_policy(series))?.value;
        let mut table = Table::new(vec!["beta", "x", "ml_at_minus_x_beta", "e0", "e_inf"]);
        table.push(vec![
            Cell::Num(b),
            Cell::Num(x),
            Cell::Num(along),
            Cell::Num(e0),
            Cell::Num(einf),
        ]);
        return Ok(table);
    }
    let mut header = vec!["beta", "x", "value", "tail_bound", "terms"];
    let out = mittag_leffler(&MLQuery::new(b, x).with_policy(series))?;
    let mut row = vec![
        Cell::Num(b),
        Cell::Num(x),
        Cell::Num(out.value),
        Cell::Num(out.tail_bound),
        Cell::Int(out.terms_used as i64),
    ];
    if let Some(terms) = square {
        header.extend(["square", "cauchy_square"]);
        row.extend([
            Cell::Num(out.value * out.value),
            Cell::Num(ml_square_cauchy(b, x, terms)?),
        ]);
    }
    let mut table = Table::new(header);
    table.push(row);
    Ok(table)
}

fn read_thresholds(path: &Path) -> Result<BTreeMap<String, f64>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let doc: toml::Table = text
        .parse()
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    doc.into_iter()
        .map(|(name, v)| match v {
            toml::Value::Float(f) => Ok((name, f)),
            toml::Value::Integer(i) => Ok((name, i as f64)),
            other => Err(Failure::Usage(format!(
                "threshold {name} must be a number, got {other}"
            ))),
        })
        .collect()
}

fn verify(suite: &str, thresholds: Option<&Path>, format: Format) -> CmdResult {
    let suite: Suite = suite.parse()?;
    let overrides = match thresholds {
        Some(p) => read_thresholds(p)?,
        None => BTreeMap::new(),
    };
    let report = run_suite(suite, &overrides)?;
    let stdout = io::stdout().lock();
    match format {
        Format::Json => write_json(stdout, &serde_json::to_value(&report)?)?,
        Format::Csv => {
            let mut t = Table::new(vec![
                "status",
                "name",
                "cases",
                "max_residual",
                "threshold",
                "worst_case",
            ]);
            for c in &report.checks {
                t.push(vec![
                    Cell::Text(if c.passed { "PASS" } else { "FAIL" }.into()),
                    Cell::Text(c.name.clone()),
                    Cell::Int(c.cases as i64),
                    Cell::Num(c.max_residual),
                    Cell::Num(c.threshold),
                    Cell::Text(c.worst_case.clone()),
                ]);
            }
            t.write(stdout, Format::Csv, 4)?;
        }
    }
    let failed = report.failures().count();
    eprintln!("suite {suite}: {} checks, {failed} failed", report.checks.len());
    if failed > 0 {
        Err(Failure::Verify)
    } else {
        Ok(())
    }
}

fn run(cli: Cli) -> CmdResult {
    let Common { format, precision, tol } = cli.common;
    if !(1..=17).contains(&precision) {
        return Err(Failure::Usage(format!(
            "--precision must lie in 1..=17, got {precision}"
        )));
    }
    let series = policy(tol)?;
    let table = match cli.command {
        Command::Binom { n, k, beta } => coefficient_table(n, k, beta)?,
        Command::Row { n, k, beta } => pascal_table(n, k.unwrap_or(KRange(0, n as i64)), beta)?,
        Command::Genfunc { n, t, route } => genfunc_table(n, t, route.as_deref(), &series)?,
        Command::PartialSum { n, t, route, sum } => match sum {
            Some(id) => finite_sum_table(n, &id)?,
            None => partial_sum_table(n, t, &route)?,
        },
        Command::Ml {
            beta,
            x,
            square,
            envelopes,
        } => ml_table(beta, x, square, envelopes, series)?,
        Command::Figure { id } => {
            let fig = figure(id)?;
            write_figure(io::stdout().lock(), &fig, format, precision)?;
            return Ok(());
        }
        Command::Verify { suite, thresholds } => return verify(&suite, thresholds.as_deref(), format),
    };
    table.write(io::stdout().lock(), format, precision)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(io::stderr(), "fracbinom: {msg}");
            ExitCode::from(2)
        }
    }
}
