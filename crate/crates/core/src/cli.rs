//! Command-line front end.
//!
//! Exit codes: 0 on success or when every verification case passes, 1 when a
//! verification case fails, 2 on usage or domain errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::exact::{alternating_sum, closed_form, IntegralSpec};
use crate::oracle::{self, lemma1_residual};
use crate::render::{Format, RenderRequest, DEFAULT_DIGITS};
use crate::series::{maclaurin_combination_is_zero, sin_pow_series};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Frequencies probed by `verify lemma`.
pub const LEMMA_ALPHAS: [f64; 3] = [1.0, 2.0, 3.0];
/// Cut-offs at which the `q = 1` residual must vanish.
pub const LEMMA_BASE_EPS: [f64; 2] = [1e-1, 1.0];
/// Bound on the `q = 1` residual, which is zero apart from quadrature error.
pub const LEMMA_BASE_TOLERANCE: f64 = 1e-9;
/// Cut-offs at which the `q >= 2` residual is compared.
pub const LEMMA_COARSE_EPS: f64 = 1e-1;
pub const LEMMA_FINE_EPS: f64 = 1e-3;
/// Frozen from a calibration run over `q ∈ 2..=6`, `α ∈ {1, 2, 3}`: the
/// largest residual at `ε = 1e-3` was 0.0101 (`q = 4`, `α = 3`).
pub const LEMMA_FINE_THRESHOLD: f64 = 0.02;
/// Pass threshold of `verify oracle` relative to the requested tolerance.
pub const ORACLE_SLACK: f64 = 10.0;

#[derive(Debug, Parser)]
#[command(name = "sincint", version, about = "Exact values of ∫₀^∞ sinⁿx / x^q dx")]
struct Cli {
    /// Also write stdout to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Exact,
    Decimal,
    Latex,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Exact => Format::Exact,
            FormatArg::Decimal => Format::Decimal,
            FormatArg::Latex => Format::Latex,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate I(n, q).
    Eval {
        #[arg(allow_hyphen_values = true)]
        n: i64,
        #[arg(allow_hyphen_values = true)]
        q: i64,
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        digits: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Exact)]
        format: FormatArg,
    },
    /// Print every convergent I(n, q) with q <= n <= N.
    Table {
        #[arg(long)]
        n_max: u32,
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        digits: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Exact)]
        format: FormatArg,
    },
    /// Run one of the verification suites.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Debug, Subcommand)]
enum Suite {
    /// The alternating binomial sum vanishes for n > q >= 2, n + q odd.
    Identity {
        #[arg(long)]
        n_max: u32,
    },
    /// The truncated exponential combination and the sinⁿx series vanish below order n.
    Series {
        #[arg(long)]
        n_max: u32,
    },
    /// Closed forms against direct quadrature.
    Oracle {
        #[arg(long)]
        n_max: u32,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Residuals of the truncated-exponential integral decomposition.
    Lemma {
        #[arg(long)]
        q_max: u32,
    },
}

/// Outcome of a verification suite: report lines and whether all passed.
struct Report {
    lines: Vec<String>,
    passed: bool,
}

impl Report {
    fn summary(cases: usize, failures: Vec<String>) -> Self {
        let passed = failures.is_empty();
        let mut lines = failures;
        if passed {
            lines.push(format!("PASS ({cases} cases)"));
        } else {
            lines.push(format!("FAIL ({} failures in {cases} cases)", lines.len()));
        }
        Self { lines, passed }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn cli_main<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };

    let (text, code) = match run(&cli.command) {
        Ok((text, code)) => (text, code),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    if stdout.write_all(text.as_bytes()).is_err() {
        return EXIT_USAGE;
    }
    code
}

fn render_one(spec: IntegralSpec, format: FormatArg, digits: usize) -> Result<String> {
    let value = closed_form(spec)?;
    RenderRequest::new(value, format.into(), digits)?.render(spec)
}

fn run(command: &Command) -> Result<(String, i32)> {
    let mut out = String::new();
    match command {
        Command::Eval { n, q, digits, format } => {
            let spec = IntegralSpec::new(*n, *q)?;
            out.push_str(&render_one(spec, *format, *digits)?);
            out.push('\n');
            Ok((out, EXIT_OK))
        }
        Command::Table { n_max, digits, format } => {
            for spec in IntegralSpec::all_convergent(*n_max) {
                let text = render_one(spec, *format, *digits)?;
                match format {
                    FormatArg::Json => out.push_str(&text),
                    _ => out.push_str(&format!("{} {} {}", spec.n(), spec.q(), text)),
                }
                out.push('\n');
            }
            Ok((out, EXIT_OK))
        }
        Command::Verify { suite } => {
            let report = match suite {
                Suite::Identity { n_max } => verify_identity(*n_max)?,
                Suite::Series { n_max } => verify_series(*n_max)?,
                Suite::Oracle { n_max, tol } => verify_oracle(*n_max, *tol)?,
                Suite::Lemma { q_max } => verify_lemma(*q_max)?,
            };
            for line in &report.lines {
                out.push_str(line);
                out.push('\n');
            }
            Ok((out, if report.passed { EXIT_OK } else { EXIT_FAILED }))
        }
    }
}

fn verify_identity(n_max: u32) -> Result<Report> {
    let mut cases = 0;
    let mut failures = Vec::new();
    for n in 3..=n_max {
        for q in (2..n).filter(|q| (n + q) % 2 == 1) {
            cases += 1;
            let sum = alternating_sum(n, q)?;
            if sum != 0.into() {
                failures.push(format!("n={n} q={q}: sum = {sum}"));
            }
        }
    }
    Ok(Report::summary(cases, failures))
}

fn verify_series(n_max: u32) -> Result<Report> {
    let mut cases = 0;
    let mut failures = Vec::new();
    for n in 1..=n_max {
        for q in 1..=n {
            cases += 1;
            if !maclaurin_combination_is_zero(n, q)? {
                failures.push(format!("n={n} q={q}: exponential combination is nonzero"));
            }
            if q >= 2 && !sin_pow_series(n, (q - 2) as usize)?.is_zero() {
                failures.push(format!("n={n} q={q}: sin^n series is nonzero below order q-1"));
            }
        }
    }
    Ok(Report::summary(cases, failures))
}

fn verify_oracle(n_max: u32, tol: f64) -> Result<Report> {
    if tol.is_nan() || tol < oracle::MIN_TOLERANCE {
        return Err(Error::Domain(format!("--tol must be at least {:e}", oracle::MIN_TOLERANCE)));
    }
    let specs = IntegralSpec::all_convergent(n_max);
    let results = oracle::integrate_many(&specs, tol);
    let mut lines = Vec::new();
    let mut failures = 0;
    for (spec, result) in specs.iter().zip(results) {
        let exact = closed_form(*spec)?.to_f64();
        let line = match result {
            Ok(r) => {
                let diff = (r.value - exact).abs();
                let ok = diff <= ORACLE_SLACK * tol;
                failures += usize::from(!ok);
                format!(
                    "{} n={} q={} exact={exact:.12} quad={:.12} diff={diff:.2e} bound={:.2e}",
                    if ok { "ok  " } else { "FAIL" },
                    spec.n(),
                    spec.q(),
                    r.value,
                    r.error_bound
                )
            }
            Err(e) => {
                failures += 1;
                format!("FAIL n={} q={} {e}", spec.n(), spec.q())
            }
        };
        lines.push(line);
    }
    let passed = failures == 0;
    lines.push(if passed {
        format!("PASS ({} cases)", specs.len())
    } else {
        format!("FAIL ({failures} of {} cases)", specs.len())
    });
    Ok(Report { lines, passed })
}

fn verify_lemma(q_max: u32) -> Result<Report> {
    let mut lines = Vec::new();
    let mut cases = 0;
    let mut failures = 0;
    for q in 1..=q_max {
        for alpha in LEMMA_ALPHAS {
            cases += 1;
            let (ok, detail) = if q == 1 {
                let worst = LEMMA_BASE_EPS
                    .iter()
                    .map(|&eps| lemma1_residual(1, alpha, eps).map(|r| r.norm()))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .fold(0.0, f64::max);
                (worst <= LEMMA_BASE_TOLERANCE, format!("max|w|={worst:.2e}"))
            } else {
                let coarse = lemma1_residual(q, alpha, LEMMA_COARSE_EPS)?.norm();
                let fine = lemma1_residual(q, alpha, LEMMA_FINE_EPS)?.norm();
                let ok = fine < coarse && fine <= LEMMA_FINE_THRESHOLD;
                (ok, format!("|w(1e-1)|={coarse:.3e} |w(1e-3)|={fine:.3e}"))
            };
            failures += usize::from(!ok);
            lines.push(format!("{} q={q} alpha={alpha} {detail}", if ok { "ok  " } else { "FAIL" }));
        }
    }
    let passed = failures == 0;
    lines.push(if passed {
        format!("PASS ({cases} cases)")
    } else {
        format!("FAIL ({failures} of {cases} cases)")
    });
    Ok(Report { lines, passed })
}
