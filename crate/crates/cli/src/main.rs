//! `negabeta`: expansions, admissibility, finiteness windows and pure
//! periodicity certificates from the command line.
//!
//! Exit status: 0 pass, 1 violations found, 2 usage or input error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use negabeta::{BaseContext, Error, QuadFamily};

#[derive(Parser)]
#[command(name = "negabeta", version, about = "Negative-base numeration in exact arithmetic")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Write the main output (rows for table commands) to this file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Orbit states allowed per expansion.
    #[arg(long, global = true, env = "NEGABETA_BUDGET", default_value_t = negabeta::expansion::DEFAULT_BUDGET)]
    budget: usize,
    /// Worker threads for scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct BaseArgs {
    /// Minimal polynomial, `[1,-3,1]` or `x^2-3*x+1`; the base is its largest real root.
    #[arg(long, conflicts_with_all = ["family", "m"])]
    poly: Option<String>,
    /// Quadratic family: minus (b^2 = m b - 1) or plus (b^2 = m b + 1).
    #[arg(long, requires = "m")]
    family: Option<QuadFamily>,
    #[arg(long, requires = "family")]
    m: Option<u32>,
}

impl BaseArgs {
    pub fn build(&self) -> Result<BaseContext, Error> {
        match (&self.poly, self.family, self.m) {
            (Some(p), _, _) => BaseContext::from_poly_str(p),
            (None, Some(f), Some(m)) => BaseContext::quadratic(f, m),
            _ => Err(Error::Parse("give --poly or --family with --m".into())),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Suite {
    Theorem4,
    Theorem7,
    ClosedForms,
    Example12,
    Example15,
}

#[derive(Subcommand)]
enum Command {
    /// Expansion of an element of Q(b).
    Expand {
        #[command(flatten)]
        base: BaseArgs,
        /// `p/q` or a polynomial in b, e.g. `3 - 2*b`.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Admissibility of an eventually periodic digit string.
    Admissible {
        #[command(flatten)]
        base: BaseArgs,
        /// `pre|period` (e.g. `0,2|2,2,1,1`) or a finite word followed by 0^w.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Conjugate-window verdicts against expansions on a lattice a + b(-b).
    Charset {
        #[arg(long)]
        family: QuadFamily,
        #[arg(long)]
        m: u32,
        /// Half-width of the lattice: |a|, |b| <= grid.
        #[arg(long, default_value_t = 25)]
        grid: i64,
    },
    /// Certificate of pure periodicity for a rational, or a refusal.
    Certify {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Least even N with ((-b)^N - 1)/q in Z[b].
    FindN {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long)]
        q: u64,
    },
    /// Empirical interval of pure periodicity around 0.
    Gamma {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long, default_value_t = 30)]
        qmax: u64,
    },
    /// Pure periodicity of every reduced p/q in the interval with q <= qmax.
    Scan {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long, default_value_t = 40)]
        qmax: u64,
        /// quadratic, none, or `lo,hi` (pure exactly on [lo, hi]).
        #[arg(long, default_value = "quadratic", allow_hyphen_values = true)]
        expect: String,
        /// Write rows as CSV instead of JSONL.
        #[arg(long)]
        csv: bool,
    },
    /// Batch suites with a PASS/FAIL verdict.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long)]
        m_min: Option<u32>,
        #[arg(long)]
        m_max: Option<u32>,
        #[arg(long, default_value_t = 40)]
        qmax: u64,
        /// Left endpoint digits for the example suites, e.g. `3,1`; repeatable.
        #[arg(long)]
        d: Vec<String>,
        #[arg(long, default_value_t = 10)]
        k_max: usize,
        #[arg(long, default_value_t = 200)]
        digits: usize,
    },
}

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Violations,
}

/// Settings shared by every command.
pub struct Ctx {
    pub json: bool,
    pub out: Option<PathBuf>,
    pub budget: usize,
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Inconsistent(_)) => 1,
        _ => 2,
    }
}

fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.downcast_ref::<std::io::Error>()
        .is_some_and(|e| e.kind() == std::io::ErrorKind::BrokenPipe)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = Ctx {
        json: cli.json,
        out: cli.out,
        budget: cli.budget,
    };
    let result = match cli.command {
        Command::Expand { base, x } => commands::expand(&ctx, &base, &x),
        Command::Admissible { base, word } => commands::admissible(&ctx, &base, &word),
        Command::Charset { family, m, grid } => commands::charset(&ctx, family, m, grid),
        Command::Certify { base, x } => commands::certify(&ctx, &base, &x),
        Command::FindN { base, q } => commands::find_n(&ctx, &base, q),
        Command::Gamma { base, qmax } => commands::gamma(&ctx, &base, qmax),
        Command::Scan {
            base,
            qmax,
            expect,
            csv,
        } => commands::scan(&ctx, &base, qmax, &expect, csv),
        Command::Verify {
            suite,
            m_min,
            m_max,
            qmax,
            d,
            k_max,
            digits,
        } => commands::verify(
            &ctx,
            &commands::VerifyArgs {
                suite,
                m_min,
                m_max,
                qmax,
                d,
                k_max,
                digits,
            },
        ),
    };
    match result {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Violations) => ExitCode::from(1),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
