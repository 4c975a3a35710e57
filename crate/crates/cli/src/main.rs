//! sylvkit: batch solver and checker for dense complex operator equations.
//!
//! Subcommands: `solve` runs a JSON job file; `fp` checks the
//! adjoint-intertwining property of a pair; `classify` tests an operator
//! class predicate; `approx` computes the Frobenius-best commutator
//! approximant; `separation` reports spectral geometry of a pair. Reports
//! go to --out (default stdout) as JSON or CSV; diagnostics to stderr.
//! Exit codes: 0 success, 1 usage or parse failure, 2 solver-declared
//! failure.

mod error;
mod job;
mod mm;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use sylvkit_core::approx::best_commutator_approx_frobenius;
use sylvkit_core::rothfp::{check_fp_pair, check_operator_class, ClassQuery};
use sylvkit_core::separation::spectral_separation;
use sylvkit_core::Config;

use error::{CliError, Result};
use mm::read_matrix;
use report::{
    approx_csv, class_csv, fp_csv, separation_csv, to_json, CheckArtifact, ClassArtifactBody,
    ReportFormat, SCHEMA, TOOL, VERSION,
};

#[derive(Parser)]
#[command(name = "sylvkit", version, about = "Dense complex operator-equation toolkit")]
struct Cli {
    /// Override the solver acceptance tolerance (relative).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed echoed into reports (solves themselves are deterministic).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Report destination; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, global = true, value_enum)]
    format: Option<ReportFormat>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a JSON job file describing one equation.
    Solve {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Check the adjoint-intertwining property for the pair (A, B).
    Fp {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Test an operator-class predicate on A.
    Classify {
        #[arg(long)]
        a: PathBuf,
        /// One of: normal, hyponormal, quasi, p_hypo (needs --p),
        /// k_quasi (needs --k).
        #[arg(long = "class")]
        class: String,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        p: Option<f64>,
    },
    /// Frobenius-best approximation of B by AX - XC.
    Approx {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        c: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Spectral separation geometry of the pair (A, B).
    Separation {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

fn emit(out: Option<&PathBuf>, text: String) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_class_query(class: &str, k: Option<u32>, p: Option<f64>) -> Result<ClassQuery> {
    match class {
        "normal" => Ok(ClassQuery::normal()),
        "hyponormal" => Ok(ClassQuery::hyponormal()),
        "quasi" | "quasihyponormal" => Ok(ClassQuery::quasihyponormal()),
        "p_hypo" | "p_hyponormal" => {
            let p = p.ok_or_else(|| CliError::Usage("--class p_hypo needs --p".into()))?;
            Ok(ClassQuery::p_hyponormal(p)?)
        }
        "k_quasi" | "k_quasihyponormal" => {
            let k = k.ok_or_else(|| CliError::Usage("--class k_quasi needs --k".into()))?;
            Ok(ClassQuery::k_quasihyponormal(k)?)
        }
        other => Err(CliError::Usage(format!(
            "unknown class {other:?}; expected normal, hyponormal, quasi, p_hypo, or k_quasi"
        ))),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut config = Config::default();
    if let Some(tol) = cli.tol {
        config.solve_tol = tol;
    }
    let format = cli.format.unwrap_or_default();

    match &cli.command {
        Command::Solve { spec } => {
            let outcome = job::run_job(
                spec,
                cli.tol,
                cli.seed,
                cli.out.as_deref(),
                cli.format,
            )?;
            Ok(if outcome.accepted {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Fp { a, b } => {
            let ma = read_matrix(a)?;
            let mb = read_matrix(b)?;
            let started = Instant::now();
            let fp = check_fp_pair(&ma, &mb, &config)?;
            let artifact = CheckArtifact {
                schema: SCHEMA,
                tool: TOOL,
                version: VERSION,
                command: "fp",
                seed: cli.seed,
                report: &fp,
                wall_ms: started.elapsed().as_secs_f64() * 1e3,
            };
            let text = match format {
                ReportFormat::Json => to_json(&artifact),
                ReportFormat::Csv => fp_csv(&artifact),
            };
            emit(cli.out.as_ref(), text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { a, class, k, p } => {
            let ma = read_matrix(a)?;
            let query = parse_class_query(class, *k, *p)?;
            let name = query.name();
            let started = Instant::now();
            let class_report = check_operator_class(&ma, query, &config)?;
            let artifact = CheckArtifact {
                schema: SCHEMA,
                tool: TOOL,
                version: VERSION,
                command: "classify",
                seed: cli.seed,
                report: ClassArtifactBody {
                    class: name,
                    report: &class_report,
                },
                wall_ms: started.elapsed().as_secs_f64() * 1e3,
            };
            let text = match format {
                ReportFormat::Json => to_json(&artifact),
                ReportFormat::Csv => class_csv(&artifact),
            };
            emit(cli.out.as_ref(), text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Approx { a, c, b } => {
            let ma = read_matrix(a)?;
            let mc = read_matrix(c)?;
            let mb = read_matrix(b)?;
            let started = Instant::now();
            let result = best_commutator_approx_frobenius(&ma, &mc, &mb, &config)?;
            let artifact = CheckArtifact {
                schema: SCHEMA,
                tool: TOOL,
                version: VERSION,
                command: "approx",
                seed: cli.seed,
                report: &result,
                wall_ms: started.elapsed().as_secs_f64() * 1e3,
            };
            let text = match format {
                ReportFormat::Json => to_json(&artifact),
                ReportFormat::Csv => approx_csv(&artifact),
            };
            emit(cli.out.as_ref(), text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Separation { a, b } => {
            let ma = read_matrix(a)?;
            let mb = read_matrix(b)?;
            let started = Instant::now();
            let sep = spectral_separation(&ma, &mb, &config)?;
            let artifact = CheckArtifact {
                schema: SCHEMA,
                tool: TOOL,
                version: VERSION,
                command: "separation",
                seed: cli.seed,
                report: &sep,
                wall_ms: started.elapsed().as_secs_f64() * 1e3,
            };
            let text = match format {
                ReportFormat::Json => to_json(&artifact),
                ReportFormat::Csv => separation_csv(&artifact),
            };
            emit(cli.out.as_ref(), text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            // Help and version are successful outputs, not usage errors.
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code())
        }
    }
}
