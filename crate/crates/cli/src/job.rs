//! Batch job specification and dispatch. A job names one equation by its
//! coefficient files, picks a method (or `auto`), and says where the report
//! goes. File paths inside the job resolve relative to the job file.

use std::path::Path;
use std::time::Instant;

use serde::Deserialize;
use sylvkit_core::separation::spectral_separation;
use sylvkit_core::solve::{
    solve_monkeypox, solve_pencil_contour, solve_pencil_direct, solve_stein_series,
    solve_sylvester_contour, solve_sylvester_direct, solve_sylvester_exp_integral,
    solve_sylvester_power_series, EquationSpec, Method, SolveReport,
};
use sylvkit_core::{ComplexMatrix, Config, Error};

use crate::error::{CliError, Result};
use crate::mm::{read_matrix, sibling_path, write_matrix_file};
use crate::report::{to_json, ReportFormat, SolveArtifact, SCHEMA, TOOL, VERSION};

/// Kronecker sizes up to this solve directly under `auto`.
const AUTO_DIRECT_LIMIT: usize = 4096;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub schema: Option<u32>,
    pub equation: EquationFiles,
    #[serde(default)]
    pub method: MethodChoice,
    #[serde(default)]
    pub tolerances: ToleranceOverrides,
    pub seed: Option<u64>,
    pub output: Option<OutputSpec>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum EquationFiles {
    Sylvester { a: String, b: String, c: String },
    Pencil { a: String, b: String, c: String, d: String, e: String },
    Stein { t1: String, t2: String, y: String },
    Monkeypox { a: String, t: f64, y: String },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodChoice {
    Direct,
    Contour,
    Stein,
    ExpIntegral,
    PowerSeries,
    #[default]
    Auto,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    pub solve_tol: Option<f64>,
    pub sep_tol: Option<f64>,
    pub null_tol: Option<f64>,
    pub fp_tol: Option<f64>,
    pub sim_tol: Option<f64>,
    pub rank_tol: Option<f64>,
    pub psd_tol: Option<f64>,
}

impl ToleranceOverrides {
    pub fn apply(&self, config: &mut Config) {
        if let Some(v) = self.solve_tol {
            config.solve_tol = v;
        }
        if let Some(v) = self.sep_tol {
            config.sep_tol = v;
        }
        if let Some(v) = self.null_tol {
            config.null_tol = v;
        }
        if let Some(v) = self.fp_tol {
            config.fp_tol = v;
        }
        if let Some(v) = self.sim_tol {
            config.sim_tol = v;
        }
        if let Some(v) = self.rank_tol {
            config.rank_tol = v;
        }
        if let Some(v) = self.psd_tol {
            config.psd_tol = v;
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: Option<String>,
    #[serde(default)]
    pub format: ReportFormat,
    /// Optional path for the solution matrix, array Matrix Market.
    pub solution: Option<String>,
}

fn method_name(method: Method) -> &'static str {
    match method {
        Method::Direct => "direct",
        Method::Contour => "contour",
        Method::Stein => "stein",
        Method::ExpIntegral => "exp_integral",
        Method::PowerSeries => "power_series",
        Method::MonkeypoxFactor => "monkeypox_factor",
        Method::MonkeypoxKronecker => "monkeypox_kronecker",
        Method::Similarity => "similarity",
    }
}

pub fn load_job(path: &Path) -> Result<JobSpec> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let job: JobSpec = serde_json::from_str(&text).map_err(|err| CliError::Parse {
        path: path.to_path_buf(),
        line: err.line(),
        message: err.to_string(),
    })?;
    if let Some(schema) = job.schema {
        if schema != SCHEMA {
            return Err(CliError::Usage(format!(
                "job schema {schema} is not supported (this tool reads schema {SCHEMA})"
            )));
        }
    }
    Ok(job)
}

/// Every coefficient parsed and validated, before any solve begins.
pub struct LoadedEquation {
    pub spec: EquationSpec,
}

pub fn load_equation(job: &JobSpec, job_path: &Path) -> Result<LoadedEquation> {
    let read = |rel: &String| -> Result<ComplexMatrix> { read_matrix(&sibling_path(job_path, rel)) };
    let spec = match &job.equation {
        EquationFiles::Sylvester { a, b, c } => EquationSpec::Sylvester {
            a: read(a)?,
            b: read(b)?,
            c: read(c)?,
        },
        EquationFiles::Pencil { a, b, c, d, e } => EquationSpec::Pencil {
            a: read(a)?,
            b: read(b)?,
            c: read(c)?,
            d: read(d)?,
            e: read(e)?,
        },
        EquationFiles::Stein { t1, t2, y } => EquationSpec::Stein {
            t1: read(t1)?,
            t2: read(t2)?,
            y: read(y)?,
        },
        EquationFiles::Monkeypox { a, t, y } => EquationSpec::Monkeypox {
            a: read(a)?,
            t: *t,
            y: read(y)?,
        },
    };
    spec.validate()?;
    Ok(LoadedEquation { spec })
}

/// Deterministic method resolution for `auto`, driven by the size and the
/// separation geometry alone.
fn resolve_auto(spec: &EquationSpec, config: &Config) -> Result<MethodChoice> {
    let (rows, cols) = spec.solution_shape();
    if rows * cols <= AUTO_DIRECT_LIMIT {
        return Ok(MethodChoice::Direct);
    }
    match spec {
        EquationSpec::Sylvester { a, b, .. } => {
            let sep = spectral_separation(a, b, config)?;
            if sep.disjoint {
                Ok(MethodChoice::Contour)
            } else if sep.halfplane_margin.is_some_and(|m| m > 0.0) {
                Ok(MethodChoice::ExpIntegral)
            } else if sep.annulus_ratio.is_some_and(|r| r < 1.0) {
                Ok(MethodChoice::PowerSeries)
            } else {
                Err(CliError::Solver(Error::SpectraNotDisjoint))
            }
        }
        EquationSpec::Pencil { .. } => Ok(MethodChoice::Contour),
        EquationSpec::Stein { .. } => Ok(MethodChoice::Stein),
        // The factored route scales like the direct one; no alternative.
        EquationSpec::Monkeypox { .. } => Ok(MethodChoice::Direct),
    }
}

fn dispatch(spec: &EquationSpec, method: MethodChoice, config: &Config) -> Result<SolveReport> {
    let mismatch = |wanted: &str| {
        CliError::Usage(format!(
            "method {wanted} does not apply to a {} equation",
            spec.kind_name()
        ))
    };
    match spec {
        EquationSpec::Sylvester { a, b, c } => match method {
            MethodChoice::Direct => Ok(solve_sylvester_direct(a, b, c, config)?),
            MethodChoice::Contour => Ok(solve_sylvester_contour(a, b, c, None, config)?),
            MethodChoice::ExpIntegral => {
                Ok(solve_sylvester_exp_integral(a, b, c, config.solve_tol, config)?)
            }
            MethodChoice::PowerSeries => {
                Ok(solve_sylvester_power_series(a, b, c, config.solve_tol, config)?)
            }
            MethodChoice::Stein => Err(mismatch("stein")),
            MethodChoice::Auto => unreachable!("auto resolved before dispatch"),
        },
        EquationSpec::Pencil { a, b, c, d, e } => match method {
            MethodChoice::Direct => Ok(solve_pencil_direct(a, b, c, d, e, config)?),
            MethodChoice::Contour => Ok(solve_pencil_contour(a, b, c, d, e, None, config)?),
            MethodChoice::Stein => Err(mismatch("stein")),
            MethodChoice::ExpIntegral => Err(mismatch("exp_integral")),
            MethodChoice::PowerSeries => Err(mismatch("power_series")),
            MethodChoice::Auto => unreachable!("auto resolved before dispatch"),
        },
        EquationSpec::Stein { t1, t2, y } => match method {
            MethodChoice::Stein | MethodChoice::Direct => {
                // The direct route also applies: the Kronecker form of the
                // Stein equation is the identity pencil.
                if method == MethodChoice::Direct {
                    let eye_l = ComplexMatrix::identity(t1.rows());
                    let eye_r = ComplexMatrix::identity(t2.rows());
                    Ok(solve_pencil_direct(t1, t2, &eye_l, &eye_r, y, config)?)
                } else {
                    Ok(solve_stein_series(t1, t2, y, config.solve_tol, config)?)
                }
            }
            MethodChoice::Contour => Err(mismatch("contour")),
            MethodChoice::ExpIntegral => Err(mismatch("exp_integral")),
            MethodChoice::PowerSeries => Err(mismatch("power_series")),
            MethodChoice::Auto => unreachable!("auto resolved before dispatch"),
        },
        EquationSpec::Monkeypox { a, t, y } => match method {
            MethodChoice::Direct => Ok(solve_monkeypox(a, *t, y, config.solve_tol, config)?),
            MethodChoice::Contour => Err(mismatch("contour")),
            MethodChoice::Stein => Err(mismatch("stein")),
            MethodChoice::ExpIntegral => Err(mismatch("exp_integral")),
            MethodChoice::PowerSeries => Err(mismatch("power_series")),
            MethodChoice::Auto => unreachable!("auto resolved before dispatch"),
        },
    }
}

pub struct JobOutcome {
    pub accepted: bool,
}

/// Run one job end to end: parse, solve, emit the report (and the solution
/// file when asked), and say whether the residual met the tolerance.
pub fn run_job(
    job_path: &Path,
    cli_tol: Option<f64>,
    cli_seed: Option<u64>,
    cli_out: Option<&Path>,
    cli_format: Option<ReportFormat>,
) -> Result<JobOutcome> {
    let job = load_job(job_path)?;
    let loaded = load_equation(&job, job_path)?;

    let mut config = Config::default();
    job.tolerances.apply(&mut config);
    if let Some(tol) = cli_tol {
        config.solve_tol = tol;
    }
    let seed = cli_seed.or(job.seed);

    let started = Instant::now();
    let mut method = job.method;
    if method == MethodChoice::Auto {
        method = resolve_auto(&loaded.spec, &config)?;
    }
    let solve = dispatch(&loaded.spec, method, &config)?;
    let wall_ms = started.elapsed().as_secs_f64() * 1e3;

    let tolerance = config.solve_tol;
    let scale = loaded.spec.scale(&solve.x);
    let accepted = solve.residual_fro <= tolerance * scale;

    let artifact = SolveArtifact {
        schema: SCHEMA,
        tool: TOOL,
        version: VERSION,
        equation: loaded.spec.kind_name(),
        method: method_name(solve.method),
        seed,
        accepted,
        tolerance,
        scale,
        solve: &solve,
        config: &config,
        wall_ms,
    };

    let format = cli_format
        .or(job.output.as_ref().map(|o| o.format))
        .unwrap_or_default();
    let text = match format {
        ReportFormat::Json => to_json(&artifact),
        ReportFormat::Csv => artifact.to_csv(),
    };

    let report_path = cli_out
        .map(|p| p.to_path_buf())
        .or_else(|| {
            job.output
                .as_ref()
                .and_then(|o| o.path.as_ref())
                .map(|p| sibling_path(job_path, p))
        });
    match report_path {
        Some(path) => std::fs::write(&path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?,
        None => print!("{text}"),
    }

    if let Some(solution_rel) = job.output.as_ref().and_then(|o| o.solution.as_ref()) {
        let path = sibling_path(job_path, solution_rel);
        write_matrix_file(&path, &solve.x)?;
    }

    if !accepted {
        eprintln!(
            "residual {:.6e} exceeds tolerance {:.6e} * scale {:.6e}",
            solve.residual_fro, tolerance, scale
        );
    }
    Ok(JobOutcome { accepted })
}
