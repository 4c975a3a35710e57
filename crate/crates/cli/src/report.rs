//! Machine-readable reports. JSON is the full artifact with a fixed field
//! order; CSV is restricted to scalar summary rows. Complex scalars are
//! always [re, im] pairs, and the wall-time field sits on its own line so
//! determinism checks can strip it.

use serde::Serialize;
use sylvkit_core::rothfp::{ClassReport, FPReport};
use sylvkit_core::separation::SeparationReport;
use sylvkit_core::solve::SolveReport;
use sylvkit_core::Config;

pub const SCHEMA: u32 = 1;
pub const TOOL: &str = "sylvkit";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, clap::ValueEnum, serde::Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Serialize)]
pub struct SolveArtifact<'a> {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub equation: &'static str,
    pub method: &'static str,
    pub seed: Option<u64>,
    pub accepted: bool,
    pub tolerance: f64,
    pub scale: f64,
    pub solve: &'a SolveReport,
    pub config: &'a Config,
    pub wall_ms: f64,
}

#[derive(Serialize)]
pub struct CheckArtifact<T: Serialize> {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub seed: Option<u64>,
    pub report: T,
    pub wall_ms: f64,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports always serialize");
    text.push('\n');
    text
}

fn csv_opt(value: Option<f64>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

fn csv_opt_usize(value: Option<usize>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

fn push_row(out: &mut String, key: &str, value: impl std::fmt::Display) {
    out.push_str(&format!("{key},{value}\n"));
}

fn csv_header(out: &mut String, command: &str, seed: Option<u64>) {
    push_row(out, "schema", SCHEMA);
    push_row(out, "tool", TOOL);
    push_row(out, "version", VERSION);
    push_row(out, "command", command);
    let seed_text = seed.map(|s| s.to_string()).unwrap_or_default();
    push_row(out, "seed", seed_text);
}

fn csv_separation(out: &mut String, sep: &SeparationReport) {
    push_row(out, "min_gap", sep.min_gap);
    push_row(out, "disjoint", sep.disjoint);
    push_row(out, "halfplane_margin", csv_opt(sep.halfplane_margin));
    push_row(out, "annulus_ratio", csv_opt(sep.annulus_ratio));
}

impl SolveArtifact<'_> {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        csv_header(&mut out, "solve", self.seed);
        push_row(&mut out, "equation", self.equation);
        push_row(&mut out, "method", self.method);
        push_row(&mut out, "accepted", self.accepted);
        push_row(&mut out, "residual_fro", self.solve.residual_fro);
        push_row(&mut out, "tolerance", self.tolerance);
        push_row(&mut out, "scale", self.scale);
        csv_separation(&mut out, &self.solve.diagnostics);
        push_row(&mut out, "nodes", self.solve.work.nodes);
        push_row(&mut out, "terms", self.solve.work.terms);
        push_row(&mut out, "refinements", self.solve.work.refinements);
        push_row(&mut out, "rank", csv_opt_usize(self.solve.work.rank));
        push_row(&mut out, "decay_ratio", csv_opt(self.solve.work.decay_ratio));
        push_row(&mut out, "wall_ms", self.wall_ms);
        out
    }
}

pub fn fp_csv(artifact: &CheckArtifact<&FPReport>) -> String {
    let mut out = String::new();
    csv_header(&mut out, "fp", artifact.seed);
    push_row(&mut out, "intertwiner_dim", artifact.report.intertwiner_dim);
    push_row(&mut out, "fp_holds", artifact.report.fp_holds);
    push_row(&mut out, "worst_violation", artifact.report.worst_violation);
    push_row(&mut out, "vacuous", artifact.report.vacuous);
    push_row(&mut out, "sv_above_cut", artifact.report.sv_above_cut);
    push_row(&mut out, "sv_below_cut", artifact.report.sv_below_cut);
    push_row(&mut out, "wall_ms", artifact.wall_ms);
    out
}

#[derive(Serialize)]
pub struct ClassArtifactBody<'a> {
    pub class: String,
    #[serde(flatten)]
    pub report: &'a ClassReport,
}

pub fn class_csv(artifact: &CheckArtifact<ClassArtifactBody<'_>>) -> String {
    let mut out = String::new();
    csv_header(&mut out, "classify", artifact.seed);
    push_row(&mut out, "class", &artifact.report.class);
    push_row(&mut out, "holds", artifact.report.report.holds);
    push_row(&mut out, "margin", artifact.report.report.margin);
    push_row(&mut out, "cut", artifact.report.report.cut);
    push_row(&mut out, "wall_ms", artifact.wall_ms);
    out
}

pub fn separation_csv(artifact: &CheckArtifact<&SeparationReport>) -> String {
    let mut out = String::new();
    csv_header(&mut out, "separation", artifact.seed);
    csv_separation(&mut out, artifact.report);
    push_row(&mut out, "wall_ms", artifact.wall_ms);
    out
}

pub fn approx_csv(artifact: &CheckArtifact<&sylvkit_core::approx::ApproxResult>) -> String {
    let mut out = String::new();
    csv_header(&mut out, "approx", artifact.seed);
    push_row(&mut out, "residual", artifact.report.residual);
    push_row(&mut out, "lower_bound_rhs", artifact.report.lower_bound_rhs);
    push_row(&mut out, "norm_p", artifact.report.norm.p());
    push_row(&mut out, "wall_ms", artifact.wall_ms);
    out
}
