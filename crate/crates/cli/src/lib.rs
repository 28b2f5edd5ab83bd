//! Command-line front end for `qtruth-core`.
//!
//! Commands return an [`Outcome`] (rendered output plus exit code) so they can
//! be driven without spawning a process. Exit codes: 0 evaluated or ran clean,
//! 1 scenario check failures, 2 input or validation error.

pub mod model;

use std::collections::BTreeSet;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};
use thiserror::Error;

use qtruth_core::formula::{combined_atoms, eval2, is_tautology, row_values, Valuation2};
use qtruth_core::scenario::{
    copenhagen_walkthrough, describe_copy, paradox_walkthrough, phase_space_demo,
    quantum_resolution, tarski_resolution, ExperimentConfig, ScenarioReport,
};
use qtruth_core::semantics::{
    phase_eval, phase_truth, ql_classify, ql_copy, tarski_copy, CopyResult, PhaseSpaceModel,
    ProjectorAssignment, QlClass, SemanticVerdict,
};
use qtruth_core::trivalent::{eval3, valuations3, TruthValue3, Valuation3};
use qtruth_core::{
    parse, render, Error, Formula, Lattice, Projector, StateVector, Tolerance, TruthValue2,
};

use model::{load_model, Model};

/// Largest atom count `table` will print.
pub const MAX_TABLE_ATOMS: usize = 8;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid model `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl Outcome {
    fn ok(output: String) -> Outcome {
        Outcome { output, code: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SemanticsKind {
    Classical,
    Trivalent,
    Quantum,
    Tarski,
    Phase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Part {
    Paradox,
    Copenhagen,
    Quantum,
    Tarski,
    Phase,
    All,
}

#[derive(Debug, Parser)]
#[command(
    name = "qtruth",
    version,
    about = "Evaluate sentences under classical, three-valued, quantum and phase-space semantics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one formula.
    Eval(CliConfig),
    /// Run the built-in detector scenario reports.
    Scenario(ScenarioArgs),
    /// Print a full truth table.
    Table(CliConfig),
}

#[derive(Debug, Clone, Args)]
pub struct CliConfig {
    #[arg(long, value_enum, default_value = "classical")]
    pub semantics: SemanticsKind,
    #[arg(long)]
    pub formula: String,
    /// Model file, or a builtin: `scenario` (C^2) or `scenario-lifted` (C^4).
    #[arg(long)]
    pub model: Option<String>,
    /// State vector as comma-separated complex numbers, e.g. `1,0` or `0.6,0.8i`.
    #[arg(long)]
    pub state: Option<String>,
    /// Atom values, e.g. `A=t,B=u`.
    #[arg(long)]
    pub assign: Option<String>,
    /// Phase-space point at which to evaluate.
    #[arg(long)]
    pub point: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Report both gap sources as `U`.
    #[arg(long)]
    pub merge_u: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ScenarioArgs {
    #[arg(value_enum, default_value = "all")]
    pub part: Part,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long)]
    pub b1: Option<String>,
    #[arg(long)]
    pub b2: Option<String>,
    #[arg(long)]
    pub c1: Option<String>,
    #[arg(long)]
    pub c2: Option<String>,
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Eval(c) => cmd_eval(&c),
        Command::Scenario(s) => cmd_scenario(&s),
        Command::Table(c) => cmd_table(&c),
    }
}

fn tolerance(t: Option<f64>) -> Result<Tolerance, CliError> {
    Ok(match t {
        Some(eps) => Tolerance::new(eps)?,
        None => Tolerance::default(),
    })
}

fn parse_complex(flag: &str, text: &str) -> Result<Complex64, CliError> {
    Complex64::from_str(text.trim())
        .map_err(|_| CliError::Usage(format!("{flag}: `{text}` is not a complex number")))
}

pub fn parse_state(text: &str) -> Result<StateVector, CliError> {
    let entries = text
        .split(',')
        .map(|s| parse_complex("--state", s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(StateVector::new(entries)?)
}

/// `A=t,B=f,C=u`; also accepts `true`, `false`, `1`, `0`.
pub fn parse_assignment(text: &str) -> Result<Valuation3, CliError> {
    let mut v = Valuation3::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (atom, value) = item.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("--assign: `{item}` is not of the form ATOM=VALUE"))
        })?;
        let value = match value.trim().to_ascii_lowercase().as_str() {
            "t" | "true" | "1" => TruthValue3::T,
            "f" | "false" | "0" => TruthValue3::F,
            "u" => TruthValue3::U,
            other => {
                return Err(CliError::Usage(format!(
                    "--assign: unknown truth value `{other}`"
                )))
            }
        };
        v.insert(atom.trim(), value);
    }
    Ok(v)
}

fn word3(v: TruthValue3) -> &'static str {
    match v {
        TruthValue3::T => "TRUE",
        TruthValue3::F => "FALSE",
        TruthValue3::U => "U",
    }
}

fn verdict_word(v: SemanticVerdict, merge_u: bool) -> String {
    if merge_u {
        word3(v.merged()).to_string()
    } else {
        v.to_string()
    }
}

fn emit(format: Format, text: String, value: Value) -> String {
    match format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&value).expect("json values serialize"),
    }
}

fn hilbert_model(
    c: &CliConfig,
    tol: Tolerance,
) -> Result<(ProjectorAssignment, Option<StateVector>), CliError> {
    let path = c
        .model
        .as_deref()
        .ok_or_else(|| CliError::Usage("this semantics needs --model".into()))?;
    match load_model(path, tol)? {
        Model::Hilbert { assignment, state } => {
            let state = match &c.state {
                Some(text) => Some(parse_state(text)?),
                None => state,
            };
            Ok((assignment, state))
        }
        Model::Phase(_) => Err(CliError::Usage(format!(
            "model `{path}` is a phase space; quantum and tarski semantics need projector matrices"
        ))),
    }
}

fn phase_model(c: &CliConfig, tol: Tolerance) -> Result<PhaseSpaceModel, CliError> {
    let path = c
        .model
        .as_deref()
        .ok_or_else(|| CliError::Usage("phase semantics needs --model".into()))?;
    match load_model(path, tol)? {
        Model::Phase(m) => Ok(m),
        Model::Hilbert { .. } => Err(CliError::Usage(format!(
            "model `{path}` has projector matrices; phase semantics needs a phase space"
        ))),
    }
}

fn matrix_json(p: &Projector) -> Value {
    let rows: Vec<Vec<[f64; 2]>> = p
        .to_complex_matrix()
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|z| [z.re, z.im]).collect())
        .collect();
    json!(rows)
}

fn copy_text(p: &Projector, tol: Tolerance) -> String {
    let short = describe_copy(&CopyResult::Unique(p.clone()), tol);
    if short.starts_with("P (") {
        p.to_string()
    } else {
        short
    }
}

pub fn cmd_eval(c: &CliConfig) -> Result<Outcome, CliError> {
    let tol = tolerance(c.tolerance)?;
    let lat = Lattice::new(tol);
    let formula = parse(&c.formula)?;
    let shown = render(&formula);
    let mut out =
        json!({ "semantics": format!("{:?}", c.semantics).to_lowercase(), "formula": shown });
    let text = match c.semantics {
        SemanticsKind::Classical | SemanticsKind::Trivalent => {
            let word = match &c.assign {
                Some(a) => {
                    let v3 = parse_assignment(a)?;
                    if c.semantics == SemanticsKind::Classical {
                        let v2 = to_classical(&v3)?;
                        eval2(&formula, &v2)?.to_string()
                    } else {
                        word3(eval3(&formula, &v3)?).to_string()
                    }
                }
                None => classify_by_enumeration(&formula, c.semantics)?.to_string(),
            };
            out["verdict"] = json!(word);
            word
        }
        SemanticsKind::Quantum => {
            let (a, state) = hilbert_model(c, tol)?;
            let copy = ql_copy(&formula, &a, &lat)?;
            out["copy"] = matrix_json(&copy);
            let word = match (&c.state, state) {
                (Some(_), Some(psi)) => {
                    let v: SemanticVerdict = lat.apply_and_classify(&copy, &psi)?.into();
                    verdict_word(v, c.merge_u)
                }
                _ => ql_classify(&formula, &a, &lat)?.to_string(),
            };
            out["verdict"] = json!(word);
            word
        }
        SemanticsKind::Tarski => {
            let (a, state) = hilbert_model(c, tol)?;
            match tarski_copy(&formula, &a, &lat)? {
                CopyResult::Gap => {
                    let word = verdict_word(SemanticVerdict::GapNoUniqueCopy, c.merge_u);
                    out["verdict"] = json!(word);
                    out["copy"] = json!("GAP");
                    format!("{word} (no unique copy)")
                }
                CopyResult::Unique(p) => {
                    let verdict = match &state {
                        Some(psi) => lat.apply_and_classify(&p, psi)?.into(),
                        None if p.is_identity(tol) => SemanticVerdict::True,
                        None if p.is_zero(tol) => SemanticVerdict::False,
                        None => {
                            return Err(CliError::Usage(format!(
                                "copy {p} is neither P_⊤ nor P_⊥; pass --state to evaluate it"
                            )))
                        }
                    };
                    let word = verdict_word(verdict, c.merge_u);
                    out["verdict"] = json!(word);
                    out["copy"] = matrix_json(&p);
                    format!("{word} (copy = {})", copy_text(&p, tol))
                }
            }
        }
        SemanticsKind::Phase => {
            let m = phase_model(c, tol)?;
            let set = phase_eval(&formula, &m)?;
            out["set"] = json!(set);
            match &c.point {
                Some(q) => {
                    let word = phase_truth(&formula, &m, q)?.to_string();
                    out["verdict"] = json!(word);
                    word
                }
                None => {
                    let word = if set.len() == m.points().len() {
                        QlClass::Tautology
                    } else if set.is_empty() {
                        QlClass::Contradiction
                    } else {
                        QlClass::Contingent
                    };
                    out["verdict"] = json!(word.to_string());
                    format!("{word} {}", show_points(&m, &set))
                }
            }
        }
    };
    Ok(Outcome::ok(emit(c.format, text, out)))
}

fn show_points(m: &PhaseSpaceModel, set: &BTreeSet<String>) -> String {
    let inside: Vec<&str> = m
        .points()
        .iter()
        .filter(|q| set.contains(*q))
        .map(|q| q.as_str())
        .collect();
    format!("{{{}}}", inside.join(", "))
}

fn to_classical(v: &Valuation3) -> Result<Valuation2, CliError> {
    v.iter()
        .map(|(a, x)| match x.to_bool() {
            Some(b) => Ok((a, TruthValue2::from(b))),
            None => Err(CliError::Usage(format!(
                "--assign: `{a}=u` needs --semantics trivalent"
            ))),
        })
        .collect()
}

fn classify_by_enumeration(f: &Formula, kind: SemanticsKind) -> Result<QlClass, CliError> {
    let (all_true, all_false) = if kind == SemanticsKind::Classical {
        (is_tautology(f)?, is_tautology(&Formula::not(f.clone()))?)
    } else {
        let atoms = f.atoms();
        let mut values = Vec::new();
        for v in valuations3(&atoms) {
            values.push(eval3(f, &v)?);
        }
        (
            values.iter().all(|x| *x == TruthValue3::T),
            values.iter().all(|x| *x == TruthValue3::F),
        )
    };
    Ok(if all_true {
        QlClass::Tautology
    } else if all_false {
        QlClass::Contradiction
    } else {
        QlClass::Contingent
    })
}

pub fn cmd_table(c: &CliConfig) -> Result<Outcome, CliError> {
    let formula = parse(&c.formula)?;
    let atoms = combined_atoms([&formula]);
    if atoms.len() > MAX_TABLE_ATOMS {
        return Err(Error::TooManyAtoms {
            count: atoms.len(),
            limit: MAX_TABLE_ATOMS,
        }
        .into());
    }
    let rows: Vec<(Vec<TruthValue3>, TruthValue3)> = match c.semantics {
        SemanticsKind::Classical => row_values(&formula, &atoms)?
            .into_iter()
            .map(|(vals, out)| {
                (
                    vals.into_iter().map(TruthValue3::from).collect(),
                    out.into(),
                )
            })
            .collect(),
        SemanticsKind::Trivalent => valuations3(&atoms)
            .map(|v| {
                let vals = atoms
                    .iter()
                    .map(|a| v.get(a).expect("atom enumerated"))
                    .collect();
                Ok((vals, eval3(&formula, &v)?))
            })
            .collect::<Result<_, Error>>()?,
        _ => {
            return Err(CliError::Usage(
                "table supports classical and trivalent semantics".into(),
            ))
        }
    };
    let shown = render(&formula);
    let width: Vec<usize> = atoms.iter().map(|a| a.chars().count().max(1)).collect();
    let mut text = String::new();
    let header: Vec<String> = atoms
        .iter()
        .zip(&width)
        .map(|(a, w)| format!("{a:<w$}"))
        .collect();
    text.push_str(&format!("{} | {shown}\n", header.join(" ")));
    for (vals, out) in &rows {
        let cells: Vec<String> = vals
            .iter()
            .zip(&width)
            .map(|(x, w)| format!("{:<w$}", x.symbol()))
            .collect();
        text.push_str(&format!("{} | {}\n", cells.join(" "), out.symbol()));
    }
    let value = json!({
        "semantics": format!("{:?}", c.semantics).to_lowercase(),
        "formula": shown,
        "atoms": atoms,
        "rows": rows.iter().map(|(vals, out)| json!({ "values": vals, "value": out })).collect::<Vec<_>>(),
    });
    Ok(Outcome::ok(emit(
        c.format,
        text.trim_end().to_string(),
        value,
    )))
}

fn experiment_config(s: &ScenarioArgs) -> Result<ExperimentConfig, CliError> {
    let mut cfg = ExperimentConfig {
        tolerance: tolerance(s.tolerance)?,
        ..ExperimentConfig::default()
    };
    for (flag, value, slot) in [
        ("--b1", &s.b1, &mut cfg.b1),
        ("--b2", &s.b2, &mut cfg.b2),
        ("--c1", &s.c1, &mut cfg.c1),
        ("--c2", &s.c2, &mut cfg.c2),
    ] {
        if let Some(text) = value {
            *slot = parse_complex(flag, text)?;
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn cmd_scenario(s: &ScenarioArgs) -> Result<Outcome, CliError> {
    let cfg = experiment_config(s)?;
    let mut reports: Vec<ScenarioReport> = Vec::new();
    let want = |p: Part| s.part == p || s.part == Part::All;
    if want(Part::Paradox) {
        reports.push(paradox_walkthrough()?);
    }
    if want(Part::Copenhagen) {
        reports.push(copenhagen_walkthrough(&cfg)?);
    }
    if want(Part::Quantum) {
        reports.push(quantum_resolution()?);
    }
    if want(Part::Tarski) {
        reports.push(tarski_resolution()?);
    }
    if want(Part::Phase) {
        reports.push(phase_space_demo()?);
    }
    let total: usize = reports.iter().map(|r| r.checks.len()).sum();
    let failed: usize = reports.iter().map(|r| r.failures().count()).sum();
    let output = match s.format {
        Format::Json => serde_json::to_string_pretty(&reports).expect("reports serialize"),
        Format::Text => {
            let mut parts: Vec<String> = reports.iter().map(|r| r.to_string()).collect();
            parts.push(format!("overall: {total} checks, {failed} failed"));
            parts.join("\n\n")
        }
    };
    Ok(Outcome {
        output,
        code: if failed == 0 { 0 } else { 1 },
    })
}
