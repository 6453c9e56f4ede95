//! Library-level command fronts used by the `fivp` binary (and directly
//! testable without spawning a process): parameter planning, solving a
//! problem document, and the sharpness experiment.
//!
//! Exit-code contract: 0 success, 2 parameter violation, 3 numerical
//! failure, 4 sharpness precondition violation.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use thiserror::Error;

use crate::asymptotics::{verify_sharpness, AsymptoticsError, SharpnessReport};
use crate::manifest::{fmt_float, MeshParams, RunManifest, Tolerances};
use crate::mesh::Mesh;
use crate::param_plan::{build_plan, validate_orders, ParamPlan, Regime};
use crate::problems::ProblemSpec;
use crate::solver::{
    solve_picard, solve_step, ContractionConfig, SolutionPath, SolveError, SolverOptions,
};

/// Environment variable holding the default output directory for relative
/// `--out` prefixes.
pub const OUT_DIR_ENV: &str = "FIVP_OUT_DIR";

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("{0}")]
    Parameter(String),
    #[error("{0}")]
    Numerical(String),
    #[error("{0}")]
    Sharpness(String),
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Parameter(_) => 2,
            CommandError::Numerical(_) => 3,
            CommandError::Sharpness(_) => 4,
            CommandError::Io(_) => 1,
        }
    }
}

fn resolve_prefix(prefix: &str) -> PathBuf {
    let p = Path::new(prefix);
    if p.is_absolute() {
        return p.to_path_buf();
    }
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if !dir.is_empty() => Path::new(&dir).join(p),
        _ => p.to_path_buf(),
    }
}

// ---------------------------------------------------------------------
// plan
// ---------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct PlanArgs {
    pub alpha: f64,
    pub lambda: f64,
    pub p2: Option<f64>,
    pub zeta: Option<f64>,
    pub strict: bool,
}

/// Build (or complete with midpoint defaults) a parameter plan and return
/// its JSON document. Omitted `p2`/`zeta` are chosen deterministically and
/// echoed in the output.
pub fn cmd_plan(args: &PlanArgs) -> Result<String, CommandError> {
    let regime = if args.strict { Regime::Strict } else { Regime::Loose };
    let orders = validate_orders(args.alpha, args.lambda, regime)
        .map_err(|e| CommandError::Parameter(e.to_string()))?;
    let plan = match (args.p2, args.zeta) {
        (None, None) => ParamPlan::with_defaults(&orders),
        (p2_opt, zeta_opt) => {
            let (lo, hi) = crate::param_plan::p2_bounds(&orders);
            let p2 = p2_opt.unwrap_or_else(|| (lo * hi).sqrt());
            let zeta = match zeta_opt {
                Some(z) => z,
                None => 0.5 * crate::param_plan::zeta_bound(&orders, p2)
                    .map_err(|e| CommandError::Parameter(e.to_string()))?,
            };
            build_plan(&orders, p2, zeta)
        }
    }
    .map_err(|e| CommandError::Parameter(e.to_string()))?;
    serde_json::to_string_pretty(&plan).map_err(|e| CommandError::Parameter(e.to_string()))
}

// ---------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    Step,
    Picard,
}

#[derive(Debug, Clone)]
pub struct SolveArgs {
    pub problem_path: PathBuf,
    pub t_end: f64,
    pub nodes: usize,
    /// Grading exponent; defaults to `2/α`.
    pub grading: Option<f64>,
    pub mode: SolveMode,
    pub out_prefix: String,
}

#[derive(Debug, Clone)]
pub struct SolveOutput {
    pub csv_path: PathBuf,
    pub manifest_path: PathBuf,
    pub nodes: usize,
    pub iterations: Option<usize>,
}

pub fn cmd_solve(args: &SolveArgs) -> Result<SolveOutput, CommandError> {
    let start = Instant::now();
    let text = fs::read_to_string(&args.problem_path)?;
    let problem = ProblemSpec::from_json(&text)
        .map_err(|e| CommandError::Parameter(format!("problem document: {e}")))?;
    let grading = args.grading.unwrap_or((2.0 / problem.alpha).max(1.0));
    let mesh = Mesh::graded(args.t_end, args.nodes, grading)
        .map_err(|e| CommandError::Parameter(e.to_string()))?;
    let (path, iterations) = run_solver(&problem, &mesh, args.mode)?;

    let prefix = resolve_prefix(&args.out_prefix);
    let csv_path = prefix.with_extension("csv");
    let manifest_path = prefix.with_extension("manifest.json");
    if let Some(parent) = csv_path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let mut csv = Vec::new();
    path.write_csv(&mut csv)?;
    fs::write(&csv_path, csv)?;

    let opts = SolverOptions::default();
    let manifest = RunManifest {
        command: format!(
            "solve --T {} --nodes {} --grading {} --mode {}",
            fmt_float(args.t_end),
            args.nodes,
            fmt_float(grading),
            match args.mode {
                SolveMode::Step => "step",
                SolveMode::Picard => "picard",
            }
        ),
        problem: Some(problem),
        plan: None,
        mesh: MeshParams {
            kind: "graded".into(),
            t_end: args.t_end,
            nodes: mesh.n(),
            grading,
            nodes_per_decade: None,
        },
        tolerances: Tolerances {
            step_abs: opts.tol_abs,
            step_rel: opts.tol_rel,
            picard: matches!(args.mode, SolveMode::Picard).then_some(1e-12),
        },
        outputs: vec![csv_path.display().to_string()],
        tool_version: RunManifest::tool_version(),
        duration_seconds: start.elapsed().as_secs_f64(),
        iterations,
    };
    fs::write(&manifest_path, manifest.to_json_pretty())?;
    Ok(SolveOutput { csv_path, manifest_path, nodes: mesh.n(), iterations })
}

fn run_solver(
    problem: &ProblemSpec,
    mesh: &Mesh,
    mode: SolveMode,
) -> Result<(SolutionPath, Option<usize>), CommandError> {
    match mode {
        SolveMode::Step => {
            let path = solve_step(problem, mesh).map_err(solve_error)?;
            Ok((path, None))
        }
        SolveMode::Picard => {
            let cfg = ContractionConfig::for_order(problem.alpha).map_err(solve_error)?;
            let path = solve_picard(problem, mesh, &cfg).map_err(solve_error)?;
            let iters = path.picard_info().map(|i| i.iterations);
            Ok((path, iters))
        }
    }
}

fn solve_error(e: SolveError) -> CommandError {
    match e {
        SolveError::Mesh(m) => CommandError::Parameter(m.to_string()),
        SolveError::InvalidContraction(m) => CommandError::Parameter(m),
        other => CommandError::Numerical(other.to_string()),
    }
}

// ---------------------------------------------------------------------
// sharpness
// ---------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct SharpnessArgs {
    pub alpha: f64,
    pub lambda: f64,
    pub p2: f64,
    pub zeta: f64,
    pub epsilon: f64,
    pub eta0: Option<f64>,
    pub x0: f64,
    pub t_end: f64,
    pub nodes_per_decade: usize,
    pub out_prefix: String,
}

impl Default for SharpnessArgs {
    fn default() -> Self {
        SharpnessArgs {
            alpha: 0.5,
            lambda: 0.2,
            p2: 6.0,
            zeta: 0.1,
            epsilon: 0.1,
            eta0: None,
            x0: 1.0,
            t_end: 1e4,
            nodes_per_decade: 2048,
            out_prefix: "sharpness".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SharpnessOutput {
    pub report: SharpnessReport,
    pub report_path: PathBuf,
    pub solution_path: PathBuf,
    pub ratio_path: PathBuf,
    pub manifest_path: PathBuf,
}

pub fn cmd_sharpness(args: &SharpnessArgs) -> Result<SharpnessOutput, CommandError> {
    let start = Instant::now();
    let sharp = |e: &dyn std::fmt::Display| CommandError::Sharpness(e.to_string());
    let orders =
        validate_orders(args.alpha, args.lambda, Regime::Strict).map_err(|e| sharp(&e))?;
    let plan = build_plan(&orders, args.p2, args.zeta).map_err(|e| sharp(&e))?;
    let problem = ProblemSpec::sharpness(args.x0, args.alpha, args.lambda, args.p2, args.epsilon)
        .map_err(|e| sharp(&e))?;
    let mesh = Mesh::long_horizon(args.t_end, args.nodes_per_decade, (2.0 / args.alpha).max(1.0))
        .map_err(|e| sharp(&e))?;
    let path = solve_step(&problem, &mesh).map_err(solve_error)?;
    let report = verify_sharpness(&path, &plan, args.epsilon, args.eta0).map_err(|e| match e {
        AsymptoticsError::PreconditionViolation(_) | AsymptoticsError::PlanMismatch(_) => sharp(&e),
        other => CommandError::Numerical(other.to_string()),
    })?;

    let prefix = resolve_prefix(&args.out_prefix);
    if let Some(parent) = prefix.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let report_path = prefix.with_extension("report.json");
    let solution_path = prefix.with_extension("csv");
    let ratio_path = prefix.with_extension("ratio.csv");
    let manifest_path = prefix.with_extension("manifest.json");

    fs::write(&report_path, report.to_json_pretty())?;
    let mut csv = Vec::new();
    path.write_csv(&mut csv)?;
    fs::write(&solution_path, csv)?;
    let mut ratio = Vec::new();
    report.upper_estimate.write_csv(&mut ratio)?;
    fs::write(&ratio_path, ratio)?;

    let opts = SolverOptions::default();
    let manifest = RunManifest {
        command: format!(
            "sharpness --alpha {} --lambda {} --p2 {} --zeta {} --epsilon {} --T {} \
             --nodes-per-decade {}",
            fmt_float(args.alpha),
            fmt_float(args.lambda),
            fmt_float(args.p2),
            fmt_float(args.zeta),
            fmt_float(args.epsilon),
            fmt_float(args.t_end),
            args.nodes_per_decade
        ),
        problem: Some(problem),
        plan: Some(plan),
        mesh: MeshParams {
            kind: "long-horizon".into(),
            t_end: args.t_end,
            nodes: mesh.n(),
            grading: (2.0 / args.alpha).max(1.0),
            nodes_per_decade: Some(args.nodes_per_decade),
        },
        tolerances: Tolerances { step_abs: opts.tol_abs, step_rel: opts.tol_rel, picard: None },
        outputs: vec![
            report_path.display().to_string(),
            solution_path.display().to_string(),
            ratio_path.display().to_string(),
        ],
        tool_version: RunManifest::tool_version(),
        duration_seconds: start.elapsed().as_secs_f64(),
        iterations: None,
    };
    fs::write(&manifest_path, manifest.to_json_pretty())?;
    Ok(SharpnessOutput { report, report_path, solution_path, ratio_path, manifest_path })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plan_defaults_are_echoed() {
        let out = cmd_plan(&PlanArgs {
            alpha: 0.5,
            lambda: 0.2,
            p2: None,
            zeta: None,
            strict: false,
        })
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["p2"].as_f64().unwrap() > 0.0);
        assert!(v["zeta"].as_f64().unwrap() > 0.0);
        // deterministic
        let again = cmd_plan(&PlanArgs {
            alpha: 0.5,
            lambda: 0.2,
            p2: None,
            zeta: None,
            strict: false,
        })
        .unwrap();
        assert_eq!(out, again);
    }

    #[test]
    fn plan_worked_example_values() {
        let out = cmd_plan(&PlanArgs {
            alpha: 0.5,
            lambda: 0.2,
            p2: Some(6.0),
            zeta: Some(0.1),
            strict: true,
        })
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!((v["a"].as_f64().unwrap() - 0.7272727272727273).abs() < 1e-12);
        assert!((v["p1"].as_f64().unwrap() - 1.6923076923076923).abs() < 1e-9);
        assert!((v["p3"].as_f64().unwrap() - 4.125).abs() < 1e-12);
    }

    #[test]
    fn plan_order_violation_is_parameter_error() {
        let err = cmd_plan(&PlanArgs {
            alpha: 0.5,
            lambda: 0.6,
            p2: None,
            zeta: None,
            strict: false,
        })
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("order violation"));
    }
}
