//! Thin command-line front end over [`fivp::commands`].

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fivp::commands::{
    cmd_plan, cmd_sharpness, cmd_solve, PlanArgs, SharpnessArgs, SolveArgs, SolveMode,
};

#[derive(Parser)]
#[command(
    name = "fivp",
    version,
    about = "Solve sublinear fractional initial-value problems and verify their asymptotic growth"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Step,
    Picard,
}

#[derive(Subcommand)]
enum Command {
    /// Select and validate the exponent tuple (alpha, lambda, zeta, a, p1, p2, p3).
    Plan {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        lambda: f64,
        /// Interpolation exponent p2; geometric midpoint of its interval if omitted.
        #[arg(long)]
        p2: Option<f64>,
        /// Auxiliary exponent zeta; half its admissible bound if omitted.
        #[arg(long)]
        zeta: Option<f64>,
        /// Additionally require 3*alpha/2 < 1 and alpha > 2*lambda.
        #[arg(long)]
        strict: bool,
    },
    /// Solve a problem document and write t,x,residual CSV plus a manifest.
    Solve {
        /// Path to a problem JSON document.
        problem: PathBuf,
        #[arg(long = "T")]
        t_end: f64,
        #[arg(long)]
        nodes: usize,
        /// Mesh grading exponent r (nodes at T*(j/N)^r); defaults to 2/alpha.
        #[arg(long)]
        grading: Option<f64>,
        #[arg(long, value_enum, default_value = "step")]
        mode: Mode,
        /// Output prefix; writes <prefix>.csv and <prefix>.manifest.json.
        #[arg(long)]
        out: String,
    },
    /// Run the sharpness experiment end to end and write its report.
    Sharpness {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        p2: f64,
        #[arg(long)]
        zeta: f64,
        #[arg(long)]
        epsilon: f64,
        /// Prescribed eta0 in (0,1) for the gap refinement (needs alpha < 2/7).
        #[arg(long)]
        eta0: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        x0: f64,
        #[arg(long = "T")]
        t_end: f64,
        #[arg(long, default_value_t = 2048)]
        nodes_per_decade: usize,
        /// Output prefix; writes <prefix>.report.json, <prefix>.csv,
        /// <prefix>.ratio.csv and <prefix>.manifest.json.
        #[arg(long)]
        out: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: Result<(), fivp::commands::CommandError> = match cli.command {
        Command::Plan { alpha, lambda, p2, zeta, strict } => {
            cmd_plan(&PlanArgs { alpha, lambda, p2, zeta, strict }).map(|json| println!("{json}"))
        }
        Command::Solve { problem, t_end, nodes, grading, mode, out } => cmd_solve(&SolveArgs {
            problem_path: problem,
            t_end,
            nodes,
            grading,
            mode: match mode {
                Mode::Step => SolveMode::Step,
                Mode::Picard => SolveMode::Picard,
            },
            out_prefix: out,
        })
        .map(|output| {
            println!("wrote {}", output.csv_path.display());
            println!("wrote {}", output.manifest_path.display());
        }),
        Command::Sharpness {
            alpha,
            lambda,
            p2,
            zeta,
            epsilon,
            eta0,
            x0,
            t_end,
            nodes_per_decade,
            out,
        } => cmd_sharpness(&SharpnessArgs {
            alpha,
            lambda,
            p2,
            zeta,
            epsilon,
            eta0,
            x0,
            t_end,
            nodes_per_decade,
            out_prefix: out,
        })
        .map(|output| {
            println!(
                "verdict: {}",
                if output.report.verdict { "pass" } else { "fail" }
            );
            println!("wrote {}", output.report_path.display());
            println!("wrote {}", output.solution_path.display());
            println!("wrote {}", output.ratio_path.display());
            println!("wrote {}", output.manifest_path.display());
        }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
