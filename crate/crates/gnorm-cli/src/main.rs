//! `gnorm`: JSON config in, JSON/CSV reports out.
//!
//! Exit codes: 0 on success, 1 when a verification fails (an axiom check
//! reports a violation or a solver does not converge), 2 on config or
//! input errors.

mod config;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gnorm::{
    ball_sample, check_derived_gmetric, check_gnorm_axioms, contraction_estimate,
    expansive_solve, jungck_solve, picard_solve, Ball, GNormSpace, SolveReport, Vector,
};

use config::{Command, OutputFormat, RunConfig, SamplingSpec};
use report::{AxiomsEnvelope, BallEnvelope, EstimateEnvelope, SolveEnvelope};

#[derive(Parser)]
#[command(name = "gnorm", version, about = "G-norm numerics: axiom checking, fixed-point solving, ball sampling")]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Check the five G-norm axioms on the configured space.
    CheckAxioms(RunArgs),
    /// Check the G-metric axioms of the derived metric.
    CheckGmetric(RunArgs),
    /// Run contraction (Picard) iteration on the configured mapping.
    Solve(RunArgs),
    /// Estimate the contraction constant of the configured mapping.
    EstimateK(RunArgs),
    /// Sample members of the configured ball by rejection.
    BallSample(RunArgs),
    /// Find the common fixed point of a commuting pair.
    Jungck(RunArgs),
    /// Solve an expansive mapping through its inverse.
    Expansive(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Path of the JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Overrides the configured output path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the configured sampling seed.
    #[arg(long)]
    seed: Option<u64>,
}

/// What went wrong, mapped onto the exit-code contract.
enum Failure {
    /// Exit 2: the input could not be used.
    Config(String),
    /// Exit 1: the run completed and reported a genuine failure.
    Verification(String),
}

impl Failure {
    fn config(err: impl std::fmt::Display) -> Self {
        Failure::Config(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match &cli.command {
        CliCommand::CheckAxioms(a) => (Command::CheckAxioms, a),
        CliCommand::CheckGmetric(a) => (Command::CheckGmetric, a),
        CliCommand::Solve(a) => (Command::Solve, a),
        CliCommand::EstimateK(a) => (Command::EstimateK, a),
        CliCommand::BallSample(a) => (Command::BallSample, a),
        CliCommand::Jungck(a) => (Command::Jungck, a),
        CliCommand::Expansive(a) => (Command::Expansive, a),
    };
    match execute(command, args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(message)) => {
            eprintln!("verification failed: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Config(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn execute(command: Command, args: &RunArgs) -> Result<(), Failure> {
    let raw = fs::read_to_string(&args.config).map_err(|e| {
        Failure::Config(format!("cannot read {}: {e}", args.config.display()))
    })?;
    let mut config: RunConfig = serde_json::from_str(&raw).map_err(Failure::config)?;

    if config.command != command {
        return Err(Failure::Config(format!(
            "config is for `{}` but the `{}` subcommand was invoked",
            config.command.name(),
            command.name()
        )));
    }
    if let Some(seed) = args.seed {
        config.sampling.get_or_insert_with(SamplingSpec::default).seed = seed;
    }
    if let Some(out) = &args.out {
        config
            .output
            .get_or_insert(config::OutputSpec {
                path: None,
                format: OutputFormat::Json,
            })
            .path = Some(out.clone());
    }

    let space = config.space.build().map_err(Failure::config)?;
    match command {
        Command::CheckAxioms => run_axiom_check(&config, &space, false),
        Command::CheckGmetric => run_axiom_check(&config, &space, true),
        Command::Solve => run_solver(&config, &space, SolverKind::Picard),
        Command::Expansive => run_solver(&config, &space, SolverKind::Expansive),
        Command::Jungck => run_solver(&config, &space, SolverKind::Jungck),
        Command::EstimateK => run_estimate(&config, &space),
        Command::BallSample => run_ball_sample(&config, &space),
    }
}

fn run_axiom_check(
    config: &RunConfig,
    space: &GNormSpace,
    derived_metric: bool,
) -> Result<(), Failure> {
    let sampling = config.sampling.unwrap_or_default();
    let reports = if derived_metric {
        check_derived_gmetric(space, sampling.n_samples, sampling.seed)
    } else {
        check_gnorm_axioms(space, sampling.n_samples, sampling.seed)
    }
    .map_err(Failure::config)?;
    let all_passed = reports.iter().all(|r| r.passed);
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("{:?} (worst violation {})", r.axiom_id, r.worst_violation))
        .collect();
    let envelope = AxiomsEnvelope {
        command: config.command.name(),
        space: &config.space,
        n_samples: sampling.n_samples,
        seed: sampling.seed,
        all_passed,
        reports,
    };
    write_output(config, report::to_json(&envelope), None)?;
    println!(
        "{}: {} ({} samples, seed {})",
        config.command.name(),
        if all_passed { "all axioms passed" } else { "violations found" },
        sampling.n_samples,
        sampling.seed
    );
    if all_passed {
        Ok(())
    } else {
        Err(Failure::Verification(failed.join("; ")))
    }
}

enum SolverKind {
    Picard,
    Expansive,
    Jungck,
}

fn run_solver(config: &RunConfig, space: &GNormSpace, kind: SolverKind) -> Result<(), Failure> {
    let mapping_spec = config
        .mapping
        .as_ref()
        .ok_or_else(|| Failure::Config("missing `mapping` section".into()))?;
    let mut map = mapping_spec.build(space.dim()).map_err(Failure::config)?;
    let solver_spec = config
        .solver
        .as_ref()
        .ok_or_else(|| Failure::Config("missing `solver` section".into()))?;
    let cfg = solver_spec.build().map_err(Failure::config)?;

    let solve_report: SolveReport = match kind {
        SolverKind::Picard => picard_solve(space, &map, &cfg).map_err(Failure::config)?,
        SolverKind::Expansive => {
            if let Some(q) = config.q {
                map = map.with_expansion_constant(q);
            }
            expansive_solve(space, &map, &cfg).map_err(Failure::config)?
        }
        SolverKind::Jungck => {
            let s_spec = config
                .mapping_s
                .as_ref()
                .ok_or_else(|| Failure::Config("missing `mapping_s` section".into()))?;
            let map_s = s_spec.build(space.dim()).map_err(Failure::config)?;
            let q = config
                .q
                .ok_or_else(|| Failure::Config("missing `q` (relative contraction factor)".into()))?;
            jungck_solve(space, &map, &map_s, q, &cfg).map_err(Failure::config)?
        }
    };

    let envelope = SolveEnvelope {
        command: config.command.name(),
        space: &config.space,
        report: &solve_report,
    };
    match output_target(config) {
        (Some(path), OutputFormat::Csv) => report::emit_trace_csv(&solve_report, path)
            .map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display())))?,
        (None, OutputFormat::Csv) => print!("{}", report::trace_csv(&solve_report)),
        (Some(path), OutputFormat::Json) => write_file(path, &report::to_json(&envelope))?,
        (None, OutputFormat::Json) => print!("{}", report::to_json(&envelope)),
    }
    println!(
        "{}: converged = {}, iterations = {}, fixed point = {:?}, final residual = {:e}",
        config.command.name(),
        solve_report.converged,
        solve_report.iterations,
        solve_report.fixed_point.coords(),
        solve_report.final_residual,
    );
    if solve_report.converged {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "no convergence within {} iterations (final residual {:e})",
            solve_report.iterations, solve_report.final_residual
        )))
    }
}

fn run_estimate(config: &RunConfig, space: &GNormSpace) -> Result<(), Failure> {
    let mapping_spec = config
        .mapping
        .as_ref()
        .ok_or_else(|| Failure::Config("missing `mapping` section".into()))?;
    let map = mapping_spec.build(space.dim()).map_err(Failure::config)?;
    let sampling = config.sampling.unwrap_or_default();
    let estimate = contraction_estimate(space, &map, sampling.n_samples, sampling.seed)
        .map_err(Failure::config)?;
    let envelope = EstimateEnvelope {
        command: config.command.name(),
        space: &config.space,
        n_samples: sampling.n_samples,
        seed: sampling.seed,
        estimate,
    };
    write_output(config, report::to_json(&envelope), None)?;
    println!(
        "estimate-k: sampled Lipschitz lower bound = {estimate} ({} samples, seed {})",
        sampling.n_samples, sampling.seed
    );
    Ok(())
}

fn run_ball_sample(config: &RunConfig, space: &GNormSpace) -> Result<(), Failure> {
    let ball_spec = config
        .ball
        .as_ref()
        .ok_or_else(|| Failure::Config("missing `ball` section".into()))?;
    let center = Vector::new(ball_spec.center.clone()).map_err(Failure::config)?;
    let anchor = Vector::new(ball_spec.anchor.clone()).map_err(Failure::config)?;
    let ball = if ball_spec.closed {
        Ball::closed(center, anchor, ball_spec.radius)
    } else {
        Ball::open(center, anchor, ball_spec.radius)
    }
    .map_err(Failure::config)?;
    let sampling = config.sampling.unwrap_or_default();
    let sample = ball_sample(space, &ball, sampling.n_samples, sampling.seed)
        .map_err(Failure::config)?;
    let envelope = BallEnvelope {
        command: config.command.name(),
        space: &config.space,
        ball: ball_spec,
        requested: sampling.n_samples,
        accepted: sample.points.len(),
        empty_after_budget: sample.points.is_empty(),
        sample: &sample,
    };
    let csv = report::points_csv(&sample);
    write_output(config, report::to_json(&envelope), Some(csv))?;
    if sample.points.is_empty() {
        println!(
            "ball-sample: no members found in {} attempts; the ball may be empty",
            sample.attempts
        );
    } else {
        println!(
            "ball-sample: accepted {} of {} attempts (rate {:.4}, seed {})",
            sample.points.len(),
            sample.attempts,
            sample.acceptance_rate,
            sampling.seed
        );
    }
    Ok(())
}

fn output_target(config: &RunConfig) -> (Option<&Path>, OutputFormat) {
    match &config.output {
        Some(out) => (out.path.as_deref(), out.format),
        None => (None, OutputFormat::Json),
    }
}

/// Writes the report per the output section: JSON by default, CSV when the
/// command has a tabular payload. Without a path the payload goes to
/// stdout.
fn write_output(
    config: &RunConfig,
    json: String,
    csv: Option<String>,
) -> Result<(), Failure> {
    let (path, format) = output_target(config);
    let payload = match format {
        OutputFormat::Json => json,
        OutputFormat::Csv => csv.ok_or_else(|| {
            Failure::Config(format!(
                "`{}` has no CSV payload; use \"format\": \"json\"",
                config.command.name()
            ))
        })?,
    };
    match path {
        Some(path) => write_file(path, &payload),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, payload: &str) -> Result<(), Failure> {
    fs::write(path, payload)
        .map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display())))
}
