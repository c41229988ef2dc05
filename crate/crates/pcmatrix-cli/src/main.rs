//! Command-line surface over the pcmatrix library.
//!
//! Exit codes: 0 on success, 2 on input or usage errors (clap uses the
//! same code for bad flags), 3 when an iteration ran out of budget —
//! either the reduction step limit or the eigen solver. A non-convergent
//! `reduce` still writes its outputs before exiting 3.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pcmatrix::io;
use pcmatrix::montecarlo::{run_experiment, ExperimentConfig};
use pcmatrix::spectral::principal_eigenpair;
use pcmatrix::{
    direct_projection, reduce, saaty_ci, MatrixClass, PcError, PcMatrix, ReductionConfig,
    WeightVector,
};

#[derive(Parser)]
#[command(name = "pcmatrix", version, about = "Inconsistency analysis and reduction for pairwise-comparison matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a matrix and print its inconsistency and spectral measures.
    Analyze {
        /// Matrix file, CSV or JSON by extension.
        input: PathBuf,
    },
    /// Reduce inconsistency by iterated worst-triad projection.
    Reduce {
        /// Matrix file, CSV or JSON by extension.
        input: PathBuf,
        /// Stop once the matrix inconsistency is at or below this value.
        #[arg(long, default_value_t = 1e-6)]
        threshold: f64,
        /// Give up after this many projection steps.
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        /// Write a JSONL step trace to this path.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write the reduced matrix here instead of stdout (input format).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Repair a non-reciprocal input before reducing.
        #[arg(long)]
        reciprocalize: bool,
    },
    /// Print a sum-to-one weight vector, one entry per line.
    Weights {
        /// Matrix file, CSV or JSON by extension.
        input: PathBuf,
        /// Weight derivation method.
        #[arg(long, value_enum, default_value_t = Method::Gm)]
        method: Method,
    },
    /// Compare the geometric-means and eigenvector approximations.
    Compare {
        /// Matrix file, CSV or JSON by extension.
        input: PathBuf,
    },
    /// Run a seeded random-matrix experiment and write its report files.
    Montecarlo {
        /// Matrix dimension (at least 3).
        #[arg(long)]
        n: usize,
        /// Number of random matrices.
        #[arg(long)]
        samples: usize,
        /// Log-uniform perturbation half-width; 0 generates consistent
        /// matrices.
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Reduction stop threshold per sample.
        #[arg(long, default_value_t = 1e-6)]
        threshold: f64,
        /// Reduction step budget per sample.
        #[arg(long, default_value_t = 100_000)]
        max_steps: usize,
        /// Per-sample records, CSV.
        #[arg(long, default_value = "montecarlo.csv")]
        out_csv: PathBuf,
        /// Aggregate summary, JSON.
        #[arg(long, default_value = "montecarlo.json")]
        out_json: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum Method {
    /// Row geometric means.
    Gm,
    /// Principal eigenvector.
    Ev,
}

/// Restores the default SIGPIPE action so piping into a pager or `head`
/// ends the process quietly instead of panicking on a failed print.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                PcError::EigenDidNotConverge { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode, PcError> {
    match command {
        Command::Analyze { input } => analyze(&input),
        Command::Reduce {
            input,
            threshold,
            max_steps,
            trace,
            out,
            reciprocalize,
        } => reduce_cmd(&input, threshold, max_steps, trace, out, reciprocalize),
        Command::Weights { input, method } => weights_cmd(&input, method),
        Command::Compare { input } => compare(&input),
        Command::Montecarlo {
            n,
            samples,
            beta,
            seed,
            threshold,
            max_steps,
            out_csv,
            out_json,
        } => montecarlo(
            ExperimentConfig {
                n,
                samples,
                beta,
                seed,
                threshold,
                max_steps,
            },
            &out_csv,
            &out_json,
        ),
    }
}

fn format_weights(vector: &WeightVector) -> String {
    let parts: Vec<String> = vector
        .values()
        .iter()
        .map(|v| format!("{v:.9}"))
        .collect();
    parts.join(" ")
}

fn analyze(input: &Path) -> Result<ExitCode, PcError> {
    let (matrix, _) = io::read_matrix(input)?;
    let validation = matrix.validate();
    println!("dimension: {}", matrix.n());
    let class = match validation.class {
        MatrixClass::Reciprocal => "reciprocal",
        MatrixClass::NonReciprocal => "non-reciprocal",
        MatrixClass::Invalid => "invalid",
    };
    println!("classification: {class}");
    for violation in &validation.violations {
        println!("violation: {violation}");
    }

    let report = matrix.inconsistency();
    println!("inconsistency: {:.9}", report.ii);
    match &report.worst {
        Some(worst) => {
            let (i, j, k) = worst.triad.indices();
            println!(
                "worst triad: ({}, {}, {}) ii={:.9}",
                i + 1,
                j + 1,
                k + 1,
                worst.ii
            );
        }
        None => println!("worst triad: none"),
    }

    let eigen = principal_eigenpair(&matrix)?;
    println!("lambda_max: {:.9}", eigen.lambda_max);
    println!("saaty_ci: {:.9}", saaty_ci(&matrix)?);
    println!(
        "gm weights: {}",
        format_weights(&matrix.row_geometric_means().normalized())
    );
    println!("ev weights: {}", format_weights(&eigen.vector));
    Ok(ExitCode::SUCCESS)
}

fn reduce_cmd(
    input: &Path,
    threshold: f64,
    max_steps: usize,
    trace_path: Option<PathBuf>,
    out: Option<PathBuf>,
    reciprocalize: bool,
) -> Result<ExitCode, PcError> {
    let (mut matrix, format) = io::read_matrix(input)?;
    if !matrix.is_reciprocal() {
        if reciprocalize {
            matrix = matrix.reciprocalized();
        } else {
            eprintln!(
                "error: input matrix is not reciprocal; rerun with --reciprocalize to repair it"
            );
            return Ok(ExitCode::from(2));
        }
    }

    let config = ReductionConfig::new(threshold, max_steps)?;
    let initial_ii = matrix.inconsistency().ii;
    let (reduced, trace) = reduce(&matrix, &config);

    match &out {
        Some(path) => io::write_matrix(path, &reduced, format)?,
        None => print!("{}", io::matrix_to_string(&reduced, format)),
    }
    if let Some(path) = &trace_path {
        std::fs::write(path, io::trace_to_jsonl(&trace))?;
    }

    eprintln!(
        "{} steps, inconsistency {:.9} -> {:.9}",
        trace.steps_taken, initial_ii, trace.final_ii
    );
    if trace.converged {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!(
            "error: step budget of {max_steps} exhausted with inconsistency above {threshold}"
        );
        Ok(ExitCode::from(3))
    }
}

fn weights_cmd(input: &Path, method: Method) -> Result<ExitCode, PcError> {
    let (matrix, _) = io::read_matrix(input)?;
    let vector = match method {
        Method::Gm => matrix.row_geometric_means().normalized(),
        Method::Ev => principal_eigenpair(&matrix)?.vector,
    };
    for value in vector.values() {
        println!("{value:.9}");
    }
    Ok(ExitCode::SUCCESS)
}

fn compare(input: &Path) -> Result<ExitCode, PcError> {
    let (matrix, _) = io::read_matrix(input)?;
    let gm = matrix.row_geometric_means().normalized();
    let eigen = principal_eigenpair(&matrix)?;
    let gm_matrix = direct_projection(&matrix);
    let ev_matrix = PcMatrix::consistent_from_weights(&eigen.vector)?;

    println!("gm weights: {}", format_weights(&gm));
    println!("ev weights: {}", format_weights(&eigen.vector));
    println!(
        "gm log-frobenius distance: {:.9}",
        matrix.log_frobenius_distance(&gm_matrix)
    );
    println!(
        "ev log-frobenius distance: {:.9}",
        matrix.log_frobenius_distance(&ev_matrix)
    );
    println!(
        "gm frobenius distance: {:.9}",
        matrix.frobenius_distance(&gm_matrix)
    );
    println!(
        "ev frobenius distance: {:.9}",
        matrix.frobenius_distance(&ev_matrix)
    );
    Ok(ExitCode::SUCCESS)
}

fn montecarlo(
    config: ExperimentConfig,
    out_csv: &Path,
    out_json: &Path,
) -> Result<ExitCode, PcError> {
    let report = run_experiment(&config)?;
    std::fs::write(out_csv, io::experiment_to_csv(&report))?;
    std::fs::write(out_json, io::experiment_summary_to_json(&report))?;

    let summary = &report.summary;
    println!(
        "n={} samples={} beta={} seed={}",
        config.n, config.samples, config.beta, config.seed
    );
    println!("converged fraction: {:.9}", summary.converged_fraction);
    println!("median steps: {}", summary.steps.median);
    println!("gm log-distance mean: {:.9}", summary.gm_log_distance.mean);
    if let Some(ev) = &summary.ev_log_distance {
        println!("ev log-distance mean: {:.9}", ev.mean);
    }
    println!("wrote {} and {}", out_csv.display(), out_json.display());
    Ok(ExitCode::SUCCESS)
}
