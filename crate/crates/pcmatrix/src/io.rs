//! File formats for matrices, analysis reports, reduction traces and
//! experiment reports.
//!
//! Matrix files hold either bare CSV (n rows of n comma-separated positive
//! decimals) or JSON (`{"n": int, "matrix": [[...], ...]}`). All indices
//! in written files are 1-based, while the in-memory structs stay 0-based.
//! Matrix values are written in shortest round-trip notation, not a fixed
//! decimal width: a reciprocal matrix must still be reciprocal within
//! tolerance after a write/read cycle, and fixed-width rounding would
//! break that.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{PcError, Result};
use crate::inconsistency::InconsistencyReport;
use crate::matrix::PcMatrix;
use crate::montecarlo::{ExperimentConfig, ExperimentReport, ExperimentSummary};
use crate::reduction::ReductionTrace;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Csv,
    Json,
}

/// Chooses a format from the file extension: `.json` in any case means
/// JSON, anything else (including no extension) means CSV.
pub fn detect_format(path: &Path) -> MatrixFormat {
    match path.extension() {
        Some(ext) if ext.eq_ignore_ascii_case("json") => MatrixFormat::Json,
        _ => MatrixFormat::Csv,
    }
}

/// Parses CSV matrix text. Blank lines are skipped; positions in errors
/// refer to the matrix row and column.
pub fn parse_matrix_csv(text: &str) -> Result<PcMatrix> {
    let mut rows = Vec::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        let row_index = rows.len();
        let mut row = Vec::new();
        for (col, token) in line.split(',').enumerate() {
            let token = token.trim();
            let value: f64 = token.parse().map_err(|_| PcError::InvalidNumber {
                row: row_index,
                col,
                token: token.to_string(),
            })?;
            row.push(value);
        }
        rows.push(row);
    }
    PcMatrix::from_rows(&rows)
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    n: usize,
    matrix: Vec<Vec<f64>>,
}

/// Parses JSON matrix text of the form `{"n": 3, "matrix": [[...], ...]}`.
/// JSON has no NaN or infinity literals, so non-finite values are parse
/// errors before validation even starts.
pub fn parse_matrix_json(text: &str) -> Result<PcMatrix> {
    let file: MatrixFile = serde_json::from_str(text)?;
    if file.n != file.matrix.len() {
        return Err(PcError::DimensionMismatch {
            declared: file.n,
            found: file.matrix.len(),
        });
    }
    PcMatrix::from_rows(&file.matrix)
}

/// Reads a matrix file, choosing the parser by extension.
pub fn read_matrix(path: &Path) -> Result<(PcMatrix, MatrixFormat)> {
    let text = fs::read_to_string(path)?;
    let format = detect_format(path);
    let matrix = match format {
        MatrixFormat::Csv => parse_matrix_csv(&text)?,
        MatrixFormat::Json => parse_matrix_json(&text)?,
    };
    Ok((matrix, format))
}

pub fn matrix_to_csv(matrix: &PcMatrix) -> String {
    let mut out = String::new();
    for row in matrix.rows() {
        let line: Vec<String> = row.iter().map(f64::to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn matrix_to_json(matrix: &PcMatrix) -> String {
    let file = MatrixFile {
        n: matrix.n(),
        matrix: matrix.rows(),
    };
    let mut out = serde_json::to_string(&file).expect("matrix serialization cannot fail");
    out.push('\n');
    out
}

pub fn matrix_to_string(matrix: &PcMatrix, format: MatrixFormat) -> String {
    match format {
        MatrixFormat::Csv => matrix_to_csv(matrix),
        MatrixFormat::Json => matrix_to_json(matrix),
    }
}

pub fn write_matrix(path: &Path, matrix: &PcMatrix, format: MatrixFormat) -> Result<()> {
    fs::write(path, matrix_to_string(matrix, format))?;
    Ok(())
}

#[derive(Serialize)]
struct ScoreDto {
    i: usize,
    j: usize,
    k: usize,
    ii: f64,
}

#[derive(Serialize)]
struct ReportDto {
    ii: f64,
    worst: Option<ScoreDto>,
    scores: Vec<ScoreDto>,
}

/// Serializes an inconsistency report as JSON with 1-based indices:
/// `{"ii": .., "worst": {"i", "j", "k", "ii"}, "scores": [..]}`.
pub fn inconsistency_report_to_json(report: &InconsistencyReport) -> String {
    let score_dto = |score: &crate::inconsistency::TriadScore| {
        let (i, j, k) = score.triad.indices();
        ScoreDto {
            i: i + 1,
            j: j + 1,
            k: k + 1,
            ii: score.ii,
        }
    };
    let dto = ReportDto {
        ii: report.ii,
        worst: report.worst.as_ref().map(score_dto),
        scores: report.scores.iter().map(score_dto).collect(),
    };
    let mut out = serde_json::to_string_pretty(&dto).expect("report serialization cannot fail");
    out.push('\n');
    out
}

#[derive(Serialize)]
struct TraceLine {
    step: usize,
    triad: [usize; 3],
    ii_before: f64,
    ii_after: f64,
}

/// Serializes a reduction trace as JSON lines, one compact object per
/// step with 1-based triad indices.
pub fn trace_to_jsonl(trace: &ReductionTrace) -> String {
    let mut out = String::new();
    for step in &trace.steps {
        let (i, j, k) = step.triad;
        let line = TraceLine {
            step: step.step,
            triad: [i + 1, j + 1, k + 1],
            ii_before: step.ii_before,
            ii_after: step.ii_after,
        };
        out.push_str(&serde_json::to_string(&line).expect("trace serialization cannot fail"));
        out.push('\n');
    }
    out
}

fn config_echo(config: &ExperimentConfig) -> String {
    format!(
        "n={} samples={} beta={} seed={} threshold={} max_steps={}",
        config.n, config.samples, config.beta, config.seed, config.threshold, config.max_steps
    )
}

/// Serializes the per-sample records as CSV: comment lines echoing the
/// config, a header, then one row per sample with 1-based sample numbers.
/// Eigen distance cells are empty for samples whose eigen solve failed.
pub fn experiment_to_csv(report: &ExperimentReport) -> String {
    let mut out = String::new();
    out.push_str("# pcmatrix montecarlo report\n");
    out.push_str(&format!("# {}\n", config_echo(&report.config)));
    out.push_str(&format!("# rng={}\n", report.rng_algorithm));
    out.push_str(
        "sample,initial_ii,steps,converged,gm_log_distance,gm_raw_distance,\
         ev_log_distance,ev_raw_distance\n",
    );
    let opt = |value: Option<f64>| value.map(|v| v.to_string()).unwrap_or_default();
    for record in &report.records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            record.sample + 1,
            record.initial_ii,
            record.steps,
            record.converged,
            record.gm_log_distance,
            record.gm_raw_distance,
            opt(record.ev_log_distance),
            opt(record.ev_raw_distance),
        ));
    }
    out
}

#[derive(Serialize)]
struct SummaryFile<'a> {
    config: &'a ExperimentConfig,
    rng_algorithm: &'a str,
    summary: &'a ExperimentSummary,
}

/// Serializes the aggregate side of an experiment as pretty JSON with the
/// full config echo.
pub fn experiment_summary_to_json(report: &ExperimentReport) -> String {
    let file = SummaryFile {
        config: &report.config,
        rng_algorithm: &report.rng_algorithm,
        summary: &report.summary,
    };
    let mut out =
        serde_json::to_string_pretty(&file).expect("summary serialization cannot fail");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::run_experiment;
    use crate::reduction::{reduce, ReductionConfig};
    use crate::testutil::example1;

    #[test]
    fn csv_round_trip_is_exact() {
        let m = example1();
        let text = matrix_to_csv(&m);
        let back = parse_matrix_csv(&text).unwrap();
        assert_eq!(m, back);
        assert_eq!(text, matrix_to_csv(&back));
        assert!(back.is_reciprocal());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let m = example1();
        let back = parse_matrix_json(&matrix_to_json(&m)).unwrap();
        assert_eq!(m, back);
        assert!(back.is_reciprocal());
    }

    #[test]
    fn csv_skips_blank_lines() {
        let m = parse_matrix_csv("1,2\n\n0.5,1\n").unwrap();
        assert_eq!(m.n(), 2);
        assert_eq!(m.get(0, 1), 2.0);
    }

    #[test]
    fn csv_reports_unparseable_tokens_with_position() {
        let err = parse_matrix_csv("1,2\n0.5,x\n").unwrap_err();
        match &err {
            PcError::InvalidNumber { row, col, token } => {
                assert_eq!((*row, *col), (1, 1));
                assert_eq!(token, "x");
            }
            other => panic!("unexpected error {other:?}"),
        }
        assert!(err.to_string().contains("(2, 2)"));
    }

    #[test]
    fn csv_rejects_non_positive_values_with_position() {
        let err = parse_matrix_csv("1,2\n-0.5,1\n").unwrap_err();
        assert!(matches!(err, PcError::NonPositiveEntry { row: 1, col: 0, .. }));
        assert!(err.to_string().contains("(2, 1)"));
    }

    #[test]
    fn json_rejects_dimension_mismatch() {
        let err = parse_matrix_json(r#"{"n": 3, "matrix": [[1.0, 2.0], [0.5, 1.0]]}"#)
            .unwrap_err();
        assert!(matches!(
            err,
            PcError::DimensionMismatch {
                declared: 3,
                found: 2
            }
        ));
    }

    #[test]
    fn json_rejects_non_finite_literals() {
        let err = parse_matrix_json(r#"{"n": 2, "matrix": [[1.0, NaN], [0.5, 1.0]]}"#)
            .unwrap_err();
        assert!(matches!(err, PcError::Json(_)));
    }

    #[test]
    fn format_detection_follows_extension() {
        assert_eq!(detect_format(Path::new("m.json")), MatrixFormat::Json);
        assert_eq!(detect_format(Path::new("M.JSON")), MatrixFormat::Json);
        assert_eq!(detect_format(Path::new("m.csv")), MatrixFormat::Csv);
        assert_eq!(detect_format(Path::new("m.txt")), MatrixFormat::Csv);
        assert_eq!(detect_format(Path::new("matrix")), MatrixFormat::Csv);
    }

    #[test]
    fn read_matrix_surfaces_io_errors() {
        let err = read_matrix(Path::new("/nonexistent/matrix.csv")).unwrap_err();
        assert!(matches!(err, PcError::Io(_)));
    }

    #[test]
    fn report_json_uses_one_based_indices() {
        let text = inconsistency_report_to_json(&example1().inconsistency());
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!((value["ii"].as_f64().unwrap() - 1.0 / 6.0).abs() < 1e-12);
        assert_eq!(value["worst"]["i"], 1);
        assert_eq!(value["worst"]["j"], 2);
        assert_eq!(value["worst"]["k"], 3);
        assert_eq!(value["scores"].as_array().unwrap().len(), 1);
        assert_eq!(value["scores"][0]["ii"], value["worst"]["ii"]);
    }

    #[test]
    fn trace_jsonl_has_one_line_per_step() {
        let (_, trace) = reduce(&example1(), &ReductionConfig::default());
        let text = trace_to_jsonl(&trace);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 1);
        let value: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(value["step"], 1);
        assert_eq!(value["triad"], serde_json::json!([1, 2, 3]));
        assert!((value["ii_before"].as_f64().unwrap() - 1.0 / 6.0).abs() < 1e-12);
        assert!(value["ii_after"].as_f64().unwrap() < 1e-6);
    }

    #[test]
    fn experiment_csv_echoes_config_and_is_deterministic() {
        let config = ExperimentConfig {
            n: 3,
            samples: 3,
            beta: 1.0,
            seed: 5,
            threshold: 1e-6,
            max_steps: 1000,
        };
        let report = run_experiment(&config).unwrap();
        let csv = experiment_to_csv(&report);
        assert!(csv.starts_with("# pcmatrix montecarlo report\n"));
        assert!(csv.contains("# n=3 samples=3 beta=1 seed=5"));
        assert!(csv.contains("# rng=chacha8"));
        assert_eq!(csv.lines().count(), 3 + 1 + 3);
        let first_row = csv.lines().nth(4).unwrap();
        assert!(first_row.starts_with("1,"));
        // Eigen columns are populated on a healthy run.
        assert!(!first_row.ends_with(','));

        let again = run_experiment(&config).unwrap();
        assert_eq!(csv, experiment_to_csv(&again));
        assert_eq!(
            experiment_summary_to_json(&report),
            experiment_summary_to_json(&again)
        );
    }

    #[test]
    fn summary_json_echoes_config() {
        let config = ExperimentConfig {
            n: 4,
            samples: 2,
            beta: 0.5,
            seed: 1,
            threshold: 1e-6,
            max_steps: 1000,
        };
        let report = run_experiment(&config).unwrap();
        let value: serde_json::Value =
            serde_json::from_str(&experiment_summary_to_json(&report)).unwrap();
        assert_eq!(value["config"]["n"], 4);
        assert_eq!(value["config"]["seed"], 1);
        assert_eq!(value["rng_algorithm"], "chacha8");
        assert_eq!(value["summary"]["samples"], 2);
        assert!(value["summary"]["step_histogram"].is_array());
    }
}
