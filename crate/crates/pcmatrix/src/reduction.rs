//! Inconsistency reduction by iterated worst-triad projection.
//!
//! Each step finds the triad with the largest distance-based inconsistency
//! and replaces its three values with their orthogonal projection onto the
//! consistency plane (computed in log space). Writing a projected triad
//! back, together with the reciprocal entries, preserves every row sum of
//! the log matrix: the projection shifts the three log values by
//! `(-r, +r, -r)`, and the reciprocal updates shift the transposed entries
//! oppositely, so the changes cancel row by row. Row sums of the log
//! matrix determine the row geometric means, which therefore stay fixed
//! through every step. The loop ends at a consistent matrix, and the only
//! consistent matrix with those geometric means is the one generated by
//! them: reduction converges to [`direct_projection`], the consistent
//! matrix of the row geometric means of the input, not to the principal
//! eigenvector's matrix.

use crate::error::{PcError, Result};
use crate::matrix::{AdditiveMatrix, PcMatrix};
use crate::matrix::WeightVector;
use crate::triad::Triad;

/// Default stop threshold on the matrix inconsistency.
pub const DEFAULT_REDUCTION_THRESHOLD: f64 = 1e-6;

pub const DEFAULT_MAX_STEPS: usize = 10_000;

/// How much per-step state [`reduce`] records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TracePolicy {
    /// Record step numbers, triads and inconsistency values only.
    #[default]
    ScoresOnly,
    /// Additionally snapshot the whole matrix after each step.
    FullMatrices,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionConfig {
    threshold: f64,
    max_steps: usize,
    trace_policy: TracePolicy,
}

impl ReductionConfig {
    /// A config stopping when the matrix inconsistency drops to
    /// `threshold` or below, or after `max_steps` steps, whichever comes
    /// first.
    pub fn new(threshold: f64, max_steps: usize) -> Result<Self> {
        if !(threshold > 0.0 && threshold.is_finite()) {
            return Err(PcError::InvalidConfig {
                message: format!("reduction threshold must be positive and finite, got {threshold}"),
            });
        }
        if max_steps == 0 {
            return Err(PcError::InvalidConfig {
                message: "max_steps must be at least 1".to_string(),
            });
        }
        Ok(Self {
            threshold,
            max_steps,
            trace_policy: TracePolicy::default(),
        })
    }

    pub fn with_trace_policy(mut self, policy: TracePolicy) -> Self {
        self.trace_policy = policy;
        self
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn max_steps(&self) -> usize {
        self.max_steps
    }

    pub fn trace_policy(&self) -> TracePolicy {
        self.trace_policy
    }
}

impl Default for ReductionConfig {
    fn default() -> Self {
        Self {
            threshold: DEFAULT_REDUCTION_THRESHOLD,
            max_steps: DEFAULT_MAX_STEPS,
            trace_policy: TracePolicy::default(),
        }
    }
}

/// One projection step of a reduction run.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionStep {
    /// 1-based step number.
    pub step: usize,
    /// Indices of the projected triad.
    pub triad: (usize, usize, usize),
    /// Matrix inconsistency before this step.
    pub ii_before: f64,
    /// Matrix inconsistency after this step.
    pub ii_after: f64,
    /// Matrix state after this step, under [`TracePolicy::FullMatrices`].
    pub snapshot: Option<PcMatrix>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub steps_taken: usize,
    /// Row geometric means of the input matrix. Every step preserves
    /// them, so they equal the row geometric means of the output too.
    pub initial_gm: WeightVector,
    /// Matrix inconsistency of the output matrix.
    pub final_ii: f64,
    /// Whether `final_ii <= threshold`. False only when the step budget
    /// ran out first.
    pub converged: bool,
}

/// Reduces `matrix` by repeatedly projecting its worst triad, until the
/// matrix inconsistency is at most the configured threshold or the step
/// budget is exhausted. Ties on the worst triad go to the lexicographically
/// smallest index triple. Expects a reciprocal matrix: every step writes
/// reciprocal pairs, so lower-triangle entries of a non-reciprocal input
/// would be silently overwritten.
pub fn reduce(matrix: &PcMatrix, config: &ReductionConfig) -> (PcMatrix, ReductionTrace) {
    let initial_gm = matrix.row_geometric_means();
    let mut current = matrix.clone();
    let mut report = current.inconsistency();
    let mut steps = Vec::new();

    while report.ii > config.threshold && steps.len() < config.max_steps {
        let worst = report
            .worst
            .expect("a matrix with positive inconsistency has triads");
        let projected = project_triad_multiplicative(&worst.triad)
            .expect("triads of a valid matrix are positive");
        apply_triad(&mut current, &projected);
        let ii_before = report.ii;
        report = current.inconsistency();
        steps.push(ReductionStep {
            step: steps.len() + 1,
            triad: worst.triad.indices(),
            ii_before,
            ii_after: report.ii,
            snapshot: match config.trace_policy {
                TracePolicy::ScoresOnly => None,
                TracePolicy::FullMatrices => Some(current.clone()),
            },
        });
    }

    let trace = ReductionTrace {
        steps_taken: steps.len(),
        steps,
        initial_gm,
        final_ii: report.ii,
        converged: report.ii <= config.threshold,
    };
    (current, trace)
}

/// Writes a triad and the three reciprocal entries into `matrix`.
fn apply_triad(matrix: &mut PcMatrix, triad: &Triad) {
    let (i, j, k) = triad.indices();
    let (x, y, z) = triad.values();
    matrix.set(i, j, x);
    matrix.set(j, i, 1.0 / x);
    matrix.set(i, k, y);
    matrix.set(k, i, 1.0 / y);
    matrix.set(j, k, z);
    matrix.set(k, j, 1.0 / z);
}

/// Orthogonal projection of `(x, y, z)` onto the additive consistency
/// plane `y = x + z`. With `r = (x - y + z) / 3` the projection is
/// `(x - r, y + r, z - r)`: the closest consistent point in Euclidean
/// distance, reached along the plane's normal `(1, -1, 1)`.
pub fn project_triad_additive(x: f64, y: f64, z: f64) -> (f64, f64, f64) {
    let r = (x - y + z) / 3.0;
    (x - r, y + r, z - r)
}

/// Multiplicative counterpart of [`project_triad_additive`]: maps the
/// values to log space, projects, and maps back. Equivalent to
///
/// ```text
/// (x^(2/3) y^(1/3) z^(-1/3),  x^(1/3) y^(2/3) z^(1/3),  x^(-1/3) y^(1/3) z^(2/3))
/// ```
///
/// and yields the consistent triad closest in log-space distance.
pub fn project_triad_multiplicative(triad: &Triad) -> Result<Triad> {
    let (x, y, z) = triad.values();
    if !(x > 0.0 && y > 0.0 && z > 0.0) {
        return Err(PcError::NonPositiveTriad { x, y, z });
    }
    let (a, b, c) = project_triad_additive(x.ln(), y.ln(), z.ln());
    Ok(triad.with_values(a.exp(), b.exp(), c.exp()))
}

/// The three consistent triads reachable by changing a single value of
/// `triad`: `(x, xz, z)` fixes `y`, `(y/z, y, z)` fixes `x`, and
/// `(x, y, y/x)` fixes `z`. Unlike the orthogonal projection these keep
/// two of the three comparisons untouched, at the price of moving the
/// third further.
pub fn single_entry_repairs(triad: &Triad) -> Result<[Triad; 3]> {
    let (x, y, z) = triad.values();
    if !(x > 0.0 && y > 0.0 && z > 0.0) {
        return Err(PcError::NonPositiveTriad { x, y, z });
    }
    Ok([
        triad.with_values(x, x * z, z),
        triad.with_values(y / z, y, z),
        triad.with_values(x, y, y / x),
    ])
}

/// The consistent matrix generated by the row geometric means of
/// `matrix`: entry `(i, j)` equals `gm_i / gm_j`. This is the limit of
/// [`reduce`] and equals the orthogonal projection of the log matrix onto
/// the linear subspace of consistent matrices, taken in one shot.
pub fn direct_projection(matrix: &PcMatrix) -> PcMatrix {
    PcMatrix::consistent_from_weights(&matrix.row_geometric_means())
        .expect("row geometric means of a valid matrix are positive")
}

/// Closed-form orthogonal projection of a 4x4 log matrix onto the
/// consistent subspace, written directly in the six upper-triangle
/// coordinates `(a, b, c, d, e, f) = (b01, b02, b03, b12, b13, b23)`:
///
/// ```text
/// A = (2a + b + c - d - e) / 4      D = (-a + b + 2d + e - f) / 4
/// B = (a + 2b + c + d - f) / 4      E = (-a + c + d + 2e + f) / 4
/// C = (a + b + 2c + e + f) / 4      F = (-b + c - d + e + 2f) / 4
/// ```
///
/// Only the upper triangle of the input is read; the result is exactly
/// skew-symmetric. Agrees with the log of [`direct_projection`] of the
/// exponentiated matrix.
pub fn project_n4_closed_form(matrix: &AdditiveMatrix) -> Result<AdditiveMatrix> {
    if matrix.n() != 4 {
        return Err(PcError::WrongDimension {
            expected: 4,
            found: matrix.n(),
        });
    }
    let g = |i, j| matrix.get(i, j);
    let (a, b, c) = (g(0, 1), g(0, 2), g(0, 3));
    let (d, e, f) = (g(1, 2), g(1, 3), g(2, 3));
    let pa = (2.0 * a + b + c - d - e) / 4.0;
    let pb = (a + 2.0 * b + c + d - f) / 4.0;
    let pc = (a + b + 2.0 * c + e + f) / 4.0;
    let pd = (-a + b + 2.0 * d + e - f) / 4.0;
    let pe = (-a + c + d + 2.0 * e + f) / 4.0;
    let pf = (-b + c - d + e + 2.0 * f) / 4.0;
    AdditiveMatrix::from_rows(&[
        vec![0.0, pa, pb, pc],
        vec![-pa, 0.0, pd, pe],
        vec![-pb, -pd, 0.0, pf],
        vec![-pc, -pe, -pf, 0.0],
    ])
}
