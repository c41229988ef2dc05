//! Distance-based inconsistency: per-triad scores and the matrix-level
//! maximum that localizes the worst triad.
//!
//! A triad (x, y, z) is consistent when y = x * z. Its score is
//!
//! ```text
//! ii = 1 - min(y / (x * z), x * z / y)
//! ```
//!
//! a value in [0, 1), zero exactly on consistent triads. The equivalent
//! distance form `ii = 1 - exp(-|ln(y / (x * z))|)` exposes the underlying
//! log-space metric: `log_distance = |ln y - ln(x * z)|` is how far the
//! triad sits from the consistent surface along the direction projections
//! move it. A third published variant, `min(|1 - y/(x*z)|, |1 - x*z/y|)`,
//! evaluates to the same number; the tests verify the agreement numerically
//! since no closed derivation accompanies it.

use crate::error::{PcError, Result};
use crate::matrix::PcMatrix;
use crate::triad::Triad;

/// Dimension cap above which [`InconsistencyReport::scores`] is left empty
/// and only the running maximum is tracked. C(100,3) scores are fine to
/// materialize; the cube growth beyond that is not worth holding for a
/// localization report.
pub const MAX_SCORED_DIMENSION: usize = 100;

/// Inconsistency score of one triad.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriadScore {
    pub triad: Triad,
    /// `1 - min(y/(x*z), x*z/y)`, in [0, 1).
    pub ii: f64,
    /// `|ln(y/(x*z))|`; `ii = 1 - exp(-log_distance)`.
    pub log_distance: f64,
}

/// Matrix-level inconsistency: the maximum triad score, which triad attains
/// it, and (for n up to [`MAX_SCORED_DIMENSION`]) every score, sorted by
/// descending ii with lexicographic (i, j, k) tie-breaking.
#[derive(Debug, Clone, PartialEq)]
pub struct InconsistencyReport {
    /// 0 when the matrix has no triads (n < 3).
    pub ii: f64,
    pub worst: Option<TriadScore>,
    pub scores: Vec<TriadScore>,
}

/// Scores one triad. Errors on non-positive values.
pub fn score_triad(triad: &Triad) -> Result<TriadScore> {
    let (x, y, z) = triad.values();
    if !(x > 0.0 && y > 0.0 && z > 0.0) {
        return Err(PcError::NonPositiveTriad { x, y, z });
    }
    let ratio = y / (x * z);
    Ok(TriadScore {
        triad: *triad,
        ii: 1.0 - ratio.min(1.0 / ratio),
        log_distance: ratio.ln().abs(),
    })
}

impl PcMatrix {
    /// Scores every triad above the diagonal and reports the maximum.
    ///
    /// Entries below the diagonal never enter a score, so the result reads
    /// as "the matrix inconsistency" only for reciprocal matrices; run
    /// [`PcMatrix::reciprocalized`] first when that is in doubt.
    pub fn inconsistency(&self) -> InconsistencyReport {
        let keep_scores = self.n() <= MAX_SCORED_DIMENSION;
        let mut scores = Vec::new();
        let mut worst: Option<TriadScore> = None;
        for triad in self.triads() {
            let score = score_triad(&triad).expect("matrix entries are positive");
            // Strict comparison in lexicographic visit order: ties resolve
            // to the smallest (i, j, k), keeping reductions deterministic.
            if worst.map_or(true, |w| score.ii > w.ii) {
                worst = Some(score);
            }
            if keep_scores {
                scores.push(score);
            }
        }
        scores.sort_by(|a, b| {
            b.ii.total_cmp(&a.ii)
                .then_with(|| a.triad.indices().cmp(&b.triad.indices()))
        });
        InconsistencyReport {
            ii: worst.map_or(0.0, |w| w.ii),
            worst,
            scores,
        }
    }
}
