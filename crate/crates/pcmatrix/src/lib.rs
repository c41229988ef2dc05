//! Pairwise-comparison matrices: distance-based inconsistency analysis and
//! reduction.
//!
//! A pairwise-comparison matrix holds positive relative judgements
//! `m_ij ≈ v_i / v_j` over n alternatives. The crate measures how far
//! such a matrix is from consistency (`m_ij * m_jk = m_ik`), localizes the
//! worst-offending triad, and reduces inconsistency by repeatedly
//! replacing that triad with its closest consistent counterpart in log
//! space.
//!
//! The reduction has a clean limit: every step preserves the row
//! geometric means, so the iteration converges to the consistent matrix
//! generated by the row geometric means of the input ([`direct_projection`]),
//! which is also the log-Frobenius-closest consistent matrix. The
//! principal eigenvector generates a different consistent matrix for
//! n ≥ 4; [`montecarlo`] quantifies the gap on random matrices, and
//! [`spectral`] computes the eigenpair for the comparison.
//!
//! Entry points:
//!
//! - [`PcMatrix`] for construction, validation and classification;
//! - [`PcMatrix::inconsistency`] for the triad-by-triad report;
//! - [`reduce`] and [`direct_projection`] for the two routes to a
//!   consistent matrix;
//! - [`principal_eigenpair`] and [`saaty_ci`] for the spectral view;
//! - [`montecarlo::run_experiment`] for seeded random-matrix experiments;
//! - [`io`] for the CSV/JSON file formats shared with the CLI.

pub mod error;
pub mod inconsistency;
pub mod io;
pub mod matrix;
pub mod montecarlo;
pub mod reduction;
pub mod spectral;
pub mod triad;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{PcError, Result};
pub use inconsistency::{score_triad, InconsistencyReport, TriadScore};
pub use matrix::{
    AdditiveMatrix, MatrixClass, Normalization, PcMatrix, ValidationReport, WeightVector,
};
pub use reduction::{
    direct_projection, reduce, ReductionConfig, ReductionStep, ReductionTrace, TracePolicy,
};
pub use spectral::{principal_eigenpair, saaty_ci, EigenResult};
pub use triad::Triad;
