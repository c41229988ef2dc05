//! Worked matrices shared across the unit tests.

use crate::matrix::PcMatrix;

/// 3x3 matrix with a single inconsistent triad (2, 5, 3).
pub(crate) fn example1() -> PcMatrix {
    PcMatrix::from_rows(&[
        vec![1.0, 2.0, 5.0],
        vec![0.5, 1.0, 3.0],
        vec![0.2, 1.0 / 3.0, 1.0],
    ])
    .unwrap()
}

/// 4x4 matrix whose geometric-means vector is not an eigenvector.
pub(crate) fn counterexample4x4() -> PcMatrix {
    PcMatrix::from_rows(&[
        vec![1.0, 2.0, 1.0, 3.0],
        vec![0.5, 1.0, 1.0, 1.0],
        vec![1.0, 1.0, 1.0, 2.0],
        vec![1.0 / 3.0, 1.0, 0.5, 1.0],
    ])
    .unwrap()
}

/// Geometric row means of [`example1`], frozen at full double precision.
pub(crate) const EXAMPLE1_GM: [f64; 3] =
    [2.154434690031884, 1.1447142425533319, 0.40548013303822666];

/// The consistent matrix [`example1`] projects onto, frozen at full double
/// precision (upper triangle; the rest follows by reciprocity).
pub(crate) const EXAMPLE1_PROJECTED: [f64; 3] =
    [1.8820720577620569, 5.313292845913056, 2.823108086643085];
