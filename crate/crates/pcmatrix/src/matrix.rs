//! Matrix data model: multiplicative comparison matrices, their additive
//! (log-space) counterparts, and weight vectors.
//!
//! A pairwise-comparison matrix holds positive ratio judgments `m[i][j]`
//! ("how many times entity i outweighs entity j"). The entrywise log map
//! turns multiplication into addition: reciprocal matrices become
//! skew-symmetric, and consistent matrices form a linear subspace, which is
//! where all projection work in this crate happens. The exp map carries
//! results back.

use crate::error::{PcError, Result};
use crate::triad::Triad;

/// Relative tolerance for the reciprocity test `m[i][j] * m[j][i] = 1`.
pub const RECIPROCITY_TOL: f64 = 1e-12;

/// Absolute tolerance for the skew-symmetry test `b[i][j] = -b[j][i]`.
pub const SKEW_SYMMETRY_TOL: f64 = 1e-12;

/// Default relative tolerance for [`PcMatrix::is_consistent`]: far above
/// accumulated float error at the dimensions this crate targets, far below
/// any meaningful difference in judgments.
pub const DEFAULT_CONSISTENCY_TOL: f64 = 1e-9;

/// Square matrix of positive, finite comparison ratios, `n >= 2`.
///
/// Positivity and shape are enforced at construction; reciprocity is not
/// (contradictory judgments are data to be diagnosed, see
/// [`PcMatrix::validate`] and [`PcMatrix::reciprocalized`]).
#[derive(Debug, Clone, PartialEq)]
pub struct PcMatrix {
    n: usize,
    data: Vec<f64>,
}

impl PcMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(PcError::DimensionTooSmall { n });
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(PcError::NotSquare {
                    row: i,
                    found: row.len(),
                    expected: n,
                });
            }
            for (j, &value) in row.iter().enumerate() {
                if !value.is_finite() {
                    return Err(PcError::NonFiniteEntry { row: i, col: j });
                }
                if value <= 0.0 {
                    return Err(PcError::NonPositiveEntry {
                        row: i,
                        col: j,
                        value,
                    });
                }
                data.push(value);
            }
        }
        Ok(Self { n, data })
    }

    /// The consistent matrix `m[i][j] = v_i / v_j` generated by a weight
    /// vector. Invariant under rescaling of the weights.
    pub fn consistent_from_weights(weights: &WeightVector) -> Result<Self> {
        let v = weights.values();
        let n = v.len();
        if n < 2 {
            return Err(PcError::DimensionTooSmall { n });
        }
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(v[i] / v[j]);
            }
        }
        Ok(Self { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n).map(|row| row.to_vec()).collect()
    }

    /// All triads above the diagonal, in lexicographic (i, j, k) order;
    /// exactly C(n,3) of them, none for n < 3.
    pub fn triads(&self) -> impl Iterator<Item = Triad> + '_ {
        triads_of(self.n, move |i, j| self.get(i, j))
    }

    /// Structural diagnosis: positivity holds by construction, so this
    /// reports diagonal and reciprocity violations and classifies the matrix
    /// as reciprocal or not. For raw, possibly malformed grids use
    /// [`validate_rows`].
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        check_reciprocity(self.n, |i, j| self.get(i, j), &mut violations);
        ValidationReport::from_violations(violations)
    }

    pub fn is_reciprocal(&self) -> bool {
        for i in 0..self.n {
            if self.get(i, i) != 1.0 {
                return false;
            }
            for j in i + 1..self.n {
                if (self.get(i, j) * self.get(j, i) - 1.0).abs() > RECIPROCITY_TOL {
                    return false;
                }
            }
        }
        true
    }

    /// The log-space midpoint repair: `m'[i][j] = sqrt(m[i][j] / m[j][i])`
    /// for i != j and a unit diagonal. A fixed point (within float error) on
    /// matrices that are already reciprocal.
    pub fn reciprocalized(&self) -> PcMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            out.set(i, i, 1.0);
            for j in i + 1..self.n {
                let repaired = (self.get(i, j) / self.get(j, i)).sqrt();
                out.set(i, j, repaired);
                out.set(j, i, 1.0 / repaired);
            }
        }
        out
    }

    /// Entrywise natural log. Reciprocal matrices map to skew-symmetric
    /// additive matrices.
    pub fn ln(&self) -> AdditiveMatrix {
        AdditiveMatrix {
            n: self.n,
            data: self.data.iter().map(|v| v.ln()).collect(),
        }
    }

    /// Row geometric means `(prod_j m[i][j])^(1/n)`, computed as
    /// exponentiated mean logs so large products cannot overflow.
    pub fn row_geometric_means(&self) -> WeightVector {
        let mut values = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut sum = 0.0;
            for j in 0..self.n {
                sum += self.get(i, j).ln();
            }
            values.push((sum / self.n as f64).exp());
        }
        WeightVector::raw(values).expect("geometric means of positive entries are positive")
    }

    /// Transitivity check `|1 - m[i][j] * m[j][k] / m[i][k]| <= tol` over
    /// all ordered index triples. The degenerate triples make this subsume
    /// the unit-diagonal (i = j = k) and reciprocity (k = i) conditions.
    pub fn is_consistent(&self, tol: f64) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    if (1.0 - self.get(i, j) * self.get(j, k) / self.get(i, k)).abs() > tol {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Frobenius distance between raw entries.
    pub fn frobenius_distance(&self, other: &PcMatrix) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// Frobenius distance between entrywise logs, the metric in which the
    /// geometric-means matrix is the provably closest consistent matrix.
    pub fn log_frobenius_distance(&self, other: &PcMatrix) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let d = a.ln() - b.ln();
                d * d
            })
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entrywise `|self - reference| / reference`.
    pub fn max_relative_difference(&self, reference: &PcMatrix) -> f64 {
        assert_eq!(self.n, reference.n, "dimension mismatch");
        self.data
            .iter()
            .zip(&reference.data)
            .map(|(a, b)| ((a - b) / b).abs())
            .fold(0.0, f64::max)
    }
}

/// Square matrix of log-ratios. Skew-symmetry mirrors reciprocity and, like
/// it, is diagnosed rather than enforced at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct AdditiveMatrix {
    n: usize,
    data: Vec<f64>,
}

impl AdditiveMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(PcError::DimensionTooSmall { n });
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(PcError::NotSquare {
                    row: i,
                    found: row.len(),
                    expected: n,
                });
            }
            for (j, &value) in row.iter().enumerate() {
                if !value.is_finite() {
                    return Err(PcError::NonFiniteEntry { row: i, col: j });
                }
                data.push(value);
            }
        }
        Ok(Self { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n).map(|row| row.to_vec()).collect()
    }

    /// Entrywise exp, the inverse of [`PcMatrix::ln`]. Entries beyond about
    /// +-709 leave the finite double range and are not meaningful here.
    pub fn exp(&self) -> PcMatrix {
        PcMatrix {
            n: self.n,
            data: self.data.iter().map(|v| v.exp()).collect(),
        }
    }

    pub fn is_skew_symmetric(&self) -> bool {
        for i in 0..self.n {
            for j in i..self.n {
                if (self.get(i, j) + self.get(j, i)).abs() > SKEW_SYMMETRY_TOL {
                    return false;
                }
            }
        }
        true
    }

    /// Row arithmetic means, the additive twin of geometric row means:
    /// `exp(row_means(B)) = row_geometric_means(exp(B))`.
    pub fn row_means(&self) -> Vec<f64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).sum::<f64>() / self.n as f64)
            .collect()
    }

    pub fn triads(&self) -> impl Iterator<Item = Triad> + '_ {
        triads_of(self.n, move |i, j| self.get(i, j))
    }
}

fn triads_of(n: usize, get: impl Fn(usize, usize) -> f64 + Copy) -> impl Iterator<Item = Triad> {
    (0..n).flat_map(move |i| {
        (i + 1..n).flat_map(move |j| {
            (j + 1..n).map(move |k| Triad::new(i, j, k, get(i, j), get(i, k), get(j, k)))
        })
    })
}

/// Positive priority weights with a declared normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    Raw,
    SumToOne,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    values: Vec<f64>,
    normalization: Normalization,
}

impl WeightVector {
    pub fn raw(values: Vec<f64>) -> Result<Self> {
        Self::tagged(values, Normalization::Raw)
    }

    /// Accepts already-normalized values; the caller vouches that they sum
    /// to one within 1e-12 (checked with a debug assertion).
    pub fn sum_to_one(values: Vec<f64>) -> Result<Self> {
        debug_assert!(
            (values.iter().sum::<f64>() - 1.0).abs() <= 1e-12,
            "sum-to-one weights must sum to 1"
        );
        Self::tagged(values, Normalization::SumToOne)
    }

    fn tagged(values: Vec<f64>, normalization: Normalization) -> Result<Self> {
        if values.is_empty() {
            return Err(PcError::WeightVectorTooShort {
                min: 1,
                len: values.len(),
            });
        }
        for (index, &value) in values.iter().enumerate() {
            if !(value > 0.0 && value.is_finite()) {
                return Err(PcError::NonPositiveWeight { index, value });
            }
        }
        Ok(Self {
            values,
            normalization,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn normalized(&self) -> WeightVector {
        let sum: f64 = self.values.iter().sum();
        WeightVector {
            values: self.values.iter().map(|v| v / sum).collect(),
            normalization: Normalization::SumToOne,
        }
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_difference(&self, other: &WeightVector) -> f64 {
        assert_eq!(self.len(), other.len(), "length mismatch");
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Largest componentwise `|self - reference| / reference`.
    pub fn max_relative_difference(&self, reference: &WeightVector) -> f64 {
        assert_eq!(self.len(), reference.len(), "length mismatch");
        self.values
            .iter()
            .zip(&reference.values)
            .map(|(a, b)| ((a - b) / b).abs())
            .fold(0.0, f64::max)
    }
}

/// How a grid fared against the matrix definitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixClass {
    /// Positive, square, unit diagonal, `m[i][j] * m[j][i] = 1` throughout.
    Reciprocal,
    /// Positive and square, but with diagonal or reciprocity violations.
    NonReciprocal,
    /// Malformed: non-square, too small, or with non-positive entries.
    Invalid,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NotSquare {
        row: usize,
        found: usize,
        expected: usize,
    },
    TooSmall {
        n: usize,
    },
    NonPositive {
        row: usize,
        col: usize,
        value: f64,
    },
    NonFinite {
        row: usize,
        col: usize,
    },
    NonUnitDiagonal {
        index: usize,
        value: f64,
    },
    NonReciprocalPair {
        row: usize,
        col: usize,
        product: f64,
    },
}

impl Violation {
    fn invalidates(&self) -> bool {
        matches!(
            self,
            Violation::NotSquare { .. }
                | Violation::TooSmall { .. }
                | Violation::NonPositive { .. }
                | Violation::NonFinite { .. }
        )
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NotSquare {
                row,
                found,
                expected,
            } => write!(
                f,
                "row {} has {found} entries, expected {expected}",
                row + 1
            ),
            Violation::TooSmall { n } => write!(f, "dimension {n} is below the minimum of 2"),
            Violation::NonPositive { row, col, value } => {
                write!(f, "non-positive entry {value} at ({}, {})", row + 1, col + 1)
            }
            Violation::NonFinite { row, col } => {
                write!(f, "non-finite entry at ({}, {})", row + 1, col + 1)
            }
            Violation::NonUnitDiagonal { index, value } => {
                write!(f, "diagonal entry {value} at ({}, {}) is not 1", index + 1, index + 1)
            }
            Violation::NonReciprocalPair { row, col, product } => write!(
                f,
                "entries at ({}, {}) and ({}, {}) multiply to {product}, not 1",
                row + 1,
                col + 1,
                col + 1,
                row + 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub class: MatrixClass,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        let class = if violations.iter().any(Violation::invalidates) {
            MatrixClass::Invalid
        } else if violations.is_empty() {
            MatrixClass::Reciprocal
        } else {
            MatrixClass::NonReciprocal
        };
        Self { class, violations }
    }

    pub fn is_valid(&self) -> bool {
        self.class != MatrixClass::Invalid
    }
}

/// Full diagnosis of a raw grid: shape, positivity, diagonal, reciprocity.
/// Violations carry 0-based positions and render 1-based.
pub fn validate_rows(rows: &[Vec<f64>]) -> ValidationReport {
    let n = rows.len();
    let mut violations = Vec::new();
    if n < 2 {
        violations.push(Violation::TooSmall { n });
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            violations.push(Violation::NotSquare {
                row: i,
                found: row.len(),
                expected: n,
            });
        }
        for (j, &value) in row.iter().enumerate() {
            if !value.is_finite() {
                violations.push(Violation::NonFinite { row: i, col: j });
            } else if value <= 0.0 {
                violations.push(Violation::NonPositive {
                    row: i,
                    col: j,
                    value,
                });
            }
        }
    }
    if violations.is_empty() {
        check_reciprocity(n, |i, j| rows[i][j], &mut violations);
    }
    ValidationReport::from_violations(violations)
}

fn check_reciprocity(n: usize, get: impl Fn(usize, usize) -> f64, out: &mut Vec<Violation>) {
    for i in 0..n {
        let diag = get(i, i);
        if diag != 1.0 {
            out.push(Violation::NonUnitDiagonal {
                index: i,
                value: diag,
            });
        }
        for j in i + 1..n {
            let product = get(i, j) * get(j, i);
            if (product - 1.0).abs() > RECIPROCITY_TOL {
                out.push(Violation::NonReciprocalPair {
                    row: i,
                    col: j,
                    product,
                });
            }
        }
    }
}
