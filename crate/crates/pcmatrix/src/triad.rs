/// One triad of entries above the diagonal: the values at positions
/// (i,j), (i,k), (j,k) with i < j < k, named `x = m[i][j]`, `y = m[i][k]`,
/// `z = m[j][k]`.
///
/// The same shape carries both multiplicative entries and their log-space
/// counterparts: a multiplicative triad is consistent when `y = x * z`, an
/// additive one when `y = x + z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triad {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Triad {
    /// Panics if the indices are not strictly increasing.
    pub fn new(i: usize, j: usize, k: usize, x: f64, y: f64, z: f64) -> Self {
        assert!(i < j && j < k, "triad indices must satisfy i < j < k");
        Self { i, j, k, x, y, z }
    }

    /// Triad of plain values, placed at the only positions a 3x3 matrix has.
    pub fn from_values(x: f64, y: f64, z: f64) -> Self {
        Self::new(0, 1, 2, x, y, z)
    }

    pub fn values(&self) -> (f64, f64, f64) {
        (self.x, self.y, self.z)
    }

    pub fn indices(&self) -> (usize, usize, usize) {
        (self.i, self.j, self.k)
    }

    /// Same indices, new values.
    pub fn with_values(&self, x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z, ..*self }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carries_indices_and_values() {
        let t = Triad::new(0, 2, 3, 2.0, 5.0, 3.0);
        assert_eq!(t.indices(), (0, 2, 3));
        assert_eq!(t.values(), (2.0, 5.0, 3.0));
    }

    #[test]
    #[should_panic(expected = "i < j < k")]
    fn rejects_unordered_indices() {
        let _ = Triad::new(1, 1, 2, 1.0, 1.0, 1.0);
    }

    #[test]
    fn with_values_keeps_indices() {
        let t = Triad::new(1, 2, 4, 1.0, 2.0, 3.0).with_values(9.0, 8.0, 7.0);
        assert_eq!(t.indices(), (1, 2, 4));
        assert_eq!(t.values(), (9.0, 8.0, 7.0));
    }
}
