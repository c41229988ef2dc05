//! Property tests for the library invariants: the log/exp maps, the
//! inconsistency measure, the spectral view, and the reduction pipeline.

use proptest::prelude::*;

use pcmatrix::montecarlo::{random_reciprocal, sample_rng};
use pcmatrix::reduction::{
    project_n4_closed_form, project_triad_additive, project_triad_multiplicative,
    single_entry_repairs,
};
use pcmatrix::spectral::principal_eigenpair;
use pcmatrix::{
    direct_projection, reduce, score_triad, AdditiveMatrix, PcMatrix, ReductionConfig, Triad,
    TracePolicy, WeightVector,
};

/// Positive entry spanning four orders of magnitude, log-uniform.
fn entry() -> impl Strategy<Value = f64> {
    (-2.0..2.0f64).prop_map(|t| 10f64.powf(t))
}

/// Positive triad value spanning eight orders of magnitude.
fn wide_entry() -> impl Strategy<Value = f64> {
    (-4.0..4.0f64).prop_map(|t| 10f64.powf(t))
}

fn positive_triad() -> impl Strategy<Value = Triad> {
    (wide_entry(), wide_entry(), wide_entry())
        .prop_map(|(x, y, z)| Triad::from_values(x, y, z))
}

fn reciprocal_of(n: usize) -> impl Strategy<Value = PcMatrix> {
    proptest::collection::vec(entry(), n * (n - 1) / 2).prop_map(move |upper| {
        from_upper(n, &upper)
    })
}

fn from_upper(n: usize, upper: &[f64]) -> PcMatrix {
    let mut rows = vec![vec![1.0; n]; n];
    let mut values = upper.iter();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = *values.next().unwrap();
            rows[i][j] = v;
            rows[j][i] = 1.0 / v;
        }
    }
    PcMatrix::from_rows(&rows).unwrap()
}

fn reciprocal_matrix(max_n: usize) -> impl Strategy<Value = PcMatrix> {
    (3..=max_n).prop_flat_map(reciprocal_of)
}

fn weight_vector(n: usize) -> impl Strategy<Value = WeightVector> {
    proptest::collection::vec(entry(), n).prop_map(|w| WeightVector::raw(w).unwrap())
}

fn consistent_matrix(max_n: usize) -> impl Strategy<Value = PcMatrix> {
    (3..=max_n)
        .prop_flat_map(weight_vector)
        .prop_map(|w| PcMatrix::consistent_from_weights(&w).unwrap())
}

fn any_matrix(max_n: usize) -> impl Strategy<Value = PcMatrix> {
    prop_oneof![
        reciprocal_matrix(max_n).boxed(),
        consistent_matrix(max_n).boxed(),
    ]
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn permuted(matrix: &PcMatrix, perm: &[usize]) -> PcMatrix {
    let n = matrix.n();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| matrix.get(perm[i], perm[j])).collect())
        .collect();
    PcMatrix::from_rows(&rows).unwrap()
}

fn transposed(matrix: &PcMatrix) -> PcMatrix {
    let n = matrix.n();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| matrix.get(j, i)).collect())
        .collect();
    PcMatrix::from_rows(&rows).unwrap()
}

proptest! {
    // ---- multiplicative <-> additive maps ----

    #[test]
    fn ln_exp_round_trip(m in reciprocal_matrix(8)) {
        let back = m.ln().exp();
        prop_assert!(back.max_relative_difference(&m) < 1e-12);
    }

    #[test]
    fn ln_of_reciprocal_is_skew_symmetric(m in reciprocal_matrix(8)) {
        prop_assert!(m.ln().is_skew_symmetric());
    }

    #[test]
    fn exp_of_skew_symmetric_is_reciprocal(m in reciprocal_matrix(8)) {
        // Rebuild a skew matrix from the log map, then exponentiate.
        prop_assert!(m.ln().exp().is_reciprocal());
    }

    #[test]
    fn log_of_geometric_means_is_arithmetic_mean_of_logs(m in any_matrix(8)) {
        let gm = m.row_geometric_means();
        let means = m.ln().row_means();
        for (g, mean) in gm.values().iter().zip(&means) {
            prop_assert!((g.ln() - mean).abs() < 1e-12);
        }
    }

    #[test]
    fn exp_of_row_means_is_geometric_means_of_exp(
        rows in (3usize..=6).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(-4.0..4.0f64, n), n)
        })
    ) {
        let b = AdditiveMatrix::from_rows(&rows).unwrap();
        let gm = b.exp().row_geometric_means();
        for (mean, g) in b.row_means().iter().zip(gm.values()) {
            prop_assert!((mean.exp() - g).abs() <= 1e-12 * g.abs().max(1.0));
        }
    }

    // ---- construction and validation ----

    #[test]
    fn consistent_construction_is_consistent_and_reciprocal(m in consistent_matrix(10)) {
        prop_assert!(m.is_consistent(1e-12));
        prop_assert!(m.is_reciprocal());
        prop_assert!(m.validate().is_valid());
    }

    #[test]
    fn geometric_means_recover_generating_weights(w in (3usize..=8).prop_flat_map(weight_vector)) {
        let m = PcMatrix::consistent_from_weights(&w).unwrap();
        let gm = m.row_geometric_means().normalized();
        let reference = w.normalized();
        prop_assert!(gm.max_abs_difference(&reference) < 1e-12);
        let sum: f64 = gm.values().iter().sum();
        prop_assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reciprocalization_is_idempotent(
        rows in (2usize..=6).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(entry(), n), n)
        })
    ) {
        let m = PcMatrix::from_rows(&rows).unwrap();
        let r = m.reciprocalized();
        prop_assert!(r.is_reciprocal());
        prop_assert!(r.reciprocalized().max_relative_difference(&r) < 1e-12);
    }

    #[test]
    fn reciprocalization_fixes_reciprocal_matrices(m in reciprocal_matrix(8)) {
        prop_assert!(m.reciprocalized().max_relative_difference(&m) < 1e-12);
    }

    // ---- triad inconsistency ----

    #[test]
    fn triad_ii_lies_in_the_unit_interval(t in positive_triad()) {
        let score = score_triad(&t).unwrap();
        prop_assert!(score.ii >= 0.0);
        prop_assert!(score.ii < 1.0);
        prop_assert!(score.log_distance >= 0.0);
        // Type invariant: the two fields are the same measurement.
        prop_assert!((score.ii - (1.0 - (-score.log_distance).exp())).abs() < 1e-12);
    }

    #[test]
    fn triad_ii_is_reciprocal_relabel_invariant(t in positive_triad()) {
        let (x, y, z) = t.values();
        let relabeled = Triad::from_values(1.0 / z, 1.0 / y, 1.0 / x);
        let a = score_triad(&t).unwrap().ii;
        let b = score_triad(&relabeled).unwrap().ii;
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn three_inconsistency_forms_agree(t in positive_triad()) {
        let (x, y, z) = t.values();
        let ratio = y / (x * z);
        let simplified = 1.0 - ratio.min(1.0 / ratio);
        let exp_form = 1.0 - (-ratio.ln().abs()).exp();
        let early_form = (1.0 - ratio).abs().min((1.0 - 1.0 / ratio).abs());
        prop_assert!((simplified - exp_form).abs() < 1e-12);
        prop_assert!((simplified - early_form).abs() < 1e-12);
        prop_assert!((score_triad(&t).unwrap().ii - simplified).abs() < 1e-12);
    }

    #[test]
    fn triad_ii_is_monotone_in_log_distance(
        x in wide_entry(),
        z in wide_entry(),
        t1 in -4.0..4.0f64,
        t2 in -4.0..4.0f64,
    ) {
        prop_assume!((t1.abs() - t2.abs()).abs() > 1e-9);
        let (near, far) = if t1.abs() < t2.abs() { (t1, t2) } else { (t2, t1) };
        let ii_near = score_triad(&Triad::from_values(x, x * z * 10f64.powf(near), z))
            .unwrap()
            .ii;
        let ii_far = score_triad(&Triad::from_values(x, x * z * 10f64.powf(far), z))
            .unwrap()
            .ii;
        prop_assert!(ii_near < ii_far);
    }

    #[test]
    fn matrix_ii_is_transpose_invariant(m in any_matrix(8)) {
        let a = m.inconsistency().ii;
        let b = transposed(&m).inconsistency().ii;
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn matrix_ii_is_permutation_invariant(
        (m, perm) in (3usize..=8).prop_flat_map(|n| (reciprocal_of(n), permutation(n)))
    ) {
        let a = m.inconsistency().ii;
        let b = permuted(&m, &perm).inconsistency().ii;
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn matrix_ii_and_is_consistent_agree(m in any_matrix(8)) {
        let ii = m.inconsistency().ii;
        if ii <= 1e-12 {
            prop_assert!(m.is_consistent(1e-9));
        }
        if m.is_consistent(1e-9) {
            prop_assert!(ii <= 2e-9);
        }
    }

    // ---- spectral ----

    #[test]
    fn lambda_max_is_at_least_n(m in any_matrix(7)) {
        let eigen = principal_eigenpair(&m).unwrap();
        let n = m.n() as f64;
        prop_assert!(eigen.lambda_max >= n - 1e-9);
        prop_assert!(eigen.residual < 1e-9);
        let ii = m.inconsistency().ii;
        if ii <= 1e-12 {
            prop_assert!((eigen.lambda_max - n).abs() <= 1e-9);
        }
        if ii >= 0.1 {
            prop_assert!(eigen.lambda_max > n + 1e-7);
        }
    }

    #[test]
    fn eigenpair_is_permutation_equivariant(
        (m, perm) in (3usize..=6).prop_flat_map(|n| (reciprocal_of(n), permutation(n)))
    ) {
        let base = principal_eigenpair(&m).unwrap();
        let shuffled = principal_eigenpair(&permuted(&m, &perm)).unwrap();
        prop_assert!((base.lambda_max - shuffled.lambda_max).abs() < 1e-9);
        for (i, &p) in perm.iter().enumerate() {
            let expected = base.vector.values()[p];
            prop_assert!((shuffled.vector.values()[i] - expected).abs() < 1e-9);
        }
    }

    // ---- triad projection and repairs ----

    #[test]
    fn additive_projection_lands_on_the_plane(
        x in -5.0..5.0f64,
        y in -5.0..5.0f64,
        z in -5.0..5.0f64,
    ) {
        let (a, b, c) = project_triad_additive(x, y, z);
        prop_assert!((b - (a + c)).abs() < 1e-12);
        // Idempotence.
        let (a2, b2, c2) = project_triad_additive(a, b, c);
        prop_assert!((a - a2).abs() < 1e-12);
        prop_assert!((b - b2).abs() < 1e-12);
        prop_assert!((c - c2).abs() < 1e-12);
        // The displacement is parallel to the plane normal (1, -1, 1).
        let (dx, dy, dz) = (x - a, y - b, z - c);
        prop_assert!((dx + dy).abs() < 1e-12);
        prop_assert!((dx - dz).abs() < 1e-12);
    }

    #[test]
    fn multiplicative_projection_is_consistent_and_explicit(t in positive_triad()) {
        let p = project_triad_multiplicative(&t).unwrap();
        let (px, py, pz) = p.values();
        prop_assert!((py - px * pz).abs() <= 1e-12 * py.abs());

        let (x, y, z) = t.values();
        let ex = x.powf(2.0 / 3.0) * y.powf(1.0 / 3.0) * z.powf(-1.0 / 3.0);
        let ey = x.powf(1.0 / 3.0) * y.powf(2.0 / 3.0) * z.powf(1.0 / 3.0);
        let ez = x.powf(-1.0 / 3.0) * y.powf(1.0 / 3.0) * z.powf(2.0 / 3.0);
        prop_assert!((px - ex).abs() <= 1e-12 * ex);
        prop_assert!((py - ey).abs() <= 1e-12 * ey);
        prop_assert!((pz - ez).abs() <= 1e-12 * ez);
    }

    #[test]
    fn single_entry_repairs_are_consistent_minimal_edits(t in positive_triad()) {
        let (x, y, z) = t.values();
        let [fix_y, fix_x, fix_z] = single_entry_repairs(&t).unwrap();
        for repaired in [&fix_y, &fix_x, &fix_z] {
            let (rx, ry, rz) = repaired.values();
            prop_assert!((ry - rx * rz).abs() <= 1e-12 * ry.abs());
        }
        prop_assert!(fix_y.values().0 == x && fix_y.values().2 == z);
        prop_assert!(fix_x.values().1 == y && fix_x.values().2 == z);
        prop_assert!(fix_z.values().0 == x && fix_z.values().1 == y);
    }

    // ---- reduction ----

    #[test]
    fn one_step_preserves_additive_row_sums(m in reciprocal_matrix(7)) {
        let config = ReductionConfig::new(1e-15, 1).unwrap();
        let (stepped, _) = reduce(&m, &config);
        let n = m.n() as f64;
        let before = m.ln().row_means();
        let after = stepped.ln().row_means();
        for (b, a) in before.iter().zip(&after) {
            prop_assert!((b - a).abs() * n < 1e-12);
        }
    }

    #[test]
    fn reduction_converges_to_the_direct_projection(m in reciprocal_matrix(6)) {
        let config = ReductionConfig::new(1e-8, 100_000)
            .unwrap()
            .with_trace_policy(TracePolicy::FullMatrices);
        let (reduced, trace) = reduce(&m, &config);
        prop_assert!(trace.converged);
        prop_assert!(reduced.is_reciprocal());
        prop_assert!(trace.final_ii <= 1e-8);

        let gm_after = reduced.row_geometric_means();
        prop_assert!(gm_after.max_relative_difference(&trace.initial_gm) < 1e-10);
        for step in &trace.steps {
            let snapshot = step.snapshot.as_ref().unwrap();
            let gm = snapshot.row_geometric_means();
            prop_assert!(gm.max_relative_difference(&trace.initial_gm) < 1e-10);
        }

        let direct = direct_projection(&m);
        prop_assert!(reduced.max_relative_difference(&direct) < 1e-4);
    }

    #[test]
    fn direct_projection_minimizes_log_distance(
        (m, w) in (3usize..=6).prop_flat_map(|n| (reciprocal_of(n), weight_vector(n)))
    ) {
        let direct = direct_projection(&m);
        prop_assert!(direct.is_consistent(1e-12));
        prop_assert!(direct_projection(&direct).max_relative_difference(&direct) < 1e-12);
        let other = PcMatrix::consistent_from_weights(&w).unwrap();
        let to_direct = m.log_frobenius_distance(&direct);
        let to_other = m.log_frobenius_distance(&other);
        prop_assert!(to_direct <= to_other + 1e-9);
    }

    #[test]
    fn closed_form_matches_direct_projection_at_n4(m in reciprocal_of(4)) {
        let closed = project_n4_closed_form(&m.ln()).unwrap();
        let direct = direct_projection(&m).ln();
        for i in 0..4 {
            for j in 0..4 {
                prop_assert!((closed.get(i, j) - direct.get(i, j)).abs() < 1e-12);
            }
        }
    }

    // ---- random generation ----

    #[test]
    fn generated_random_matrices_are_valid(
        seed in any::<u64>(),
        stream in 0u64..1024,
        n in 3usize..=8,
        beta in 0.0..2.0f64,
    ) {
        let mut rng = sample_rng(seed, stream);
        let m = random_reciprocal(n, beta, &mut rng).unwrap();
        prop_assert!(m.is_reciprocal());
        prop_assert!(m.validate().is_valid());
        if beta == 0.0 {
            prop_assert!(m.is_consistent(1e-9));
        }
    }
}
