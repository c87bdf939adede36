mod common;

use common::*;
use proptest::prelude::*;
use rhqr_core::la::kernels::{dot, nrm2};
use rhqr_core::la::*;
use rhqr_core::Error;

#[test]
fn precision_roundoff_and_rounding() {
    assert_eq!(Precision::Double.unit_roundoff(), 2f64.powi(-53));
    assert_eq!(Precision::Single.unit_roundoff(), 2f64.powi(-24));
    assert_eq!(Precision::Half.unit_roundoff(), 2f64.powi(-11));
    assert_eq!(Precision::Half.round(1.0 + 2f64.powi(-12)), 1.0);
    assert_eq!(Precision::Half.round(2049.0), 2048.0);
    assert_eq!(Precision::Single.round(0.1), 0.1f32 as f64);
    for p in ["half", "single", "double"] {
        assert_eq!(p.parse::<Precision>().unwrap().to_string(), p);
    }
    assert!("quad".parse::<Precision>().is_err());
}

#[test]
fn mixed_policy_requires_higher_high() {
    assert!(PrecisionPolicy::mixed(Precision::Double, Precision::Half).is_ok());
    assert!(PrecisionPolicy::mixed(Precision::Half, Precision::Double).is_err());
    let p = PrecisionPolicy::default();
    assert_eq!((p.high, p.low), (Precision::Double, Precision::Double));
}

#[test]
fn half_cast_overflow_is_a_range_error() {
    let m = DenseMatrix::from_rows(&[&[1.0, 7.0e4]]);
    assert!(matches!(cast_precision(&m, Precision::Half), Err(Error::Range { .. })));
    let ok = cast_precision(&DenseMatrix::from_rows(&[&[1.0, 6.0e4]]), Precision::Half).unwrap();
    assert_eq!(ok.precision(), Precision::Half);
}

#[test]
fn rounded_kernels_follow_the_format() {
    // summing 1 + 2^-12 in half loses the small term
    let x = [1.0, 2f64.powi(-12)];
    let ones = [1.0, 1.0];
    assert_eq!(dot(Precision::Half, &x, &ones), 1.0);
    assert_eq!(dot(Precision::Double, &x, &ones), 1.0 + 2f64.powi(-12));
    assert_eq!(nrm2(Precision::Double, &[3.0, 4.0]), 5.0);
}

#[test]
fn triangular_solves() {
    let r = DenseMatrix::from_rows(&[&[2.0, 1.0], &[0.0, 4.0]]);
    let b = DenseMatrix::from_rows(&[&[4.0], &[8.0]]);
    let x = upper_tri_solve(&r, &b, Precision::Double).unwrap();
    assert_eq!(x, DenseMatrix::from_rows(&[&[1.0], &[2.0]]));
    let y = right_tri_solve(&DenseMatrix::from_rows(&[&[2.0, 5.0]]), &r, Precision::Double).unwrap();
    assert_eq!(y, DenseMatrix::from_rows(&[&[1.0, 1.0]]));
    let inv = upper_tri_inverse(&r, Precision::Double).unwrap();
    assert_eq!(mul(&r, &inv), DenseMatrix::identity(2));
    let sing = DenseMatrix::from_rows(&[&[1.0, 1.0], &[0.0, 0.0]]);
    assert!(matches!(upper_tri_solve(&sing, &b, Precision::Double), Err(Error::SingularFactor { index: 1 })));
}

#[test]
fn singular_values_against_jacobi() {
    for (r, c, seed) in [(30, 7, 1), (7, 30, 2), (12, 12, 3)] {
        let a = randn(r, c, seed);
        let got = singular_values(&a);
        // the one-sided Jacobi oracle pads wide inputs with zero values
        let want = jacobi_singular_values(&a);
        assert_eq!(got.len(), r.min(c));
        assert!(want[got.len()..].iter().all(|v| v.abs() < 1e-12 * want[0]));
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() <= 1e-12 * want[0], "{g} vs {w}");
        }
    }
}

#[test]
fn condition_numbers() {
    let d = DenseMatrix::from_fn(5, 3, |i, j| if i == j { [1.0, 10.0, 0.5][j] } else { 0.0 });
    assert!((cond_number(&d) - 20.0).abs() < 1e-13);
    let z = DenseMatrix::from_rows(&[&[1.0, 0.0], &[0.0, 0.0]]);
    assert!(cond_number(&z).is_infinite());
    let a = randn(40, 10, 4);
    let pre = prefix_cond_numbers(&a, &[1, 4, 10]);
    assert_eq!(pre[0], 1.0);
    for (k, &j) in [4usize, 10].iter().enumerate() {
        let direct = cond_number(&a.columns(0..j));
        assert!((pre[k + 1] - direct).abs() <= 1e-11 * direct);
    }
    // more columns than rows: rank deficient past the row count
    let wide = randn(6, 9, 5);
    let pre = prefix_cond_numbers(&wide, &[3, 6, 7, 9]);
    assert!((pre[1] - cond_number(&wide.columns(0..6))).abs() <= 1e-11 * pre[1]);
    assert!(pre[2].is_infinite() && pre[3].is_infinite());
}

#[test]
fn factorization_and_orthogonality_errors() {
    let q = orthonormal(20, 4, 5);
    assert!(orthogonality_error(&q) < 1e-14);
    let r = DenseMatrix::from_fn(4, 4, |i, j| if i <= j { 1.0 + (i + j) as f64 } else { 0.0 });
    let w = mul(&q, &r);
    let e = factorization_errors(&w, &q, &r);
    assert!(e.fro_rel_err < 1e-15 && e.max_col_rel_err < 1e-15);
    assert!(e.zero_columns.is_empty());
    let mut r2 = r.clone();
    r2.set(0, 0, 2.0);
    let e2 = factorization_errors(&w, &q, &r2);
    assert!((e2.max_col_rel_err - 1.0).abs() < 1e-14);
    assert!((e2.fro_rel_err - 1.0 / fro(&w)).abs() < 1e-14);

    let rows = prefix_metric_rows(&w, &q, &r, &q, &[2, 4]);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1].j, 4);
    assert!(rows.iter().all(|m| m.orth_err < 1e-14 && (m.cond_q - 1.0).abs() < 1e-13));
    assert_eq!(MetricRow::FIELDS.len(), 6);
}

#[test]
fn sparse_matrix_from_triplets() {
    let s = CscMatrix::from_triplets(3, 3, &[(0, 0, 1.0), (2, 1, 2.0), (2, 1, 3.0), (1, 2, -1.0)]).unwrap();
    assert_eq!(s.nnz(), 3);
    let d = s.to_dense();
    assert_eq!(d.get(2, 1), 5.0);
    let mut y = vec![0.0; 3];
    s.matvec_into(&[1.0, 1.0, 1.0], &mut y);
    assert_eq!(y, vec![1.0, -1.0, 5.0]);
    assert!((s.frobenius_norm() - 27f64.sqrt()).abs() < 1e-15);
    assert!(CscMatrix::from_triplets(2, 2, &[(2, 0, 1.0)]).is_err());
}

#[test]
fn matrix_shape_helpers() {
    let a = DenseMatrix::from_rows(&[&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]]);
    assert_eq!(a.transpose().get(2, 1), 6.0);
    assert_eq!(a.block(1..2, 1..3), DenseMatrix::from_rows(&[&[5.0, 6.0]]));
    assert_eq!(a.columns(2..3).col(0), &[3.0, 6.0]);
    assert!(DenseMatrix::from_col_major(2, 2, vec![1.0; 3]).is_err());
    let h = a.scaled(1.0 / 3.0).rounded_to(Precision::Half);
    assert!(h.data().iter().all(|&v| Precision::Half.round(v) == v));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rounding_is_idempotent_and_monotone(a in -1.0e4f64..1.0e4, b in -1.0e4f64..1.0e4) {
        for p in [Precision::Half, Precision::Single, Precision::Double] {
            let ra = p.round(a);
            prop_assert_eq!(p.round(ra), ra);
            if a <= b {
                prop_assert!(ra <= p.round(b));
            }
            prop_assert!((ra - a).abs() <= p.unit_roundoff() * a.abs() + 1e-7);
        }
    }

    #[test]
    fn matmul_agrees_with_transposed_product(r in 1usize..8, k in 1usize..8, c in 1usize..8, seed in any::<u64>()) {
        let a = randn(r, k, seed);
        let b = randn(k, c, seed ^ 9);
        let ab = a.matmul(&b, Precision::Double);
        let bt_at = b.transpose().matmul(&a.transpose(), Precision::Double).transpose();
        prop_assert!(rel_diff(&ab, &bt_at) < 1e-14);
        let atb = a.transpose().tr_matmul(&b, Precision::Double);
        prop_assert!(rel_diff(&atb, &ab) < 1e-14);
    }
}
