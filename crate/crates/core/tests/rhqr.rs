mod common;

use common::*;
use proptest::prelude::*;
use rhqr_core::baselines::householder_factor;
use rhqr_core::rhqr::*;
use rhqr_core::sketch::{make_sketch, EmbeddedSketch, Sketch, SketchKind, SketchOperator};
use rhqr_core::{DenseMatrix, Precision, PrecisionPolicy};

fn identity_psi(n: usize, m: usize) -> EmbeddedSketch {
    EmbeddedSketch::new(m, SketchOperator::identity(n - m))
}

fn gauss_psi(n: usize, m: usize, ell: usize, seed: u64) -> EmbeddedSketch {
    EmbeddedSketch::new(m, make_sketch(SketchKind::Gaussian, ell, n - m, seed, None).unwrap())
}

fn opts(scaling: Scaling) -> RhqrOptions {
    RhqrOptions { scaling, policy: PrecisionPolicy::double() }
}

fn apply_dense(p: &DenseMatrix, x: &[f64]) -> Vec<f64> {
    (0..p.rows()).map(|i| (0..p.cols()).map(|k| p.get(i, k) * x[k]).sum()).collect()
}

/// Entrywise max of |a − b| over max |b|.
fn max_rel(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    let d = sub(a, b);
    d.max_abs() / b.max_abs()
}

#[test]
fn three_four_five_vector() {
    let psi = identity_psi(4, 2);
    let w = [3.0, 0.0, 4.0, 0.0];
    let y = psi.apply_vec(&w, Precision::Double);
    let st = rh_vector(&w, &y, 0, Scaling::UnitDiagonal, &PrecisionPolicy::double()).unwrap();
    assert_eq!((st.rho, st.sigma), (5.0, 1.0));
    // pre-scaling u = (8,0,4,0), γ = 8: unit-diagonal scaling divides by γ
    assert_eq!(st.u, vec![1.0, 0.0, 0.5, 0.0]);
    assert_eq!(st.beta, 8.0 / 5.0);
    let a = opts(Scaling::SqrtTwo);
    let st_a = rh_vector(&w, &y, 0, a.scaling, &a.policy).unwrap();
    let pre: Vec<f64> = st_a.u.iter().map(|v| v * 40f64.sqrt()).collect();
    for (p, e) in pre.iter().zip([8.0, 0.0, 4.0, 0.0]) {
        assert!((p - e).abs() < 1e-14);
    }
    let pw = apply_dense(&dense_reflector(&st_a.u, &dense_psi(&psi)), &w);
    for (p, e) in pw.iter().zip([-5.0, 0.0, 0.0, 0.0]) {
        assert!((p - e).abs() < 1e-14, "{pw:?}");
    }
}

#[test]
fn negative_pivot_keeps_beta_positive() {
    let psi = identity_psi(4, 2);
    let w = [-3.0, 0.0, 4.0, 0.0];
    let y = psi.apply_vec(&w, Precision::Double);
    let st = rh_vector(&w, &y, 0, Scaling::UnitDiagonal, &PrecisionPolicy::double()).unwrap();
    assert_eq!(st.sigma, -1.0);
    assert!(st.beta > 0.0);
    let s2: f64 = st.s.iter().map(|v| v * v).sum();
    assert!((st.beta - 2.0 / s2).abs() < 1e-15);
    let pw = apply_dense(&dense_reflector(&st.u, &dense_psi(&psi)), &w);
    assert!((pw[0] - 5.0).abs() < 1e-14 && pw[1..].iter().all(|v| v.abs() < 1e-14));
}

#[test]
fn unit_vector_reflects_to_minus_itself() {
    let psi = identity_psi(4, 2);
    let w = [1.0, 0.0, 0.0, 0.0];
    let st = rh_vector(&w, &w, 0, Scaling::UnitDiagonal, &PrecisionPolicy::double()).unwrap();
    assert_eq!(st.rho, 1.0);
    assert_eq!(st.u, vec![1.0, 0.0, 0.0, 0.0]); // 2e_1 divided by γ = 2
    let pw = apply_dense(&dense_reflector(&st.u, &dense_psi(&psi)), &w);
    assert_eq!(pw, vec![-1.0, 0.0, 0.0, 0.0]);
}

#[test]
fn zero_tail_is_a_breakdown() {
    let w = [1.0, 0.0, 0.0];
    let err = rh_vector(&w, &w, 1, Scaling::SqrtTwo, &PrecisionPolicy::double()).unwrap_err();
    assert!(matches!(err, rhqr_core::Error::Breakdown { column: 1, .. }));
}

#[test]
fn random_vector_elimination_against_dense_reflector() {
    let (n, m, ell) = (50, 5, 20);
    let psi = gauss_psi(n, m, ell, 11);
    let w = randn_vec(n, 3);
    let y = psi.apply_vec(&w, Precision::Double);
    let st = rh_vector(&w, &y, 2, Scaling::SqrtTwo, &PrecisionPolicy::double()).unwrap();
    let pd = dense_psi(&psi);
    let pw = apply_dense(&dense_reflector(&st.u, &pd), &w);
    let spw = apply_dense(&pd, &pw);
    let scale = vnorm(&y);
    assert!(spw[3..].iter().all(|v| v.abs() <= 1e-13 * scale));
    assert!((spw[2] - st.r_diag()).abs() <= 1e-13 * scale);
    assert!((vnorm(&st.s).powi(2) - 2.0).abs() <= 8.0 * u_double());
}

#[test]
fn compact_form_matches_dense_products() {
    let (n, m, ell) = (30, 4, 16);
    let psi = gauss_psi(n, m, ell, 5);
    let w = randn(n, m, 6);
    let f = rhqr_left(&w, &psi, &opts(Scaling::SqrtTwo)).unwrap();
    let pd = dense_psi(&psi);
    let x = randn(n, 3, 7);
    // forward product P_1⋯P_m
    let mut dense = DenseMatrix::identity(n);
    for j in 0..m {
        dense = mul(&dense, &dense_reflector(f.u.col(j), &pd));
    }
    let fwd = apply_reflectors_compact(&f.u, &f.s, &f.t, false, &x, &psi, &f.policy).unwrap();
    assert!(rel_diff(&fwd, &mul(&dense, &x)) < 1e-13);
    // round trip with the transposed factor
    let back = apply_reflectors_compact(&f.u, &f.s, &f.t, true, &fwd, &psi, &f.policy).unwrap();
    assert!(rel_diff(&back, &x) < 1e-12);
    // no reflectors
    let e = DenseMatrix::zeros(n, 0);
    let same = apply_reflectors_compact(&e, &DenseMatrix::zeros(ell + m, 0), &DenseMatrix::zeros(0, 0), false, &x, &psi, &f.policy)
        .unwrap();
    assert_eq!(same, x);
    // single reflector
    let one = apply_reflectors_compact(
        &f.u.columns(0..1),
        &f.s.columns(0..1),
        &f.t.block(0..1, 0..1),
        false,
        &x,
        &psi,
        &f.policy,
    )
    .unwrap();
    assert!(rel_diff(&one, &mul(&dense_reflector(f.u.col(0), &pd), &x)) < 1e-13);
}

#[test]
fn canonical_columns() {
    let w = DenseMatrix::eye(4, 2);
    let psi = identity_psi(4, 2);
    for f in [rhqr_right(&w, &psi, &opts(Scaling::UnitDiagonal)).unwrap(), rhqr_left(&w, &psi, &opts(Scaling::UnitDiagonal)).unwrap()] {
        assert_eq!(f.r, DenseMatrix::from_rows(&[&[-1.0, 0.0], &[0.0, -1.0]]));
        assert_eq!(f.u, DenseMatrix::eye(4, 2));
        let q = thin_q(&f);
        assert_eq!(q, DenseMatrix::eye(4, 2).scaled(-1.0));
    }
}

#[test]
fn identity_embedding_reproduces_householder() {
    for seed in 0..5 {
        let w = randn(40, 6, 100 + seed);
        let (r0, u0) = oracle_hqr(&w);
        let psi = identity_psi(40, 6);
        let o = opts(Scaling::SqrtTwo);
        for f in [rhqr_right(&w, &psi, &o).unwrap(), rhqr_left(&w, &psi, &o).unwrap(), rec_rhqr(&w, &psi, &o).unwrap()] {
            assert!(max_rel(&f.r, &r0) < 1e-13);
            assert!(rel_diff(&f.u, &u0) < 1e-13);
        }
    }
}

#[test]
fn sketch_equivalence_with_householder_of_sketch() {
    for (k, kind) in [SketchKind::Gaussian, SketchKind::Srht].into_iter().enumerate() {
        let (n, m, ell) = (200, 20, 60);
        let w = randn(n, m, 40 + k as u64);
        let psi = EmbeddedSketch::new(m, make_sketch(kind, ell, n - m, 9, None).unwrap());
        let z = psi.apply(&w, Precision::Double).unwrap();
        let hq = householder_factor(&z, Scaling::SqrtTwo, &PrecisionPolicy::double()).unwrap();
        let f = rhqr_right(&w, &psi, &opts(Scaling::SqrtTwo)).unwrap();
        assert!(max_rel(&f.r, &hq.r) < 1e-12);
        assert!(rel_diff(&f.s, &hq.u) < 1e-12);
        assert!(rel_diff(&f.t, &hq.t) < 1e-12);
    }
}

#[test]
fn left_and_right_agree() {
    let (n, m) = (100, 12);
    let w = randn(n, m, 77);
    let psi = gauss_psi(n, m, 48, 78);
    let l = rhqr_left(&w, &psi, &opts(Scaling::SqrtTwo)).unwrap();
    let r = rhqr_right(&w, &psi, &opts(Scaling::SqrtTwo)).unwrap();
    assert!(rel_diff(&l.r, &r.r) < 1e-12);
    assert!(rel_diff(&l.u, &r.u) < 1e-12);
    assert!(rel_diff(&l.t, &r.t) < 1e-11);
}

#[test]
fn block_variants() {
    let (n, m) = (60, 8);
    let w = randn(n, m, 3);
    let psi = gauss_psi(n, m, 32, 4);
    let o = opts(Scaling::SqrtTwo);
    let left = rhqr_left(&w, &psi, &o).unwrap();
    let whole = rhqr_block(&w, &psi, m, &o).unwrap();
    assert_eq!(whole.r, left.r);
    assert_eq!(whole.panels[0].u, left.u);
    let single = rhqr_block(&w, &psi, 1, &o).unwrap();
    assert!(rel_diff(&single.r, &left.r) < 1e-12);
    let two = rhqr_block(&w, &psi, 4, &o).unwrap();
    assert_eq!(two.panels.len(), 2);
    let f = two.to_factors();
    let q = thin_q(&f);
    assert!(rel_diff(&mul(&q, &f.r), &w) < 1e-13);
    assert!(rel_diff(&f.t, &left.t) < 1e-11);
    // ragged final panel
    let ragged = rhqr_block(&w, &psi, 3, &o).unwrap();
    assert_eq!(ragged.panels.iter().map(|p| p.u.cols()).collect::<Vec<_>>(), vec![3, 3, 2]);
    assert!(rel_diff(&ragged.r, &left.r) < 1e-12);
}

#[test]
fn reconstruction_variant() {
    let w = DenseMatrix::eye(10, 3);
    let psi = gauss_psi(10, 3, 6, 1);
    let f = rec_rhqr(&w, &psi, &opts(Scaling::SqrtTwo)).unwrap();
    assert!(f.u.block(3..10, 0..3).max_abs() == 0.0);
    let mut z = DenseMatrix::zeros(9, 3);
    z.set_block(0, 0, &DenseMatrix::identity(3));
    let hq = householder_factor(&z, Scaling::SqrtTwo, &PrecisionPolicy::double()).unwrap();
    assert_eq!(f.r, hq.r);
    assert_eq!(f.t, hq.t);

    let w = randn(30, 5, 8);
    let psi = gauss_psi(30, 5, 20, 2);
    let a = rec_rhqr(&w, &psi, &opts(Scaling::SqrtTwo)).unwrap();
    let b = rhqr_left(&w, &psi, &opts(Scaling::SqrtTwo)).unwrap();
    assert!(rel_diff(&a.u, &b.u) < 1e-10);
}

#[test]
fn thin_q_residual_and_sketch() {
    let (n, m) = (80, 10);
    let w = randn(n, m, 21);
    let psi = gauss_psi(n, m, 40, 22);
    let f = rhqr_left(&w, &psi, &opts(Scaling::SqrtTwo)).unwrap();
    let q = thin_q(&f);
    let qr = mul(&q, &f.r);
    for j in 0..m {
        let d: Vec<f64> = (0..n).map(|i| qr.get(i, j) - w.get(i, j)).collect();
        assert!(vnorm(&d) <= 1e-12 * vnorm(w.col(j)));
    }
    let sq = sketch_q(&f);
    let direct = psi.apply(&q, Precision::Double).unwrap();
    assert!(rel_diff(&sq, &direct) < 1e-13);
    let g = mul(&sq.transpose(), &sq);
    assert!(fro(&sub(&g, &DenseMatrix::identity(m))) < 1e-13);
}

#[test]
fn lu_connection() {
    let (n, m) = (50, 6);
    let w = randn(n, m, 31);
    let psi = gauss_psi(n, m, 24, 32);
    let f = rhqr_left(&w, &psi, &opts(Scaling::UnitDiagonal)).unwrap();
    let q = thin_q(&f);
    let x = sub(&DenseMatrix::eye(n, m), &q);
    // Doolittle LU without pivoting of the n×m matrix x
    let mut l = DenseMatrix::zeros(n, m);
    let mut up = DenseMatrix::zeros(m, m);
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| (0..m).map(|j| x.get(i, j)).collect()).collect();
    for k in 0..m {
        for j in k..m {
            up.set(k, j, a[k][j]);
        }
        for i in k..n {
            let lik = a[i][k] / up.get(k, k);
            l.set(i, k, lik);
            for j in k..m {
                a[i][j] -= lik * up.get(k, j);
            }
        }
    }
    assert!(rel_diff(&l, &f.u) < 1e-11);
    let tu = mul(&f.t, &f.u.block(0..m, 0..m).transpose());
    assert!(rel_diff(&up, &tu) < 1e-11);
}

#[test]
fn t_factor_examples() {
    let s = DenseMatrix::eye(5, 3).scaled(2f64.sqrt());
    let t = t_factor_from_sketches(&s, Precision::Double).unwrap();
    assert!(rel_diff(&t, &DenseMatrix::identity(3)) < 1e-15);
    let s = DenseMatrix::from_rows(&[&[1.0], &[2.0], &[2.0]]);
    let t = t_factor_from_sketches(&s, Precision::Double).unwrap();
    assert!((t.get(0, 0) - 2.0 / 9.0).abs() < 1e-16);
    let s = randn(20, 6, 1);
    let t = t_factor_from_sketches(&s, Precision::Double).unwrap();
    let ti = rhqr_core::la::upper_tri_inverse(&t, Precision::Double).unwrap();
    let sts = mul(&s.transpose(), &s);
    let rhs = DenseMatrix::from_fn(6, 6, |i, j| ti.get(i, j) + ti.get(j, i));
    assert!(fro(&sub(&sts, &rhs)) <= 1e-12 * fro(&sts));
}

#[test]
fn least_squares_through_implicit_q() {
    let (n, m) = (60, 5);
    let w = randn(n, m, 50);
    let psi = gauss_psi(n, m, 30, 51);
    let f = rhqr_left(&w, &psi, &opts(Scaling::SqrtTwo)).unwrap();
    let c = lsq_via_implicit_q(&f, w.col(0)).unwrap();
    assert!((c[0] - 1.0).abs() < 1e-12 && c[1..].iter().all(|v| v.abs() < 1e-12));

    // b with Ψb orthogonal to Range(ΨW): solve for the sketched-orthogonal complement
    let q = thin_q(&f);
    let g = randn_vec(n, 52);
    let cg = lsq_via_implicit_q(&f, &g).unwrap();
    let fit = w.matvec(&cg, Precision::Double);
    let b: Vec<f64> = g.iter().zip(&fit).map(|(a, b)| a - b).collect();
    let sb = psi.apply_vec(&b, Precision::Double);
    let sq = psi.apply(&q, Precision::Double).unwrap();
    assert!(sq.tr_matvec(&sb, Precision::Double).iter().all(|v| v.abs() < 1e-12 * vnorm(&sb)));
    let cb = lsq_via_implicit_q(&f, &b).unwrap();
    assert!(cb.iter().all(|v| v.abs() < 1e-12 * vnorm(&b)));

    // one column: coefficient is ⟨Ψw, Ψb⟩/‖Ψw‖²
    let w1 = w.columns(0..1);
    let psi1 = gauss_psi(n, 1, 30, 53);
    let f1 = rhqr_left(&w1, &psi1, &opts(Scaling::SqrtTwo)).unwrap();
    let c1 = lsq_via_implicit_q(&f1, &g).unwrap();
    let sw = psi1.apply_vec(w1.col(0), Precision::Double);
    let sg = psi1.apply_vec(&g, Precision::Double);
    let direct = sw.iter().zip(&sg).map(|(a, b)| a * b).sum::<f64>() / sw.iter().map(|a| a * a).sum::<f64>();
    assert!((c1[0] - direct).abs() < 1e-13 * direct.abs().max(1.0));
}

#[test]
fn mixed_policy_runs_and_tags() {
    let (n, m) = (128, 6);
    let w = randn(n, m, 60).rounded_to(Precision::Half);
    let psi = EmbeddedSketch::new(m, make_sketch(SketchKind::Srht, 24, n - m, 61, None).unwrap());
    let o = RhqrOptions::with_policy(PrecisionPolicy::half_double());
    let f = rhqr_left(&w, &psi, &o).unwrap();
    assert_eq!(f.u.precision(), Precision::Half);
    assert_eq!(f.t.precision(), Precision::Double);
    assert!(f.u.data().iter().all(|&v| Precision::Half.round(v) == v));
    let q = thin_q(&f);
    let sq = psi.apply(&q.to_double(), Precision::Double).unwrap();
    let g = mul(&sq.transpose(), &sq);
    assert!(fro(&sub(&g, &DenseMatrix::identity(m))) < 0.1);
}

fn arb_case() -> impl Strategy<Value = (usize, usize, usize, u64)> {
    (2usize..8, 10usize..40, 0usize..3, any::<u64>()).prop_map(|(m, extra, kind, seed)| {
        let n = m + extra;
        (n, m, kind, seed)
    })
}

fn psi_for(n: usize, m: usize, kind: usize, seed: u64) -> EmbeddedSketch {
    let kind = [SketchKind::Gaussian, SketchKind::Srht, SketchKind::SparseSign][kind];
    let ell = (3 * m).min((n - m).next_power_of_two());
    EmbeddedSketch::new(m, make_sketch(kind, ell, n - m, seed, Some(3.min(ell))).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn elimination_property((n, m, kind, seed) in arb_case()) {
        let psi = psi_for(n, m, kind, seed);
        let w = randn(n, m, seed ^ 1);
        let f = rhqr_left(&w, &psi, &opts(Scaling::SqrtTwo)).unwrap();
        let pd = dense_psi(&psi);
        for j in 0..m {
            let mut x = w.col(j).to_vec();
            for i in 0..=j {
                x = apply_dense(&dense_reflector(f.u.col(i), &pd), &x);
            }
            let sx = apply_dense(&pd, &x);
            let scale = vnorm(&psi.apply_vec(w.col(j), Precision::Double));
            prop_assert!(sx[j + 1..].iter().all(|v| v.abs() <= 1e-12 * scale));
        }
    }

    #[test]
    fn reflector_commutes_with_sketch_and_preserves_sketched_norm((n, m, kind, seed) in arb_case()) {
        let psi = psi_for(n, m, kind, seed);
        let pd = dense_psi(&psi);
        let w = randn_vec(n, seed ^ 2);
        let x = randn_vec(n, seed ^ 3);
        let y = psi.apply_vec(&w, Precision::Double);
        let st = rh_vector(&w, &y, 0, Scaling::SqrtTwo, &PrecisionPolicy::double()).unwrap();
        let px = apply_dense(&dense_reflector(&st.u, &pd), &x);
        let lhs = apply_dense(&pd, &px);
        let sx = apply_dense(&pd, &x);
        let ident = DenseMatrix::identity(st.s.len());
        let rhs = apply_dense(&dense_reflector(&st.s, &ident), &sx);
        let d: Vec<f64> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
        prop_assert!(vnorm(&d) <= 1e-13 * vnorm(&sx));
        prop_assert!((vnorm(&lhs) - vnorm(&sx)).abs() <= 1e-13 * vnorm(&sx));
    }

    #[test]
    fn woodbury_recursion_matches_direct_formula((n, m, kind, seed) in arb_case()) {
        let psi = psi_for(n, m, kind, seed);
        let w = randn(n, m, seed ^ 4);
        let f = rhqr_left(&w, &psi, &opts(Scaling::UnitDiagonal)).unwrap();
        let direct = t_factor_from_sketches(&f.s, Precision::Double).unwrap();
        prop_assert!(rel_diff(&f.t, &direct) < 1e-11);
        let ti = rhqr_core::la::upper_tri_inverse(&f.t, Precision::Double).unwrap();
        let sts = mul(&f.s.transpose(), &f.s);
        let rhs = DenseMatrix::from_fn(m, m, |i, j| ti.get(i, j) + ti.get(j, i));
        prop_assert!(fro(&sub(&sts, &rhs)) <= 1e-11 * fro(&sts));
    }

    #[test]
    fn scaling_modes_agree((n, m, kind, seed) in arb_case()) {
        let psi = psi_for(n, m, kind, seed);
        let w = randn(n, m, seed ^ 5);
        let a = rhqr_left(&w, &psi, &opts(Scaling::SqrtTwo)).unwrap();
        let b = rhqr_left(&w, &psi, &opts(Scaling::UnitDiagonal)).unwrap();
        prop_assert!(rel_diff(&a.r, &b.r) < 1e-12);
        prop_assert!(rel_diff(&thin_q(&a), &thin_q(&b)) < 1e-12);
    }

    #[test]
    fn structure_invariants((n, m, kind, seed) in arb_case()) {
        let psi = psi_for(n, m, kind, seed);
        let w = randn(n, m, seed ^ 6);
        let f = rhqr_right(&w, &psi, &opts(Scaling::SqrtTwo)).unwrap();
        prop_assert!(f.u.is_lower_trapezoidal());
        prop_assert!(f.r.is_upper_triangular());
        prop_assert!(f.t.is_upper_triangular());
        for j in 0..m {
            for i in 0..m {
                prop_assert_eq!(f.s.get(i, j), f.u.get(i, j));
            }
        }
    }
}
