use std::path::Path;
use std::process::{Command, Output};

use rhqr_bench::{write_matrix_market, MmMatrix};
use rhqr_core::la::CscMatrix;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rhqr-bench")).args(args).output().expect("binary runs")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_then_factor_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let mtx = dir.path().join("c.mtx");
    let csv = dir.path().join("out.csv");
    let out = run(&["gen", "--kind", "cfunc", "--n", "200", "--m", "10", "--out", p(&mtx)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&[
        "factor", "--algo", "rhqr-right", "--sketch", "gauss", "--l", "40", "--seed", "3", "--matrix", p(&mtx), "--every", "5",
        "--out", p(&csv), "--deterministic",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# algo=rhqr-right sketch=gauss l=40 seed=3 precision=double n=200 m=10");
    assert!(lines[1].starts_with("# epsilon "));
    assert_eq!(lines[2], "j,cond_Q,cond_sketch_Q,fro_rel_err,max_col_rel_err,orth_err,status");
    assert_eq!(lines.len(), 5);
    assert!(lines[4].starts_with("10,") && lines[4].ends_with(",ok"));
}

#[test]
fn factor_to_stdout_is_reproducible() {
    let args = ["factor", "--algo", "trim-left", "--gen-n", "128", "--gen-m", "8", "--l", "6", "--every", "4", "--deterministic"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout).contains(",inf,"));
}

#[test]
fn gmres_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let mtx = dir.path().join("d.mtx");
    let n = 60;
    let a = CscMatrix::from_triplets(n, n, &(0..n).map(|i| (i, i, 1.0 + i as f64)).collect::<Vec<_>>()).unwrap();
    write_matrix_market(&mtx, &MmMatrix::Sparse(a)).unwrap();
    for algo in ["rhqr", "rgs"] {
        let out = run(&["gmres", "--algo", algo, "--matrix", p(&mtx), "--rhs", "random:4", "--iters", "12", "--sketch", "gauss", "--deterministic"]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let text = String::from_utf8(out.stdout).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "j,sketched_resid,true_resid,arnoldi_rel_err,cond_basis,status");
        assert_eq!(lines.len(), 2 + 12);
    }
}

#[test]
fn bad_input_fails_cleanly() {
    let out = run(&["factor", "--algo", "qr"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("qr"));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.mtx");
    std::fs::write(&bad, "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n").unwrap();
    let out = run(&["factor", "--matrix", p(&bad)]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let out = run(&["gen", "--kind", "hilbert", "--n", "4", "--m", "2", "--out", p(&dir.path().join("x.mtx"))]);
    assert!(!out.status.success());
}
