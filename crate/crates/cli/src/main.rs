use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rhqr_bench::{
    gen_cmatrix, make_rhs, read_matrix_market, run_factor_experiment, run_gmres_experiment, write_factor_csv,
    write_gmres_csv, write_matrix_market, Algo, ExperimentConfig, GmresAlgo, GmresConfig, MatrixSource, MmMatrix,
    MmOperator, PrecisionArg, RhsSpec,
};
use rhqr_core::krylov::LinearOperator;
use rhqr_core::sketch::SketchKind;

#[derive(Parser)]
#[command(name = "rhqr-bench", version, about = "Randomized Householder QR experiments")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated test matrix in Matrix Market array format.
    Gen {
        #[arg(long, default_value = "cfunc")]
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Factor a matrix and report metrics on leading column blocks.
    Factor(FactorArgs),
    /// Solve A·x = b with GMRES and log each iteration.
    Gmres(GmresArgs),
}

#[derive(Args)]
struct SketchArgs {
    #[arg(long, default_value = "srht")]
    sketch: SketchKind,
    /// Sketch rows (default depends on the subcommand).
    #[arg(long = "l")]
    ell: Option<usize>,
    /// Nonzeros per column of a sparse-sign sketch.
    #[arg(long = "s")]
    nnz: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "double")]
    precision: PrecisionArg,
}

#[derive(Args)]
struct FactorArgs {
    #[arg(long, default_value = "rhqr-left")]
    algo: Algo,
    #[command(flatten)]
    sketch: SketchArgs,
    #[arg(long, conflicts_with_all = ["gen_n", "gen_m"])]
    matrix: Option<PathBuf>,
    #[arg(long, default_value_t = 4096)]
    gen_n: usize,
    #[arg(long, default_value_t = 300)]
    gen_m: usize,
    /// Report metrics every K columns.
    #[arg(long, default_value_t = 10)]
    every: usize,
    /// Panel width for rhqr-block.
    #[arg(long, default_value_t = rhqr_core::rhqr::DEFAULT_PANEL_WIDTH)]
    block: usize,
    /// Output CSV (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit the timestamp comment so identical runs give identical files.
    #[arg(long)]
    deterministic: bool,
}

#[derive(Args)]
struct GmresArgs {
    #[arg(long, default_value = "rhqr")]
    algo: GmresAlgo,
    #[arg(long)]
    matrix: PathBuf,
    /// ones, random:SEED or file:PATH
    #[arg(long, default_value = "ones")]
    rhs: RhsSpec,
    #[arg(long, default_value_t = 30)]
    iters: usize,
    #[command(flatten)]
    sketch: SketchArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    deterministic: bool,
}

fn open_out(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn factor(args: FactorArgs) -> Result<()> {
    let source = match &args.matrix {
        Some(p) => MatrixSource::File(p.clone()),
        None => MatrixSource::Generated { n: args.gen_n, m: args.gen_m },
    };
    let cfg = ExperimentConfig {
        algo: args.algo,
        sketch: args.sketch.sketch,
        ell: args.sketch.ell,
        nnz_per_col: args.sketch.nnz,
        seed: args.sketch.seed,
        precision: args.sketch.precision,
        source,
        every: args.every,
        block: args.block,
        out: args.out.clone(),
        deterministic: args.deterministic,
    };
    cfg.validate()?;
    let w = match &cfg.source {
        MatrixSource::Generated { n, m } => gen_cmatrix(*n, *m),
        MatrixSource::File(p) => read_matrix_market(p).with_context(|| format!("reading {}", p.display()))?.to_dense(),
    };
    let report = run_factor_experiment(&cfg, &w)?;
    let notes = vec![format!(
        "algo={} sketch={} l={} seed={} precision={} n={} m={}",
        cfg.algo, cfg.sketch, report.ell, cfg.seed, cfg.precision, report.n, report.m
    )];
    if let Some((col, tag)) = &report.breakdown {
        eprintln!("warning: {tag} (column {col}); later rows are empty");
    }
    write_factor_csv(open_out(&cfg.out)?, &report, cfg.deterministic, &notes)?;
    Ok(())
}

fn gmres(args: GmresArgs) -> Result<()> {
    let cfg = GmresConfig {
        algo: args.algo,
        sketch: args.sketch.sketch,
        ell: args.sketch.ell,
        nnz_per_col: args.sketch.nnz,
        seed: args.sketch.seed,
        iters: args.iters,
        precision: args.sketch.precision,
        rhs: args.rhs,
        deterministic: args.deterministic,
    };
    let mat = read_matrix_market(&args.matrix).with_context(|| format!("reading {}", args.matrix.display()))?;
    let (r, c) = mat.shape();
    if r != c {
        bail!("GMRES needs a square matrix, got {r}x{c}");
    }
    let a = MmOperator(mat);
    let b = make_rhs(&cfg.rhs, a.dim())?;
    let report = run_gmres_experiment(&a, &b, &cfg)?;
    let notes = vec![format!(
        "algo={} sketch={} l={} seed={} precision={} n={} iters={}",
        cfg.algo,
        cfg.sketch,
        cfg.ell(),
        cfg.seed,
        cfg.precision,
        r,
        cfg.iters
    )];
    write_gmres_csv(open_out(&args.out)?, &report.rows, cfg.deterministic, &notes)?;
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().cmd {
        Command::Gen { kind, n, m, out } => {
            if kind != "cfunc" {
                bail!("unknown matrix kind '{kind}' (only cfunc is available)");
            }
            if n < 2 || m < 2 {
                bail!("cfunc needs n ≥ 2 and m ≥ 2");
            }
            write_matrix_market(&out, &MmMatrix::Dense(gen_cmatrix(n, m)))?;
        }
        Command::Factor(args) => factor(args)?,
        Command::Gmres(args) => gmres(args)?,
    }
    Ok(())
}
